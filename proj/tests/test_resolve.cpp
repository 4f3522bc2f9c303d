#include <catch_amalgamated.hpp>

#include <random>

#include "bicoh/resolve.hpp"
#include "support.hpp"

using namespace bicoh;
using bicoh::testing::free_module;
using bicoh::testing::P;
using bicoh::testing::quotient;
using bicoh::testing::ring;

namespace {

// Alternating sum of free piece dimensions; equals dim M_d when the resolution is exact.
long long euler_of_resolution(const FreeResolution& res, Bidegree d) {
  long long sum = 0;
  for (std::size_t i = 0; i <= res.length(); ++i) {
    long long v = res.module(i).piece_dim(d);
    sum += (i % 2 == 0) ? v : -v;
  }
  return sum;
}

bool has_unit_entry(const Presentation& p) {
  for (const auto& col : p.columns)
    for (const auto& t : col.terms())
      if (t.mon.total_degree() == 0) return true;
  return false;
}

void check_composites_vanish(const FreeResolution& res) {
  const auto& f = res.F0.ring.field();
  for (std::size_t i = 0; i + 1 < res.maps.size(); ++i) {
    const auto& A = res.maps[i];
    const auto& B = res.maps[i + 1];
    for (const auto& col : B.columns) {
      ModuleElement img;
      for (const auto& t : col.terms()) img = img.minus_scaled(f, A.columns[t.comp], f.neg(t.coeff), t.mon);
      CHECK(img.is_zero());
    }
  }
}

std::vector<Presentation> fixtures() {
  auto r = ring(2, 2);
  return {free_module(r),
          quotient(r, {"x1*y1"}),
          quotient(r, {"y1", "y2"}),
          quotient(r, {"x1*y1", "x1*y2"}),
          quotient(r, {"x1*y1 + x2*y2"}),
          quotient(r, {"x1*y1", "x1*y2", "x2*y1", "x2*y2"}),
          quotient(r, {"x1", "x2", "y1", "y2"}),
          free_module(r, {{0, 0}, {1, 0}, {2, 1}})};
}

}  // namespace

TEST_CASE("resolution examples", "[resolve]") {
  auto r = ring(2, 2);
  auto res0 = resolve(free_module(r));
  CHECK(res0.length() == 0);

  auto res1 = resolve(quotient(r, {"x1*y1"}));
  REQUIRE(res1.length() == 1);
  CHECK(res1.module(1).shifts == std::vector<Bidegree>{{1, 1}});

  auto res2 = resolve(quotient(r, {"x1*y1", "x1*y2"}));
  REQUIRE(res2.length() == 2);
  CHECK(res2.module(1).shifts == std::vector<Bidegree>{{1, 1}, {1, 1}});
  CHECK(res2.module(2).shifts == std::vector<Bidegree>{{1, 2}});
  check_composites_vanish(res2);
}

TEST_CASE("Koszul resolution of the residue field", "[resolve]") {
  auto r = ring(2, 2);
  auto res = resolve(quotient(r, {"x1", "x2", "y1", "y2"}));
  REQUIRE(res.length() == 4);
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i <= 4; ++i) ranks.push_back(res.module(i).rank());
  CHECK(ranks == std::vector<std::size_t>{1, 4, 6, 4, 1});
  CHECK(res.module(4).shifts.front() == Bidegree{2, 2});
}

TEST_CASE("hilbert table examples", "[resolve]") {
  auto r = ring(2, 2);
  auto t = hilbert_table(free_module(r), {0, 4, 0, 4});
  Window{0, 4, 0, 4}.for_each([&](Bidegree d) { CHECK(t.at(d) == (d.a + 1) * (d.b + 1)); });
  CHECK(hilbert_value(quotient(r, {"x1*y1"}), {1, 1}) == 3);
  CHECK(hilbert_value(free_module(r, {{1, 2}}), {1, 2}) == 1);
  CHECK(hilbert_value(free_module(r), {-1, 0}) == 0);
}

TEST_CASE("resolutions are exact and minimal", "[resolve][property]") {
  for (const auto& M : fixtures()) {
    auto res = resolve(M);
    const int N = M.ring().nvars();
    CHECK(res.length() <= static_cast<std::size_t>(N));
    for (const auto& phi : res.maps) CHECK_FALSE(has_unit_entry(phi));
    check_composites_vanish(res);
    Window w{-1, 4, -1, 4};
    auto h = hilbert_table(M, w);
    w.for_each([&](Bidegree d) { CHECK(euler_of_resolution(res, d) == h.at(d)); });
  }
}

TEST_CASE("hilbert tables do not depend on the window", "[resolve][property]") {
  auto M = quotient(ring(2, 2), {"x1*y1", "x1*y2"});
  auto small = hilbert_table(M, {0, 2, 0, 2});
  auto big = hilbert_table(M, {-2, 5, -1, 4});
  small.window().for_each([&](Bidegree d) { CHECK(small.at(d) == big.at(d)); });
}

TEST_CASE("raw resolutions agree with minimal ones degreewise", "[resolve][property]") {
  auto M = quotient(ring(2, 2), {"x1*y1", "x1*y2", "x2*y1"});
  auto raw = resolve(M, {.minimize = false, .max_length = 5});
  auto min = resolve(M);
  CHECK_FALSE(raw.minimal);
  check_composites_vanish(raw);
  Window{0, 3, 0, 3}.for_each([&](Bidegree d) { CHECK(euler_of_resolution(raw, d) == euler_of_resolution(min, d)); });
}

TEST_CASE("kernel and quotient presentations", "[resolve]") {
  auto r = ring(2, 2);
  {
    Presentation phi(FreeModule(r, {{0, 0}}), FreeModule(r, {{1, 0}}), {ModuleElement::from_coordinates({P(r, "x1")})});
    CHECK(kernel_presentation(phi).target.rank() == 0);
  }
  {
    Presentation phi(FreeModule(r, {{0, 0}}), FreeModule(r, {{1, 0}, {0, 1}}),
                     {ModuleElement::from_coordinates({P(r, "x1")}), ModuleElement::from_coordinates({P(r, "y1")})});
    auto K = kernel_presentation(phi);
    CHECK(K.target.rank() == 1);
    CHECK(K.target.shifts.front() == Bidegree{1, 1});
    CHECK(K.source.rank() == 0);
  }
  {
    FreeModule F(r, {{0, 0}});
    Presentation A(F, FreeModule(r, {{1, 1}}), {ModuleElement::from_coordinates({P(r, "x1*y1")})});
    auto Q = quotient_presentation(identity_map(F), A);
    CHECK(hilbert_value(Q, {1, 1}) == 3);
  }
}

TEST_CASE("unit pruning keeps the module", "[resolve]") {
  auto r = ring(2, 2);
  // Generators e0 (0,0), e1 (1,0); relations e1 - x1 e0 and y1 e0: module is S/(y1).
  auto M = Presentation::from_matrix(r, {{0, 0}, {1, 0}}, {{1, 0}, {0, 1}},
                                     {{P(r, "-x1"), P(r, "y1")}, {P(r, "1"), P(r, "0")}});
  auto pruned = prune_units(M);
  CHECK(pruned.target.rank() == 1);
  CHECK(pruned.source.rank() == 1);
  Window{0, 3, 0, 3}.for_each([&](Bidegree d) { CHECK(hilbert_value(pruned, d) == hilbert_value(M, d)); });
}

TEST_CASE("degree mismatch is detected", "[resolve]") {
  auto r = ring(2, 2);
  try {
    Presentation::from_matrix(r, {{0, 0}}, {{1, 0}}, {{P(r, "y1")}});
    FAIL("expected DEGREE_MISMATCH");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeMismatch);
  }
}

TEST_CASE("krull dimension", "[resolve]") {
  auto r = ring(2, 2);
  CHECK(krull_dim(free_module(r)) == 4);
  CHECK(krull_dim(quotient(r, {"x1*y1"})) == 3);
  CHECK(krull_dim(quotient(r, {"x1*y1", "x1*y2"})) == 3);
  CHECK(krull_dim(quotient(r, {"y1", "y2"})) == 2);
  CHECK(krull_dim(quotient(r, {"x1", "x2", "y1", "y2"})) == 0);
  CHECK(krull_dim(quotient(r, {"x1*y1", "x1*y2", "x2*y1", "x2*y2"})) == 2);
  CHECK(krull_dim(Presentation::zero(r)) == -1);
  CHECK(krull_dim(free_module(ring(2, 0))) == 2);
  CHECK(krull_dim(free_module(ring(0, 3))) == 3);
}
