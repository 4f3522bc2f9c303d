#include <catch_amalgamated.hpp>

#include "bicoh/strand.hpp"
#include "support.hpp"

using namespace bicoh;
using bicoh::testing::free_module;
using bicoh::testing::P;
using bicoh::testing::quotient;
using bicoh::testing::ring;

TEST_CASE("x-strand examples", "[strand]") {
  auto r = ring(2, 2);
  auto s0 = x_strand(free_module(r), 0);
  CHECK(s0.target.rank() == 1);
  CHECK(s0.source.rank() == 0);
  CHECK(s0.ring().n() == 0);
  auto s1 = x_strand(free_module(r), 1);
  CHECK(s1.target.rank() == 2);
  CHECK(s1.source.rank() == 0);

  auto h = x_strand(quotient(r, {"x1*y1"}), 1);
  REQUIRE(h.target.rank() == 2);
  REQUIRE(h.source.rank() == 1);
  auto X = r.x_subring();
  CHECK(h.entry(0, 0) == P(X, "x1"));
  CHECK(h.entry(1, 0).is_zero());
}

TEST_CASE("y-strand examples", "[strand]") {
  auto r = ring(2, 2);
  auto s1 = y_strand(free_module(r), 1);
  CHECK(s1.target.rank() == 2);
  CHECK(s1.ring().m() == 0);
  auto h = y_strand(quotient(r, {"x1*y1"}), 1);
  REQUIRE(h.target.rank() == 2);
  REQUIRE(h.source.rank() == 1);
  CHECK(h.entry(0, 0) == P(r.y_subring(), "y1"));
  CHECK(y_strand(free_module(r, {{2, 0}}), 1).target.rank() == 0);
}

TEST_CASE("strands reproduce the Hilbert function", "[strand][property]") {
  auto r = ring(2, 2);
  std::vector<Presentation> mods{free_module(r, {{0, 0}, {1, -1}}), quotient(r, {"x1*y1"}),
                                 quotient(r, {"x1*y1", "x1*y2"}), quotient(r, {"x1*y1 + x2*y2", "x1^2*y2"}),
                                 quotient(r, {"y1", "y2"})};
  for (const auto& M : mods)
    for (int j = -1; j <= 3; ++j) {
      auto xs = x_strand(M, j);
      auto ys = y_strand(M, j);
      for (int i = -1; i <= 3; ++i) {
        CHECK(hilbert_value(xs, {i, 0}) == hilbert_value(M, {i, j}));
        CHECK(hilbert_value(ys, {0, i}) == hilbert_value(M, {j, i}));
      }
    }
}

TEST_CASE("strands of free modules are free of the predicted rank", "[strand][property]") {
  auto r = ring(2, 3);
  auto F = free_module(r, {{0, 0}, {1, 1}, {0, 2}});
  for (int j = -1; j <= 4; ++j) {
    auto s = x_strand(F, j);
    long long expected = 0;
    for (const auto& sh : F.target.shifts) expected += monomial_count(j - sh.b, 3);
    CHECK(static_cast<long long>(s.target.rank()) == expected);
    CHECK(s.source.rank() == 0);
  }
}

TEST_CASE("strands are additive on split sequences", "[strand][property]") {
  // 0 -> S(-1,0)/(y1) -> S/(x1 y1) -> S/(x1) -> 0 with the first map multiplication by x1.
  auto r = ring(2, 2);
  auto A = Presentation::cyclic(r, {P(r, "y1")}, {1, 0});
  auto B = quotient(r, {"x1*y1"});
  auto C = quotient(r, {"x1"});
  for (int j = 0; j <= 3; ++j)
    for (int i = 0; i <= 3; ++i)
      CHECK(hilbert_value(x_strand(B, j), {i, 0}) ==
            hilbert_value(x_strand(A, j), {i, 0}) + hilbert_value(x_strand(C, j), {i, 0}));
}
