#include <catch_amalgamated.hpp>

#include "bicoh/duality.hpp"
#include "support.hpp"

using namespace bicoh;
using bicoh::testing::free_module;
using bicoh::testing::quotient;
using bicoh::testing::random_quotient;
using bicoh::testing::ring;

namespace {

Presentation cm_fixture() { return quotient(ring(2, 2), {"x1*y1"}); }
Presentation gencm_fixture() { return quotient(ring(2, 2), {"x1*y1", "x1*y2", "x2*y1", "x2*y2"}); }
Presentation mixed_fixture() { return quotient(ring(2, 2), {"x1*y1", "x1*y2"}); }

void require_pass(const CheckReport& rep) {
  std::ostringstream os;
  rep.print(os);
  INFO(os.str());
  CHECK(rep.pass);
  CHECK(rep.comparisons > 0);
}

}  // namespace

TEST_CASE("canonical module against the closed form", "[duality]") {
  for (auto [m, n] : {std::pair{1, 1}, {2, 2}, {1, 3}, {3, 1}}) require_pass(check_lemma_simple(ring(m, n), Window::square(4)));
}

TEST_CASE("free modules", "[duality]") {
  auto r = ring(2, 2);
  require_pass(check_free(FreeModule(r, {{0, 0}, {1, -1}, {2, 3}}), Window::square(4)));
  require_pass(check_free(FreeModule(ring(1, 2), {{-1, 0}, {0, 2}}), Window::square(3)));
}

TEST_CASE("euler characteristic on fixtures", "[duality]") {
  for (const auto& M : {cm_fixture(), gencm_fixture(), mixed_fixture(), free_module(ring(2, 2))}) {
    SpectralData sd(M);
    require_pass(check_euler(sd, Window::square(3)));
  }
}

TEST_CASE("euler characteristic on random modules", "[duality][property]") {
  auto r = ring(2, 2);
  for (std::uint32_t seed = 1; seed <= 6; ++seed) {
    INFO("seed " << seed);
    SpectralData sd(random_quotient(r, seed));
    require_pass(check_euler(sd, Window::square(2)));
  }
}

TEST_CASE("euler on mixed ring sizes", "[duality][property]") {
  for (auto r : {ring(1, 2), ring(2, 1), ring(1, 1)}) {
    SpectralData sd(random_quotient(r, 11, 2));
    require_pass(check_euler(sd, Window::square(3)));
  }
}

TEST_CASE("cohen-macaulay degeneration", "[duality]") {
  SpectralData sd(cm_fixture());
  require_pass(check_cm_degeneration(sd, Window::square(3)));
  SpectralData free(free_module(ring(2, 2), {{0, 0}, {1, 2}}));
  require_pass(check_cm_degeneration(free, Window::square(3)));

  SpectralData bad(gencm_fixture());
  CHECK_THROWS_AS(check_cm_degeneration(bad, Window::square(2)), Error);
  try {
    check_cm_degeneration(bad, Window::square(2));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCM);
  }
}

TEST_CASE("corner isomorphisms", "[duality]") {
  for (const auto& M : {cm_fixture(), gencm_fixture(), mixed_fixture()}) {
    SpectralData sd(M);
    require_pass(check_corner(sd, Window::square(3)));
  }
}

TEST_CASE("generalized cohen-macaulay sequence", "[duality]") {
  SpectralData sd(gencm_fixture());
  auto p = sd.profile();
  CHECK(p.dim == 2);
  CHECK(p.depth == 1);
  CHECK(p.is_gen_cm);
  require_pass(check_gencm_les(sd, Window::square(3)));

  SpectralData cm(cm_fixture());
  CHECK_THROWS_AS(check_gencm_les(cm, Window::square(2)), Error);
  SpectralData mixed(mixed_fixture());
  CHECK_FALSE(mixed.profile().is_gen_cm);
  CHECK_THROWS_AS(check_gencm_les(mixed, Window::square(2)), Error);
}

TEST_CASE("base ring of dimension at most one", "[duality]") {
  for (const auto& M : {quotient(ring(1, 2), {"x1*y1"}), quotient(ring(1, 2), {"x1*y1", "x1*y2"}),
                        quotient(ring(1, 2), {"x1^2*y1", "y2^2"}), quotient(ring(0, 2), {"y1*y2"})}) {
    SpectralData sd(M);
    require_pass(check_dim_r0_le1(sd, Window::square(3)));
  }
  SpectralData big(cm_fixture());
  CHECK_THROWS_AS(check_dim_r0_le1(big, Window::square(2)), Error);
}

TEST_CASE("strand structure for cohen-macaulay modules", "[duality]") {
  SpectralData sd(cm_fixture());
  require_pass(check_structure1(sd, Window::square(3)));
  SpectralData q(quotient(ring(2, 2), {"x1*y1", "x2*y2"}));
  require_pass(check_structure1(q, Window::square(3)));
}

TEST_CASE("five-term sequences", "[duality]") {
  for (const auto& M : {cm_fixture(), gencm_fixture(), mixed_fixture(), quotient(ring(2, 2), {"x1", "y1*y2"})}) {
    SpectralData sd(M);
    require_pass(check_five_term(sd, Window::square(3)));
  }
}

TEST_CASE("depth one below dimension", "[duality]") {
  for (const auto& M : {gencm_fixture(), mixed_fixture()}) {
    SpectralData sd(M);
    require_pass(check_depth_sminus1_les(sd, Window::square(3)));
  }
  SpectralData cm(cm_fixture());
  CHECK_THROWS_AS(check_depth_sminus1_les(cm, Window::square(2)), Error);
}

TEST_CASE("strand index sign convention", "[duality]") {
  SpectralData sd(cm_fixture());
  auto sign = intro_sign_convention(sd, Window::square(3));
  CHECK(sign.minus_j_holds);
  CHECK_FALSE(sign.plus_j_holds);
}

TEST_CASE("broken tables are caught", "[duality]") {
  CheckReport rep("x", Window::square(1));
  rep.expect_equal({0, 1}, "probe", 2, 3, "lhs", "rhs");
  rep.expect_equal({1, 1}, "probe", 2, 4, "lhs", "rhs");
  CHECK_FALSE(rep.pass);
  REQUIRE(rep.first);
  CHECK(rep.first->cell == Bidegree{0, 1});
  CHECK(rep.failures.at({1, 1}) == 1);
}
