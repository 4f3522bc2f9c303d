#include <catch_amalgamated.hpp>

#include <random>

#include "bicoh/groebner.hpp"
#include "support.hpp"

using namespace bicoh;
using bicoh::testing::P;
using bicoh::testing::ring;

namespace {

FreeModule rank_one(const RingSpec& r) { return FreeModule(r, {{0, 0}}); }

ModuleElement E(const Polynomial& f) { return ModuleElement::from_coordinates({f}); }

// Brute force: the degree-d piece of the submodule generated by gens, as a subspace.
Subspace span_in_degree(const FreeModule& F, const std::vector<ModuleElement>& gens, Bidegree d) {
  PieceBasis basis(F, d);
  std::vector<std::vector<Coeff>> rows;
  for (const auto& g : gens) {
    auto gd = element_degree(F, g);
    if (!gd) continue;
    for (const auto& mon : monomial_basis(F.ring, d - *gd)) {
      std::vector<Coeff> row(basis.size(), 0);
      for (const auto& t : g.terms()) row[basis.index(t.comp, t.mon * mon)] = t.coeff;
      rows.push_back(row);
    }
  }
  DenseMatrix m(F.ring.field(), rows.size(), basis.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) m(i, j) = rows[i][j];
  return Subspace(m);
}

std::vector<Coeff> coords_in_degree(const FreeModule& F, const ModuleElement& v, Bidegree d) {
  PieceBasis basis(F, d);
  std::vector<Coeff> out(basis.size(), 0);
  for (const auto& t : v.terms()) out[basis.index(t.comp, t.mon)] = t.coeff;
  return out;
}

ModuleElement random_element(const FreeModule& F, std::mt19937& rng, Bidegree d) {
  std::vector<ModTerm> terms;
  for (std::uint32_t k = 0; k < F.rank(); ++k)
    for (const auto& mon : monomial_basis(F.ring, d - F.shifts[k]))
      if (rng() % 3 == 0) terms.push_back({k, mon, static_cast<Coeff>(1 + rng() % 100)});
  return ModuleElement(terms, F.ring.field());
}

}  // namespace

TEST_CASE("buchberger examples", "[groebner]") {
  auto r = ring(2, 2);
  auto F = rank_one(r);
  auto G = buchberger(F, {E(P(r, "x1")), E(P(r, "y1"))});
  REQUIRE(G.elements.size() == 2);
  CHECK(std::find(G.elements.begin(), G.elements.end(), E(P(r, "x1"))) != G.elements.end());
  CHECK(std::find(G.elements.begin(), G.elements.end(), E(P(r, "y1"))) != G.elements.end());

  auto G2 = buchberger(F, {E(P(r, "x1*y1"))});
  REQUIRE(G2.elements.size() == 1);
  CHECK(G2.elements[0] == E(P(r, "x1*y1")));

  std::vector<ModuleElement> gens{E(P(r, "x1^2")), E(P(r, "x1*x2"))};
  auto G3 = buchberger(F, gens);
  REQUIRE(G3.elements.size() == 2);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 2; ++b) {
      Bidegree d{a, b};
      CHECK(span_in_degree(F, gens, d).dim() == span_in_degree(F, G3.elements, d).dim());
    }
}

TEST_CASE("buchberger rejects inhomogeneous input", "[groebner]") {
  auto r = ring(2, 2);
  try {
    buchberger(rank_one(r), {E(P(r, "x1 + y1"))});
    FAIL("expected NOT_BIHOMOGENEOUS");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotBihomogeneous);
  }
}

TEST_CASE("normal form examples", "[groebner]") {
  auto r = ring(2, 2);
  auto F = rank_one(r);
  auto G = buchberger(F, {E(P(r, "x1")), E(P(r, "y1"))});
  // x1*y1 + x2 is not bihomogeneous, but normal forms work term by term.
  CHECK(normal_form(E(P(r, "x1*y1 + x2")), G) == E(P(r, "x2")));
  for (const auto& g : G.elements) CHECK(normal_form(g, G).is_zero());
  auto v = E(P(r, "x1*x2 + x2^2 + y1*x2"));
  CHECK(normal_form(normal_form(v, G), G) == normal_form(v, G));
}

TEST_CASE("syzygy examples", "[groebner]") {
  auto r = ring(2, 2);
  auto F = rank_one(r);
  {
    auto G = buchberger(F, {E(P(r, "x1")), E(P(r, "y1"))});
    auto Z = syzygies(G);
    REQUIRE(Z.elements.size() == 1);
    auto c = Z.elements[0].coordinates(Z.ambient);
    auto g0 = G.elements[0].coordinate(F, 0), g1 = G.elements[1].coordinate(F, 0);
    // the Koszul relation, up to order and scalar
    CHECK((c[0] * g0 + c[1] * g1).is_zero());
    CHECK(((c[0] == g1 && c[1] == -g0) || (c[0] == -g1 && c[1] == g0)));
  }
  {
    auto G = buchberger(F, {E(P(r, "x1*y1"))});
    CHECK(syzygies(G).elements.empty());
  }
  {
    auto G = buchberger(F, {E(P(r, "x1*y1")), E(P(r, "x1*y2"))});
    auto Z = syzygies(G);
    REQUIRE(Z.elements.size() == 1);
    auto c = Z.elements[0].coordinates(Z.ambient);
    CHECK((c[0] * G.elements[0].coordinate(F, 0) + c[1] * G.elements[1].coordinate(F, 0)).is_zero());
    CHECK(element_degree(Z.ambient, Z.elements[0]) == Bidegree{1, 2});
    CHECK(((c[0] == P(r, "y2") && c[1] == P(r, "-y1")) || (c[0] == P(r, "y1") && c[1] == P(r, "-y2")) ||
           (c[0] == P(r, "-y2") && c[1] == P(r, "y1")) || (c[0] == P(r, "-y1") && c[1] == P(r, "y2"))));
  }
}

TEST_CASE("GB membership agrees with degreewise linear algebra", "[groebner][property]") {
  std::mt19937 rng(21);
  auto r = ring(2, 2);
  for (int trial = 0; trial < 12; ++trial) {
    FreeModule F(r, {{0, 0}, {1, 0}});
    if (trial % 3 == 0) F = rank_one(r);
    std::vector<ModuleElement> gens;
    int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) {
      Bidegree d{1 + static_cast<int>(rng() % 2), static_cast<int>(rng() % 2)};
      auto g = random_element(F, rng, d);
      if (!g.is_zero()) gens.push_back(g);
    }
    if (gens.empty()) continue;
    auto G = buchberger(F, gens);
    CAPTURE(trial);
    for (int a = 0; a <= 3; ++a)
      for (int b = 0; b <= 2; ++b) {
        Bidegree d{a, b};
        auto U = span_in_degree(F, gens, d);
        CHECK(span_in_degree(F, G.elements, d).dim() == U.dim());
        for (int s = 0; s < 3; ++s) {
          auto v = random_element(F, rng, d);
          if (v.is_zero()) continue;
          auto q = U.quotient_coords(coords_in_degree(F, v, d));
          bool in_span = std::all_of(q.begin(), q.end(), [](Coeff c) { return c == 0; });
          CHECK(is_member(v, G) == in_span);
        }
      }
    // GB of a GB is itself
    CHECK(buchberger(F, G.elements).elements == G.elements);
    // syzygies compose to zero with the generators
    auto Z = syzygies(G);
    for (const auto& z : Z.elements) {
      ModuleElement sum;
      for (const auto& t : z.terms()) sum = sum.minus_scaled(r.field(), G.elements[t.comp], r.field().neg(t.coeff), t.mon);
      CHECK(sum.is_zero());
    }
  }
}
