#pragma once

#include <random>
#include <string>
#include <vector>

#include "bicoh/resolve.hpp"

namespace bicoh::testing {

inline RingSpec ring(int m, int n, std::uint32_t p = kDefaultPrime) { return RingSpec(p, m, n); }

inline Polynomial P(const RingSpec& r, const std::string& text) { return parse_poly(text, r); }

/// Cyclic quotient S / (f_1, ..., f_k) written as text.
inline Presentation quotient(const RingSpec& r, const std::vector<std::string>& rels) {
  std::vector<Polynomial> polys;
  for (const auto& t : rels) polys.push_back(parse_poly(t, r));
  return Presentation::cyclic(r, polys);
}

inline Presentation free_module(const RingSpec& r, std::vector<Bidegree> shifts = {{0, 0}}) {
  return Presentation::free(FreeModule(r, std::move(shifts)));
}

/// Cyclic quotient by up to `max_rels` random bihomogeneous relations of
/// bidegree <= (2,2), each with a few random terms. Deterministic in `seed`.
inline Presentation random_quotient(const RingSpec& r, std::uint32_t seed, int max_rels = 3) {
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> deg(0, 2), count(1, max_rels), coeff(1, 9), terms(1, 3);
  std::vector<Polynomial> rels;
  int k = count(gen);
  while (static_cast<int>(rels.size()) < k) {
    Bidegree d{deg(gen), deg(gen)};
    if (d.a + d.b == 0) continue;
    auto basis = monomial_basis(r, d);
    if (basis.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    Polynomial f(r);
    for (int t = terms(gen); t > 0; --t) f = f + Polynomial::monomial(r, basis[pick(gen)], coeff(gen));
    if (!f.is_zero()) rels.push_back(f);
  }
  return Presentation::cyclic(r, rels);
}

}  // namespace bicoh::testing
