#pragma once

// Single-graded strands of a bigraded module: N_j = (+)_i N_(i,j) over K[x]
// and M_(a,*) over K[y], as explicit presentations.

#include <unordered_map>
#include <vector>

#include "resolve.hpp"

namespace bicoh {

namespace detail {

/// Splits a monomial of S into its x-part and y-part, both re-indexed for
/// the subring they live in (K[x] keeps positions, K[y] starts at 0).
inline Monomial x_part(const Monomial& mon, int m) {
  Monomial out;
  for (int i = 0; i < m; ++i) out.set(i, mon[i]);
  return out;
}

inline Monomial y_part(const Monomial& mon, int m, int n) {
  Monomial out;
  for (int i = 0; i < n; ++i) out.set(i, mon[m + i]);
  return out;
}

/// Shared strand builder. `fixed_y` selects the x-strand (fixed y-degree j)
/// or the y-strand (fixed x-degree j).
inline Presentation strand(const Presentation& N, int j, bool fixed_y) {
  const RingSpec& S = N.ring();
  const int m = S.m(), n = S.n();
  if (S.flavor() != RingFlavor::Full) throw Error(ErrorCode::RingMismatch, "strands are taken over the full ring");
  if ((fixed_y && m == 0) || (!fixed_y && n == 0))
    throw Error(ErrorCode::BadTheory, "strand over a polynomial ring without variables");
  const RingSpec sub = fixed_y ? S.x_subring() : S.y_subring();

  // degree of the fixed block, and how an S-bidegree maps to the strand grading
  auto fixed_deg = [&](Bidegree d) { return fixed_y ? d.b : d.a; };
  auto free_deg = [&](Bidegree d) { return fixed_y ? Bidegree{d.a, 0} : Bidegree{0, d.b}; };
  auto fixed_basis = [&](int deg) { return monomial_basis(S, fixed_y ? Bidegree{0, deg} : Bidegree{deg, 0}); };
  auto moving_part = [&](const Monomial& mon) { return fixed_y ? x_part(mon, m) : y_part(mon, m, n); };
  auto fixed_part = [&](const Monomial& mon) {
    Monomial out;
    for (int i = 0; i < S.nvars(); ++i) {
      bool in_fixed = fixed_y ? i >= m : i < m;
      if (in_fixed) out.set(i, mon[i]);
    }
    return out;
  };

  // generators (k, w), lexicographic in (k, w)
  FreeModule target(sub);
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> gen_index(N.target.rank());
  for (std::uint32_t k = 0; k < N.target.rank(); ++k) {
    const Bidegree c = N.target.shifts[k];
    for (const auto& w : fixed_basis(j - fixed_deg(c))) {
      gen_index[k].emplace(w.key(), static_cast<std::uint32_t>(target.rank()));
      target.shifts.push_back(free_deg(c));
    }
  }

  Presentation out(target);
  const auto& f = S.field();
  for (std::size_t l = 0; l < N.columns.size(); ++l) {
    const Bidegree e = N.source.shifts[l];
    for (const auto& v : fixed_basis(j - fixed_deg(e))) {
      std::vector<ModTerm> terms;
      for (const auto& t : N.columns[l].terms()) {
        Monomial prod = t.mon * v;
        auto it = gen_index[t.comp].find(fixed_part(prod).key());
        if (it == gen_index[t.comp].end()) throw Error(ErrorCode::Internal, "strand generator missing");
        terms.push_back({it->second, moving_part(prod), t.coeff});
      }
      ModuleElement col(std::move(terms), f);
      if (col.is_zero()) continue;
      out.source.shifts.push_back(free_deg(e));
      out.columns.push_back(std::move(col));
    }
  }
  out.validate();
  return out;
}

}  // namespace detail

/// N_j over K[x]: generators y-monomials w of degree j - b_k on each generator
/// k (x-degree a_k); relations are the S-relations times y-monomials, expanded.
inline Presentation x_strand(const Presentation& N, int j) { return detail::strand(N, j, true); }

/// M_(a,*) over K[y], the mirror image of x_strand.
inline Presentation y_strand(const Presentation& M, int a) { return detail::strand(M, a, false); }

}  // namespace bicoh
