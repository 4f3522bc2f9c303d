#pragma once

// Module presentations, minimal bigraded free resolutions, Hilbert tables,
// and presentations of kernels and subquotients.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <unordered_map>
#include <vector>

#include "arith.hpp"
#include "error.hpp"
#include "groebner.hpp"
#include "poly.hpp"
#include "table.hpp"

namespace bicoh {

/// A map of free modules source -> target given by the images of the source
/// basis vectors. As a module presentation it stands for M = coker.
struct Presentation {
  FreeModule target;
  FreeModule source;
  std::vector<ModuleElement> columns;

  explicit Presentation(FreeModule tgt) : target(tgt), source(tgt.ring) {}
  Presentation(FreeModule tgt, FreeModule src, std::vector<ModuleElement> cols)
      : target(std::move(tgt)), source(std::move(src)), columns(std::move(cols)) {}

  /// The free module F itself (no relations).
  static Presentation free(FreeModule F) { return Presentation(std::move(F)); }

  static Presentation zero(const RingSpec& ring) { return Presentation(FreeModule(ring)); }

  /// Cyclic module S(-shift)/(f_1, ..., f_r).
  static Presentation cyclic(const RingSpec& ring, const std::vector<Polynomial>& relations,
                             Bidegree shift = {0, 0}) {
    Presentation p(FreeModule(ring, {shift}));
    for (const auto& f : relations) {
      if (f.is_zero()) continue;
      p.source.shifts.push_back(bidegree_of(f) + shift);
      p.columns.push_back(ModuleElement::from_coordinates({f}));
    }
    return p;
  }

  /// entries[k][l] is the coefficient of generator k in relation l.
  static Presentation from_matrix(const RingSpec& ring, std::vector<Bidegree> gens, std::vector<Bidegree> rels,
                                  const std::vector<std::vector<Polynomial>>& entries) {
    Presentation p(FreeModule(ring, std::move(gens)), FreeModule(ring, std::move(rels)), {});
    for (std::size_t l = 0; l < p.source.rank(); ++l) {
      std::vector<Polynomial> col;
      for (std::size_t k = 0; k < p.target.rank(); ++k) col.push_back(entries.at(k).at(l));
      p.columns.push_back(col.empty() ? ModuleElement() : ModuleElement::from_coordinates(col));
    }
    p.validate();
    return p;
  }

  const RingSpec& ring() const noexcept { return target.ring; }

  Polynomial entry(std::size_t k, std::size_t l) const {
    return columns.at(l).coordinate(target, static_cast<std::uint32_t>(k));
  }

  /// Every nonzero column must be bihomogeneous of its source degree.
  void validate() const {
    if (columns.size() != source.rank())
      throw Error(ErrorCode::FormatError, "column count does not match relation count");
    for (std::size_t l = 0; l < columns.size(); ++l) {
      if (columns[l].is_zero()) continue;
      auto d = element_degree(target, columns[l]);
      if (!d || *d != source.shifts[l])
        throw Error(ErrorCode::DegreeMismatch,
                    "relation " + std::to_string(l) + " is not bihomogeneous of bidegree " +
                        to_string(source.shifts[l]));
    }
  }

  friend bool operator==(const Presentation& l, const Presentation& r) {
    return l.target == r.target && l.source == r.source && l.columns == r.columns;
  }
};

/// Basis {m * e_k : bideg(m) + shift_k = d} of the degree-d piece of a free module.
class PieceBasis {
 public:
  PieceBasis(const FreeModule& F, Bidegree d) : index_(F.rank()) {
    for (std::uint32_t k = 0; k < F.rank(); ++k)
      for (const auto& mon : monomial_basis(F.ring, d - F.shifts[k])) {
        index_[k].emplace(mon.key(), elems_.size());
        elems_.push_back({k, mon});
      }
  }

  std::size_t size() const noexcept { return elems_.size(); }
  std::uint32_t comp(std::size_t i) const { return elems_[i].first; }
  const Monomial& mon(std::size_t i) const { return elems_[i].second; }

  std::size_t index(std::uint32_t comp, const Monomial& mon) const {
    auto it = index_[comp].find(mon.key());
    if (it == index_[comp].end()) throw Error(ErrorCode::Internal, "monomial outside degree piece");
    return it->second;
  }

 private:
  std::vector<std::pair<std::uint32_t, Monomial>> elems_;
  std::vector<std::unordered_map<std::uint64_t, std::size_t>> index_;
};

/// Matrix of the map restricted to bidegree d (rows: target piece, columns: source piece).
inline DenseMatrix degree_matrix(const Presentation& phi, const PieceBasis& rows,
                                 const PieceBasis& cols) {
  const auto& f = phi.ring().field();
  DenseMatrix m(f, rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto& col = phi.columns[cols.comp(j)];
    const Monomial& u = cols.mon(j);
    for (const auto& t : col.terms()) m(rows.index(t.comp, t.mon * u), j) = t.coeff;
  }
  return m;
}

inline DenseMatrix degree_matrix(const Presentation& phi, Bidegree d) {
  return degree_matrix(phi, PieceBasis(phi.target, d), PieceBasis(phi.source, d));
}

/// dim_K M_d = dim F0_d - rank of the relation matrix in bidegree d.
inline long long hilbert_value(const Presentation& M, Bidegree d) {
  long long total = M.target.piece_dim(d);
  if (total == 0 || M.source.rank() == 0) return total;
  return total - static_cast<long long>(rank(degree_matrix(M, d)));
}

inline GradedTable hilbert_table(const Presentation& M, const Window& w) {
  GradedTable t(w);
  w.for_each([&](Bidegree d) { t.set(d, hilbert_value(M, d)); });
  return t;
}

namespace detail {

inline void drop_column(Presentation& p, std::size_t l) {
  p.columns.erase(p.columns.begin() + static_cast<long>(l));
  p.source.shifts.erase(p.source.shifts.begin() + static_cast<long>(l));
}

/// Removes target generator r; terms on it are discarded.
inline void drop_row(Presentation& p, std::uint32_t r) {
  p.target.shifts.erase(p.target.shifts.begin() + r);
  for (auto& col : p.columns) {
    auto& terms = col.mutable_terms();
    std::erase_if(terms, [r](const ModTerm& t) { return t.comp == r; });
    for (auto& t : terms)
      if (t.comp > r) --t.comp;
  }
}

inline void drop_zero_columns(Presentation& p) {
  for (std::size_t l = p.columns.size(); l-- > 0;)
    if (p.columns[l].is_zero()) drop_column(p, l);
}

/// Finds a column with a nonzero constant entry; returns (column, row).
inline std::optional<std::pair<std::size_t, std::uint32_t>> find_unit(const Presentation& p) {
  for (std::size_t l = 0; l < p.columns.size(); ++l)
    for (const auto& t : p.columns[l].terms())
      if (t.mon.total_degree() == 0 && p.target.shifts[t.comp] == p.source.shifts[l]) return std::pair{l, t.comp};
  return std::nullopt;
}

/// Splits off the trivial summand e_c -> u*f_r: clears row r from the other
/// columns, then removes column c and row r.
inline void split_unit(Presentation& p, std::size_t c, std::uint32_t r) {
  const auto& f = p.ring().field();
  const ModuleElement pivot = p.columns[c];
  Coeff u = 0;
  for (const auto& t : pivot.terms())
    if (t.comp == r) u = t.coeff;
  Coeff uinv = f.inv(u);
  for (std::size_t l = 0; l < p.columns.size(); ++l) {
    if (l == c) continue;
    ModuleElement& col = p.columns[l];
    std::vector<Term> entry;
    for (const auto& t : col.terms())
      if (t.comp == r) entry.push_back({t.mon, f.mul(t.coeff, uinv)});
    for (const auto& t : entry) col = col.minus_scaled(f, pivot, t.coeff, t.mon);
  }
  drop_column(p, c);
  drop_row(p, r);
}

}  // namespace detail

/// Eliminates unit entries and zero relations; afterwards the generators are minimal.
inline Presentation prune_units(Presentation p) {
  detail::drop_zero_columns(p);
  while (auto u = detail::find_unit(p)) {
    detail::split_unit(p, u->first, u->second);
    detail::drop_zero_columns(p);
  }
  return p;
}

/// Bidegrees of bihomogeneous elements, in order.
inline std::vector<Bidegree> degrees_of(const FreeModule& F, const std::vector<ModuleElement>& elems) {
  std::vector<Bidegree> out;
  out.reserve(elems.size());
  for (const auto& e : elems) {
    auto d = element_degree(F, e);
    if (!d) throw Error(ErrorCode::NotBihomogeneous, "element is not bihomogeneous");
    out.push_back(*d);
  }
  return out;
}

/// Generators of ker(phi) via a Groebner basis of the graph {(phi(v), v)} in
/// target (+) source, where position-over-term eliminates the target block.
inline std::vector<ModuleElement> kernel_generators(const Presentation& phi) {
  const auto r0 = static_cast<long>(phi.target.rank());
  if (phi.source.rank() == 0) return {};
  std::vector<Bidegree> shifts = phi.target.shifts;
  shifts.insert(shifts.end(), phi.source.shifts.begin(), phi.source.shifts.end());
  FreeModule graph(phi.ring(), shifts);
  const auto& f = phi.ring().field();
  std::vector<ModuleElement> gens;
  for (std::size_t l = 0; l < phi.columns.size(); ++l)
    gens.push_back(phi.columns[l].plus(f, ModuleElement::basis(static_cast<std::uint32_t>(r0 + l))));
  GroebnerBasis G = buchberger(graph, gens);
  std::vector<ModuleElement> out;
  for (const auto& g : G.elements)
    if (static_cast<long>(g.lead().comp) >= r0) out.push_back(g.shifted_components(-r0));
  return out;
}

/// Presentation of ker(phi) as a module.
inline Presentation kernel_presentation(const Presentation& phi) {
  auto gens = kernel_generators(phi);
  if (gens.empty()) return Presentation::zero(phi.ring());
  Presentation kappa(phi.source, FreeModule(phi.ring(), degrees_of(phi.source, gens)), gens);
  auto rels = kernel_generators(kappa);
  Presentation out(kappa.source, FreeModule(phi.ring(), degrees_of(kappa.source, rels)), rels);
  return prune_units(std::move(out));
}

/// Presentation of (im B + im A) / im A, i.e. im B / im A when im A lies in im B.
/// B and A are maps into the same free module.
inline Presentation quotient_presentation(const Presentation& B, const Presentation& A) {
  if (!(B.target == A.target)) throw Error(ErrorCode::RingMismatch, "quotient of submodules of different modules");
  if (B.source.rank() == 0) return Presentation::zero(B.ring());
  const auto rb = static_cast<std::uint32_t>(B.source.rank());
  std::vector<Bidegree> shifts = B.source.shifts;
  shifts.insert(shifts.end(), A.source.shifts.begin(), A.source.shifts.end());
  std::vector<ModuleElement> cols = B.columns;
  cols.insert(cols.end(), A.columns.begin(), A.columns.end());
  Presentation combined(B.target, FreeModule(B.ring(), shifts), cols);
  std::vector<ModuleElement> rels;
  for (auto k : kernel_generators(combined)) {
    std::erase_if(k.mutable_terms(), [rb](const ModTerm& t) { return t.comp >= rb; });
    if (!k.is_zero()) rels.push_back(std::move(k));
  }
  Presentation out(B.source, FreeModule(B.ring(), degrees_of(B.source, rels)), rels);
  return prune_units(std::move(out));
}

/// Identity map of F, as generators of F itself.
inline Presentation identity_map(const FreeModule& F) {
  Presentation id(F, F, {});
  for (std::uint32_t k = 0; k < F.rank(); ++k) id.columns.push_back(ModuleElement::basis(k));
  return id;
}

/// ker B / im A for  A: . -> F,  B: F -> .  ; a missing B means B = 0.
inline Presentation homology_presentation(const Presentation& A, const std::optional<Presentation>& B) {
  const FreeModule& F = A.target;
  if (F.rank() == 0) return Presentation::zero(F.ring);
  Presentation kernel_map = identity_map(F);
  if (B) {
    auto gens = kernel_generators(*B);
    kernel_map = Presentation(F, FreeModule(F.ring, degrees_of(F, gens)), gens);
  }
  return quotient_presentation(kernel_map, A);
}

/// F_0 <- F_1 <- ... <- F_l, with maps[i] : F_{i+1} -> F_i.
struct FreeResolution {
  FreeModule F0;
  std::vector<Presentation> maps;
  bool minimal = true;

  std::size_t length() const noexcept { return maps.size(); }

  const FreeModule& module(std::size_t i) const {
    if (i == 0) return F0;
    return maps.at(i - 1).source;
  }

  /// Graded Betti data: shifts of F_i.
  std::vector<std::vector<Bidegree>> betti() const {
    std::vector<std::vector<Bidegree>> out{F0.shifts};
    for (const auto& m : maps) out.push_back(m.source.shifts);
    return out;
  }

  /// Minimal presentation of M: F_0 <- F_1.
  Presentation presentation() const { return maps.empty() ? Presentation::free(F0) : maps.front(); }
};

struct ResolveOptions {
  /// Split off unit entries as the resolution is built. Without it the
  /// resolution keeps every Groebner kernel generator and is cut off at
  /// `max_length` maps (default: number of variables + 1).
  bool minimize = true;
  std::optional<std::size_t> max_length;
};

/// Bigraded free resolution. With minimize=true (default) the result is the
/// minimal resolution: every map is free of unit entries, length <= m + n.
inline FreeResolution resolve(const Presentation& M, ResolveOptions opt = {}) {
  M.validate();
  const std::size_t nvars = static_cast<std::size_t>(M.ring().nvars());
  Presentation first = M;
  if (opt.minimize) {
    first = prune_units(std::move(first));
  } else {
    detail::drop_zero_columns(first);
  }
  FreeResolution res{first.target, {}, opt.minimize};
  if (first.source.rank() > 0) res.maps.push_back(std::move(first));
  std::size_t limit = opt.max_length.value_or(nvars + 1);

  for (std::size_t i = 0; i < res.maps.size(); ++i) {
    if (!opt.minimize && res.maps.size() >= limit) break;
    auto gens = kernel_generators(res.maps[i]);
    if (gens.empty()) break;
    const FreeModule& Fi = res.maps[i].source;
    res.maps.emplace_back(Fi, FreeModule(Fi.ring, degrees_of(Fi, gens)), std::move(gens));
    if (opt.minimize) {
      Presentation& next = res.maps[i + 1];
      while (auto u = detail::find_unit(next)) {
        detail::split_unit(next, u->first, u->second);
        detail::drop_column(res.maps[i], u->second);
      }
      detail::drop_zero_columns(next);
      if (next.source.rank() == 0) res.maps.pop_back();
      if (res.maps[i].source.rank() == 0) {
        res.maps.erase(res.maps.begin() + static_cast<long>(i), res.maps.end());
        break;
      }
      if (res.maps.size() > nvars + 1) throw Error(ErrorCode::Internal, "resolution longer than m + n");
    }
  }
  if (opt.minimize && res.maps.size() > nvars) throw Error(ErrorCode::Internal, "resolution longer than m + n");
  return res;
}

/// Largest total degree among all shifts of the resolution.
inline int max_total_shift(const FreeResolution& res) {
  int best = std::numeric_limits<int>::min();
  for (std::size_t i = 0; i <= res.length(); ++i)
    for (const auto& s : res.module(i).shifts) best = std::max(best, s.total());
  return best;
}

/// dim_K of the total-degree-D piece of M.
inline long long total_degree_value(const Presentation& M, int D) {
  if (M.target.rank() == 0) return 0;
  int min_a = std::numeric_limits<int>::max(), min_b = std::numeric_limits<int>::max();
  for (const auto& s : M.target.shifts) {
    min_a = std::min(min_a, s.a);
    min_b = std::min(min_b, s.b);
  }
  long long total = 0;
  for (int a = min_a; a <= D - min_b; ++a) total += hilbert_value(M, {a, D - a});
  return total;
}

namespace detail {

// Degree of the polynomial through the values, or -1 if they all vanish;
// nullopt when the top difference is not identically zero.
inline std::optional<int> fitted_degree(std::vector<long long> values, int max_degree) {
  int degree = -1;
  for (int k = 0; k <= max_degree + 1 && !values.empty(); ++k) {
    bool all_zero = std::all_of(values.begin(), values.end(), [](long long v) { return v == 0; });
    if (!all_zero) degree = k;
    std::vector<long long> next;
    for (std::size_t i = 1; i < values.size(); ++i) next.push_back(values[i] - values[i - 1]);
    values = std::move(next);
  }
  if (degree > max_degree) return std::nullopt;
  return degree;
}

}  // namespace detail

/// Krull dimension: 1 + degree of the total-degree Hilbert polynomial (0 for
/// nonzero finite length modules, -1 for the zero module). Values are taken
/// beyond every shift of the minimal resolution, where the Hilbert function
/// is polynomial; the fitted degree is cross-checked at a second offset.
inline int krull_dim(const Presentation& M, const FreeResolution& res) {
  if (res.F0.rank() == 0) return -1;
  const int N = M.ring().nvars();
  auto degree_at = [&](int start) {
    std::vector<long long> values;
    for (int D = start; D <= start + N + 1; ++D) values.push_back(total_degree_value(M, D));
    auto deg = detail::fitted_degree(values, N - 1);
    if (!deg) throw Error(ErrorCode::Internal, "Hilbert function is not polynomial past the resolution shifts");
    return *deg;
  };
  const int start = max_total_shift(res) + 1;
  int d1 = degree_at(start);
  int d2 = degree_at(start + 2);
  if (d1 != d2) throw Error(ErrorCode::Internal, "Hilbert polynomial degree unstable");
  return d1 + 1;
}

inline int krull_dim(const Presentation& M) { return krull_dim(M, resolve(M)); }

}  // namespace bicoh
