#pragma once

// Buchberger's algorithm for graded submodules of shifted free modules,
// normal forms, and Schreyer syzygies. Position-over-term order: a smaller
// generator index is larger, ties broken by degrevlex.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "error.hpp"
#include "poly.hpp"

namespace bicoh {

/// F = (+)_k R(-shift_k); shift_k is the bidegree of the k-th basis vector.
struct FreeModule {
  RingSpec ring;
  std::vector<Bidegree> shifts;

  FreeModule(RingSpec r, std::vector<Bidegree> s = {}) : ring(std::move(r)), shifts(std::move(s)) {}

  std::size_t rank() const noexcept { return shifts.size(); }

  /// dim_K F_d = sum_k dim R_{d - shift_k}
  long long piece_dim(Bidegree d) const {
    long long total = 0;
    for (const auto& s : shifts) {
      Bidegree e = d - s;
      long long x = ring.m() ? monomial_count(e.a, ring.m()) : (e.a == 0 ? 1 : 0);
      long long y = ring.n() ? monomial_count(e.b, ring.n()) : (e.b == 0 ? 1 : 0);
      total += x * y;
    }
    return total;
  }

  friend bool operator==(const FreeModule& l, const FreeModule& r) {
    return l.ring == r.ring && l.shifts == r.shifts;
  }
};

struct ModTerm {
  std::uint32_t comp;
  Monomial mon;
  Coeff coeff;
};

/// >0 when l is larger than r in position-over-term order.
inline int compare_pot(std::uint32_t lc, const Monomial& lm, std::uint32_t rc, const Monomial& rm) noexcept {
  if (lc != rc) return lc < rc ? 1 : -1;
  return compare_degrevlex(lm, rm);
}

/// Element of a free module as a sparse sorted list of terms (descending POT).
class ModuleElement {
 public:
  ModuleElement() = default;
  explicit ModuleElement(std::vector<ModTerm> terms, const PrimeField& field) : terms_(std::move(terms)) {
    normalize(field);
  }

  /// The k-th coordinate vector times a monomial.
  static ModuleElement basis(std::uint32_t comp, const Monomial& mon = Monomial(), Coeff coeff = 1) {
    ModuleElement e;
    if (coeff) e.terms_.push_back({comp, mon, coeff});
    return e;
  }

  static ModuleElement from_coordinates(const std::vector<Polynomial>& coords) {
    std::vector<ModTerm> terms;
    if (coords.empty()) return {};
    for (std::uint32_t k = 0; k < coords.size(); ++k)
      for (const auto& t : coords[k].terms()) terms.push_back({k, t.mon, t.coeff});
    return ModuleElement(std::move(terms), coords.front().ring().field());
  }

  std::vector<Polynomial> coordinates(const FreeModule& F) const {
    std::vector<std::vector<Term>> parts(F.rank());
    for (const auto& t : terms_) {
      if (t.comp >= F.rank()) throw Error(ErrorCode::RingMismatch, "component outside the free module");
      parts[t.comp].push_back({t.mon, t.coeff});
    }
    std::vector<Polynomial> out;
    out.reserve(F.rank());
    for (auto& p : parts) out.emplace_back(F.ring, std::move(p));
    return out;
  }

  Polynomial coordinate(const FreeModule& F, std::uint32_t k) const {
    std::vector<Term> part;
    for (const auto& t : terms_)
      if (t.comp == k) part.push_back({t.mon, t.coeff});
    return Polynomial(F.ring, std::move(part));
  }

  const std::vector<ModTerm>& terms() const noexcept { return terms_; }
  std::vector<ModTerm>& mutable_terms() noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  const ModTerm& lead() const { return terms_.front(); }

  /// this - c * mon * g
  ModuleElement minus_scaled(const PrimeField& f, const ModuleElement& g, Coeff c, const Monomial& mon) const {
    ModuleElement r;
    r.terms_.reserve(terms_.size() + g.terms_.size());
    Coeff nc = f.neg(c);
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < g.terms_.size()) {
      if (j == g.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
        continue;
      }
      ModTerm gt{g.terms_[j].comp, g.terms_[j].mon * mon, f.mul(nc, g.terms_[j].coeff)};
      if (i == terms_.size()) {
        r.terms_.push_back(gt);
        ++j;
        continue;
      }
      int cmp = compare_pot(terms_[i].comp, terms_[i].mon, gt.comp, gt.mon);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        r.terms_.push_back(gt);
        ++j;
      } else {
        Coeff s = f.add(terms_[i].coeff, gt.coeff);
        if (s) r.terms_.push_back({gt.comp, gt.mon, s});
        ++i;
        ++j;
      }
    }
    return r;
  }

  ModuleElement plus(const PrimeField& f, const ModuleElement& g) const {
    return minus_scaled(f, g, f.neg(1), Monomial());
  }

  ModuleElement scaled(const PrimeField& f, Coeff c, const Monomial& mon = Monomial()) const {
    ModuleElement r;
    if (!c) return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.comp, t.mon * mon, f.mul(t.coeff, c)});
    return r;
  }

  /// Multiplies by a polynomial.
  ModuleElement times(const Polynomial& p) const {
    const auto& f = p.ring().field();
    ModuleElement r;
    for (const auto& t : p.terms()) r = r.minus_scaled(f, *this, f.neg(t.coeff), t.mon);
    return r;
  }

  ModuleElement monic(const PrimeField& f) const {
    if (terms_.empty()) return *this;
    return scaled(f, f.inv(terms_.front().coeff));
  }

  /// Renumbers components: comp -> comp + offset.
  ModuleElement shifted_components(long offset) const {
    ModuleElement r = *this;
    for (auto& t : r.terms_) t.comp = static_cast<std::uint32_t>(static_cast<long>(t.comp) + offset);
    return r;
  }

  friend bool operator==(const ModuleElement& l, const ModuleElement& r) {
    if (l.terms_.size() != r.terms_.size()) return false;
    for (std::size_t i = 0; i < l.terms_.size(); ++i) {
      const auto& a = l.terms_[i];
      const auto& b = r.terms_[i];
      if (a.comp != b.comp || !(a.mon == b.mon) || a.coeff != b.coeff) return false;
    }
    return true;
  }

 private:
  void normalize(const PrimeField& f) {
    std::sort(terms_.begin(), terms_.end(), [](const ModTerm& l, const ModTerm& r) {
      return compare_pot(l.comp, l.mon, r.comp, r.mon) > 0;
    });
    std::vector<ModTerm> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!out.empty() && out.back().comp == t.comp && out.back().mon == t.mon)
        out.back().coeff = f.add(out.back().coeff, t.coeff);
      else
        out.push_back(t);
    }
    std::erase_if(out, [](const ModTerm& t) { return t.coeff == 0; });
    terms_ = std::move(out);
  }

  std::vector<ModTerm> terms_;
};

/// Bidegree of a nonzero bihomogeneous element, or nullopt when it is not bihomogeneous.
inline std::optional<Bidegree> element_degree(const FreeModule& F, const ModuleElement& v) {
  if (v.is_zero()) return std::nullopt;
  std::optional<Bidegree> d;
  for (const auto& t : v.terms()) {
    if (t.comp >= F.rank()) throw Error(ErrorCode::RingMismatch, "component outside the free module");
    Bidegree e = t.mon.bidegree(F.ring.m()) + F.shifts[t.comp];
    if (d && *d != e) return std::nullopt;
    d = e;
  }
  return d;
}

struct GroebnerBasis {
  FreeModule ambient;
  std::vector<ModuleElement> elements;
};

namespace detail {

struct Reducer {
  const PrimeField& field;
  const std::vector<ModuleElement>& basis;
  // basis indices per component, for divisor lookup
  std::map<std::uint32_t, std::vector<std::size_t>> by_comp;

  Reducer(const PrimeField& f, const std::vector<ModuleElement>& b) : field(f), basis(b) {
    for (std::size_t i = 0; i < b.size(); ++i) by_comp[b[i].lead().comp].push_back(i);
  }

  void add(std::size_t i) { by_comp[basis[i].lead().comp].push_back(i); }

  std::optional<std::size_t> find_divisor(const ModTerm& t, std::optional<std::size_t> skip = {}) const {
    auto it = by_comp.find(t.comp);
    if (it == by_comp.end()) return std::nullopt;
    for (auto i : it->second) {
      if (skip && *skip == i) continue;
      if (basis[i].lead().mon.divides(t.mon)) return i;
    }
    return std::nullopt;
  }

  /// Reduces v. With full=false stops once the lead term is irreducible.
  /// When `quotients` is given, records v_in = sum q_i g_i + result.
  ModuleElement reduce(ModuleElement v, bool full, std::vector<ModTerm>* quotients = nullptr,
                       std::optional<std::size_t> skip = {}) const {
    std::vector<ModTerm> done;
    while (!v.is_zero()) {
      const ModTerm lt = v.lead();
      auto d = find_divisor(lt, skip);
      if (d) {
        const auto& g = basis[*d];
        Coeff c = field.mul(lt.coeff, field.inv(g.lead().coeff));
        Monomial q = lt.mon / g.lead().mon;
        if (quotients) quotients->push_back({static_cast<std::uint32_t>(*d), q, c});
        v = v.minus_scaled(field, g, c, q);
      } else {
        if (!full) break;
        done.push_back(lt);
        v.mutable_terms().erase(v.mutable_terms().begin());
      }
    }
    if (done.empty()) return v;
    auto& rest = v.mutable_terms();
    done.insert(done.end(), rest.begin(), rest.end());
    ModuleElement out;
    out.mutable_terms() = std::move(done);
    return out;
  }
};

struct SPair {
  int total_degree;
  std::size_t i, j;
};

inline ModuleElement s_polynomial(const PrimeField& f, const ModuleElement& gi, const ModuleElement& gj) {
  Monomial l = Monomial::lcm(gi.lead().mon, gj.lead().mon);
  ModuleElement a = gi.scaled(f, f.inv(gi.lead().coeff), l / gi.lead().mon);
  return a.minus_scaled(f, gj, f.inv(gj.lead().coeff), l / gj.lead().mon);
}

/// Removes elements with redundant lead terms and tail-reduces the rest.
inline std::vector<ModuleElement> auto_reduce(const PrimeField& f, std::vector<ModuleElement> g) {
  std::vector<ModuleElement> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j || g[j].lead().comp != g[i].lead().comp) continue;
      if (!g[j].lead().mon.divides(g[i].lead().mon)) continue;
      // equal leads: keep the earliest
      redundant = !(g[j].lead().mon == g[i].lead().mon) || j < i;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<ModuleElement> out;
  out.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    Reducer red(f, minimal);
    ModuleElement head = ModuleElement::basis(minimal[i].lead().comp, minimal[i].lead().mon, minimal[i].lead().coeff);
    ModuleElement tail = minimal[i].minus_scaled(f, head, 1, Monomial());
    tail = red.reduce(tail, true, nullptr, i);
    out.push_back(head.plus(f, tail).monic(f));
  }
  std::sort(out.begin(), out.end(), [](const ModuleElement& a, const ModuleElement& b) {
    return compare_pot(a.lead().comp, a.lead().mon, b.lead().comp, b.lead().mon) < 0;
  });
  return out;
}

}  // namespace detail

/// Groebner basis of the submodule generated by `gens` (all bihomogeneous in F).
/// Pairs are processed by increasing total degree; coprime leads in the same
/// position are skipped (Buchberger's first criterion) when both elements are
/// supported in that single position. The result is reduced.
inline GroebnerBasis buchberger(const FreeModule& F, const std::vector<ModuleElement>& gens) {
  const auto& f = F.ring.field();
  std::vector<std::pair<int, ModuleElement>> inputs;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    auto d = element_degree(F, g);
    if (!d) throw Error(ErrorCode::NotBihomogeneous, "Groebner input is not bihomogeneous");
    inputs.emplace_back(d->total(), g);
  }
  std::stable_sort(inputs.begin(), inputs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<ModuleElement> basis;
  std::vector<int> basis_deg;
  std::vector<bool> single_position;
  detail::Reducer red(f, basis);
  std::vector<detail::SPair> pairs;
  std::size_t next_input = 0;

  auto insert = [&](ModuleElement g, int deg) {
    g = g.monic(f);
    std::size_t idx = basis.size();
    basis.push_back(std::move(g));
    basis_deg.push_back(deg);
    single_position.push_back(std::all_of(basis[idx].terms().begin(), basis[idx].terms().end(),
                                          [&](const ModTerm& t) { return t.comp == basis[idx].lead().comp; }));
    const auto& lt = basis[idx].lead();
    for (std::size_t i = 0; i < idx; ++i) {
      const auto& li = basis[i].lead();
      if (li.comp != lt.comp) continue;
      // The first criterion only holds when both elements live in one position.
      if (Monomial::coprime(li.mon, lt.mon) && single_position[i] && single_position[idx]) continue;
      Monomial l = Monomial::lcm(li.mon, lt.mon);
      int pd = l.total_degree() + F.shifts[lt.comp].total();
      pairs.push_back({pd, i, idx});
    }
    red.add(idx);
  };

  while (next_input < inputs.size() || !pairs.empty()) {
    int deg = std::numeric_limits<int>::max();
    if (next_input < inputs.size()) deg = inputs[next_input].first;
    for (const auto& p : pairs) deg = std::min(deg, p.total_degree);

    std::vector<ModuleElement> batch;
    for (auto it = pairs.begin(); it != pairs.end();) {
      if (it->total_degree == deg) {
        batch.push_back(detail::s_polynomial(f, basis[it->i], basis[it->j]));
        it = pairs.erase(it);
      } else {
        ++it;
      }
    }
    while (next_input < inputs.size() && inputs[next_input].first == deg) batch.push_back(inputs[next_input++].second);

    for (auto& v : batch) {
      ModuleElement r = red.reduce(std::move(v), false);
      if (!r.is_zero()) insert(std::move(r), deg);
    }
  }
  return GroebnerBasis{F, detail::auto_reduce(f, std::move(basis))};
}

/// Fully reduced remainder of v modulo G.
inline ModuleElement normal_form(const ModuleElement& v, const GroebnerBasis& G) {
  detail::Reducer red(G.ambient.ring.field(), G.elements);
  return red.reduce(v, true);
}

inline bool is_member(const ModuleElement& v, const GroebnerBasis& G) { return normal_form(v, G).is_zero(); }

/// Syzygy generators of a Groebner basis, living in the free module whose
/// k-th basis vector has the bidegree of the k-th basis element.
struct SyzygyModule {
  FreeModule ambient;
  std::vector<ModuleElement> elements;
};

/// Schreyer's syzygies: one per pair of basis elements sharing a lead position,
/// from the standard representation of their S-polynomial.
inline SyzygyModule syzygies(const GroebnerBasis& G) {
  const auto& f = G.ambient.ring.field();
  std::vector<Bidegree> shifts;
  for (const auto& g : G.elements) {
    auto d = element_degree(G.ambient, g);
    if (!d) throw Error(ErrorCode::NotBihomogeneous, "basis element is not bihomogeneous");
    shifts.push_back(*d);
  }
  SyzygyModule out{FreeModule(G.ambient.ring, shifts), {}};
  detail::Reducer red(f, G.elements);
  for (std::size_t i = 0; i < G.elements.size(); ++i)
    for (std::size_t j = i + 1; j < G.elements.size(); ++j) {
      const auto& gi = G.elements[i];
      const auto& gj = G.elements[j];
      if (gi.lead().comp != gj.lead().comp) continue;
      Monomial l = Monomial::lcm(gi.lead().mon, gj.lead().mon);
      ModuleElement s = detail::s_polynomial(f, gi, gj);
      std::vector<ModTerm> quotients;
      ModuleElement rem = red.reduce(std::move(s), true, &quotients);
      if (!rem.is_zero()) throw Error(ErrorCode::Internal, "S-polynomial of a Groebner basis did not reduce to zero");
      std::vector<ModTerm> terms;
      terms.push_back({static_cast<std::uint32_t>(i), l / gi.lead().mon, f.inv(gi.lead().coeff)});
      terms.push_back({static_cast<std::uint32_t>(j), l / gj.lead().mon, f.neg(f.inv(gj.lead().coeff))});
      for (const auto& q : quotients) terms.push_back({q.comp, q.mon, f.neg(q.coeff)});
      ModuleElement syz(std::move(terms), f);
      if (!syz.is_zero()) out.elements.push_back(std::move(syz));
    }
  return out;
}

}  // namespace bicoh
