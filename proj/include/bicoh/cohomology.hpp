#pragma once

// Local cohomology tables for P = (x), Q = (y) and R+ = (x, y) via graded
// local duality on strands, Matlis flips, and a Cech-complex oracle that
// never touches a Groebner basis.

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "ext.hpp"
#include "parallel.hpp"
#include "strand.hpp"
#include "table.hpp"

namespace bicoh {

enum class Theory { P, Q, Rplus };

inline std::string to_string(Theory t) {
  switch (t) {
    case Theory::P: return "P";
    case Theory::Q: return "Q";
    case Theory::Rplus: return "R+";
  }
  return "?";
}

inline Theory parse_theory(const std::string& s) {
  if (s == "P" || s == "p") return Theory::P;
  if (s == "Q" || s == "q") return Theory::Q;
  if (s == "R+" || s == "r+" || s == "Rplus" || s == "R") return Theory::Rplus;
  throw Error(ErrorCode::BadTheory, "unknown theory \"" + s + "\" (expected P, Q or R+)");
}

/// P needs x-variables, Q needs y-variables.
inline void check_theory(const RingSpec& ring, Theory t) {
  if (ring.flavor() != RingFlavor::Full) throw Error(ErrorCode::BadTheory, "local cohomology is taken over S");
  if (t == Theory::P && ring.m() < 1) throw Error(ErrorCode::BadTheory, "theory P needs m >= 1");
  if (t == Theory::Q && ring.n() < 1) throw Error(ErrorCode::BadTheory, "theory Q needs n >= 1");
}

/// dim H^i_theory(-) over a window; when dual_flipped the cells are those of the Matlis dual.
struct CohomologyTable {
  Theory theory = Theory::Q;
  int index = 0;
  GradedTable table;
  bool dual_flipped = false;

  long long at(Bidegree d) const { return table.at(d); }
  const Window& window() const { return table.window(); }

  friend bool operator==(const CohomologyTable&, const CohomologyTable&) = default;
};

/// (T^v)_(a,b) = T_(-a,-b).
inline CohomologyTable matlis_flip(const CohomologyTable& T) {
  CohomologyTable out{T.theory, T.index, GradedTable(T.window().negated()), !T.dual_flipped};
  out.window().for_each([&](Bidegree d) { out.table.set(d, T.at(-d)); });
  return out;
}

/// Local cohomology of one module. Strand Ext complexes are computed once and
/// reused across indices and tables.
class LocalCohomology {
 public:
  explicit LocalCohomology(Presentation M) : M_(std::move(M)) {}

  const Presentation& module() const noexcept { return M_; }

  const ExtComplex& ext() {
    if (!ext_) ext_ = std::make_unique<ExtComplex>(M_);
    return *ext_;
  }

  /// dim H^i_theory(M)_d
  long long dim(Theory theory, int i, Bidegree d) {
    check_theory(M_.ring(), theory);
    const int m = M_.ring().m(), n = M_.ring().n();
    switch (theory) {
      case Theory::Q:
        return strand_ext(theory, d.a).dim(n - i, {0, -d.b});
      case Theory::P:
        return strand_ext(theory, d.b).dim(m - i, {-d.a, 0});
      case Theory::Rplus:
        return ext().dim(m + n - i, -d);
    }
    return 0;
  }

  CohomologyTable table(Theory theory, int i, const Window& w) {
    check_theory(M_.ring(), theory);
    prepare(theory, w);
    CohomologyTable out{theory, i, GradedTable(w), false};
    std::vector<Bidegree> cells;
    w.for_each([&](Bidegree d) { cells.push_back(d); });
    std::vector<long long> values(cells.size());
    parallel_for(cells.size(), [&](std::size_t c) { values[c] = dim(theory, i, cells[c]); });
    for (std::size_t c = 0; c < cells.size(); ++c) out.table.set(cells[c], values[c]);
    return out;
  }

  /// Computes every strand the window needs, so that later lookups are read-only.
  void prepare(Theory theory, const Window& w) {
    check_theory(M_.ring(), theory);
    if (theory == Theory::Rplus) {
      ext();
      return;
    }
    auto& cache = theory == Theory::Q ? y_strands_ : x_strands_;
    std::vector<int> missing;
    int lo = theory == Theory::Q ? w.a_min : w.b_min;
    int hi = theory == Theory::Q ? w.a_max : w.b_max;
    for (int j = lo; j <= hi; ++j)
      if (!cache.count(j)) missing.push_back(j);
    std::vector<std::unique_ptr<ExtComplex>> built(missing.size());
    parallel_for(missing.size(), [&](std::size_t k) {
      Presentation s = theory == Theory::Q ? y_strand(M_, missing[k]) : x_strand(M_, missing[k]);
      built[k] = std::make_unique<ExtComplex>(s);
    });
    for (std::size_t k = 0; k < missing.size(); ++k) cache.emplace(missing[k], std::move(built[k]));
  }

  /// The strand complex itself (x-strand for P, y-strand for Q).
  const ExtComplex& strand_ext(Theory theory, int j) {
    auto& cache = theory == Theory::Q ? y_strands_ : x_strands_;
    auto it = cache.find(j);
    if (it != cache.end()) return *it->second;
    Presentation s = theory == Theory::Q ? y_strand(M_, j) : x_strand(M_, j);
    return *cache.emplace(j, std::make_unique<ExtComplex>(s)).first->second;
  }

 private:
  Presentation M_;
  std::unique_ptr<ExtComplex> ext_;
  std::map<int, std::unique_ptr<ExtComplex>> x_strands_;
  std::map<int, std::unique_ptr<ExtComplex>> y_strands_;
};

inline CohomologyTable local_coh_table(const Presentation& M, Theory theory, int i, const Window& w) {
  return LocalCohomology(M).table(theory, i, w);
}

/// Largest i <= n with a nonzero H^i_Q cell in the window, or -1 if every
/// table vanishes there. Only an estimate: cells outside the window are not seen.
inline int cd_estimate(LocalCohomology& lc, const Window& w) {
  for (int i = lc.module().ring().n(); i >= 0; --i)
    if (!lc.table(Theory::Q, i, w).table.is_zero()) return i;
  return -1;
}

inline int cd_estimate(const Presentation& M, const Window& w) {
  LocalCohomology lc(M);
  return cd_estimate(lc, w);
}

/// H^i_I(M)_d from the Cech complex on the generators v_1..v_r of I = P or Q,
/// realised as the direct limit of Koszul complexes on v_1^t..v_r^t. Every
/// graded piece of M is a quotient space F0_e / (relations)_e, so only
/// degreewise linear algebra is involved.
class CechOracle {
 public:
  explicit CechOracle(Presentation M) : M_(std::move(M)) {
    for (const auto& s : M_.source.shifts) max_rel_degree_ = std::max(max_rel_degree_, s.total());
  }

  /// dims of H^0..H^r at d. The iteration cap is 4 + max relation degree + radius
  /// (radius defaults to the cell's own sup-norm).
  std::vector<long long> dims(Theory theory, Bidegree d, std::optional<int> radius = {}) {
    check_theory(M_.ring(), theory);
    if (theory == Theory::Rplus) throw Error(ErrorCode::BadTheory, "the Cech oracle covers P and Q only");
    const RingSpec& S = M_.ring();
    const int r = theory == Theory::P ? S.m() : S.n();
    const int first_var = theory == Theory::P ? 0 : S.m();
    const Bidegree unit = theory == Theory::P ? Bidegree{1, 0} : Bidegree{0, 1};
    const int cap = 4 + max_rel_degree_ + radius.value_or(std::max(std::abs(d.a), std::abs(d.b)));

    if (M_.target.rank() == 0) return std::vector<long long>(r + 1, 0);

    std::vector<std::vector<unsigned>> subsets(r + 1);
    for (unsigned mask = 0; mask < (1u << r); ++mask) subsets[std::popcount(mask)].push_back(mask);

    struct Level {
      std::vector<long long> h;
      std::vector<DenseMatrix> diff;  // diff[k] : K^k -> K^{k+1}
    };
    auto build = [&](int t) {
      Level lv;
      for (int k = 0; k < r; ++k) lv.diff.push_back(koszul_differential(subsets, k, t, d, unit, first_var));
      for (int k = 0; k <= r; ++k) {
        long long size = static_cast<long long>(subsets[k].size()) * codim(d + scaled(unit, t * k));
        long long out_rank = k < r ? static_cast<long long>(rank(lv.diff[k])) : 0;
        long long in_rank = k > 0 ? static_cast<long long>(rank(lv.diff[k - 1])) : 0;
        lv.h.push_back(size - out_rank - in_rank);
      }
      return lv;
    };

    // rank of H^k(K_t) -> H^k(K_{t+1}), for all k
    auto induced_ranks = [&](const Level& a, const Level& b, int t) {
      std::vector<long long> out;
      for (int k = 0; k <= r; ++k) {
        const Bidegree e = d + scaled(unit, t * k);
        const long long size = static_cast<long long>(subsets[k].size()) * codim(e);
        DenseMatrix Z = k < r ? kernel_basis(a.diff[k]) : DenseMatrix::identity(M_.ring().field(), size);
        DenseMatrix T = transition(subsets, k, t, d, unit, first_var);
        DenseMatrix image = T * Z;
        const long long next_size = static_cast<long long>(subsets[k].size()) * codim(d + scaled(unit, (t + 1) * k));
        DenseMatrix B = k > 0 ? b.diff[k - 1] : DenseMatrix(M_.ring().field(), next_size, 0);
        out.push_back(static_cast<long long>(rank(DenseMatrix::hconcat(B, image))) -
                      static_cast<long long>(rank(B)));
      }
      return out;
    };

    Level prev = build(1);
    Level cur = build(2);
    bool stable_once = false;
    for (int t = 1; t + 1 <= cap; ++t) {
      auto ranks = induced_ranks(prev, cur, t);
      bool stable = true;
      for (int k = 0; k <= r; ++k)
        if (prev.h[k] != cur.h[k] || ranks[k] != cur.h[k]) stable = false;
      if (stable && stable_once) return cur.h;
      stable_once = stable;
      prev = std::move(cur);
      cur = build(t + 2);
    }
    throw Error(ErrorCode::NoStabilize, "Cech complex did not stabilize at " + to_string(d) + " within " +
                                            std::to_string(cap) + " steps");
  }

  long long dim(Theory theory, int i, Bidegree d, std::optional<int> radius = {}) {
    auto v = dims(theory, d, radius);
    if (i < 0 || static_cast<std::size_t>(i) >= v.size()) return 0;
    return v[i];
  }

 private:
  struct Piece {
    PieceBasis basis;
    Subspace relations;
  };

  static Bidegree scaled(Bidegree u, int k) { return {u.a * k, u.b * k}; }

  const Piece& piece(Bidegree e) {
    auto it = pieces_.find(e);
    if (it != pieces_.end()) return *it->second;
    PieceBasis basis(M_.target, e);
    DenseMatrix rel = M_.source.rank() ? degree_matrix(M_, basis, PieceBasis(M_.source, e)).transpose()
                                       : DenseMatrix(M_.ring().field(), 0, basis.size());
    auto p = std::make_unique<Piece>(Piece{std::move(basis), Subspace(std::move(rel))});
    return *pieces_.emplace(e, std::move(p)).first->second;
  }

  long long codim(Bidegree e) { return static_cast<long long>(piece(e).relations.codim()); }

  /// Matrix of multiplication by mu : M_e -> M_{e + deg mu} in quotient coordinates.
  const DenseMatrix& mult(Bidegree e, const Monomial& mu) {
    auto key = std::tuple{e.a, e.b, mu.key()};
    auto it = mults_.find(key);
    if (it != mults_.end()) return it->second;
    const Piece& src = piece(e);
    const Piece& dst = piece(e + mu.bidegree(M_.ring().m()));
    const auto& f = M_.ring().field();
    DenseMatrix m(f, dst.relations.codim(), src.relations.codim());
    std::vector<Coeff> col(dst.relations.codim());
    for (std::size_t q = 0; q < src.relations.codim(); ++q) {
      std::size_t s = src.relations.quotient_basis(q);
      std::size_t target = dst.basis.index(src.basis.comp(s), src.basis.mon(s) * mu);
      std::fill(col.begin(), col.end(), 0);
      dst.relations.unit_quotient_coords(target, col, 1);
      for (std::size_t row = 0; row < col.size(); ++row) m(row, q) = col[row];
    }
    return mults_.emplace(key, std::move(m)).first->second;
  }

  static void add_block(DenseMatrix& big, std::size_t r0, std::size_t c0, const DenseMatrix& block, Coeff sign,
                        const PrimeField& f) {
    for (std::size_t i = 0; i < block.rows(); ++i)
      for (std::size_t j = 0; j < block.cols(); ++j)
        if (block(i, j)) big(r0 + i, c0 + j) = f.mul(sign, block(i, j));
  }

  static std::size_t subset_pos(const std::vector<unsigned>& level, unsigned mask) {
    return static_cast<std::size_t>(std::find(level.begin(), level.end(), mask) - level.begin());
  }

  /// K^k_t -> K^{k+1}_t: on the sigma component, multiply by v_j^t with sign (-1)^{#{l in sigma : l < j}}.
  DenseMatrix koszul_differential(const std::vector<std::vector<unsigned>>& subsets, int k, int t, Bidegree d,
                                  Bidegree unit, int first_var) {
    const auto& f = M_.ring().field();
    const int r = static_cast<int>(subsets.size()) - 1;
    const Bidegree src_deg = d + scaled(unit, t * k), dst_deg = d + scaled(unit, t * (k + 1));
    const std::size_t cs = codim(src_deg), cd = codim(dst_deg);
    DenseMatrix out(f, subsets[k + 1].size() * cd, subsets[k].size() * cs);
    if (cs == 0 || cd == 0) return out;
    for (std::size_t a = 0; a < subsets[k].size(); ++a) {
      unsigned sigma = subsets[k][a];
      for (int j = 0; j < r; ++j) {
        if (sigma & (1u << j)) continue;
        int below = std::popcount(sigma & ((1u << j) - 1));
        Coeff sign = below % 2 ? f.neg(1) : 1;
        std::size_t b = subset_pos(subsets[k + 1], sigma | (1u << j));
        add_block(out, b * cd, a * cs, mult(src_deg, Monomial::variable(first_var + j, t)), sign, f);
      }
    }
    return out;
  }

  /// K^k_t -> K^k_{t+1}: on the sigma component, multiply by v_sigma.
  DenseMatrix transition(const std::vector<std::vector<unsigned>>& subsets, int k, int t, Bidegree d, Bidegree unit,
                         int first_var) {
    const auto& f = M_.ring().field();
    const Bidegree src_deg = d + scaled(unit, t * k), dst_deg = d + scaled(unit, (t + 1) * k);
    const std::size_t cs = codim(src_deg), cd = codim(dst_deg);
    DenseMatrix out(f, subsets[k].size() * cd, subsets[k].size() * cs);
    if (cs == 0 || cd == 0) return out;
    for (std::size_t a = 0; a < subsets[k].size(); ++a) {
      unsigned sigma = subsets[k][a];
      Monomial v;
      for (int j = 0; j < 32; ++j)
        if (sigma & (1u << j)) v = v * Monomial::variable(first_var + j);
      add_block(out, a * cd, a * cs, mult(src_deg, v), 1, f);
    }
    return out;
  }

  Presentation M_;
  int max_rel_degree_ = 0;
  std::map<Bidegree, std::unique_ptr<Piece>> pieces_;
  std::map<std::tuple<int, int, std::uint64_t>, DenseMatrix> mults_;
};

inline long long cech_oracle(const Presentation& M, Theory theory, int i, Bidegree d) {
  return CechOracle(M).dim(theory, i, d);
}

}  // namespace bicoh
