#pragma once

// Asymptotic behaviour of strands: nonvanishing of H^k_{P_0}(N_j) for a run
// of j, limit depth and dimension, regularity growth, and Ext evidence
// tables against a user-supplied module.
//
// "Eventually" always means: constant on the trailing half of the j-window.

#include <algorithm>
#include <climits>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "duality.hpp"

namespace bicoh {

/// Closed range of strand indices.
struct JWindow {
  int lo = 0;
  int hi = 0;

  int size() const noexcept { return hi - lo + 1; }
  /// First index of the trailing half: the last floor(size/2) indices, so the
  /// midpoint of an odd window belongs to neither half.
  int trailing_start() const noexcept { return lo + (size() + 1) / 2; }

  static JWindow parse(const std::string& text) {
    auto colon = text.find(':');
    try {
      if (colon == std::string::npos) throw std::invalid_argument("no colon");
      std::size_t used = 0;
      JWindow w{std::stoi(text.substr(0, colon), &used), 0};
      if (used != colon) throw std::invalid_argument("junk");
      auto rest = text.substr(colon + 1);
      w.hi = std::stoi(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("junk");
      if (w.lo > w.hi) throw Error(ErrorCode::FormatError, "empty j-window \"" + text + "\"");
      return w;
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::FormatError, "j-window must look like jMin:jMax, got \"" + text + "\"");
    }
  }

  std::string to_string() const { return std::to_string(lo) + ":" + std::to_string(hi); }
};

enum class TameVerdict { EventuallyZero, EventuallyNonzero, Inconclusive };

inline std::string to_string(TameVerdict v) {
  switch (v) {
    case TameVerdict::EventuallyZero: return "eventually-zero";
    case TameVerdict::EventuallyNonzero: return "eventually-nonzero";
    case TameVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

inline TameVerdict trailing_verdict(const JWindow& w, const std::vector<bool>& nonzero) {
  const auto first = static_cast<std::size_t>(w.trailing_start() - w.lo);
  if (first >= nonzero.size()) return TameVerdict::Inconclusive;
  bool any = false, all = true;
  for (std::size_t q = first; q < nonzero.size(); ++q) {
    any = any || nonzero[q];
    all = all && nonzero[q];
  }
  if (all) return TameVerdict::EventuallyNonzero;
  if (!any) return TameVerdict::EventuallyZero;
  return TameVerdict::Inconclusive;
}

/// A module is zero iff its minimal presentation has no generators.
inline bool is_zero_module(const Presentation& M) { return resolve(M).F0.rank() == 0; }

/// H^k_{P_0}(N_j) != 0, decided from Ext^{m-k}_{K[x]}(N_j, omega).
inline bool strand_nonvanishing(const Presentation& N, int k, int j) {
  const int m = N.ring().m();
  if (k < 0 || k > m) return false;
  return !is_zero_module(ExtComplex(x_strand(N, j)).presentation(m - k));
}

/// Depth and dimension of a K[x]-module; the zero module gets depth = INT_MAX
/// (infinite) and dim = -1.
struct StrandProfile {
  int depth = INT_MAX;
  int dim = -1;

  bool zero() const noexcept { return dim < 0; }
  friend bool operator==(const StrandProfile&, const StrandProfile&) = default;

  std::string depth_string() const { return zero() ? "inf" : std::to_string(depth); }
};

inline StrandProfile strand_profile(const Presentation& strand) {
  ExtComplex ext(strand);
  if (ext.resolution().F0.rank() == 0) return {};
  auto p = profile(strand, ext);
  return {p.depth, p.dim};
}

/// Strand profiles for every j of the window, computed in parallel.
inline std::vector<StrandProfile> strand_profiles(const Presentation& N, const JWindow& w) {
  std::vector<StrandProfile> out(static_cast<std::size_t>(w.size()));
  parallel_for(out.size(), [&](std::size_t q) { out[q] = strand_profile(x_strand(N, w.lo + static_cast<int>(q))); });
  return out;
}

/// Value shared by the trailing half, if any.
inline std::optional<StrandProfile> trailing_constant(const JWindow& w, const std::vector<StrandProfile>& v) {
  const auto first = static_cast<std::size_t>(w.trailing_start() - w.lo);
  if (first >= v.size()) return std::nullopt;
  for (std::size_t q = first + 1; q < v.size(); ++q)
    if (!(v[q] == v[first])) return std::nullopt;
  return v[first];
}

struct TameReport {
  int k = 0;
  JWindow jwindow;
  /// which strand family decides H^k_Q(M)_(*,-j), e.g. "H^0_P(N_s)"
  std::string reduction;
  std::vector<bool> nonzero;  // one per j, H^k_Q(M)_(*,-j) != 0
  TameVerdict verdict = TameVerdict::Inconclusive;
  std::optional<StrandProfile> limit;  // limit depth t0 / limit dimension s0 of the N_j

  void print(std::ostream& os) const {
    os << "tame scan of H^" << k << "_Q(M) via " << reduction << ", j in " << jwindow.to_string() << '\n';
    os << "  j:      ";
    for (int j = jwindow.lo; j <= jwindow.hi; ++j) os << ' ' << j;
    os << "\n  row -j: ";
    for (std::size_t q = 0; q < nonzero.size(); ++q) os << ' ' << (nonzero[q] ? '*' : '0');
    os << "\n  verdict: " << to_string(verdict) << '\n';
    if (limit)
      os << "  limit depth t0 = " << limit->depth_string() << ", limit dim s0 = " << limit->dim << '\n';
    else
      os << "  limit depth/dim: not constant on the trailing half\n";
  }
};

/// Scans the rows H^k_Q(M)_(*,-j). Allowed for k = s (through H^0_P(N_s)),
/// k = t - m (through H^m_P(N_t)), and any k when M is Cohen-Macaulay
/// (through H^{s-k}_P(N_s)).
inline TameReport tame_scan(const Presentation& M, int k, const JWindow& w) {
  ExtComplex ext(M);
  const auto p = profile(M, ext);
  const int m = M.ring().m(), N = M.ring().nvars();
  int which = 0, pk = 0;
  std::string name;
  if (k == p.dim) {
    which = p.dim;
    pk = 0;
    name = "H^0_P(N_s)";
  } else if (k == p.depth - m) {
    which = p.depth;
    pk = m;
    name = "H^" + std::to_string(m) + "_P(N_t)";
  } else if (p.is_cm && k >= 0 && p.dim - k <= m) {
    which = p.dim;
    pk = p.dim - k;
    name = "H^" + std::to_string(pk) + "_P(N_s)";
  } else {
    throw Error(ErrorCode::UnsupportedIndex, "H^" + std::to_string(k) +
                                                 "_Q is only scanned for k = s, k = t - m, or Cohen-Macaulay modules");
  }
  if (m < 1) throw Error(ErrorCode::BadM, "tame scans need m >= 1");

  TameReport rep;
  rep.k = k;
  rep.jwindow = w;
  rep.reduction = name;
  const Presentation Nw = ext.presentation(N - which);
  const Presentation Ns = which == p.dim ? Nw : ext.presentation(N - p.dim);
  std::vector<char> flags(static_cast<std::size_t>(w.size()));
  parallel_for(flags.size(), [&](std::size_t q) { flags[q] = strand_nonvanishing(Nw, pk, w.lo + static_cast<int>(q)); });
  rep.nonzero.assign(flags.begin(), flags.end());
  rep.verdict = trailing_verdict(w, rep.nonzero);
  rep.limit = trailing_constant(w, strand_profiles(Ns, w));
  return rep;
}

/// N / P N as a presentation.
inline Presentation mod_P(const Presentation& N) {
  Presentation out = N;
  const int m = N.ring().m();
  for (std::uint32_t k = 0; k < N.target.rank(); ++k)
    for (int i = 0; i < m; ++i) {
      out.source.shifts.push_back(N.target.shifts[k] + Bidegree{1, 0});
      out.columns.push_back(ModuleElement::basis(k, Monomial::variable(i)));
    }
  return out;
}

/// Limit depth / dimension of the strands N_j. Cells of the report are (0, j).
/// Passing requires the trailing half to be constant; a window that is too
/// short is reported as inconclusive, not as a failure. For Cohen-Macaulay N
/// with nonzero limit strands the limit depth must equal dim N - dim N/PN.
struct LimitProfileReport {
  CheckReport check;
  bool inconclusive = false;
  std::vector<StrandProfile> strands;
  std::optional<StrandProfile> limit;
};

inline LimitProfileReport limit_profile_check(const Presentation& N, const JWindow& w) {
  if (N.ring().m() < 1) throw Error(ErrorCode::BadM, "strand profiles need m >= 1");
  LimitProfileReport rep{CheckReport("limit", Window{0, 0, w.lo, w.hi}), false, strand_profiles(N, w), std::nullopt};
  rep.limit = trailing_constant(w, rep.strands);
  if (!rep.limit) {
    rep.inconclusive = true;
    rep.check.notes.push_back("depth/dim not constant on the trailing half of " + w.to_string());
    return rep;
  }
  rep.check.notes.push_back("limit depth " + rep.limit->depth_string() + ", limit dim " +
                            std::to_string(rep.limit->dim));
  ExtComplex ext(N);
  if (ext.resolution().F0.rank() == 0) {
    rep.check.notes.push_back("zero module");
    return rep;
  }
  const auto p = profile(N, ext);
  if (!p.is_cm) {
    rep.check.notes.push_back("not Cohen-Macaulay: only stabilization is checked");
    return rep;
  }
  if (rep.limit->zero()) {
    rep.check.notes.push_back("strands vanish eventually: the depth formula has nothing to compare");
    return rep;
  }
  const int expected = p.dim - krull_dim(mod_P(N));
  rep.check.expect_equal({0, w.hi}, "limit depth formula", rep.limit->depth, expected, "lim depth N_j",
                         "dim N - dim N/PN");
  return rep;
}

/// reg(N_j) for the strands of N = N_s, with a linear upper bound c*j + d.
struct RegReport {
  JWindow jwindow;
  std::vector<std::optional<int>> reg;          // from the minimal K[x]-resolution; none for zero strands
  std::vector<std::optional<int>> reg_by_ext;   // -min_k (indeg Ext^{m-k}(N_j, omega) - k)
  bool consistent = true;
  bool degenerate_fit = true;
  long long c = 0;
  long long d = 0;
  std::vector<long long> residuals;  // reg - (c j + d), zero strands skipped

  void print(std::ostream& os) const {
    os << "regularity of the strands N_j, j in " << jwindow.to_string() << '\n';
    for (int q = 0; q < jwindow.size(); ++q) {
      os << "  j=" << jwindow.lo + q << "  reg=";
      if (reg[q])
        os << *reg[q];
      else
        os << "-inf (zero strand)";
      os << '\n';
    }
    os << "  resolution and Ext computations " << (consistent ? "agree" : "DISAGREE") << '\n';
    if (degenerate_fit) {
      os << "  fit: degenerate (fewer than two nonzero strands)\n";
    } else {
      os << "  fit: reg(N_j) <= " << c << "*j + " << d << "\n";
      os << "  implied: a(H^{s-k}_Q(M)_{-j}) >= k - (" << c << "*j + " << d << ")\n";
      os << "  residuals:";
      for (auto r : residuals) os << ' ' << r;
      os << '\n';
    }
  }
};

inline std::optional<int> regularity(const FreeResolution& res) {
  if (res.F0.rank() == 0) return std::nullopt;
  int out = INT_MIN;
  for (std::size_t i = 0; i <= res.length(); ++i)
    for (const auto& s : res.module(i).shifts) out = std::max(out, s.a - static_cast<int>(i));
  return out;
}

inline std::optional<int> regularity_by_ext(const ExtComplex& ext) {
  const int m = ext.ring().nvars();
  std::optional<int> best;
  for (int k = 0; k <= m; ++k) {
    auto F0 = resolve(ext.presentation(m - k)).F0;
    if (F0.rank() == 0) continue;
    int indeg = INT_MAX;
    for (const auto& s : F0.shifts) indeg = std::min(indeg, s.a);
    int v = k - indeg;
    if (!best || v > *best) best = v;
  }
  return best;
}

/// Least slope of the upper hull at the right end, rounded up; d then makes the line an upper bound.
inline void fit_upper_line(RegReport& rep) {
  std::vector<std::pair<int, int>> pts;
  for (int q = 0; q < rep.jwindow.size(); ++q)
    if (rep.reg[q]) pts.emplace_back(rep.jwindow.lo + q, *rep.reg[q]);
  rep.degenerate_fit = pts.size() < 2;
  if (rep.degenerate_fit) return;
  std::vector<std::pair<int, int>> hull;
  for (const auto& p : pts) {
    auto cross = [](auto o, auto a, auto b) {
      return static_cast<long long>(a.first - o.first) * (b.second - o.second) -
             static_cast<long long>(a.second - o.second) * (b.first - o.first);
    };
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0) hull.pop_back();
    hull.push_back(p);
  }
  const auto& a = hull[hull.size() - 2];
  const auto& b = hull.back();
  long long num = b.second - a.second, den = b.first - a.first;
  rep.c = num >= 0 ? (num + den - 1) / den : -((-num) / den);
  rep.d = LLONG_MIN;
  for (const auto& p : pts) rep.d = std::max(rep.d, p.second - rep.c * p.first);
  for (const auto& p : pts) rep.residuals.push_back(p.second - (rep.c * p.first + rep.d));
}

inline RegReport reg_scan(const Presentation& M, const JWindow& w) {
  ExtComplex ext(M);
  const auto p = profile(M, ext);
  if (!p.is_cm) throw Error(ErrorCode::NotCM, "module is not Cohen-Macaulay");
  if (M.ring().m() < 1) throw Error(ErrorCode::BadM, "strand regularity needs m >= 1");
  const Presentation Ns = ext.presentation(M.ring().nvars() - p.dim);
  RegReport rep;
  rep.jwindow = w;
  rep.reg.resize(static_cast<std::size_t>(w.size()));
  rep.reg_by_ext.resize(rep.reg.size());
  parallel_for(rep.reg.size(), [&](std::size_t q) {
    ExtComplex strand(x_strand(Ns, w.lo + static_cast<int>(q)));
    rep.reg[q] = regularity(strand.resolution());
    rep.reg_by_ext[q] = regularity_by_ext(strand);
  });
  rep.consistent = rep.reg == rep.reg_by_ext;
  fit_upper_line(rep);
  return rep;
}

/// Graded pieces of a K[x]-module W with multiplication maps, in quotient coordinates.
class GradedPieces {
 public:
  explicit GradedPieces(Presentation W) : W_(std::move(W)) {}

  std::size_t dim(int e) { return piece(e).relations.codim(); }

  /// Multiplication by f : W_e -> W_{e + deg f}.
  DenseMatrix mult(int e, const Polynomial& f) {
    const auto& field = W_.ring().field();
    const int deg = f.is_zero() ? 0 : f.terms().front().mon.total_degree();
    const Piece& src = piece(e);
    const Piece& dst = piece(e + deg);
    DenseMatrix out(field, dst.relations.codim(), src.relations.codim());
    std::vector<Coeff> col(dst.relations.codim());
    for (std::size_t q = 0; q < src.relations.codim(); ++q) {
      std::size_t s = src.relations.quotient_basis(q);
      for (const auto& t : f.terms()) {
        std::fill(col.begin(), col.end(), 0);
        dst.relations.unit_quotient_coords(dst.basis.index(src.basis.comp(s), src.basis.mon(s) * t.mon), col, t.coeff);
        for (std::size_t r = 0; r < col.size(); ++r) out(r, q) = field.add(out(r, q), col[r]);
      }
    }
    return out;
  }

 private:
  struct Piece {
    PieceBasis basis;
    Subspace relations;
  };

  const Piece& piece(int e) {
    auto it = pieces_.find(e);
    if (it != pieces_.end()) return *it->second;
    PieceBasis basis(W_.target, {e, 0});
    DenseMatrix rel = W_.source.rank() ? degree_matrix(W_, basis, PieceBasis(W_.source, {e, 0})).transpose()
                                       : DenseMatrix(W_.ring().field(), 0, basis.size());
    auto p = std::make_unique<Piece>(Piece{std::move(basis), Subspace(std::move(rel))});
    return *pieces_.emplace(e, std::move(p)).first->second;
  }

  Presentation W_;
  std::map<int, std::unique_ptr<Piece>> pieces_;
};

/// dim Ext^i_{K[x]}(A, W)_e from a free resolution of A and the pieces of W.
inline long long ext_against(const FreeResolution& res, GradedPieces& W, int i, int e) {
  if (i < 0 || static_cast<std::size_t>(i) > res.length()) return 0;
  const auto& f = res.F0.ring.field();
  // Hom(F_i, W)_e = (+)_k W_{a_k + e}
  auto hom_dims = [&](std::size_t spot) {
    std::vector<std::size_t> dims;
    for (const auto& s : res.module(spot).shifts) dims.push_back(W.dim(s.a + e));
    return dims;
  };
  auto offsets = [](const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> off{0};
    for (auto d : dims) off.push_back(off.back() + d);
    return off;
  };
  // Hom(F_spot, W) -> Hom(F_{spot+1}, W), block (l, k) = multiplication by entry (k, l)
  auto differential = [&](std::size_t spot) {
    const Presentation& phi = res.maps[spot];
    auto src = hom_dims(spot), dst = hom_dims(spot + 1);
    auto so = offsets(src), dof = offsets(dst);
    DenseMatrix D(f, dof.back(), so.back());
    for (std::size_t l = 0; l < phi.columns.size(); ++l)
      for (std::size_t k = 0; k < phi.target.rank(); ++k) {
        if (!src[k] || !dst[l]) continue;
        Polynomial entry = phi.entry(k, l);
        if (entry.is_zero()) continue;
        DenseMatrix block = W.mult(phi.target.shifts[k].a + e, entry);
        for (std::size_t r = 0; r < block.rows(); ++r)
          for (std::size_t c = 0; c < block.cols(); ++c) D(dof[l] + r, so[k] + c) = block(r, c);
      }
    return D;
  };
  const std::size_t here = offsets(hom_dims(i)).back();
  if (here == 0) return 0;
  DenseMatrix in = i >= 1 ? differential(i - 1) : DenseMatrix(f, here, 0);
  DenseMatrix out = static_cast<std::size_t>(i) < res.length() ? differential(i) : DenseMatrix(f, 0, here);
  return static_cast<long long>(homology_dim(in, out));
}

/// Evidence tables dim Ext^i_{K[x]}(N_j, W)_a, one table per i with cells (a, j).
struct ExtEvidence {
  Window window;
  std::vector<GradedTable> tables;                   // index i
  std::vector<TameVerdict> verdicts;                 // per i, on "some cell of row j is nonzero"

  void print(std::ostream& os) const {
    for (std::size_t i = 0; i < tables.size(); ++i) {
      os << "Ext^" << i << "_K[x](N_j, W)_a  (rows j, columns a)\n";
      tables[i].print(os);
      os << "  trailing verdict in window: " << to_string(verdicts[i]) << '\n';
    }
  }
};

inline ExtEvidence ext_evidence(const Presentation& N, const Presentation& W, const Window& w) {
  const RingSpec& S = N.ring();
  if (S.m() < 1) throw Error(ErrorCode::BadM, "Ext evidence needs m >= 1");
  if (W.ring().n() != 0 || W.ring().m() != S.m() || W.ring().p() != S.p())
    throw Error(ErrorCode::RingMismatch, "W must be a module over K[x_1..x_m] with the same p and m");
  ExtEvidence out{w, {}, {}};
  const int top = S.m();
  for (int i = 0; i <= top; ++i) out.tables.emplace_back(w);
  std::vector<std::vector<long long>> cells(static_cast<std::size_t>(w.height()));
  parallel_for(cells.size(), [&](std::size_t q) {
    const int j = w.b_min + static_cast<int>(q);
    FreeResolution res = resolve(x_strand(N, j));
    GradedPieces pieces(W);
    for (int i = 0; i <= top; ++i)
      for (int a = w.a_min; a <= w.a_max; ++a) cells[q].push_back(ext_against(res, pieces, i, a));
  });
  for (std::size_t q = 0; q < cells.size(); ++q) {
    std::size_t pos = 0;
    for (int i = 0; i <= top; ++i)
      for (int a = w.a_min; a <= w.a_max; ++a)
        out.tables[i].set({a, w.b_min + static_cast<int>(q)}, cells[q][pos++]);
  }
  const JWindow jw{w.b_min, w.b_max};
  for (int i = 0; i <= top; ++i) {
    std::vector<bool> nz;
    for (int j = w.b_min; j <= w.b_max; ++j) {
      bool any = false;
      for (int a = w.a_min; a <= w.a_max; ++a) any = any || out.tables[i].at({a, j}) != 0;
      nz.push_back(any);
    }
    out.verdicts.push_back(trailing_verdict(jw, nz));
  }
  return out;
}

}  // namespace bicoh
