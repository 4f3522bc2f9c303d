#pragma once

// Table-level checks of the bigraded duality spectral sequence
//   E2_{i,j} = H^{m-j}_P(H^i_{R+}(M)^v)  =>  H^{i+j-m}_Q(M)^v
// and of the corollaries that follow from it. Every check compares exact
// dimensions cell by cell; exact sequences are checked through alternating
// sums and the inequality dim B <= dim A + dim C for each exact A -> B -> C.

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cohomology.hpp"
#include "profile.hpp"

namespace bicoh {

struct Counterexample {
  Bidegree cell;
  std::string what;
  long long lhs = 0;
  long long rhs = 0;
  std::string lhs_path;
  std::string rhs_path;
};

/// Outcome of one suite: pass iff no counterexample was recorded.
struct CheckReport {
  std::string suite;
  Window window;
  bool pass = true;
  std::size_t comparisons = 0;
  /// failing comparisons per cell of the window
  GradedTable failures;
  std::optional<Counterexample> first;
  std::vector<std::string> notes;

  CheckReport(std::string name, Window w) : suite(std::move(name)), window(w), failures(w) {}

  void expect(bool ok, Bidegree cell, const std::string& what, long long lhs, long long rhs,
              const std::string& lhs_path, const std::string& rhs_path) {
    ++comparisons;
    if (ok) return;
    pass = false;
    if (failures.window().contains(cell)) failures.set(cell, failures.at(cell) + 1);
    if (!first) first = Counterexample{cell, what, lhs, rhs, lhs_path, rhs_path};
  }

  void expect_equal(Bidegree cell, const std::string& what, long long lhs, long long rhs,
                    const std::string& lhs_path, const std::string& rhs_path) {
    expect(lhs == rhs, cell, what, lhs, rhs, lhs_path, rhs_path);
  }

  void print(std::ostream& os) const {
    os << "suite " << suite << ": " << (pass ? "PASS" : "FAIL") << " (" << comparisons << " comparisons over "
       << window.to_string() << ")\n";
    for (const auto& n : notes) os << "  note: " << n << '\n';
    if (first) {
      os << "  first counterexample at " << first->cell << ": " << first->what << '\n'
         << "    " << first->lhs_path << " = " << first->lhs << '\n'
         << "    " << first->rhs_path << " = " << first->rhs << '\n';
    }
  }
};

/// Every dimension the checks need for one module M, with shared caches.
/// N_i denotes H^i_{R+}(M)^v = Ext^{m+n-i}(M, omega).
class SpectralData {
 public:
  explicit SpectralData(Presentation M) : lc_(std::move(M)) {}

  const Presentation& module() const noexcept { return lc_.module(); }
  const RingSpec& ring() const noexcept { return lc_.module().ring(); }
  int m() const noexcept { return ring().m(); }
  int n() const noexcept { return ring().n(); }
  int N() const noexcept { return ring().nvars(); }

  bool is_zero() { return lc_.ext().resolution().F0.rank() == 0; }

  const ModuleProfile& profile() {
    if (!profile_) profile_ = bicoh::profile(module(), lc_.ext());
    return *profile_;
  }

  LocalCohomology& local() { return lc_; }

  /// N_i as a presentation.
  const Presentation& n_module(int i) { return n_local(i).module(); }

  LocalCohomology& n_local(int i) {
    auto it = n_.find(i);
    if (it == n_.end())
      it = n_.emplace(i, std::make_unique<LocalCohomology>(lc_.ext().presentation(N() - i))).first;
    return *it->second;
  }

  /// dim E2_{i,j} at d
  long long E2(int i, int j, Bidegree d) {
    if (j < 0 || j > m() || i < 0 || i > N()) return 0;
    if (m() == 0) return lc_.ext().dim(N() - i, d);  // H^0 of the zero ideal is the identity
    return n_local(i).dim(Theory::P, m() - j, d);
  }

  /// dim (H^u_Q(M)^v)_d
  long long Q_dual(int u, Bidegree d) { return Q(u, -d); }

  /// dim H^u_Q(M)_d
  long long Q(int u, Bidegree d) {
    if (u < 0 || u > n()) return 0;
    if (n() == 0) return hilbert_value(module(), d);
    return lc_.dim(Theory::Q, u, d);
  }

  /// dim H^i_{R+}(M)_d
  long long R(int i, Bidegree d) {
    if (i < 0 || i > N()) return 0;
    return lc_.dim(Theory::Rplus, i, d);
  }

  /// dim (H^i_{R+}(M)^v)_d
  long long R_dual(int i, Bidegree d) { return R(i, -d); }

  /// Warms the strand caches for the cells of w, in parallel.
  void prepare(const Window& w, bool need_E2 = true) {
    if (n() >= 1) {
      lc_.prepare(Theory::Q, w);
      lc_.prepare(Theory::Q, w.negated());
    }
    lc_.prepare(Theory::Rplus, w);
    if (need_E2 && m() >= 1)
      for (int i = 0; i <= N(); ++i) n_local(i).prepare(Theory::P, w);
  }

 private:
  LocalCohomology lc_;
  std::optional<ModuleProfile> profile_;
  std::map<int, std::unique_ptr<LocalCohomology>> n_;
};

namespace detail {

inline std::string E2_name(int i, int j, int m) {
  return "H^" + std::to_string(m - j) + "_P(N_" + std::to_string(i) + ") [E2_" + std::to_string(i) + "," +
         std::to_string(j) + "]";
}

/// Exactness inequalities for a sequence x_0 -> ... -> x_k that is exact at
/// every interior position (and at the ends when padded with zeros).
inline void check_exact_sequence(CheckReport& rep, Bidegree d, const std::string& name,
                                 const std::vector<long long>& x, const std::vector<std::string>& names,
                                 bool zero_left, bool zero_right) {
  std::vector<long long> v = x;
  std::vector<std::string> nm = names;
  if (zero_left) {
    v.insert(v.begin(), 0);
    nm.insert(nm.begin(), "0");
  }
  if (zero_right) {
    v.push_back(0);
    nm.push_back("0");
  }
  for (std::size_t p = 1; p + 1 < v.size(); ++p)
    rep.expect(v[p] <= v[p - 1] + v[p + 1], d, name + ": exactness at " + nm[p], v[p], v[p - 1] + v[p + 1], nm[p],
               nm[p - 1] + " + " + nm[p + 1]);
}

inline long long closed_form_simple(const RingSpec& r, Bidegree d) {
  return monomial_count(-d.a, r.m()) * monomial_count(d.b - r.n(), r.n());
}

}  // namespace detail

/// H^m_P(omega_S) = H^n_Q(S)^v, and both equal dim K[x]_{-a} * dim K[y]_{b-n}.
inline CheckReport check_lemma_simple(const RingSpec& ring, const Window& w) {
  if (ring.m() < 1 || ring.n() < 1) throw Error(ErrorCode::BadM, "the canonical duality check needs m, n >= 1");
  CheckReport rep("simple", w);
  LocalCohomology omega(Presentation::free(FreeModule(ring, {ring.omega_degree()})));
  LocalCohomology S(Presentation::free(FreeModule(ring, {{0, 0}})));
  auto lhs = omega.table(Theory::P, ring.m(), w);
  auto rhs = matlis_flip(S.table(Theory::Q, ring.n(), w.negated()));
  w.for_each([&](Bidegree d) {
    long long closed = detail::closed_form_simple(ring, d);
    rep.expect_equal(d, "H^m_P(omega) vs H^n_Q(S)^v", lhs.at(d), rhs.at(d), "H^m_P(omega_S)", "H^n_Q(S)^v");
    rep.expect_equal(d, "H^m_P(omega) vs closed form", lhs.at(d), closed, "H^m_P(omega_S)",
                     "dim K[x]_{-a} * dim K[y]_{b-n}");
  });
  return rep;
}

/// H^m_P(F*) = H^n_Q(F)^v for a free module F.
inline CheckReport check_free(const FreeModule& F, const Window& w) {
  if (F.ring.m() < 1 || F.ring.n() < 1) throw Error(ErrorCode::BadM, "the free-module duality check needs m, n >= 1");
  CheckReport rep("free", w);
  LocalCohomology dual(Presentation::free(dual_module(F)));
  LocalCohomology free(Presentation::free(F));
  auto lhs = dual.table(Theory::P, F.ring.m(), w);
  auto rhs = matlis_flip(free.table(Theory::Q, F.ring.n(), w.negated()));
  w.for_each([&](Bidegree d) {
    long long closed = 0;
    for (const auto& c : F.shifts) closed += detail::closed_form_simple(F.ring, d + c);
    rep.expect_equal(d, "H^m_P(F*) vs H^n_Q(F)^v", lhs.at(d), rhs.at(d), "H^m_P(F*)", "H^n_Q(F)^v");
    rep.expect_equal(d, "H^m_P(F*) vs closed form", lhs.at(d), closed, "H^m_P(F*)", "sum of shifted closed forms");
  });
  return rep;
}

/// Per-bidegree Euler characteristic of E2 against that of the abutment;
/// also confirms that E2 vanishes outside t <= i <= s.
inline CheckReport check_euler(SpectralData& sd, const Window& w) {
  CheckReport rep("euler", w);
  sd.prepare(w);
  const int m = sd.m(), N = sd.N();
  std::optional<ModuleProfile> prof;
  if (!sd.is_zero()) prof = sd.profile();
  w.for_each([&](Bidegree d) {
    long long lhs = 0, rhs = 0;
    for (int i = 0; i <= N; ++i)
      for (int j = 0; j <= m; ++j) {
        long long e = sd.E2(i, j, d);
        lhs += ((i + j - m) % 2 == 0 ? e : -e);
        if (prof && (i < prof->depth || i > prof->dim))
          rep.expect_equal(d, "E2 support outside depth..dim", e, 0, detail::E2_name(i, j, m), "0");
      }
    for (int u = 0; u <= sd.n(); ++u) {
      long long h = sd.Q_dual(u, d);
      rhs += (u % 2 == 0 ? h : -h);
    }
    rep.expect_equal(d, "Euler characteristic", lhs, rhs, "sum (-1)^{i+j-m} E2_{i,j}", "sum (-1)^u H^u_Q(M)^v");
  });
  return rep;
}

/// Cohen-Macaulay degeneration: H^k_P(N_s) = H^{s-k}_Q(M)^v for all k.
inline CheckReport check_cm_degeneration(SpectralData& sd, const Window& w) {
  const auto& p = sd.profile();
  if (!p.is_cm) throw Error(ErrorCode::NotCM, "module is not Cohen-Macaulay");
  CheckReport rep("cm", w);
  sd.prepare(w);
  const int m = sd.m(), s = p.dim;
  w.for_each([&](Bidegree d) {
    for (int k = 0; k <= m; ++k)
      rep.expect_equal(d, "k=" + std::to_string(k), sd.E2(s, m - k, d), sd.Q_dual(s - k, d),
                       "H^" + std::to_string(k) + "_P(N_s)", "H^" + std::to_string(s - k) + "_Q(M)^v");
    for (int k : {-1, m + 1})
      rep.expect_equal(d, "vanishing k=" + std::to_string(k), sd.Q_dual(s - k, d), 0,
                       "H^" + std::to_string(s - k) + "_Q(M)^v", "0");
  });
  return rep;
}

/// The two corner isomorphisms and H^i_Q(M) = 0 for i < t - m.
inline CheckReport check_corner(SpectralData& sd, const Window& w) {
  const auto& p = sd.profile();
  CheckReport rep("corner", w);
  sd.prepare(w);
  const int m = sd.m(), s = p.dim, t = p.depth;
  w.for_each([&](Bidegree d) {
    rep.expect_equal(d, "corner (t,0)", sd.E2(t, 0, d), sd.Q_dual(t - m, d), "H^m_P(N_t)",
                     "H^" + std::to_string(t - m) + "_Q(M)^v");
    rep.expect_equal(d, "corner (s,m)", sd.E2(s, m, d), sd.Q_dual(s, d), "H^0_P(N_s)",
                     "H^" + std::to_string(s) + "_Q(M)^v");
    for (int i = 0; i < t - m; ++i)
      rep.expect_equal(d, "vanishing below t-m", sd.Q(i, d), 0, "H^" + std::to_string(i) + "_Q(M)", "0");
  });
  return rep;
}

/// Generalized Cohen-Macaulay long exact sequence
///   0 -> H^1_P(N_s) -> H^{s-1}_Q^v -> H^{s-1}_{R+}^v -> H^2_P(N_s) -> ... -> H^{s-m}_Q^v -> H^{s-m}_{R+}^v -> 0
/// and H^i_{R+}(M) = H^i_Q(M) for i < s - m.
inline CheckReport check_gencm_les(SpectralData& sd, const Window& w) {
  const auto& p = sd.profile();
  if (!p.is_gen_cm || p.is_cm)
    throw Error(ErrorCode::NotGenCM, p.is_cm ? "module is Cohen-Macaulay" : "module is not generalized Cohen-Macaulay");
  CheckReport rep("gencm", w);
  sd.prepare(w);
  const int m = sd.m(), s = p.dim;
  w.for_each([&](Bidegree d) {
    std::vector<long long> seq;
    std::vector<std::string> names;
    long long alt = 0;
    for (int k = 1; k <= m; ++k) {
      long long A = sd.E2(s, m - k, d), B = sd.Q_dual(s - k, d), C = sd.R_dual(s - k, d);
      alt += (k % 2 == 1 ? 1 : -1) * (A - B + C);
      seq.insert(seq.end(), {A, B, C});
      names.push_back("H^" + std::to_string(k) + "_P(N_s)");
      names.push_back("H^" + std::to_string(s - k) + "_Q(M)^v");
      names.push_back("H^" + std::to_string(s - k) + "_R+(M)^v");
    }
    rep.expect_equal(d, "alternating sum", alt, 0, "sum (-1)^{k-1} (A_k - B_k + C_k)", "0");
    detail::check_exact_sequence(rep, d, "genCM sequence", seq, names, true, true);
    for (int i = 0; i < s - m; ++i)
      rep.expect_equal(d, "H_R+ = H_Q below s-m", sd.R(i, d), sd.Q(i, d), "H^" + std::to_string(i) + "_R+(M)",
                       "H^" + std::to_string(i) + "_Q(M)");
  });
  return rep;
}

/// m = 0: H^i_{R+} = H^i_Q.  m = 1: dim H^i_Q^v = dim H^1_P(N_{i+1}) + dim H^0_P(N_i).
inline CheckReport check_dim_r0_le1(SpectralData& sd, const Window& w) {
  const int m = sd.m();
  if (m > 1) throw Error(ErrorCode::BadM, "this check needs m <= 1");
  CheckReport rep("dimle1", w);
  sd.prepare(w, m == 1);
  w.for_each([&](Bidegree d) {
    for (int i = 0; i <= sd.n(); ++i) {
      if (m == 0) {
        rep.expect_equal(d, "i=" + std::to_string(i), sd.R(i, d), sd.Q(i, d), "H^" + std::to_string(i) + "_R+(M)",
                         "H^" + std::to_string(i) + "_Q(M)");
      } else {
        long long a = sd.E2(i + 1, 0, d), b = sd.E2(i, 1, d);
        rep.expect_equal(d, "i=" + std::to_string(i), sd.Q_dual(i, d), a + b, "H^" + std::to_string(i) + "_Q(M)^v",
                         "H^1_P(N_" + std::to_string(i + 1) + ") + H^0_P(N_" + std::to_string(i) + ")");
      }
    }
  });
  return rep;
}

/// Structure of H^{s-k}_Q(M) for Cohen-Macaulay M, strand by strand:
///   dim Ext^{m-k}_{K[x]}((N_s)_j, omega)_a = dim H^{s-k}_Q(M)_(a,-j),
/// and that Ext module has Krull dimension <= k. j runs over the b-range of w,
/// a over its a-range.
inline CheckReport check_structure1(SpectralData& sd, const Window& w) {
  const auto& p = sd.profile();
  if (!p.is_cm) throw Error(ErrorCode::NotCM, "module is not Cohen-Macaulay");
  if (sd.m() < 1) throw Error(ErrorCode::BadM, "the structure check needs m >= 1");
  CheckReport rep("structure", w);
  const int m = sd.m(), s = p.dim;
  const Presentation& Ns = sd.n_module(s);
  sd.local().prepare(Theory::Q, w.negated());
  sd.local().prepare(Theory::Q, w);
  std::vector<int> js;
  for (int j = w.b_min; j <= w.b_max; ++j) js.push_back(j);
  std::vector<std::unique_ptr<ExtComplex>> strands(js.size());
  parallel_for(js.size(), [&](std::size_t q) { strands[q] = std::make_unique<ExtComplex>(x_strand(Ns, js[q])); });
  for (std::size_t q = 0; q < js.size(); ++q) {
    const int j = js[q];
    for (int k = 0; k <= m; ++k) {
      for (int a = w.a_min; a <= w.a_max; ++a) {
        Bidegree cell{a, j};
        rep.expect_equal(cell, "row k=" + std::to_string(k), strands[q]->dim(m - k, {a, 0}),
                         sd.Q(s - k, {a, -j}),
                         "Ext^" + std::to_string(m - k) + "_K[x]((N_s)_" + std::to_string(j) + ", omega)_a",
                         "H^" + std::to_string(s - k) + "_Q(M)_(a,-j)");
      }
      int kd = krull_dim(strands[q]->presentation(m - k));
      rep.expect(kd <= k, {w.a_min, j}, "dimension bound k=" + std::to_string(k), kd, k,
                 "dim Ext^" + std::to_string(m - k) + "_K[x]((N_s)_" + std::to_string(j) + ", omega)", "k");
    }
  }
  return rep;
}

/// The two corner five-term sequences, as exactness inequalities:
///   H^{t+2-m}_Q^v -> H^{m-2}_P(N_t) -> H^m_P(N_{t+1}) -> H^{t+1-m}_Q^v -> H^{m-1}_P(N_t) -> 0
///   0 -> H^1_P(N_s) -> H^{s-1}_Q^v -> H^0_P(N_{s-1}) -> H^2_P(N_s) -> H^{s-2}_Q^v
inline CheckReport check_five_term(SpectralData& sd, const Window& w) {
  CheckReport rep("fiveterm", w);
  if (sd.is_zero()) {
    rep.notes.push_back("zero module: every term vanishes");
    return rep;
  }
  const auto& p = sd.profile();
  sd.prepare(w);
  const int m = sd.m(), s = p.dim, t = p.depth;
  auto q = [](int u) { return "H^" + std::to_string(u) + "_Q(M)^v"; };
  auto e = [](int k, std::string n) { return "H^" + std::to_string(k) + "_P(N_" + n + ")"; };
  w.for_each([&](Bidegree d) {
    std::vector<long long> first{sd.Q_dual(t + 2 - m, d), sd.E2(t, 2, d), sd.E2(t + 1, 0, d), sd.Q_dual(t + 1 - m, d),
                                 sd.E2(t, 1, d)};
    std::vector<std::string> first_names{q(t + 2 - m), e(m - 2, "t"), e(m, "t+1"), q(t + 1 - m), e(m - 1, "t")};
    detail::check_exact_sequence(rep, d, "corner (t,0)", first, first_names, false, true);
    std::vector<long long> second{sd.E2(s, m - 1, d), sd.Q_dual(s - 1, d), sd.E2(s - 1, m, d), sd.E2(s, m - 2, d),
                                  sd.Q_dual(s - 2, d)};
    std::vector<std::string> second_names{e(1, "s"), q(s - 1), e(0, "s-1"), e(2, "s"), q(s - 2)};
    detail::check_exact_sequence(rep, d, "corner (s,m)", second, second_names, true, false);
  });
  return rep;
}

/// depth = dim - 1: the sequence
///   ... -> E2_{s,j} -> H^{s-m+j}_Q^v -> E2_{s-1,j+1} -> E2_{s,j-1} -> H^{s-m+j-1}_Q^v -> ...
/// has vanishing alternating sum and satisfies the exactness inequalities.
inline CheckReport check_depth_sminus1_les(SpectralData& sd, const Window& w) {
  const auto& p = sd.profile();
  if (p.depth != p.dim - 1) throw Error(ErrorCode::BadProfile, "this check needs depth = dim - 1");
  CheckReport rep("depthles", w);
  sd.prepare(w);
  const int m = sd.m(), s = p.dim;
  w.for_each([&](Bidegree d) {
    std::vector<long long> seq;
    std::vector<std::string> names;
    long long alt = 0;
    for (int j = m; j >= -1; --j) {
      long long A = sd.E2(s, j, d), B = sd.Q_dual(s - m + j, d), C = sd.E2(s - 1, j + 1, d);
      long long sign = ((m - j) % 2 == 0) ? 1 : -1;
      alt += sign * (A - B + C);
      seq.insert(seq.end(), {A, B, C});
      names.push_back(detail::E2_name(s, j, m));
      names.push_back("H^" + std::to_string(s - m + j) + "_Q(M)^v");
      names.push_back(detail::E2_name(s - 1, j + 1, m));
    }
    rep.expect_equal(d, "alternating sum", alt, 0, "sum over the sequence", "0");
    detail::check_exact_sequence(rep, d, "depth s-1 sequence", seq, names, true, true);
  });
  return rep;
}

/// Which strand-index sign makes H^k_{P_0}((N_s)_j)_a = dim H^{s-k}_Q(M)_(-a, -+j) hold on a CM module.
struct SignConvention {
  bool minus_j_holds = true;
  bool plus_j_holds = true;
  std::optional<Counterexample> plus_j_counterexample;
  std::optional<Counterexample> minus_j_counterexample;
};

inline SignConvention intro_sign_convention(SpectralData& sd, const Window& w) {
  const auto& p = sd.profile();
  if (!p.is_cm) throw Error(ErrorCode::NotCM, "module is not Cohen-Macaulay");
  sd.prepare(w);
  const int m = sd.m(), s = p.dim;
  SignConvention out;
  w.for_each([&](Bidegree d) {
    for (int k = 0; k <= m; ++k) {
      long long lhs = sd.E2(s, m - k, d);
      long long minus = sd.Q(s - k, {-d.a, -d.b});
      long long plus = sd.Q(s - k, {-d.a, d.b});
      if (lhs != minus && out.minus_j_holds) {
        out.minus_j_holds = false;
        out.minus_j_counterexample = Counterexample{d, "k=" + std::to_string(k), lhs, minus, "H^k_P0(N_j)_a", "H^{s-k}_Q(M)_(-a,-j)"};
      }
      if (lhs != plus && out.plus_j_holds) {
        out.plus_j_holds = false;
        out.plus_j_counterexample = Counterexample{d, "k=" + std::to_string(k), lhs, plus, "H^k_P0(N_j)_a", "H^{s-k}_Q(M)_(-a,j)"};
      }
    }
  });
  return out;
}

}  // namespace bicoh
