// Acceptance run: one PASS/FAIL line per criterion, with wall time.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bicoh/bicoh.hpp"
#include "support.hpp"

using namespace bicoh;
using bicoh::testing::free_module;
using bicoh::testing::quotient;
using bicoh::testing::random_quotient;
using bicoh::testing::ring;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
  void require(const CheckReport& rep, const std::string& label) {
    if (rep.pass) return;
    std::ostringstream os;
    os << label << ": ";
    if (rep.first)
      os << rep.first->what << " at " << rep.first->cell << " (" << rep.first->lhs_path << " = " << rep.first->lhs
         << ", " << rep.first->rhs_path << " = " << rep.first->rhs << ")";
    fail(os.str());
  }
};

std::vector<Presentation> oracle_fixtures() {
  auto r = ring(2, 2);
  return {free_module(r), quotient(r, {"x1*y1"}), quotient(r, {"y1", "y2"}), quotient(r, {"x1*y1", "x1*y2"})};
}

const char* fixture_name(std::size_t i) {
  static const char* names[] = {"S", "S/(x1y1)", "S/(y1,y2)", "S/(x1y1,x1y2)"};
  return names[i];
}

Outcome criterion1() {
  Outcome out;
  Window w{-8, 0, 0, 8};
  for (auto r : {ring(2, 2), ring(2, 3)}) {
    auto rep = check_lemma_simple(r, w);
    out.require(rep, "m=" + std::to_string(r.m()) + " n=" + std::to_string(r.n()));
    if (rep.comparisons != 2 * w.size()) out.fail("not every cell was compared");
  }
  out.detail = out.pass ? "both rings, 81 cells, closed form and flipped H^n_Q(S) agree" : out.detail;
  return out;
}

Outcome criterion2() {
  Outcome out;
  FreeModule F(ring(2, 2), {{0, 0}, {1, 0}, {2, 1}});
  out.require(check_free(F, Window::square(6)), "free");
  if (out.pass) out.detail = "F = S + S(-1,0) + S(-2,-1) over [-6,6]^2";
  return out;
}

Outcome criterion3() {
  Outcome out;
  const Window w = Window::square(5);
  long long cells = 0;
  auto fx = oracle_fixtures();
  for (std::size_t f = 0; f < fx.size(); ++f) {
    LocalCohomology lc(fx[f]);
    CechOracle cech(fx[f]);
    for (Theory t : {Theory::P, Theory::Q}) {
      std::vector<CohomologyTable> tables;
      for (int i = 0; i <= 2; ++i) tables.push_back(lc.table(t, i, w));
      w.for_each([&](Bidegree d) {
        auto dims = cech.dims(t, d);
        for (int i = 0; i <= 2; ++i) {
          ++cells;
          long long c = i < static_cast<int>(dims.size()) ? dims[i] : 0;
          if (c != tables[i].at(d)) {
            std::ostringstream os;
            os << fixture_name(f) << " H^" << i << "_" << to_string(t) << " at " << d << ": Cech " << c
               << ", duality " << tables[i].at(d);
            out.fail(os.str());
          }
        }
      });
    }
  }
  if (out.pass) out.detail = std::to_string(cells) + " cells agree";
  return out;
}

Outcome criterion4() {
  Outcome out;
  auto r = ring(2, 2);
  for (const auto& [M, name] : {std::pair{quotient(r, {"x1*y1"}), "S/(x1y1)"},
                                std::pair{quotient(r, {"x1*y1 + x2*y2"}), "S/(x1y1+x2y2)"}}) {
    SpectralData sd(M);
    out.require(check_cm_degeneration(sd, Window::square(6)), name);
  }
  if (out.pass) out.detail = "k = 0, 1, 2 over [-6,6]^2 on both hypersurfaces";
  return out;
}

Outcome criterion5() {
  Outcome out;
  auto r = ring(2, 2);
  std::ostringstream summary;
  for (std::uint32_t seed = 1; seed <= 5; ++seed) {
    auto M = random_quotient(r, 1000 + seed, 3);
    SpectralData sd(M);
    out.require(check_euler(sd, Window::square(5)), "seed " + std::to_string(1000 + seed));
    summary << (seed > 1 ? ", " : "") << M.columns.size() << " rel";
  }
  if (out.pass) out.detail = "5 random quotients (" + summary.str() + ") over [-5,5]^2";
  return out;
}

Outcome criterion6() {
  Outcome out;
  SpectralData sd(quotient(ring(2, 2), {"x1*y1", "x1*y2"}));
  const auto& p = sd.profile();
  if (p.depth != 2 || p.dim != 3) out.fail("profile is not t=2, s=3");
  out.require(check_corner(sd, Window::square(5)), "corner");
  if (out.pass) out.detail = "t=2, s=3; both corners and the vanishing range over [-5,5]^2";
  return out;
}

Outcome criterion7() {
  Outcome out;
  auto r0 = ring(0, 2), r1 = ring(1, 2);
  std::vector<std::pair<Presentation, std::string>> cases{{free_module(r0), "m=0 S"},
                                                          {quotient(r0, {"y1"}), "m=0 S/(y1)"},
                                                          {free_module(r1), "m=1 S"},
                                                          {quotient(r1, {"x1*y1"}), "m=1 S/(x1y1)"}};
  for (const auto& [M, name] : cases) {
    SpectralData sd(M);
    out.require(check_dim_r0_le1(sd, Window::square(5)), name);
  }
  if (out.pass) out.detail = "m=0 equality and m=1 additivity over [-5,5]^2";
  return out;
}

Outcome criterion8() {
  Outcome out;
  SpectralData sd(quotient(ring(2, 2), {"x1*y1"}));
  out.require(check_structure1(sd, Window{-6, 6, -4, 4}), "structure");
  if (out.pass) out.detail = "k = 0..2, j = -4..4, a = -6..6, dimension bounds included";
  return out;
}

Outcome criterion9() {
  Outcome out;
  std::vector<Presentation> fx = oracle_fixtures();
  auto r = ring(2, 2);
  fx.push_back(quotient(r, {"x1*y1 + x2*y2"}));
  fx.push_back(quotient(r, {"x1*y1", "x1*y2", "x2*y1", "x2*y2"}));
  fx.push_back(free_module(r, {{0, 0}, {1, 0}, {2, 1}}));
  fx.push_back(quotient(ring(1, 2), {"x1*y1"}));
  for (std::uint32_t seed = 1; seed <= 5; ++seed) fx.push_back(random_quotient(r, 1000 + seed, 3));
  const Window w = Window::square(4);
  for (std::size_t f = 0; f < fx.size(); ++f) {
    const auto& M = fx[f];
    const int N = M.ring().nvars();
    ExtComplex ext(M);
    const auto& res = ext.resolution();
    const int pd = static_cast<int>(res.length());
    // depth from Ext: the smallest i with Ext^{N-i}(M, omega) != 0
    int depth = -1;
    for (int i = 0; i <= N && depth < 0; ++i)
      if (!is_zero_module(ext.presentation(N - i))) depth = i;
    if (pd + depth != N) out.fail("fixture " + std::to_string(f) + ": pd + depth != m + n");
    if (pd > N) out.fail("fixture " + std::to_string(f) + ": resolution longer than m + n");
    w.for_each([&](Bidegree d) {
      long long alt = 0;
      for (std::size_t i = 0; i <= res.length(); ++i)
        alt += (i % 2 ? -1 : 1) * res.module(i).piece_dim(d);
      if (alt != hilbert_value(M, d)) out.fail("fixture " + std::to_string(f) + ": Euler sum of F_* at " + to_string(d));
    });
  }
  if (out.pass) out.detail = std::to_string(fx.size()) + " fixtures, alternating sums over [-4,4]^2";
  return out;
}

Outcome criterion10() {
  Outcome out;
  const JWindow jw{-10, 10};
  auto fx = oracle_fixtures();
  int decided = 0, scans = 0;
  for (std::size_t f = 0; f < fx.size(); ++f) {
    const auto p = profile(fx[f]);
    const int m = fx[f].ring().m();
    for (int k : {p.dim, p.depth - m}) {
      if (k < 0) continue;
      ++scans;
      auto rep = tame_scan(fx[f], k, jw);
      if (rep.verdict == TameVerdict::Inconclusive) {
        int first = -1;
        for (int q = jw.trailing_start() - jw.lo; q < jw.size(); ++q)
          if (rep.nonzero[q] != rep.nonzero.back()) first = jw.lo + q;
        out.fail(std::string(fixture_name(f)) + ", H^" + std::to_string(k) + "_Q: trailing half " +
                 std::to_string(jw.trailing_start()) + ".." + std::to_string(jw.hi) + " is not constant (row j=" +
                 std::to_string(first) + " differs)");
      } else {
        ++decided;
      }
    }
    if (p.is_cm) {
      auto lim = limit_profile_check(fx[f], jw);
      if (lim.inconclusive) out.fail(std::string(fixture_name(f)) + ": strand profiles not constant");
      out.require(lim.check, std::string(fixture_name(f)) + " limit depth");
    }
  }
  std::string tally = std::to_string(decided) + "/" + std::to_string(scans) + " scans decided";
  out.detail = out.pass ? tally + ", limit depth formula holds on CM fixtures" : out.detail + "; " + tally;
  return out;
}

Outcome criterion11() {
  Outcome out;
  SpectralData sd(quotient(ring(2, 2), {"x1*y1", "x1*y2"}));
  out.require(check_five_term(sd, Window::square(5)), "five-term");
  out.require(check_depth_sminus1_les(sd, Window::square(5)), "depth s-1");
  if (out.pass) out.detail = "both corner sequences and the depth s-1 sequence over [-5,5]^2";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{{1, 5, criterion1},   {2, 5, criterion2},   {3, 60, criterion3},
                                   {4, 60, criterion4},  {5, 120, criterion5}, {6, 30, criterion6},
                                   {7, 30, criterion7},  {8, 60, criterion8},  {9, 10, criterion9},
                                   {10, 60, criterion10}, {11, 30, criterion11}};
  int failed = 0;
  for (const auto& c : all) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit) out.fail("took " + std::to_string(secs) + " s");
    if (!out.pass) ++failed;
    std::cout << "criterion " << std::setw(2) << c.id << ": " << (out.pass ? "PASS" : "FAIL") << "  " << std::fixed
              << std::setprecision(2) << secs << " s (limit " << std::setprecision(0) << c.limit << " s)  "
              << out.detail << '\n'
              << std::flush;
  }
  std::cout << (all.size() - failed) << "/" << all.size() << " criteria passed\n";
  return failed ? 1 : 0;
}
