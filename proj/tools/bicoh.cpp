// bicoh: command-line front end.
//
// Exit codes: 0 success (every check passed), 1 a check failed, 2 bad input.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>

#include "bicoh/bicoh.hpp"

namespace {

using namespace bicoh;

struct Options {
  std::optional<std::uint32_t> p;
  std::optional<int> m;
  std::optional<int> n;
  std::string window = "-5:5,-5:5";
  std::string csv;
  std::string file;
  std::string theory = "Q";
  int index = 0;
  bool flip = false;
  std::string suite;
  std::string emit;
  int k = 0;
  std::string jwindow = "-10:10";
  std::string evidence;
};

RingDefaults defaults(const Options& o) { return {o.p, o.m, o.n}; }

Presentation module_from(const Options& o) {
  if (o.file.empty()) throw Error(ErrorCode::FormatError, "this command needs a module file");
  return load_module(o.file, defaults(o));
}

RingSpec ring_from(const Options& o) {
  if (!o.file.empty()) return module_from(o).ring();
  if (!o.m || !o.n) throw Error(ErrorCode::FormatError, "give a module file or both -m and -n");
  return RingSpec(o.p.value_or(kDefaultPrime), *o.m, *o.n);
}

void header(const RingSpec& r) {
  std::cout << "p=" << r.p() << " m=" << r.m() << " n=" << r.n() << '\n';
}

/// path.csv -> path_<tag>.csv
std::string tagged(const std::string& path, const std::string& tag) {
  std::filesystem::path p(path);
  return (p.parent_path() / (p.stem().string() + "_" + tag + p.extension().string())).string();
}

void write_csv(const std::string& path, const GradedTable& t) {
  std::ostringstream os;
  t.write_csv(os);
  write_text_atomic(path, os.str());
}

void emit_table(const Options& o, const GradedTable& t, const std::string& tag = {}) {
  t.print(std::cout);
  if (!o.csv.empty()) write_csv(tag.empty() ? o.csv : tagged(o.csv, tag), t);
}

int cmd_hilbert(const Options& o) {
  auto M = module_from(o);
  header(M.ring());
  emit_table(o, hilbert_table(M, Window::parse(o.window)));
  return 0;
}

int cmd_resolve(const Options& o) {
  auto M = module_from(o);
  header(M.ring());
  auto res = resolve(M);
  auto betti = res.betti();
  std::cout << "length " << res.length() << '\n';
  for (std::size_t i = 0; i < betti.size(); ++i) {
    std::cout << "F_" << i << ": rank " << betti[i].size() << ", shifts";
    for (const auto& s : betti[i]) std::cout << ' ' << s;
    std::cout << '\n';
  }
  if (!o.emit.empty()) {
    // map i : F_{i+1} -> F_i, written as a presentation
    for (std::size_t i = 0; i < res.maps.size(); ++i) {
      std::string path = o.emit + "_" + std::to_string(i) + ".txt";
      write_module(path, res.maps[i]);
      std::cout << "wrote " << path << '\n';
    }
    if (res.maps.empty()) {
      std::string path = o.emit + "_0.txt";
      write_module(path, Presentation::free(res.F0));
      std::cout << "wrote " << path << '\n';
    }
  }
  return 0;
}

int cmd_profile(const Options& o) {
  auto M = module_from(o);
  header(M.ring());
  LocalCohomology lc(M);
  auto p = profile(M, lc.ext());
  if (M.ring().n() >= 1) p.cd_estimate = cd_estimate(lc, Window::parse(o.window));
  std::cout << p << '\n';
  return 0;
}

int cmd_locoh(const Options& o) {
  auto M = module_from(o);
  header(M.ring());
  Theory t = parse_theory(o.theory);
  auto w = Window::parse(o.window);
  LocalCohomology lc(M);
  auto table = o.flip ? matlis_flip(lc.table(t, o.index, w.negated())) : lc.table(t, o.index, w);
  std::cout << "H^" << o.index << "_" << to_string(t) << "(M)" << (o.flip ? "^v" : "") << '\n';
  emit_table(o, table.table);
  return 0;
}

int cmd_oracle(const Options& o) {
  auto M = module_from(o);
  header(M.ring());
  Theory t = parse_theory(o.theory);
  if (t == Theory::Rplus) throw Error(ErrorCode::BadTheory, "the Cech oracle covers P and Q only");
  auto w = Window::parse(o.window);
  LocalCohomology lc(M);
  auto duality = lc.table(t, o.index, w);
  CechOracle cech(M);
  GradedTable table(w);
  w.for_each([&](Bidegree d) { table.set(d, cech.dim(t, o.index, d)); });
  std::cout << "H^" << o.index << "_" << to_string(t) << "(M) from the Cech complex\n";
  emit_table(o, table);
  long long mismatches = 0;
  w.for_each([&](Bidegree d) {
    if (table.at(d) != duality.at(d)) {
      if (mismatches == 0)
        std::cout << "mismatch at " << d << ": Cech " << table.at(d) << ", duality " << duality.at(d) << '\n';
      ++mismatches;
    }
  });
  std::cout << (mismatches ? "FAIL" : "PASS") << ": " << mismatches << " of " << w.size()
            << " cells differ from local duality\n";
  return mismatches ? 1 : 0;
}

int finish(const Options& o, const CheckReport& rep) {
  rep.print(std::cout);
  if (!o.csv.empty()) write_csv(o.csv, rep.failures);
  return rep.pass ? 0 : 1;
}

int cmd_check(const Options& o) {
  auto w = Window::parse(o.window);
  const std::string& s = o.suite;
  if (s == "simple") {
    auto r = ring_from(o);
    header(r);
    return finish(o, check_lemma_simple(r, w));
  }
  auto M = module_from(o);
  header(M.ring());
  if (s == "free") {
    if (!M.columns.empty()) throw Error(ErrorCode::FormatError, "suite free needs a module without relations");
    return finish(o, check_free(M.target, w));
  }
  SpectralData sd(M);
  if (s == "euler") return finish(o, check_euler(sd, w));
  if (s == "cm") {
    auto rep = check_cm_degeneration(sd, w);
    auto sign = intro_sign_convention(sd, w);
    rep.notes.push_back(std::string("strand index sign: H^k_P0(N_j)_a matches H^{s-k}_Q(M)_(-a,-j): ") +
                        (sign.minus_j_holds ? "yes" : "no") + ", matches (-a,+j): " +
                        (sign.plus_j_holds ? "yes" : "no"));
    return finish(o, rep);
  }
  if (s == "corner") return finish(o, check_corner(sd, w));
  if (s == "gencm") return finish(o, check_gencm_les(sd, w));
  if (s == "dimle1") return finish(o, check_dim_r0_le1(sd, w));
  if (s == "structure") return finish(o, check_structure1(sd, w));
  if (s == "fiveterm") return finish(o, check_five_term(sd, w));
  if (s == "depthles") return finish(o, check_depth_sminus1_les(sd, w));
  throw Error(ErrorCode::FormatError, "unknown suite \"" + s + "\"");
}

int cmd_tame(const Options& o) {
  auto M = module_from(o);
  header(M.ring());
  auto jw = JWindow::parse(o.jwindow);
  if (!o.evidence.empty()) {
    auto W = load_module(o.evidence, {M.ring().p(), M.ring().m(), 0});
    auto aw = Window::parse(o.window);
    auto ev = ext_evidence(M, W, Window{aw.a_min, aw.a_max, jw.lo, jw.hi});
    ev.print(std::cout);
    if (!o.csv.empty())
      for (std::size_t i = 0; i < ev.tables.size(); ++i) write_csv(tagged(o.csv, "ext" + std::to_string(i)), ev.tables[i]);
    return 0;
  }
  tame_scan(M, o.k, jw).print(std::cout);
  return 0;
}

int cmd_limit(const Options& o) {
  auto M = module_from(o);
  header(M.ring());
  auto rep = limit_profile_check(M, JWindow::parse(o.jwindow));
  std::cout << "strand profiles (depth, dim):";
  for (const auto& s : rep.strands) std::cout << " (" << s.depth_string() << "," << s.dim << ")";
  std::cout << '\n';
  if (rep.inconclusive) std::cout << "inconclusive\n";
  return finish(o, rep.check);
}

int cmd_regscan(const Options& o) {
  auto M = module_from(o);
  header(M.ring());
  auto rep = reg_scan(M, JWindow::parse(o.jwindow));
  rep.print(std::cout);
  return rep.consistent ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bigraded local cohomology and duality checks over F_p"};
  app.require_subcommand(1);
  Options o;

  auto ring_opts = [&](CLI::App* c) {
    c->add_option("-p", o.p, "prime characteristic (default 32003)");
    c->add_option("-m", o.m, "number of x variables");
    c->add_option("-n", o.n, "number of y variables");
    c->add_option("--window", o.window, "bidegree window aMin:aMax,bMin:bMax");
    c->add_option("--csv", o.csv, "also write a,b,dim rows to this file");
  };
  auto with_file = [&](CLI::App* c, bool required) {
    ring_opts(c);
    auto opt = c->add_option("file", o.file, "module file");
    if (required) opt->required();
    return c;
  };

  auto* hilbert = with_file(app.add_subcommand("hilbert", "Hilbert function on a window"), true);
  auto* res = with_file(app.add_subcommand("resolve", "minimal free resolution"), true);
  res->add_option("--emit", o.emit, "write map i to PREFIX_i.txt");
  auto* prof = with_file(app.add_subcommand("profile", "dimension, depth, pd and Cohen-Macaulay flags"), true);
  auto* locoh = with_file(app.add_subcommand("locoh", "local cohomology table via local duality"), true);
  locoh->add_option("--theory", o.theory, "P, Q or R+")->required();
  locoh->add_option("-i", o.index, "cohomological index")->required();
  locoh->add_flag("--flip", o.flip, "print the Matlis dual");
  auto* oracle = with_file(app.add_subcommand("oracle", "local cohomology from the Cech complex"), true);
  oracle->add_option("--theory", o.theory, "P or Q")->required();
  oracle->add_option("-i", o.index, "cohomological index")->required();
  auto* check = with_file(app.add_subcommand("check", "run a duality suite"), false);
  check->add_option("--suite", o.suite, "simple|free|euler|cm|corner|gencm|dimle1|structure|fiveterm|depthles")
      ->required();
  auto* tame = with_file(app.add_subcommand("tame", "tameness scan of H^k_Q(M)"), true);
  tame->add_option("--k", o.k, "cohomological index k");
  tame->add_option("--jwindow", o.jwindow, "strand window jMin:jMax");
  tame->add_option("--ext-evidence", o.evidence, "K[x]-module file W: tabulate Ext^i(N_j, W) instead");
  auto* limit = with_file(app.add_subcommand("limit", "limit depth and dimension of the strands"), true);
  limit->add_option("--jwindow", o.jwindow, "strand window jMin:jMax");
  auto* reg = with_file(app.add_subcommand("regscan", "regularity of the strands and a linear bound"), true);
  reg->add_option("--jwindow", o.jwindow, "strand window jMin:jMax");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*hilbert) return cmd_hilbert(o);
    if (*res) return cmd_resolve(o);
    if (*prof) return cmd_profile(o);
    if (*locoh) return cmd_locoh(o);
    if (*oracle) return cmd_oracle(o);
    if (*check) return cmd_check(o);
    if (*tame) return cmd_tame(o);
    if (*limit) return cmd_limit(o);
    if (*reg) return cmd_regscan(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
