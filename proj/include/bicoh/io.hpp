#pragma once

// Plain-text module files.
//
//   # comment
//   p=32003
//   m=2
//   n=2
//   gens=(0,0),(1,0)
//   rels=(1,1): x1*y1, 0
//   rels=(2,1): x2*y1, x1*y1
//
// Each rels line is one relation: its source bidegree, then one entry per
// generator. The bidegree may be omitted, in which case it is read off the
// entries. Without gens the module has a single generator in degree (0,0);
// without rels it is free.

#include <fstream>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "resolve.hpp"

namespace bicoh {

/// Ring parameters that the caller supplies when the file leaves them out.
struct RingDefaults {
  std::optional<std::uint32_t> p;
  std::optional<int> m;
  std::optional<int> n;
};

namespace detail {

inline std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline Error line_error(ErrorCode code, int line, const std::string& what) {
  return Error(code, "line " + std::to_string(line) + ": " + what);
}

inline long parse_int(const std::string& text, int line, const char* key) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw line_error(ErrorCode::FormatError, line, std::string(key) + " expects an integer, got \"" + text + "\"");
  return v;
}

inline std::vector<Bidegree> parse_shifts(const std::string& text, int line) {
  static const std::regex item(R"(\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*(,|$))");
  std::vector<Bidegree> out;
  auto it = text.cbegin();
  std::smatch m;
  while (it != text.cend()) {
    if (!std::regex_search(it, text.cend(), m, item, std::regex_constants::match_continuous))
      throw line_error(ErrorCode::FormatError, line, "expected a list of (a,b), got \"" + text + "\"");
    out.push_back({std::stoi(m[1]), std::stoi(m[2])});
    it = m[0].second;
  }
  return out;
}

/// Splits on commas that are not inside parentheses.
inline std::vector<std::pair<std::string, std::size_t>> split_entries(const std::string& text) {
  std::vector<std::pair<std::string, std::size_t>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      out.emplace_back(text.substr(start, i - start), start);
      start = i + 1;
    } else if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      --depth;
    }
  }
  return out;
}

struct RawRelation {
  int line = 0;
  std::optional<Bidegree> shift;
  std::string entries;
  std::size_t column = 0;  // 1-based column of the first entry character
};

}  // namespace detail

inline Presentation parse_module(const std::string& text, const RingDefaults& defaults = {}) {
  std::optional<long> p, m, n;
  std::optional<std::vector<Bidegree>> gens;
  std::vector<detail::RawRelation> raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    std::string body = detail::trim(line.substr(0, hash));
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) throw detail::line_error(ErrorCode::FormatError, lineno, "expected key=value");
    std::string key = detail::trim(body.substr(0, eq));
    std::string value = detail::trim(body.substr(eq + 1));
    auto once = [&](auto& slot) {
      if (slot) throw detail::line_error(ErrorCode::FormatError, lineno, "duplicate key " + key);
    };
    if (key == "p") {
      once(p);
      p = detail::parse_int(value, lineno, "p");
    } else if (key == "m") {
      once(m);
      m = detail::parse_int(value, lineno, "m");
    } else if (key == "n") {
      once(n);
      n = detail::parse_int(value, lineno, "n");
    } else if (key == "gens") {
      once(gens);
      gens = detail::parse_shifts(value, lineno);
    } else if (key == "rels") {
      detail::RawRelation r{lineno, std::nullopt, value, line.find('=') + 2};
      static const std::regex head(R"(^\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*:)");
      std::smatch mm;
      if (std::regex_search(value, mm, head)) {
        r.shift = Bidegree{std::stoi(mm[1]), std::stoi(mm[2])};
        r.entries = value.substr(mm[0].length());
      }
      r.column = line.find(r.entries, line.find('=')) + 1;
      raw.push_back(std::move(r));
    } else {
      throw detail::line_error(ErrorCode::FormatError, lineno, "unknown key \"" + key + "\"");
    }
  }

  auto pick = [](auto file, auto flag, const char* key) -> long {
    if (file && flag && static_cast<long>(*flag) != *file)
      throw Error(ErrorCode::FormatError, std::string(key) + "=" + std::to_string(*file) +
                                              " in the file conflicts with the command line value " +
                                              std::to_string(static_cast<long>(*flag)));
    if (file) return *file;
    if (flag) return static_cast<long>(*flag);
    throw Error(ErrorCode::FormatError, std::string("missing ") + key);
  };
  const long pv = p || defaults.p ? pick(p, defaults.p, "p") : static_cast<long>(kDefaultPrime);
  const long mv = pick(m, defaults.m, "m"), nv = pick(n, defaults.n, "n");
  if (pv < 2 || pv >= (1L << 31)) throw Error(ErrorCode::BadModulus, std::to_string(pv) + " is not a prime below 2^31");
  if (mv < 0 || nv < 0 || mv > kMaxVars || nv > kMaxVars)
    throw Error(ErrorCode::FormatError, "m and n must lie in [0, " + std::to_string(kMaxVars) + "]");
  const RingSpec ring(static_cast<std::uint32_t>(pv), static_cast<int>(mv), static_cast<int>(nv));

  FreeModule target(ring, gens.value_or(std::vector<Bidegree>{{0, 0}}));
  Presentation out(target);
  for (const auto& r : raw) {
    auto entries = detail::split_entries(r.entries);
    if (entries.size() != target.rank())
      throw detail::line_error(ErrorCode::FormatError, r.line,
                               "relation has " + std::to_string(entries.size()) + " entries for " +
                                   std::to_string(target.rank()) + " generators");
    std::vector<Polynomial> coords;
    std::optional<Bidegree> shift = r.shift;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const auto& [txt, offset] = entries[k];
      Polynomial f(ring);
      try {
        f = parse_poly(txt, ring);
      } catch (const ParseError& e) {
        std::string msg = e.what();
        const std::string prefix = std::string(to_string(e.code())) + ": ";
        if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
        throw Error(e.code(), "line " + std::to_string(r.line) + ", column " +
                                  std::to_string(r.column + offset + e.position()) + ": " + msg);
      }
      if (!f.is_zero()) {
        Bidegree d = bidegree_of(f) + target.shifts[k];
        if (!shift) shift = d;
        if (*shift != d)
          throw detail::line_error(ErrorCode::DegreeMismatch, r.line,
                                   "entry " + std::to_string(k + 1) + " has degree " + to_string(d) +
                                       " against the relation degree " + to_string(*shift));
      }
      coords.push_back(std::move(f));
    }
    if (!shift) throw detail::line_error(ErrorCode::FormatError, r.line, "zero relation needs an explicit (a,b)");
    out.source.shifts.push_back(*shift);
    out.columns.push_back(ModuleElement::from_coordinates(coords));
  }
  out.validate();
  return out;
}

inline Presentation load_module(const std::string& path, const RingDefaults& defaults = {}) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FormatError, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_module(buf.str(), defaults);
}

inline std::string format_module(const Presentation& M) {
  std::ostringstream os;
  const RingSpec& r = M.ring();
  os << "p=" << r.p() << "\nm=" << r.m() << "\nn=" << r.n() << "\ngens=";
  for (std::size_t k = 0; k < M.target.rank(); ++k) os << (k ? "," : "") << M.target.shifts[k];
  os << '\n';
  for (std::size_t l = 0; l < M.columns.size(); ++l) {
    os << "rels=" << M.source.shifts[l] << ":";
    for (std::size_t k = 0; k < M.target.rank(); ++k) os << (k ? ", " : " ") << M.entry(k, l).to_string();
    os << '\n';
  }
  return os.str();
}

/// Writes through a temporary file and a rename, so readers never see half a file.
inline void write_text_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::FormatError, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::FormatError, "cannot write " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw Error(ErrorCode::FormatError, "cannot write " + path);
}

inline void write_module(const std::string& path, const Presentation& M) { write_text_atomic(path, format_module(M)); }

}  // namespace bicoh
