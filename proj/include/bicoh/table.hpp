#pragma once

// Finite windows of bidegrees and the dimension tables that live on them.

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "poly.hpp"

namespace bicoh {

/// Closed box [a_min, a_max] x [b_min, b_max] of bidegrees.
struct Window {
  int a_min = 0;
  int a_max = 0;
  int b_min = 0;
  int b_max = 0;

  static Window square(int radius) { return {-radius, radius, -radius, radius}; }

  bool empty() const noexcept { return a_min > a_max || b_min > b_max; }
  bool contains(Bidegree d) const noexcept { return d.a >= a_min && d.a <= a_max && d.b >= b_min && d.b <= b_max; }
  int width() const noexcept { return a_max - a_min + 1; }
  int height() const noexcept { return b_max - b_min + 1; }
  std::size_t size() const noexcept { return empty() ? 0 : static_cast<std::size_t>(width()) * height(); }
  int radius() const noexcept {
    return std::max({std::abs(a_min), std::abs(a_max), std::abs(b_min), std::abs(b_max)});
  }

  Window negated() const { return {-a_max, -a_min, -b_max, -b_min}; }

  template <typename F>
  void for_each(F&& f) const {
    for (int a = a_min; a <= a_max; ++a)
      for (int b = b_min; b <= b_max; ++b) f(Bidegree{a, b});
  }

  /// Parses "aMin:aMax,bMin:bMax".
  static Window parse(const std::string& text) {
    static const std::regex re(R"(\s*(-?\d+)\s*:\s*(-?\d+)\s*,\s*(-?\d+)\s*:\s*(-?\d+)\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
      throw Error(ErrorCode::FormatError, "window must look like aMin:aMax,bMin:bMax, got \"" + text + "\"");
    Window w{std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]), std::stoi(m[4])};
    if (w.empty()) throw Error(ErrorCode::FormatError, "empty window \"" + text + "\"");
    return w;
  }

  std::string to_string() const {
    return std::to_string(a_min) + ":" + std::to_string(a_max) + "," + std::to_string(b_min) + ":" +
           std::to_string(b_max);
  }

  friend bool operator==(const Window&, const Window&) = default;
};

/// Exact dimensions indexed by the bidegrees of a window.
class GradedTable {
 public:
  GradedTable() = default;
  explicit GradedTable(Window w) : window_(w), cells_(w.size(), 0) {}

  const Window& window() const noexcept { return window_; }

  long long at(Bidegree d) const {
    if (!window_.contains(d)) throw Error(ErrorCode::Internal, "cell " + to_string_bd(d) + " outside window");
    return cells_[offset(d)];
  }
  void set(Bidegree d, long long v) {
    if (!window_.contains(d)) throw Error(ErrorCode::Internal, "cell " + to_string_bd(d) + " outside window");
    cells_[offset(d)] = v;
  }

  bool is_zero() const {
    return std::all_of(cells_.begin(), cells_.end(), [](long long v) { return v == 0; });
  }

  friend bool operator==(const GradedTable&, const GradedTable&) = default;

  /// Grid with a rows running downward from b_max, columns a ascending.
  void print(std::ostream& os) const {
    int w = 4;
    for (long long v : cells_) w = std::max<int>(w, static_cast<int>(std::to_string(v).size()) + 1);
    os << std::setw(6) << "b\\a";
    for (int a = window_.a_min; a <= window_.a_max; ++a) os << std::setw(w) << a;
    os << '\n';
    for (int b = window_.b_max; b >= window_.b_min; --b) {
      os << std::setw(6) << b;
      for (int a = window_.a_min; a <= window_.a_max; ++a) os << std::setw(w) << at({a, b});
      os << '\n';
    }
  }

  void write_csv(std::ostream& os) const {
    os << "a,b,dim\n";
    window_.for_each([&](Bidegree d) { os << d.a << ',' << d.b << ',' << at(d) << '\n'; });
  }

 private:
  static std::string to_string_bd(Bidegree d) { return bicoh::to_string(d); }
  std::size_t offset(Bidegree d) const {
    return static_cast<std::size_t>(d.a - window_.a_min) * window_.height() + (d.b - window_.b_min);
  }

  Window window_{};
  std::vector<long long> cells_;
};

}  // namespace bicoh
