#pragma once

// Sparse bihomogeneous polynomials over S = K[x_1..x_m, y_1..y_n] and the
// single-graded subrings K[x], K[y].

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstring>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "arith.hpp"
#include "error.hpp"

namespace bicoh {

/// Bidegree (a, b): a counts x-degree, b counts y-degree. Entries may be negative.
struct Bidegree {
  int a = 0;
  int b = 0;

  int total() const noexcept { return a + b; }

  friend Bidegree operator+(Bidegree l, Bidegree r) { return {l.a + r.a, l.b + r.b}; }
  friend Bidegree operator-(Bidegree l, Bidegree r) { return {l.a - r.a, l.b - r.b}; }
  Bidegree operator-() const { return {-a, -b}; }
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;

  friend std::ostream& operator<<(std::ostream& os, const Bidegree& d) {
    return os << '(' << d.a << ',' << d.b << ')';
  }
};

inline std::string to_string(const Bidegree& d) {
  return "(" + std::to_string(d.a) + "," + std::to_string(d.b) + ")";
}

enum class RingFlavor { Full, XOnly, YOnly };

inline constexpr int kMaxVars = 8;

/// The ambient polynomial ring. Variables are numbered x_1..x_m then y_1..y_n.
/// The x-only ring K[x] has n = 0 and the y-only ring K[y] has m = 0.
class RingSpec {
 public:
  RingSpec(PrimeField field, int m, int n, RingFlavor flavor = RingFlavor::Full)
      : field_(field), m_(m), n_(n), flavor_(flavor) {
    if (flavor_ == RingFlavor::XOnly) n_ = 0;
    if (flavor_ == RingFlavor::YOnly) m_ = 0;
    if (m_ < 0 || n_ < 0 || m_ + n_ < 1 || m_ + n_ > kMaxVars)
      throw Error(ErrorCode::FormatError, "ring needs 1 <= m + n <= " + std::to_string(kMaxVars) +
                                              " variables, got m=" + std::to_string(m_) +
                                              ", n=" + std::to_string(n_));
  }
  RingSpec(std::uint32_t p, int m, int n, RingFlavor flavor = RingFlavor::Full)
      : RingSpec(PrimeField(p), m, n, flavor) {}

  const PrimeField& field() const noexcept { return field_; }
  std::uint32_t p() const noexcept { return field_.modulus(); }
  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }
  int nvars() const noexcept { return m_ + n_; }
  RingFlavor flavor() const noexcept { return flavor_; }

  RingSpec x_subring() const { return RingSpec(field_, m_, 0, RingFlavor::XOnly); }
  RingSpec y_subring() const { return RingSpec(field_, 0, n_, RingFlavor::YOnly); }

  /// Generator degree of the canonical module: omega = R(-m, -n).
  Bidegree omega_degree() const noexcept { return {m_, n_}; }

  std::string variable_name(int index) const {
    return index < m_ ? "x" + std::to_string(index + 1) : "y" + std::to_string(index - m_ + 1);
  }

  friend bool operator==(const RingSpec& l, const RingSpec& r) {
    return l.field_ == r.field_ && l.m_ == r.m_ && l.n_ == r.n_;
  }

 private:
  PrimeField field_;
  int m_;
  int n_;
  RingFlavor flavor_;
};

/// Exponent vector, at most kMaxVars entries of 8 bits each.
class Monomial {
 public:
  Monomial() { exps_.fill(0); }
  Monomial(std::initializer_list<int> exps) {
    exps_.fill(0);
    if (exps.size() > kMaxVars) throw Error(ErrorCode::ExponentOverflow, "too many variables");
    int i = 0;
    for (int e : exps) set(i++, e);
  }

  static Monomial variable(int index, int power = 1) {
    Monomial m;
    m.set(index, power);
    return m;
  }

  int operator[](int i) const noexcept { return exps_[i]; }
  void set(int i, int e) {
    if (e < 0 || e > 255) throw Error(ErrorCode::ExponentOverflow, "exponent out of range");
    exps_[i] = static_cast<std::uint8_t>(e);
  }

  int total_degree() const noexcept {
    int d = 0;
    for (auto e : exps_) d += e;
    return d;
  }

  Bidegree bidegree(int m) const noexcept {
    int a = 0, b = 0;
    for (int i = 0; i < kMaxVars; ++i) (i < m ? a : b) += exps_[i];
    return {a, b};
  }

  std::uint64_t key() const noexcept {
    std::uint64_t k;
    std::memcpy(&k, exps_.data(), sizeof k);
    return k;
  }

  bool divides(const Monomial& o) const noexcept {
    for (int i = 0; i < kMaxVars; ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& l, const Monomial& r) {
    Monomial out;
    for (int i = 0; i < kMaxVars; ++i) {
      int e = l.exps_[i] + r.exps_[i];
      if (e > 255) throw Error(ErrorCode::ExponentOverflow, "exponent overflow in product");
      out.exps_[i] = static_cast<std::uint8_t>(e);
    }
    return out;
  }

  /// l / r; requires r | l.
  friend Monomial operator/(const Monomial& l, const Monomial& r) {
    Monomial out;
    for (int i = 0; i < kMaxVars; ++i) out.exps_[i] = static_cast<std::uint8_t>(l.exps_[i] - r.exps_[i]);
    return out;
  }

  static Monomial lcm(const Monomial& l, const Monomial& r) {
    Monomial out;
    for (int i = 0; i < kMaxVars; ++i) out.exps_[i] = std::max(l.exps_[i], r.exps_[i]);
    return out;
  }

  static bool coprime(const Monomial& l, const Monomial& r) {
    for (int i = 0; i < kMaxVars; ++i)
      if (l.exps_[i] && r.exps_[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial& l, const Monomial& r) noexcept { return l.exps_ == r.exps_; }

 private:
  std::array<std::uint8_t, kMaxVars> exps_;
};

/// Degree reverse lexicographic order with x_1 > ... > x_m > y_1 > ... > y_n.
/// Returns <0, 0, >0 like a three-way comparison.
inline int compare_degrevlex(const Monomial& l, const Monomial& r) noexcept {
  int dl = l.total_degree(), dr = r.total_degree();
  if (dl != dr) return dl < dr ? -1 : 1;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (l[i] != r[i]) return l[i] > r[i] ? -1 : 1;
  return 0;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return std::hash<std::uint64_t>{}(m.key()); }
};

struct Term {
  Monomial mon;
  Coeff coeff;
};

/// All monomials of bidegree d, in a fixed lexicographic enumeration order.
inline std::vector<Monomial> monomial_basis(const RingSpec& ring, Bidegree d) {
  std::vector<Monomial> out;
  if (d.a < 0 || d.b < 0) return out;
  if (ring.m() == 0 && d.a != 0) return out;
  if (ring.n() == 0 && d.b != 0) return out;

  // compositions of `total` into `parts` slots starting at variable `offset`
  auto compositions = [](int total, int parts, int offset) {
    std::vector<Monomial> res;
    if (parts == 0) {
      res.emplace_back();
      return res;
    }
    std::vector<int> e(parts, 0);
    std::function<void(int, int)> rec = [&](int idx, int left) {
      if (idx == parts - 1) {
        e[idx] = left;
        Monomial mon;
        for (int i = 0; i < parts; ++i) mon.set(offset + i, e[i]);
        res.push_back(mon);
        return;
      }
      for (int v = left; v >= 0; --v) {
        e[idx] = v;
        rec(idx + 1, left - v);
      }
    };
    rec(0, total);
    return res;
  };

  auto xs = compositions(d.a, ring.m(), 0);
  auto ys = compositions(d.b, ring.n(), ring.m());
  out.reserve(xs.size() * ys.size());
  for (const auto& x : xs)
    for (const auto& y : ys) out.push_back(x * y);
  return out;
}

/// Number of monomials of degree d in k variables: C(d + k - 1, k - 1).
inline long long monomial_count(int d, int k) {
  if (d < 0) return 0;
  if (k == 0) return d == 0 ? 1 : 0;
  long long r = 1;
  for (int i = 1; i < k; ++i) r = r * (d + i) / i;
  return r;
}

/// Sparse polynomial; terms strictly descending in degrevlex, no zero coefficients.
class Polynomial {
 public:
  explicit Polynomial(RingSpec ring) : ring_(std::move(ring)) {}
  Polynomial(RingSpec ring, std::vector<Term> terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
    normalize();
  }

  static Polynomial monomial(const RingSpec& ring, const Monomial& mon, long long coeff = 1) {
    return Polynomial(ring, {Term{mon, ring.field().from_int(coeff)}});
  }
  static Polynomial variable(const RingSpec& ring, int index) {
    return monomial(ring, Monomial::variable(index));
  }

  const RingSpec& ring() const noexcept { return ring_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Term& lead() const { return terms_.front(); }

  bool is_bihomogeneous() const {
    if (terms_.empty()) return true;
    Bidegree d = terms_.front().mon.bidegree(ring_.m());
    for (const auto& t : terms_)
      if (t.mon.bidegree(ring_.m()) != d) return false;
    return true;
  }

  /// True when the polynomial is a nonzero constant.
  bool is_unit() const noexcept { return terms_.size() == 1 && terms_.front().mon.total_degree() == 0; }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = ring_.field().neg(t.coeff);
    return r;
  }

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) { return combine(f, g, false); }
  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) { return combine(f, g, true); }

  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    check_ring(f, g);
    std::vector<Term> prod;
    prod.reserve(f.terms_.size() * g.terms_.size());
    const auto& fld = f.ring_.field();
    for (const auto& a : f.terms_)
      for (const auto& b : g.terms_) prod.push_back({a.mon * b.mon, fld.mul(a.coeff, b.coeff)});
    return Polynomial(f.ring_, std::move(prod));
  }

  Polynomial scaled(Coeff c, const Monomial& mon) const {
    Polynomial r(ring_);
    if (c == 0) return r;
    r.terms_.reserve(terms_.size());
    // multiplication by a monomial preserves the order
    for (const auto& t : terms_) r.terms_.push_back({t.mon * mon, ring_.field().mul(t.coeff, c)});
    return r;
  }

  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    if (!(f.ring_ == g.ring_) || f.terms_.size() != g.terms_.size()) return false;
    for (std::size_t i = 0; i < f.terms_.size(); ++i)
      if (!(f.terms_[i].mon == g.terms_[i].mon) || f.terms_[i].coeff != g.terms_[i].coeff) return false;
    return true;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      long long c = ring_.field().to_signed(t.coeff);
      bool negative = c < 0;
      long long mag = negative ? -c : c;
      if (first) {
        if (negative) os << '-';
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      bool is_const = t.mon.total_degree() == 0;
      bool wrote = false;
      if (mag != 1 || is_const) {
        os << mag;
        wrote = true;
      }
      for (int v = 0; v < ring_.nvars(); ++v) {
        int e = t.mon[v];
        if (!e) continue;
        if (wrote) os << '*';
        os << ring_.variable_name(v);
        if (e > 1) os << '^' << e;
        wrote = true;
      }
    }
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& f) { return os << f.to_string(); }

 private:
  static void check_ring(const Polynomial& f, const Polynomial& g) {
    if (!(f.ring_ == g.ring_)) throw Error(ErrorCode::RingMismatch, "polynomials over different rings");
  }

  static Polynomial combine(const Polynomial& f, const Polynomial& g, bool subtract) {
    check_ring(f, g);
    const auto& fld = f.ring_.field();
    Polynomial r(f.ring_);
    r.terms_.reserve(f.terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < f.terms_.size() || j < g.terms_.size()) {
      int cmp;
      if (i == f.terms_.size()) cmp = -1;
      else if (j == g.terms_.size()) cmp = 1;
      else cmp = compare_degrevlex(f.terms_[i].mon, g.terms_[j].mon);
      if (cmp > 0) {
        r.terms_.push_back(f.terms_[i++]);
      } else if (cmp < 0) {
        Term t = g.terms_[j++];
        if (subtract) t.coeff = fld.neg(t.coeff);
        r.terms_.push_back(t);
      } else {
        Coeff c = subtract ? fld.sub(f.terms_[i].coeff, g.terms_[j].coeff)
                           : fld.add(f.terms_[i].coeff, g.terms_[j].coeff);
        if (c) r.terms_.push_back({f.terms_[i].mon, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void normalize() {
    const auto& fld = ring_.field();
    for (auto& t : terms_) t.coeff %= ring_.p();
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& l, const Term& r) { return compare_degrevlex(l.mon, r.mon) > 0; });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      if (!out.empty() && out.back().mon == t.mon) {
        out.back().coeff = fld.add(out.back().coeff, t.coeff);
      } else {
        out.push_back(t);
      }
    }
    std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
    for (const auto& t : out)
      for (int v = ring_.nvars(); v < kMaxVars; ++v)
        if (t.mon[v]) throw Error(ErrorCode::RingMismatch, "monomial uses a variable outside the ring");
    terms_ = std::move(out);
  }

  RingSpec ring_;
  std::vector<Term> terms_;
};

/// Common bidegree of a nonzero bihomogeneous polynomial.
inline Bidegree bidegree_of(const Polynomial& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPoly, "zero polynomial has no bidegree");
  if (!f.is_bihomogeneous()) throw Error(ErrorCode::NotBihomogeneous, f.to_string());
  return f.lead().mon.bidegree(f.ring().m());
}

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const RingSpec& ring) : text_(text), ring_(ring) {}

  Polynomial parse() {
    std::vector<Term> terms;
    skip_ws();
    if (pos_ == text_.size()) fail("empty polynomial");
    bool first = true;
    while (true) {
      skip_ws();
      bool negative = false;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
        negative = text_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      terms.push_back(parse_term(negative));
      skip_ws();
      if (pos_ == text_.size()) break;
    }
    return Polynomial(ring_, std::move(terms));
  }

 private:
  [[noreturn]] void fail(const std::string& msg, ErrorCode code = ErrorCode::ParseError) const {
    throw ParseError(code, pos_, msg + " in \"" + std::string(text_) + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r' ||
                                   text_[pos_] == '\n'))
      ++pos_;
  }

  bool at_digit() const { return pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9'; }

  // integer reduced mod p digit by digit
  Coeff parse_integer() {
    const auto& f = ring_.field();
    Coeff v = 0;
    while (at_digit()) {
      v = f.add(f.mul(v, 10), static_cast<Coeff>(text_[pos_] - '0'));
      ++pos_;
    }
    return v;
  }

  long parse_exponent() {
    skip_ws();
    if (!at_digit()) fail("expected positive exponent");
    long v = 0;
    while (at_digit()) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 255) fail("exponent too large", ErrorCode::ExponentOverflow);
      ++pos_;
    }
    if (v == 0) fail("exponent must be positive");
    return v;
  }

  Term parse_term(bool negative) {
    const auto& f = ring_.field();
    Coeff coeff = 1;
    Monomial mon;
    skip_ws();
    bool need_factor = true;
    if (at_digit()) {
      coeff = parse_integer();
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
      } else {
        need_factor = false;  // bare integer constant
      }
    }
    while (need_factor) {
      skip_ws();
      parse_factor(mon);
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
      } else {
        break;
      }
    }
    if (negative) coeff = f.neg(coeff);
    return {mon, coeff};
  }

  void parse_factor(Monomial& mon) {
    if (pos_ >= text_.size() || (text_[pos_] != 'x' && text_[pos_] != 'y')) fail("expected variable");
    std::size_t start = pos_;
    char kind = text_[pos_++];
    if (!at_digit()) fail("expected variable index");
    long idx = 0;
    while (at_digit()) {
      idx = idx * 10 + (text_[pos_++] - '0');
      if (idx > 1000) break;
    }
    int limit = kind == 'x' ? ring_.m() : ring_.n();
    if (idx < 1 || idx > limit) {
      pos_ = start;
      fail(std::string("unknown variable ") + kind + std::to_string(idx), ErrorCode::UnknownVariable);
    }
    int var = kind == 'x' ? static_cast<int>(idx - 1) : ring_.m() + static_cast<int>(idx - 1);
    long e = 1;
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      e = parse_exponent();
    }
    long total = mon[var] + e;
    if (total > 255) fail("exponent too large", ErrorCode::ExponentOverflow);
    mon.set(var, static_cast<int>(total));
  }

  std::string_view text_;
  const RingSpec& ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses `[int *] factor (* factor)*` terms joined by + / -; whitespace ignored.
/// A bare integer is accepted as a constant term (needed for zero entries and units).
inline Polynomial parse_poly(std::string_view text, const RingSpec& ring) {
  return detail::PolyParser(text, ring).parse();
}

}  // namespace bicoh
