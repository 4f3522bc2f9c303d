#pragma once

// Prime field arithmetic and the dense linear algebra that every
// degree-restricted computation reduces to.

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace bicoh {

using Coeff = std::uint32_t;

inline constexpr Coeff kDefaultPrime = 32003;

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Arithmetic in Z/p for a prime p < 2^31; residues are kept in [0, p).
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p = kDefaultPrime) : p_(p) {
    if (p >= (1u << 31) || !is_prime(p))
      throw Error(ErrorCode::BadModulus, std::to_string(p) + " is not a prime below 2^31");
  }

  std::uint32_t modulus() const noexcept { return p_; }

  Coeff add(Coeff a, Coeff b) const noexcept {
    Coeff s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Coeff sub(Coeff a, Coeff b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Coeff neg(Coeff a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const noexcept {
    return static_cast<Coeff>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Coeff inv(Coeff a) const {
    if (a == 0) throw Error(ErrorCode::Internal, "inverse of zero");
    // Fermat: a^(p-2)
    std::uint64_t result = 1, base = a, e = p_ - 2;
    while (e) {
      if (e & 1) result = result * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<Coeff>(result);
  }

  /// Reduces an arbitrary signed integer into [0, p).
  Coeff from_int(long long v) const noexcept {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<Coeff>(r);
  }

  /// Symmetric representative in (-p/2, p/2], used for printing.
  long long to_signed(Coeff a) const noexcept {
    return a > p_ / 2 ? static_cast<long long>(a) - p_ : static_cast<long long>(a);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

/// A scalar of F_p bundled with its modulus.
class FieldElement {
 public:
  FieldElement(PrimeField field, long long value) : field_(field), value_(field.from_int(value)) {}

  Coeff value() const noexcept { return value_; }
  const PrimeField& field() const noexcept { return field_; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {a.field_, a.field_.add(a.value_, b.value_), raw_tag{}};
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {a.field_, a.field_.sub(a.value_, b.value_), raw_tag{}};
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {a.field_, a.field_.mul(a.value_, b.value_), raw_tag{}};
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return {a.field_, a.field_.mul(a.value_, b.field_.inv(b.value_)), raw_tag{}};
  }
  FieldElement operator-() const { return {field_, field_.neg(value_), raw_tag{}}; }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

  friend std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.value_; }

 private:
  struct raw_tag {};
  FieldElement(PrimeField f, Coeff v, raw_tag) : field_(f), value_(v) {}

  static void check(const FieldElement& a, const FieldElement& b) {
    if (!(a.field_ == b.field_))
      throw Error(ErrorCode::RingMismatch, "field elements over different primes");
  }

  PrimeField field_;
  Coeff value_;
};

/// Row-major dense matrix over F_p.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(PrimeField field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static DenseMatrix identity(PrimeField field, std::size_t n) {
    DenseMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Builds from signed integer rows; all rows must share one length.
  static DenseMatrix from_rows(PrimeField field, const std::vector<std::vector<long long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    DenseMatrix m(field, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw Error(ErrorCode::ShapeMismatch, "ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
    }
    return m;
  }

  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Coeff& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Coeff operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Coeff> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Coeff> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool is_zero() const {
    for (Coeff v : data_)
      if (v) return false;
    return true;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::ShapeMismatch, "product of incompatible matrices");
    const auto& f = a.field_;
    DenseMatrix c(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        Coeff aik = a(i, k);
        if (!aik) continue;
        auto brow = b.row(k);
        auto crow = c.row(i);
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (brow[j]) crow[j] = f.add(crow[j], f.mul(aik, brow[j]));
      }
    return c;
  }

  /// Horizontal concatenation [a | b]; row counts must agree.
  static DenseMatrix hconcat(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_) throw Error(ErrorCode::ShapeMismatch, "hconcat row mismatch");
    DenseMatrix c(a.field_, a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) c(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, a.cols_ + j) = b(i, j);
    }
    return c;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  PrimeField field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Coeff> data_;
};

namespace detail {

inline void axpy_row(const PrimeField& f, std::span<Coeff> dst, std::span<const Coeff> src, Coeff factor,
                     std::size_t from) {
  // dst -= factor * src on columns [from, end)
  Coeff nf = f.neg(factor);
  for (std::size_t j = from; j < dst.size(); ++j)
    if (src[j]) dst[j] = f.add(dst[j], f.mul(nf, src[j]));
}

/// In-place reduction to reduced row echelon form; returns pivot columns in row order.
inline std::vector<std::size_t> rref_in_place(DenseMatrix& m) {
  const auto& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
    Coeff inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (i != r && m(i, c)) axpy_row(f, m.row(i), m.row(r), m(i, c), c);
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace detail

/// Rank by Gaussian elimination with first-nonzero pivoting.
inline std::size_t rank(DenseMatrix m) {
  const auto& f = m.field();
  // Eliminate along the shorter side.
  if (m.rows() > m.cols()) m = m.transpose();
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = c; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
    Coeff inv = f.inv(m(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i)
      if (m(i, c)) detail::axpy_row(f, m.row(i), m.row(r), f.mul(m(i, c), inv), c);
    ++r;
  }
  return r;
}

/// Columns form a basis of the null space of m.
inline DenseMatrix kernel_basis(const DenseMatrix& m) {
  const auto& f = m.field();
  DenseMatrix red = m;
  auto pivots = detail::rref_in_place(red);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  DenseMatrix basis(f, m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t fc = free_cols[k];
    basis(fc, k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = f.neg(red(r, fc));
  }
  return basis;
}

/// dim(ker B / im A) for a composable pair  . --A--> . --B--> .
/// Throws COMPOSE_NONZERO unless B*A = 0.
inline std::size_t homology_dim(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.cols())
    throw Error(ErrorCode::ShapeMismatch, "homology_dim: target of A is not source of B");
  if (a.cols() && b.rows() && a.rows() && !(b * a).is_zero())
    throw Error(ErrorCode::ComposeNonzero, "B*A is not zero");
  return b.cols() - rank(b) - rank(a);
}

/// A subspace of F_p^n kept in reduced row echelon form. Used to reduce
/// vectors modulo the subspace and to read off quotient coordinates.
class Subspace {
 public:
  Subspace() = default;

  /// Span of the rows of `generators`.
  explicit Subspace(DenseMatrix generators) : ambient_(generators.cols()), rows_(std::move(generators)) {
    pivots_ = detail::rref_in_place(rows_);
    pivot_row_.assign(ambient_, npos);
    for (std::size_t r = 0; r < pivots_.size(); ++r) pivot_row_[pivots_[r]] = r;
    for (std::size_t c = 0; c < ambient_; ++c)
      if (pivot_row_[c] == npos) {
        quotient_index_.push_back(c);
      }
    quotient_pos_.assign(ambient_, npos);
    for (std::size_t k = 0; k < quotient_index_.size(); ++k) quotient_pos_[quotient_index_[k]] = k;
  }

  /// The zero subspace of F_p^n.
  static Subspace zero(PrimeField f, std::size_t n) { return Subspace(DenseMatrix(f, 0, n)); }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return pivots_.size(); }
  std::size_t codim() const noexcept { return ambient_ - pivots_.size(); }

  /// Coordinates of v + U in the quotient, w.r.t. the non-pivot standard basis.
  std::vector<Coeff> quotient_coords(std::vector<Coeff> v) const {
    const auto& f = rows_.field();
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
      Coeff c = v[pivots_[r]];
      if (c) detail::axpy_row(f, v, rows_.row(r), c, pivots_[r]);
    }
    std::vector<Coeff> out(quotient_index_.size());
    for (std::size_t k = 0; k < quotient_index_.size(); ++k) out[k] = v[quotient_index_[k]];
    return out;
  }

  /// Quotient coordinates of the standard basis vector e_c, written into `out`
  /// (which must be zeroed and of length codim()).
  void unit_quotient_coords(std::size_t c, std::span<Coeff> out, Coeff scale) const {
    const auto& f = rows_.field();
    if (quotient_pos_[c] != npos) {
      out[quotient_pos_[c]] = f.add(out[quotient_pos_[c]], scale);
      return;
    }
    auto row = rows_.row(pivot_row_[c]);
    Coeff ns = f.neg(scale);
    for (std::size_t k = 0; k < quotient_index_.size(); ++k) {
      Coeff v = row[quotient_index_[k]];
      if (v) out[k] = f.add(out[k], f.mul(ns, v));
    }
  }

  /// Standard-basis index of the k-th quotient basis vector.
  std::size_t quotient_basis(std::size_t k) const { return quotient_index_[k]; }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t ambient_ = 0;
  DenseMatrix rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> pivot_row_;
  std::vector<std::size_t> quotient_index_;
  std::vector<std::size_t> quotient_pos_;
};

}  // namespace bicoh
