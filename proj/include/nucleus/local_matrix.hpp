#pragma once

#include "nucleus/fp_linalg.hpp"
#include "nucleus/local.hpp"

#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nucleus {

/// Dense rows x cols matrix over Z_(p).
class LocalMatrix {
 public:
  LocalMatrix(Prime p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, LocalScalar(p)) {}

  LocalMatrix(Prime p, std::initializer_list<std::initializer_list<long long>> entries)
      : LocalMatrix(p, entries.size(), entries.size() == 0 ? 0 : entries.begin()->size()) {
    std::size_t i = 0;
    for (const auto& row : entries) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      std::size_t j = 0;
      for (long long v : row) (*this)(i, j++) = LocalScalar(p, v);
      ++i;
    }
  }

  static LocalMatrix identity(Prime p, std::size_t n) {
    LocalMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = LocalScalar(p, 1);
    return m;
  }

  static LocalMatrix diagonal(Prime p, const std::vector<LocalScalar>& d) {
    LocalMatrix m(p, d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  Prime prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  LocalScalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const LocalScalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  /// Smallest valuation among the entries (kInfiniteValuation for a zero matrix).
  int min_valuation() const {
    int v = kInfiniteValuation;
    for (const auto& x : data_) v = std::min(v, x.valuation());
    return v;
  }

  friend bool operator==(const LocalMatrix& a, const LocalMatrix& b) {
    return a.p_ == b.p_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend LocalMatrix operator*(const LocalMatrix& a, const LocalMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw std::invalid_argument("matrix shape mismatch: " + a.shape() + " * " + b.shape());
    }
    LocalMatrix c(a.p_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const auto& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
        }
      }
    }
    return c;
  }

  friend LocalMatrix operator+(const LocalMatrix& a, const LocalMatrix& b) {
    a.check_same_shape(b);
    LocalMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend LocalMatrix operator-(const LocalMatrix& a, const LocalMatrix& b) {
    a.check_same_shape(b);
    LocalMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  LocalMatrix operator-() const {
    LocalMatrix c = *this;
    for (auto& x : c.data_) x = -x;
    return c;
  }

  LocalMatrix scaled(const LocalScalar& s) const {
    LocalMatrix c = *this;
    for (auto& x : c.data_) x *= s;
    return c;
  }

  LocalMatrix transpose() const {
    LocalMatrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Columns [first, first + count).
  LocalMatrix column_block(std::size_t first, std::size_t count) const {
    LocalMatrix m(p_, rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
    return m;
  }

  /// Rows [first, first + count).
  LocalMatrix row_block(std::size_t first, std::size_t count) const {
    LocalMatrix m(p_, count, cols_);
    for (std::size_t i = 0; i < count; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(first + i, j);
    return m;
  }

  static LocalMatrix hstack(const LocalMatrix& a, const LocalMatrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack row mismatch");
    LocalMatrix m(a.p_, a.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
      for (std::size_t j = 0; j < b.cols_; ++j) m(i, a.cols_ + j) = b(i, j);
    }
    return m;
  }

  static LocalMatrix vstack(const LocalMatrix& a, const LocalMatrix& b) {
    return hstack(a.transpose(), b.transpose()).transpose();
  }

  /// Block diagonal sum.
  static LocalMatrix direct_sum(const LocalMatrix& a, const LocalMatrix& b) {
    LocalMatrix m(a.p_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) m(a.rows_ + i, a.cols_ + j) = b(i, j);
    return m;
  }

  FpMatrix mod_p() const {
    FpMatrix m(p_.value(), rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).mod_p();
    return m;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[target] += s * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const LocalScalar& s) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!(*this)(source, j).is_zero()) (*this)(target, j) += s * (*this)(source, j);
    }
  }
  /// col[target] += s * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const LocalScalar& s) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!(*this)(i, source).is_zero()) (*this)(i, target) += s * (*this)(i, source);
    }
  }
  void scale_row(std::size_t r, const LocalScalar& s) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) *= s;
  }
  void scale_col(std::size_t c, const LocalScalar& s) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) *= s;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).to_string();
      os << "]";
    }
    os << "]";
    return os.str();
  }

 private:
  void check_same_shape(const LocalMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) {
      throw std::invalid_argument("matrix shape mismatch: " + shape() + " vs " + b.shape());
    }
  }

  Prime p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<LocalScalar> data_;
};

}  // namespace nucleus
