#pragma once

// Dense linear algebra over the prime field F_p.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nucleus {

class FpMatrix {
 public:
  FpMatrix(unsigned p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static FpMatrix identity(unsigned p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  unsigned prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void set(std::size_t i, std::size_t j, std::int64_t v) {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    (*this)(i, j) = static_cast<std::uint32_t>(r);
  }

  bool is_zero() const {
    for (auto v : data_) {
      if (v != 0) return false;
    }
    return true;
  }

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("FpMatrix shape mismatch in product");
    FpMatrix c(a.p_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const std::uint64_t aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          c(i, j) = static_cast<std::uint32_t>((c(i, j) + aik * b(k, j)) % a.p_);
        }
      }
    }
    return c;
  }

  friend FpMatrix operator+(const FpMatrix& a, const FpMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
      throw std::invalid_argument("FpMatrix shape mismatch in sum");
    }
    FpMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = (a.data_[i] + b.data_[i]) % a.p_;
    return c;
  }

  friend FpMatrix operator-(const FpMatrix& a, const FpMatrix& b) {
    FpMatrix nb = b;
    for (auto& v : nb.data_) v = (a.p_ - v) % a.p_;
    return a + nb;
  }

  std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("FpMatrix::apply shape mismatch");
    std::vector<std::uint32_t> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<std::uint64_t>((*this)(i, j)) * v[j];
      out[i] = static_cast<std::uint32_t>(acc % p_);
    }
    return out;
  }

  /// Row reduces in place; returns pivot columns in order.
  std::vector<std::size_t> row_reduce() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t piv = r;
      while (piv < rows_ && (*this)(piv, c) == 0) ++piv;
      if (piv == rows_) continue;
      swap_rows(piv, r);
      scale_row(r, inverse((*this)(r, c)));
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i != r && (*this)(i, c) != 0) add_row_multiple(i, r, p_ - (*this)(i, c));
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  std::size_t rank() const {
    FpMatrix tmp = *this;
    return tmp.row_reduce().size();
  }

  /// Basis of {x : A x = 0}, one vector per free column.
  std::vector<std::vector<std::uint32_t>> nullspace() const {
    FpMatrix r = *this;
    auto pivots = r.row_reduce();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<std::uint32_t>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<std::uint32_t> v(cols_, 0);
      v[free] = 1;
      for (std::size_t k = 0; k < pivots.size(); ++k) {
        v[pivots[k]] = (p_ - r(k, free)) % p_;
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

  FpMatrix transpose() const {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Stacks b below a.
  static FpMatrix vstack(const FpMatrix& a, const FpMatrix& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack shape mismatch");
    FpMatrix c(a.p_, a.rows_ + b.rows_, a.cols_);
    std::copy(a.data_.begin(), a.data_.end(), c.data_.begin());
    std::copy(b.data_.begin(), b.data_.end(), c.data_.begin() + static_cast<std::ptrdiff_t>(a.data_.size()));
    return c;
  }

  /// Places b to the right of a.
  static FpMatrix hstack(const FpMatrix& a, const FpMatrix& b) {
    return vstack(a.transpose(), b.transpose()).transpose();
  }

  std::uint32_t inverse(std::uint32_t a) const {
    if (a % p_ == 0) throw std::domain_error("inverse of zero in F_p");
    // Fermat: a^(p-2).
    std::uint64_t result = 1, base = a % p_;
    unsigned e = p_ - 2;
    while (e > 0) {
      if (e & 1U) result = result * base % p_;
      base = base * base % p_;
      e >>= 1U;
    }
    return static_cast<std::uint32_t>(result);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void scale_row(std::size_t r, std::uint32_t s) {
    for (std::size_t j = 0; j < cols_; ++j) {
      (*this)(r, j) = static_cast<std::uint32_t>(static_cast<std::uint64_t>((*this)(r, j)) * s % p_);
    }
  }
  void add_row_multiple(std::size_t target, std::size_t source, std::uint32_t s) {
    for (std::size_t j = 0; j < cols_; ++j) {
      (*this)(target, j) = static_cast<std::uint32_t>(
          ((*this)(target, j) + static_cast<std::uint64_t>((*this)(source, j)) * s) % p_);
    }
  }

 private:
  unsigned p_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint32_t> data_;
};

/// Incrementally maintained row-reduced span of vectors in F_p^n.
class FpSpan {
 public:
  FpSpan(unsigned p, std::size_t dim) : p_(p), dim_(dim) {}

  std::size_t dimension() const { return rows_.size(); }
  std::size_t ambient_dimension() const { return dim_; }

  /// Reduces v against the span; returns the reduced vector (zero iff v in span).
  std::vector<std::uint32_t> reduce(std::vector<std::uint32_t> v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const auto c = pivots_[k];
      if (v[c] == 0) continue;
      const std::uint64_t f = v[c];
      for (std::size_t j = 0; j < dim_; ++j) {
        v[j] = static_cast<std::uint32_t>((v[j] + (p_ - f) * rows_[k][j]) % p_);
      }
    }
    return v;
  }

  bool contains(const std::vector<std::uint32_t>& v) const {
    auto r = reduce(v);
    for (auto x : r) {
      if (x != 0) return false;
    }
    return true;
  }

  /// Adds v; returns true if the span grew.
  bool insert(std::vector<std::uint32_t> v) {
    v = reduce(std::move(v));
    std::size_t c = 0;
    while (c < dim_ && v[c] == 0) ++c;
    if (c == dim_) return false;
    FpMatrix helper(p_, 1, 1);
    const std::uint64_t inv = helper.inverse(v[c]);
    for (auto& x : v) x = static_cast<std::uint32_t>(x * inv % p_);
    // Keep rows fully reduced against the new pivot.
    for (auto& row : rows_) {
      if (row[c] == 0) continue;
      const std::uint64_t f = row[c];
      for (std::size_t j = 0; j < dim_; ++j) {
        row[j] = static_cast<std::uint32_t>((row[j] + (p_ - f) * v[j]) % p_);
      }
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(c);
    return true;
  }

  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const std::vector<std::vector<std::uint32_t>>& rows() const { return rows_; }

 private:
  unsigned p_;
  std::size_t dim_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace nucleus
