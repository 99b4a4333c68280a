#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbm/cyclotomic.hpp"
#include "pbm/errors.hpp"
#include "pbm/rational_function.hpp"

namespace pbm {

inline LaurentPoly zero_like(const LaurentPoly& x) { return LaurentPoly(x.nvars()); }
inline LaurentPoly one_like(const LaurentPoly& x) { return LaurentPoly::constant(x.nvars(), 1); }
inline RationalFunction zero_like(const RationalFunction& x) { return RationalFunction(x.nvars()); }
inline RationalFunction one_like(const RationalFunction& x) { return RationalFunction::constant(x.nvars(), 1); }
inline CycloNum zero_like(const CycloNum& x) { return CycloNum(x.field(), mpq_class(0)); }
inline CycloNum one_like(const CycloNum& x) { return CycloNum(x.field(), mpq_class(1)); }

// Dense row-major matrix over an exact ring. Entries carry their own context
// (variable count or cyclotomic field), so shapes are never empty.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& sample) {
    Matrix m(n, n, zero_like(sample));
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one_like(sample);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  template <typename F>
  auto map(F&& fn) const {
    using U = decltype(fn(std::declval<const T&>()));
    Matrix<U> out;
    out.rows_ = rows_;
    out.cols_ = cols_;
    out.data_.reserve(data_.size());
    for (const auto& x : data_) out.data_.push_back(fn(x));
    return out;
  }

  Matrix transpose() const {
    Matrix out(cols_, rows_, data_.front());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
  }

  // Conjugate transpose under the ring involution.
  Matrix adjoint() const {
    Matrix out(cols_, rows_, data_.front());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j).involute();
    }
    return out;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix out(nr, nc, data_.front());
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    }
    return out;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const T& x = (*this)(i, j);
        if (i == j ? !x.is_one() : !x.is_zero()) return false;
      }
    }
    return rows_ == cols_;
  }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!x.is_zero()) return false;
    }
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    require(a.cols_ == b.rows_, "matrix shape mismatch in product");
    Matrix out(a.rows_, b.cols_, zero_like(a.data_.front()));
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (x.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& y = b(k, j);
          if (!y.is_zero()) out(i, j) += x * y;
        }
      }
    }
    return out;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix shape mismatch in sum");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend Matrix operator-(Matrix a, const Matrix& b) {
    require(a.rows_ == b.rows_ && a.cols_ == b.cols_, "matrix shape mismatch in difference");
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend Matrix operator*(const T& c, Matrix a) {
    for (auto& x : a.data_) x = c * x;
    return a;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<T> apply(const std::vector<T>& v) const {
    require(v.size() == cols_, "vector length mismatch");
    std::vector<T> out(rows_, zero_like(v.front()));
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
      }
    }
    return out;
  }

 private:
  template <typename U>
  friend class Matrix;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Fraction-free (Bareiss) determinant; every division is exact.
template <typename T>
T determinant(Matrix<T> m) {
  require(m.rows() == m.cols(), "determinant of a non-square matrix");
  std::size_t n = m.rows();
  T prev = one_like(m(0, 0));
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t piv = k + 1;
      while (piv < n && m(piv, k).is_zero()) ++piv;
      if (piv == n) return zero_like(prev);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  T det = m(n - 1, n - 1);
  return negate ? -det : det;
}

// Reduced row echelon form over a field; returns pivot columns.
template <typename T>
std::vector<std::size_t> row_reduce(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(piv, j));
    T inv = m(row, c).inverse();
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c).is_zero()) continue;
      T f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
      }
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

template <typename T>
std::size_t rank(Matrix<T> m) {
  return row_reduce(m).size();
}

// Basis of the right kernel {x : m x = 0}, one vector per free column.
template <typename T>
std::vector<std::vector<T>> kernel(Matrix<T> m) {
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  T zero = zero_like(m(0, 0));
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), zero);
    v[free] = one_like(zero);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Right kernel by fraction-free (Bareiss) forward elimination followed by
// back substitution; intermediate entries stay in the ring generated by m.
template <typename T>
std::vector<std::vector<T>> fraction_free_kernel(Matrix<T> m) {
  T zero = zero_like(m(0, 0));
  T prev = one_like(zero);
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(row, j), m(piv, j));
    for (std::size_t i = row + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        m(i, j) = (m(row, c) * m(i, j) - m(i, c) * m(row, j)) / prev;
      }
      m(i, c) = zero;
    }
    prev = m(row, c);
    pivots.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), zero);
    v[free] = one_like(zero);
    for (std::size_t r = pivots.size(); r-- > 0;) {
      T s = zero;
      for (std::size_t j = pivots[r] + 1; j < m.cols(); ++j) {
        if (!m(r, j).is_zero() && !v[j].is_zero()) s += m(r, j) * v[j];
      }
      v[pivots[r]] = -(s / m(r, pivots[r]));
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename T>
Matrix<T> inverse(const Matrix<T>& m) {
  require(m.rows() == m.cols(), "inverse of a non-square matrix");
  std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n, zero_like(m(0, 0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = one_like(m(0, 0));
  }
  auto pivots = row_reduce(aug);
  require(pivots.size() == n && pivots.back() == n - 1, "matrix is singular");
  return aug.block(0, n, n, n);
}

}  // namespace pbm
