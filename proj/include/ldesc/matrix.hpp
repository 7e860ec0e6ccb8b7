#pragma once

// Dense matrices over an exact field type T and the elimination routines the
// rest of the library is built on. T must provide zero(), one(), is_zero(),
// the four arithmetic operators, unary minus and operator==.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "ldesc/errors.hpp"

namespace ldesc {

template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n, const T& one) {
    Matrix m(n, n, one.zero());
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const noexcept { return data_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  // row[dst] -= factor * row[src]
  void axpy_row(std::size_t dst, std::size_t src, const T& factor) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (!(*this)(src, j).is_zero()) (*this)(dst, j) = (*this)(dst, j) - factor * (*this)(src, j);
    }
  }
  // col[dst] -= factor * col[src]
  void axpy_col(std::size_t dst, std::size_t src, const T& factor) {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!(*this)(i, src).is_zero()) (*this)(i, dst) = (*this)(i, dst) - factor * (*this)(i, src);
    }
  }
  void scale_row(std::size_t r, const T& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = (*this)(r, j) * factor;
  }
  void scale_col(std::size_t c, const T& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = (*this)(i, c) * factor;
  }

  Matrix transpose() const {
    Matrix t;
    t.rows_ = cols_;
    t.cols_ = rows_;
    t.data_.reserve(data_.size());
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) t.data_.push_back((*this)(i, j));
    return t;
  }

  template <typename F>
  auto map(F&& fn) const -> Matrix<decltype(fn(std::declval<const T&>()))> {
    using U = decltype(fn(std::declval<const T&>()));
    Matrix<U> out;
    std::vector<U> d;
    d.reserve(data_.size());
    for (const auto& x : data_) d.push_back(fn(x));
    out.assign(rows_, cols_, std::move(d));
    return out;
  }

  void assign(std::size_t rows, std::size_t cols, std::vector<T> data) {
    if (data.size() != rows * cols) throw Error(ErrorCode::DimensionMismatch, "matrix data size");
    rows_ = rows;
    cols_ = cols;
    data_ = std::move(data);
  }

  Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    Matrix out;
    std::vector<T> d;
    d.reserve(rs.size() * cs.size());
    for (auto i : rs)
      for (auto j : cs) d.push_back((*this)(i, j));
    out.assign(rs.size(), cs.size(), std::move(d));
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = c.data_[k] + b.data_[k];
    return c;
  }
  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_same_shape(a, b);
    Matrix c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k) c.data_[k] = c.data_[k] - b.data_[k];
    return c;
  }
  friend Matrix operator-(const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x = -x;
    return c;
  }
  friend Matrix operator*(const T& s, const Matrix& a) {
    Matrix c = a;
    for (auto& x : c.data_) x = s * x;
    return c;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    if (a.data_.empty() || b.data_.empty()) {
      // Shape-only product; callers never need entries of an empty product.
      Matrix c;
      c.rows_ = a.rows_;
      c.cols_ = b.cols_;
      if (a.rows_ * b.cols_ != 0) {
        const T& proto = a.data_.empty() ? b.data_.front() : a.data_.front();
        c.data_.assign(a.rows_ * b.cols_, proto.zero());
      }
      return c;
    }
    Matrix c(a.rows_, b.cols_, a.data_.front().zero());
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik.is_zero()) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& bkj = b(k, j);
          if (!bkj.is_zero()) c(i, j) = c(i, j) + aik * bkj;
        }
      }
    return c;
  }

 private:
  static void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix shape");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <typename T>
Matrix<T> hconcat(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "hconcat");
  std::vector<T> d;
  d.reserve(a.rows() * (a.cols() + b.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) d.push_back(a(i, j));
    for (std::size_t j = 0; j < b.cols(); ++j) d.push_back(b(i, j));
  }
  Matrix<T> out;
  out.assign(a.rows(), a.cols() + b.cols(), std::move(d));
  return out;
}

template <typename T>
Matrix<T> block_diag(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
  Matrix<T> out(a.rows() + b.rows(), a.cols() + b.cols(), zero);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

// Kronecker product, a's index is the outer one.
template <typename T>
Matrix<T> kronecker(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.data().empty() || b.data().empty()) throw Error(ErrorCode::DimensionMismatch, "kronecker of empty");
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols(), a(0, 0).zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

struct EchelonInfo {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form in place.
template <typename T>
EchelonInfo row_reduce(Matrix<T>& a) {
  EchelonInfo info;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    T inv = a(r, c).one() / a(r, c);
    a.scale_row(r, inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i != r && !a(i, c).is_zero()) {
        const T factor = a(i, c);
        a.axpy_row(i, r, factor);
      }
    }
    info.pivot_cols.push_back(c);
    ++r;
  }
  info.rank = r;
  return info;
}

template <typename T>
std::size_t rank(Matrix<T> a) {
  return row_reduce(a).rank;
}

/// Basis of {x : a x = 0}, one column vector per entry.
template <typename T>
std::vector<std::vector<T>> nullspace(Matrix<T> a, const T& proto) {
  auto info = row_reduce(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : info.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(a.cols(), proto.zero());
    v[free] = proto.one();
    for (std::size_t r = 0; r < info.rank; ++r) v[info.pivot_cols[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename T>
T determinant(Matrix<T> a, const T& one) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  T det = one;
  for (std::size_t c = 0; c < a.cols(); ++c) {
    std::size_t p = c;
    while (p < a.rows() && a(p, c).is_zero()) ++p;
    if (p == a.rows()) return one.zero();
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det = det * a(c, c);
    T inv = one / a(c, c);
    for (std::size_t i = c + 1; i < a.rows(); ++i) {
      if (!a(i, c).is_zero()) a.axpy_row(i, c, a(i, c) * inv);
    }
  }
  return det;
}

template <typename T>
std::optional<Matrix<T>> try_inverse(const Matrix<T>& a, const T& one) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> aug = hconcat(a, Matrix<T>::identity(n, one));
  auto info = row_reduce(aug);
  if (info.rank < n || (n > 0 && info.pivot_cols[n - 1] != n - 1)) return std::nullopt;
  std::vector<std::size_t> rs(n), cs(n);
  for (std::size_t i = 0; i < n; ++i) {
    rs[i] = i;
    cs[i] = n + i;
  }
  return aug.submatrix(rs, cs);
}

template <typename T>
Matrix<T> inverse(const Matrix<T>& a, const T& one) {
  auto inv = try_inverse(a, one);
  if (!inv) throw Error(ErrorCode::Singular, "matrix is not invertible");
  return *inv;
}

/// Characteristic polynomial det(tI - a), coefficients from degree 0 up to
/// the leading 1. Division-free (Samuelson-Berkowitz), so it is valid over
/// any commutative ring, in particular in small characteristic.
template <typename T>
std::vector<T> charpoly(const Matrix<T>& a, const T& one) {
  if (!a.square()) throw Error(ErrorCode::DimensionMismatch, "charpoly of non-square matrix");
  const std::size_t n = a.rows();
  // Coefficients high-to-low during the recursion, starting from the
  // trailing 1x1 principal block.
  std::vector<T> p{one};
  for (std::size_t k = n; k-- > 0;) {
    // Block: a11 = a(k,k), R = row k right of k, C = column k below k,
    // A1 = trailing block already processed.
    const std::size_t m = n - k - 1;
    std::vector<T> col(m + 2, one.zero());
    col[0] = one;
    col[1] = -a(k, k);
    // v = C, then repeatedly v = A1 v; entry = -R v.
    std::vector<T> v(m, one.zero());
    for (std::size_t i = 0; i < m; ++i) v[i] = a(k + 1 + i, k);
    for (std::size_t step = 0; step + 2 < m + 2; ++step) {
      T s = one.zero();
      for (std::size_t i = 0; i < m; ++i) s = s + a(k, k + 1 + i) * v[i];
      col[step + 2] = -s;
      std::vector<T> w(m, one.zero());
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) w[i] = w[i] + a(k + 1 + i, k + 1 + j) * v[j];
      v = std::move(w);
    }
    // Toeplitz (m+2)x(m+1) lower-triangular with first column col, times p.
    std::vector<T> next(m + 2, one.zero());
    for (std::size_t i = 0; i < m + 2; ++i)
      for (std::size_t j = 0; j <= i && j < m + 1; ++j) next[i] = next[i] + col[i - j] * p[j];
    p = std::move(next);
  }
  std::vector<T> low_to_high(p.rbegin(), p.rend());
  return low_to_high;
}

}  // namespace ldesc
