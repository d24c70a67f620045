#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mechlin/error.hpp"
#include "mechlin/scalar/traits.hpp"

namespace mechlin {

inline std::string shape_string(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

/// Dense row-major matrix over a ring. Shape is fixed at construction and
/// both dimensions are positive (a default-constructed matrix is an empty
/// placeholder). There is no separate vector type: a column
/// vector is an n x 1 matrix and a row vector a 1 x n matrix.
template <Ring S>
class Matrix {
 public:
  using scalar_type = S;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : Matrix(rows, cols, S(0)) {}
  Matrix(std::size_t rows, std::size_t cols, const S& fill) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0)
      throw Error(ErrorCode::ShapeMismatch, "matrix dimensions must be positive",
                  {{"shape", shape_string(rows, cols)}});
    data_.assign(rows * cols, fill);
  }
  Matrix(std::size_t rows, std::size_t cols, std::vector<S> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0 || data_.size() != rows * cols)
      throw Error(ErrorCode::ShapeMismatch, "entry count does not match shape",
                  {{"shape", shape_string(rows, cols)}, {"entries", std::to_string(data_.size())}});
  }
  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    if (rows_ == 0 || cols_ == 0) throw Error(ErrorCode::ShapeMismatch, "empty matrix literal");
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }
  static Matrix diagonal(const std::vector<S>& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }
  /// n x 1 column from values.
  static Matrix column(std::vector<S> values) {
    std::size_t n = values.size();
    return Matrix(n, 1, std::move(values));
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  std::span<const S> data() const noexcept { return data_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const S> row_span(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Matrix row(std::size_t i) const { return block(i, 0, 1, cols_); }
  Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
      throw Error(ErrorCode::OutOfRange, "block exceeds matrix bounds", {{"shape", shape_string(rows_, cols_)}});
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_)
      throw Error(ErrorCode::OutOfRange, "block exceeds matrix bounds", {{"shape", shape_string(rows_, cols_)}});
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  template <class F>
  auto map(F f) const -> Matrix<std::decay_t<decltype(f(std::declval<const S&>()))>> {
    using T = std::decay_t<decltype(f(std::declval<const S&>()))>;
    std::vector<T> out;
    out.reserve(data_.size());
    for (const auto& s : data_) out.push_back(f(s));
    return Matrix<T>(rows_, cols_, std::move(out));
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix conjugate_transpose() const
    requires Conjugable<S>
  {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = S(conj((*this)(i, j)));
    return t;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "addition");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = data_[k] + o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "subtraction");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = data_[k] - o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  Matrix operator-() const {
    return map([](const S& s) { return S(-s); });
  }
  /// Scalar on the left (order matters for noncommutative rings).
  friend Matrix operator*(const S& s, const Matrix& m) {
    return m.map([&](const S& x) { return S(s * x); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      out += i ? ", [" : "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += ", ";
        out += scalar_text((*this)(i, j));
      }
      out += "]";
    }
    return out + "]";
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

 private:
  template <class T>
  static std::string scalar_text(const T& s) {
    if constexpr (requires { s.to_string(); }) {
      return s.to_string();
    } else if constexpr (is_std_complex<T>::value) {
      return "(" + std::to_string(s.real()) + "," + std::to_string(s.imag()) + ")";
    } else {
      return std::to_string(s);
    }
  }

  void require_same_shape(const Matrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw Error(ErrorCode::ShapeMismatch, std::string("shape mismatch in ") + what,
                  {{"left", shape_string(rows_, cols_)}, {"right", shape_string(o.rows_, o.cols_)}});
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

/// The four equivalent views of a matrix product.
enum class MatmulMode { dot, columns, rows, outer };

namespace detail {

template <Ring S>
void require_conformable(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::ShapeMismatch, "inner dimensions differ",
                {{"left", shape_string(a.rows(), a.cols())}, {"right", shape_string(b.rows(), b.cols())}});
}

template <Ring S>
Matrix<S> matmul_dot(const Matrix<S>& a, const Matrix<S>& b) {
  Matrix<S> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      S acc(0);
      for (std::size_t k = 0; k < a.cols(); ++k) acc = acc + a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  }
  return c;
}

}  // namespace detail

/// A*B computed as entrywise dot products, as A times each column of B,
/// as each row of A times B, or as a sum of outer products (column k of A
/// times row k of B). All four agree; operand order is always preserved.
template <Ring S>
Matrix<S> matmul(const Matrix<S>& a, const Matrix<S>& b, MatmulMode mode = MatmulMode::dot) {
  detail::require_conformable(a, b);
  switch (mode) {
    case MatmulMode::dot:
      return detail::matmul_dot(a, b);
    case MatmulMode::columns: {
      Matrix<S> c(a.rows(), b.cols());
      for (std::size_t j = 0; j < b.cols(); ++j) c.set_block(0, j, detail::matmul_dot(a, b.col(j)));
      return c;
    }
    case MatmulMode::rows: {
      Matrix<S> c(a.rows(), b.cols());
      for (std::size_t i = 0; i < a.rows(); ++i) c.set_block(i, 0, detail::matmul_dot(a.row(i), b));
      return c;
    }
    case MatmulMode::outer: {
      Matrix<S> c(a.rows(), b.cols());
      for (std::size_t k = 0; k < a.cols(); ++k) c += detail::matmul_dot(a.col(k), b.row(k));
      return c;
    }
  }
  return detail::matmul_dot(a, b);
}

template <Ring S>
Matrix<S> operator*(const Matrix<S>& a, const Matrix<S>& b) {
  return matmul(a, b);
}

/// Interior split point for a 2x2 block partition.
struct BlockPartition {
  std::size_t row;
  std::size_t col;
};

template <Ring S>
struct Blocks {
  Matrix<S> a11, a12, a21, a22;
};

template <Ring S>
Blocks<S> block_split(const Matrix<S>& a, BlockPartition p) {
  if (p.row < 1 || p.row >= a.rows() || p.col < 1 || p.col >= a.cols())
    throw Error(ErrorCode::OutOfRange, "block split must be strictly interior",
                {{"shape", shape_string(a.rows(), a.cols())}, {"split", shape_string(p.row, p.col)}});
  std::size_t r2 = a.rows() - p.row;
  std::size_t c2 = a.cols() - p.col;
  return {a.block(0, 0, p.row, p.col), a.block(0, p.col, p.row, c2), a.block(p.row, 0, r2, p.col),
          a.block(p.row, p.col, r2, c2)};
}

template <Ring S>
Matrix<S> block_join(const Blocks<S>& b) {
  const std::size_t r1 = b.a11.rows(), c1 = b.a11.cols();
  if (b.a12.rows() != r1 || b.a21.cols() != c1 || b.a22.rows() != b.a21.rows() || b.a22.cols() != b.a12.cols())
    throw Error(ErrorCode::ShapeMismatch, "blocks do not tile a matrix");
  Matrix<S> m(r1 + b.a21.rows(), c1 + b.a12.cols());
  m.set_block(0, 0, b.a11);
  m.set_block(0, c1, b.a12);
  m.set_block(r1, 0, b.a21);
  m.set_block(r1, c1, b.a22);
  return m;
}

template <Ring S>
void require_square(const Matrix<S>& a, const char* what) {
  if (!a.is_square())
    throw Error(ErrorCode::NotSquare, std::string(what) + " requires a square matrix",
                {{"shape", shape_string(a.rows(), a.cols())}});
}

/// Converts entries with an explicit scalar conversion.
template <Ring T, Ring S, class F>
Matrix<T> convert(const Matrix<S>& m, F f) {
  return m.map([&](const S& s) { return T(f(s)); });
}

inline Matrix<double> to_double(const Matrix<Rational>& m) {
  return m.map([](const Rational& r) { return r.to_double(); });
}

}  // namespace mechlin
