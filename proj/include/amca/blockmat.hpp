#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "errors.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace amca {

// Dense matrix partitioned into s x s blocks. Block indices are 0-based:
// block (i, j) covers rows i*s..(i+1)*s-1 and columns j*s..(j+1)*s-1.
template <Scalar T>
class BlockMatrix {
 public:
  BlockMatrix() = default;

  BlockMatrix(Matrix<T> data, std::size_t s) : data_(std::move(data)), s_(s) {
    if (s_ == 0) throw DimensionError("block size must be at least 1");
    if (data_.rows() % s_ || data_.cols() % s_)
      throw DimensionError("matrix " + data_.shape() + " is not a multiple of block size " + std::to_string(s_));
  }

  // q x r blocks, all zero.
  BlockMatrix(std::size_t q, std::size_t r, std::size_t s) : BlockMatrix(Matrix<T>(q * s, r * s), s) {}

  static BlockMatrix identity(std::size_t n, std::size_t s) { return {Matrix<T>::identity(n * s), s}; }

  std::size_t s() const noexcept { return s_; }
  std::size_t q() const noexcept { return s_ ? data_.rows() / s_ : 0; }
  std::size_t r() const noexcept { return s_ ? data_.cols() / s_ : 0; }
  std::size_t rows() const noexcept { return data_.rows(); }
  std::size_t cols() const noexcept { return data_.cols(); }

  const Matrix<T>& matrix() const noexcept { return data_; }
  Matrix<T>& matrix() noexcept { return data_; }

  T& operator()(std::size_t i, std::size_t j) { return data_(i, j); }
  const T& operator()(std::size_t i, std::size_t j) const { return data_(i, j); }

  Matrix<T> block(std::size_t i, std::size_t j) const {
    check_index(i, j);
    return data_.slice(i * s_, j * s_, s_, s_);
  }

  void set_block(std::size_t i, std::size_t j, const Matrix<T>& b) {
    check_index(i, j);
    if (b.rows() != s_ || b.cols() != s_)
      throw DimensionError("set_block: expected " + std::to_string(s_) + "x" + std::to_string(s_) + ", got " + b.shape());
    data_.assign(i * s_, j * s_, b);
  }

  // Blocks [i0, i0+nq) x [j0, j0+nr).
  BlockMatrix sub(std::size_t i0, std::size_t j0, std::size_t nq, std::size_t nr) const {
    return {data_.slice(i0 * s_, j0 * s_, nq * s_, nr * s_), s_};
  }

  BlockMatrix transpose() const { return {data_.transpose(), s_}; }

  friend BlockMatrix operator+(const BlockMatrix& a, const BlockMatrix& b) {
    same_s(a, b);
    return {a.data_ + b.data_, a.s_};
  }
  friend BlockMatrix operator-(const BlockMatrix& a, const BlockMatrix& b) {
    same_s(a, b);
    return {a.data_ - b.data_, a.s_};
  }
  friend BlockMatrix operator*(const BlockMatrix& a, const BlockMatrix& b) {
    same_s(a, b);
    return {a.data_ * b.data_, a.s_};
  }
  friend BlockMatrix operator*(const T& c, const BlockMatrix& a) { return {c * a.data_, a.s_}; }
  friend BlockMatrix operator-(const BlockMatrix& a) { return {-a.data_, a.s_}; }
  friend bool operator==(const BlockMatrix& a, const BlockMatrix& b) { return a.s_ == b.s_ && a.data_ == b.data_; }

 private:
  void check_index(std::size_t i, std::size_t j) const {
    if (i >= q() || j >= r())
      throw DimensionError("block (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") outside " +
                           std::to_string(q()) + "x" + std::to_string(r()) + " blocks");
  }
  static void same_s(const BlockMatrix& a, const BlockMatrix& b) {
    if (a.s_ != b.s_)
      throw DimensionError("block sizes differ: " + std::to_string(a.s_) + " vs " + std::to_string(b.s_));
  }

  Matrix<T> data_;
  std::size_t s_ = 1;
};

// Right Kronecker product: a_ij replaced by a_ij * B.
template <Scalar T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
  Matrix<T> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const T& aij = a(i, j);
      if (is_zero(aij)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

// Z_{i nu} = sum_j X_{ij} (x) Y_{j nu}; result has block size s^2.
template <Scalar T>
BlockMatrix<T> star(const BlockMatrix<T>& x, const BlockMatrix<T>& y) {
  if (x.s() != y.s()) throw DimensionError("star: block sizes differ");
  if (x.r() != y.q())
    throw DimensionError("star: " + std::to_string(x.r()) + " block columns vs " + std::to_string(y.q()) + " block rows");
  const std::size_t s = x.s();
  const std::size_t s2 = s * s;
  BlockMatrix<T> z(x.q(), y.r(), s2);
  for (std::size_t i = 0; i < x.q(); ++i)
    for (std::size_t nu = 0; nu < y.r(); ++nu) {
      Matrix<T> acc(s2, s2);
      for (std::size_t j = 0; j < x.r(); ++j) acc += kron(x.block(i, j), y.block(j, nu));
      z.set_block(i, nu, acc);
    }
  return z;
}

// Sum of the diagonal blocks.
template <Scalar T>
Matrix<T> block_trace(const BlockMatrix<T>& a) {
  if (a.q() != a.r())
    throw DimensionError("block_trace: " + std::to_string(a.q()) + "x" + std::to_string(a.r()) + " blocks");
  Matrix<T> out(a.s(), a.s());
  for (std::size_t i = 0; i < a.q(); ++i) out += a.block(i, i);
  return out;
}

// B_ji = A_ij with block interiors left as they are.
template <Scalar T>
BlockMatrix<T> block_transpose(const BlockMatrix<T>& a) {
  BlockMatrix<T> out(a.r(), a.q(), a.s());
  for (std::size_t i = 0; i < a.q(); ++i)
    for (std::size_t j = 0; j < a.r(); ++j) out.set_block(j, i, a.block(i, j));
  return out;
}

// CR, RR: block row outputs. RC, CC: block column outputs. The first letter is
// the traversal (by block Columns / by block Rows), the second the shape.
enum class Unroll { CR, RR, RC, CC };

namespace detail {

// Position in the unrolled sequence of block (i, j) of a q x r block matrix.
inline std::size_t unroll_position(Unroll mode, std::size_t i, std::size_t j, std::size_t q, std::size_t r) {
  switch (mode) {
    case Unroll::CR:
    case Unroll::CC: return j * q + i;
    case Unroll::RR:
    case Unroll::RC: return i * r + j;
  }
  return 0;
}

inline bool unroll_is_row(Unroll mode) { return mode == Unroll::CR || mode == Unroll::RR; }

}  // namespace detail

template <Scalar T>
BlockMatrix<T> unroll(const BlockMatrix<T>& a, Unroll mode) {
  const std::size_t count = a.q() * a.r();
  const bool row = detail::unroll_is_row(mode);
  BlockMatrix<T> out(row ? 1 : count, row ? count : 1, a.s());
  for (std::size_t i = 0; i < a.q(); ++i)
    for (std::size_t j = 0; j < a.r(); ++j) {
      std::size_t pos = detail::unroll_position(mode, i, j, a.q(), a.r());
      if (row)
        out.set_block(0, pos, a.block(i, j));
      else
        out.set_block(pos, 0, a.block(i, j));
    }
  return out;
}

// The unique q x r block matrix X with unroll(X, mode) = v.
template <Scalar T>
BlockMatrix<T> unroll_inverse(const BlockMatrix<T>& v, Unroll mode, std::size_t q, std::size_t r) {
  const bool row = detail::unroll_is_row(mode);
  const std::size_t count = q * r;
  if ((row && (v.q() != 1 || v.r() != count)) || (!row && (v.q() != count || v.r() != 1)))
    throw DimensionError("unroll_inverse: " + v.matrix().shape() + " does not unroll a " + std::to_string(q) + "x" +
                         std::to_string(r) + " block matrix with block size " + std::to_string(v.s()));
  BlockMatrix<T> out(q, r, v.s());
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      std::size_t pos = detail::unroll_position(mode, i, j, q, r);
      out.set_block(i, j, row ? v.block(0, pos) : v.block(pos, 0));
    }
  return out;
}

// Column-by-column flattening, as a column vector.
template <Scalar T>
Matrix<T> vecc(const Matrix<T>& a) {
  Matrix<T> out(a.rows() * a.cols(), 1);
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) out(j * a.rows() + i, 0) = a(i, j);
  return out;
}

// Row-by-row flattening, as a row vector.
template <Scalar T>
Matrix<T> vecr(const Matrix<T>& a) {
  Matrix<T> out(1, a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(0, i * a.cols() + j) = a(i, j);
  return out;
}

template <Scalar T>
Matrix<T> vecc_inverse(const Matrix<T>& v, std::size_t rows, std::size_t cols) {
  if (v.rows() * v.cols() != rows * cols) throw DimensionError("vecc_inverse: size mismatch");
  const auto& vals = v.values();
  Matrix<T> out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = vals[j * rows + i];
  return out;
}

// J (x) I_s with J the n x n upper shift.
template <Scalar T>
BlockMatrix<T> shift_matrix(std::size_t n, std::size_t s) {
  if (n == 0 || s == 0) throw DimensionError("shift_matrix: n and s must be positive");
  BlockMatrix<T> out(n, n, s);
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t d = 0; d < s; ++d) out(i * s + d, (i + 1) * s + d) = T(1);
  return out;
}

template <Scalar T>
std::size_t rank_with_tolerance(const BlockMatrix<T>& a, std::optional<double> tol = std::nullopt) {
  return rank(a.matrix(), tol);
}

// Block-diagonal lift of a scalar matrix: F0 (x) I_s.
template <Scalar T>
BlockMatrix<T> scalar_lift(const Matrix<T>& f0, std::size_t s) {
  return {kron(f0, Matrix<T>::identity(s)), s};
}

// If every block is c * I, returns the matrix of the c's.
template <Scalar T>
std::optional<Matrix<T>> scalar_core(const BlockMatrix<T>& a) {
  Matrix<T> out(a.q(), a.r());
  const std::size_t s = a.s();
  for (std::size_t i = 0; i < a.q(); ++i)
    for (std::size_t j = 0; j < a.r(); ++j) {
      const T c = a(i * s, j * s);
      for (std::size_t u = 0; u < s; ++u)
        for (std::size_t v = 0; v < s; ++v)
          if (a(i * s + u, j * s + v) != (u == v ? c : T(0))) return std::nullopt;
      out(i, j) = c;
    }
  return out;
}

}  // namespace amca
