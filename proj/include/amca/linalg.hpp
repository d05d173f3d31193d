#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "matrix.hpp"
#include "scalar.hpp"

namespace amca {

inline Eigen::MatrixXd to_eigen(const Matrix<double>& a) {
  Eigen::MatrixXd out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

inline Matrix<double> from_eigen(const Eigen::MatrixXd& a) {
  Matrix<double> out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  return out;
}

// Singular values in decreasing order (computed in double for either backend).
template <Scalar T>
std::vector<double> singular_values(const Matrix<T>& a) {
  if (a.empty()) return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a.template cast<double>()));
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

// 2-norm condition number; infinity when singular.
template <Scalar T>
double condition_number(const Matrix<T>& a) {
  auto sv = singular_values(a);
  if (sv.empty()) return 1.0;
  if (sv.back() == 0.0) return std::numeric_limits<double>::infinity();
  return sv.front() / sv.back();
}

inline double default_rank_tolerance(std::size_t rows, std::size_t cols, double sigma_max) {
  return static_cast<double>(std::max(rows, cols)) * std::numeric_limits<double>::epsilon() * sigma_max;
}

// Reduced row echelon form, exact arithmetic. Returns the pivot columns.
template <Scalar T>
std::vector<std::size_t> rref_in_place(Matrix<T>& a) {
  static_assert(is_exact_v<T>, "rref_in_place is for exact scalars");
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && is_zero(a(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    T inv = T(1) / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || is_zero(a(i, col))) continue;
      T f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Numerical rank (singular values above tol) in float mode; exact rank in
// rational mode, where tol is ignored.
template <Scalar T>
std::size_t rank(const Matrix<T>& a, std::optional<double> tol = std::nullopt) {
  if (a.empty()) return 0;
  if constexpr (is_exact_v<T>) {
    Matrix<T> work = a;
    return rref_in_place(work).size();
  } else {
    auto sv = singular_values(a);
    for (double v : sv)
      if (!std::isfinite(v)) throw NumericError("rank: singular value decomposition failed");
    double t = tol.value_or(default_rank_tolerance(a.rows(), a.cols(), sv.front()));
    std::size_t r = 0;
    for (double v : sv)
      if (v > t) ++r;
    return r;
  }
}

// Solves A X = B for square A by Gaussian elimination (max-abs pivot in float
// mode, first nonzero pivot in exact mode).
template <Scalar T>
Matrix<T> solve(const Matrix<T>& a, const Matrix<T>& b) {
  if (!a.square() || a.rows() != b.rows())
    throw DimensionError("solve: " + a.shape() + " with right-hand side " + b.shape());
  const std::size_t n = a.rows();
  Matrix<T> m = a;
  Matrix<T> x = b;
  T scale = a.max_abs();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    if constexpr (is_exact_v<T>) {
      while (piv < n && is_zero(m(piv, c))) ++piv;
      if (piv == n) throw NumericError("solve: singular matrix");
    } else {
      for (std::size_t i = c + 1; i < n; ++i)
        if (std::abs(m(i, c)) > std::abs(m(piv, c))) piv = i;
      if (std::abs(m(piv, c)) <= std::numeric_limits<double>::epsilon() * scale * n || m(piv, c) == 0.0)
        throw NumericError("solve: singular matrix");
    }
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(piv, j), x(c, j));
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m(i, c))) continue;
      T f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
      for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) -= f * x(c, j);
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      T acc = x(c, j);
      for (std::size_t l = c + 1; l < n; ++l) acc -= m(c, l) * x(l, j);
      x(c, j) = acc / m(c, c);
    }
  }
  return x;
}

template <Scalar T>
Matrix<T> inverse(const Matrix<T>& a) {
  return solve(a, Matrix<T>::identity(a.rows()));
}

template <Scalar T>
T determinant(const Matrix<T>& a) {
  if (!a.square()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<T> m = a;
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (abs_value(m(i, c)) > abs_value(m(piv, c))) piv = i;
    if (is_zero(m(piv, c))) return T(0);
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      T f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

// Solves L X = B for lower block triangular L (block size s) by block forward
// substitution; only the diagonal blocks are factored.
template <Scalar T>
Matrix<T> block_lower_solve(const Matrix<T>& l, const Matrix<T>& b, std::size_t s) {
  if (!l.square() || l.rows() % s || l.rows() != b.rows())
    throw DimensionError("block_lower_solve: " + l.shape() + " with " + b.shape());
  const std::size_t n = l.rows() / s;
  Matrix<T> x(b.rows(), b.cols());
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<T> rhs = b.slice(i * s, 0, s, b.cols());
    for (std::size_t j = 0; j < i; ++j)
      rhs -= l.slice(i * s, j * s, s, s) * x.slice(j * s, 0, s, b.cols());
    x.assign(i * s, 0, solve(l.slice(i * s, i * s, s, s), rhs));
  }
  return x;
}

template <Scalar T>
Matrix<T> block_lower_inverse(const Matrix<T>& l, std::size_t s) {
  return block_lower_solve(l, Matrix<T>::identity(l.rows()), s);
}

enum class SolveRoute { right_inverse, svd, full_rank_factorization };

inline const char* route_name(SolveRoute r) {
  switch (r) {
    case SolveRoute::right_inverse: return "right-inverse";
    case SolveRoute::svd: return "svd";
    case SolveRoute::full_rank_factorization: return "full-rank-factorization";
  }
  return "?";
}

template <Scalar T>
struct MinNormSolution {
  Matrix<T> x;
  T residual;  // max-norm of A x - b
  std::size_t rank;
  SolveRoute route;
};

// Minimum-norm (least-squares) solution of A x = b, column by column of b.
// With full row rank this is A^T (A A^T)^{-1} b; otherwise an SVD (float) or
// the pseudoinverse from a full-rank factorization A = C R (exact).
template <Scalar T>
MinNormSolution<T> min_norm_solve(const Matrix<T>& a, const Matrix<T>& b,
                                  std::optional<double> tol = std::nullopt) {
  if (a.rows() != b.rows()) throw DimensionError("min_norm_solve: " + a.shape() + " with " + b.shape());
  MinNormSolution<T> out{Matrix<T>(a.cols(), b.cols()), T(0), rank(a, tol), SolveRoute::right_inverse};
  if (a.rows() == 0 || a.cols() == 0) {
    out.residual = b.max_abs();
    return out;
  }
  const Matrix<T> at = a.transpose();
  if (out.rank == a.rows()) {
    out.x = at * solve(a * at, b);
  } else if constexpr (is_exact_v<T>) {
    out.route = SolveRoute::full_rank_factorization;
    if (out.rank > 0) {
      Matrix<T> r = a;
      auto pivots = rref_in_place(r);
      r = r.slice(0, 0, pivots.size(), a.cols());
      Matrix<T> c(a.rows(), pivots.size());
      for (std::size_t j = 0; j < pivots.size(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) c(i, j) = a(i, pivots[j]);
      const Matrix<T> ct = c.transpose();
      out.x = r.transpose() * solve(r * r.transpose(), solve(ct * c, ct * b));
    }
  } else {
    out.route = SolveRoute::svd;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
    double sigma_max = svd.singularValues()(0);
    double t = tol.value_or(default_rank_tolerance(a.rows(), a.cols(), sigma_max));
    svd.setThreshold(sigma_max > 0 ? t / sigma_max : 0.0);
    out.x = from_eigen(svd.solve(to_eigen(b)));
  }
  out.residual = (a * out.x - b).max_abs();
  return out;
}

}  // namespace amca
