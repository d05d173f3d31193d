#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "blockmat.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "system.hpp"

namespace amca {

// Lower block triangular Toeplitz matrix: A_0 = I on the diagonal, A_1 on the
// first block subdiagonal, ..., A_{n-1} in the lower-left corner.
template <Scalar T>
BlockMatrix<T> build_P(const std::vector<Matrix<T>>& a) {
  if (a.empty()) throw DimensionError("build_P: no coefficients");
  const std::size_t n = a.size();
  const std::size_t s = a.front().rows();
  BlockMatrix<T> p(n, n, s);
  for (std::size_t i = 0; i < n; ++i) {
    p.set_block(i, i, Matrix<T>::identity(s));
    for (std::size_t j = 0; j < i; ++j) p.set_block(i, j, a[i - j - 1]);
  }
  return p;
}

// N_0 = I, N_v = N_{v-1} F + (I (x) A_v), v = 1..n-1.
template <Scalar T>
std::vector<BlockMatrix<T>> build_N_sequence(const BlockMatrix<T>& f, const std::vector<Matrix<T>>& a) {
  const std::size_t n = f.q();
  const std::size_t s = f.s();
  if (a.size() != n) throw DimensionError("build_N_sequence: expected " + std::to_string(n) + " coefficients");
  std::vector<BlockMatrix<T>> out{BlockMatrix<T>::identity(n, s)};
  const Matrix<T> eye = Matrix<T>::identity(n);
  for (std::size_t v = 1; v < n; ++v) out.push_back(out.back() * f + BlockMatrix<T>(kron(eye, a[v - 1]), s));
  return out;
}

template <Scalar T>
struct ReductionResult {
  BlockMatrix<T> S;
  BlockMatrix<T> S_inverse;
  BlockMatrix<T> Phi;               // forced entries set exactly, last block row as computed
  T residual{0};                    // max deviation of S Z S^-1 on the forced entries
  std::vector<BlockMatrix<T>> factors;  // S_1, ..., S_{n-1}
  std::vector<std::string> diagnostics;
};

// Max deviation of the first n-1 block rows of z from the frobenius pattern.
template <Scalar T>
T frobenius_pattern_residual(const BlockMatrix<T>& z) {
  const std::size_t n = z.q();
  if (n < 2) return T(0);
  BlockMatrix<T> shift = shift_matrix<T>(n, z.s());
  const std::size_t rows = (n - 1) * z.s();
  return max_abs_diff(z.matrix().slice(0, 0, rows, z.cols()), shift.matrix().slice(0, 0, rows, z.cols()));
}

// Similarity S Z S^-1 = Phi (lower block Frobenius) for an unreduced lower block
// Hessenberg Z. S_1 stacks e_1^T (x) I over Z without its last block row; S_l
// is S_{l-1} moved one block down and right with I in the top-left corner.
template <Scalar T>
ReductionResult<T> hessenberg_to_frobenius(const BlockMatrix<T>& z, std::optional<double> tol = std::nullopt) {
  if (z.q() != z.r()) throw DimensionError("hessenberg_to_frobenius: Z must be block square");
  const std::size_t n = z.q();
  const std::size_t s = z.s();
  ReductionResult<T> res{BlockMatrix<T>::identity(n, s), BlockMatrix<T>::identity(n, s), z, T(0), {}, {}};

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j)
      if (!z.block(i, j).is_zero())
        throw PreconditionError("Z is not lower block Hessenberg: block (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") is nonzero");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    Matrix<T> sup = z.block(i, i + 1);
    if (!block_nonsingular(sup))
      throw PreconditionError("superdiagonal block Z(" + std::to_string(i + 1) + "," + std::to_string(i + 2) +
                              ") is singular (i=" + std::to_string(i + 1) + ")");
    if constexpr (!is_exact_v<T>)
      res.diagnostics.push_back("cond Z(" + std::to_string(i + 1) + "," + std::to_string(i + 2) +
                                ") = " + to_string(condition_number(sup)));
  }
  if (n == 1) return res;

  BlockMatrix<T> s1(n, n, s);
  s1.set_block(0, 0, Matrix<T>::identity(s));
  s1.matrix().assign(s, 0, z.matrix().slice(0, 0, (n - 1) * s, n * s));
  res.factors.push_back(s1);
  for (std::size_t l = 2; l < n; ++l) {
    BlockMatrix<T> sl(n, n, s);
    sl.set_block(0, 0, Matrix<T>::identity(s));
    sl.matrix().assign(s, s, res.factors.back().matrix().slice(0, 0, (n - 1) * s, (n - 1) * s));
    res.factors.push_back(sl);
  }

  BlockMatrix<T> prod = BlockMatrix<T>::identity(n, s);
  for (const auto& f : res.factors) prod = f * prod;
  res.S = prod;
  res.S_inverse = BlockMatrix<T>(block_lower_inverse(prod.matrix(), s), s);
  BlockMatrix<T> x = res.S * z * res.S_inverse;
  res.residual = frobenius_pattern_residual(x);

  const std::size_t rows = (n - 1) * s;
  res.Phi = x;
  res.Phi.matrix().assign(0, 0, shift_matrix<T>(n, s).matrix().slice(0, 0, rows, n * s));

  if constexpr (is_exact_v<T>) {
    if (!is_zero(res.residual)) throw NumericError("reduction residual is nonzero in exact arithmetic");
  } else {
    double scale = to_double(res.S.matrix().max_abs()) * to_double(z.matrix().max_abs()) *
                   to_double(res.S_inverse.matrix().max_abs()) * static_cast<double>(n * s);
    if (!within_tolerance(res.residual, tol, scale))
      throw NumericError("reduction residual " + to_string(res.residual) + " exceeds tolerance", res.residual);
  }
  return res;
}

// First p-1 block rows zero and last n-p block columns zero.
template <Scalar T>
std::vector<Violation> perturbation_pattern_violations(const BlockMatrix<T>& d, std::size_t p) {
  std::vector<Violation> out;
  const std::size_t n = d.q();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((i + 1 < p || j >= p) && !d.block(i, j).is_zero())
        out.push_back({"D", i + 1, j + 1, "block must be zero for p=" + std::to_string(p)});
  return out;
}

namespace detail {

template <Scalar T>
void check_perturbation(const BlockMatrix<T>& f, const BlockMatrix<T>& d, std::size_t p) {
  if (f.q() != f.r() || d.q() != f.q() || d.r() != f.r() || d.s() != f.s())
    throw DimensionError("perturbation D must have the block shape of F");
  if (p < 1 || p > f.q()) throw DimensionError("p must lie in 1..n");
  auto fv = frobenius_violations(f);
  if (!fv.empty()) throw PreconditionError("F is not lower block Frobenius: " + join_violations(fv));
  auto dv = perturbation_pattern_violations(d, p);
  if (!dv.empty()) throw PreconditionError(join_violations(dv));
}

}  // namespace detail

// Gamma_i = A_i - SP_s(N_{i-1} D): coefficients of the frobenius matrix similar
// to F + D.
template <Scalar T>
TargetCoefficients<T> gamma_from_perturbation(const BlockMatrix<T>& f, const BlockMatrix<T>& d, std::size_t p) {
  detail::check_perturbation(f, d, p);
  auto a = frobenius_coefficients(f);
  auto ns = build_N_sequence(f, a);
  TargetCoefficients<T> out;
  for (std::size_t i = 0; i < f.q(); ++i) out.push_back(a[i] - block_trace(ns[i] * d));
  return out;
}

// Same coefficients through the shift matrix: Gamma_i = A_i - SP_s(J^{i-1} P D).
template <Scalar T>
TargetCoefficients<T> gamma_from_perturbation_shift(const BlockMatrix<T>& f, const BlockMatrix<T>& d, std::size_t p) {
  detail::check_perturbation(f, d, p);
  auto a = frobenius_coefficients(f);
  const BlockMatrix<T> j = shift_matrix<T>(f.q(), f.s());
  BlockMatrix<T> jp_d = build_P(a) * d;
  TargetCoefficients<T> out;
  for (std::size_t i = 0; i < f.q(); ++i) {
    out.push_back(a[i] - block_trace(jp_d));
    jp_d = j * jp_d;
  }
  return out;
}

// T_1..T_n with P col(T_i) = col(A_i - Gamma_i), by forward substitution on
// the unit lower block triangular P.
template <Scalar T>
std::vector<Matrix<T>> solve_T_hat(const std::vector<Matrix<T>>& a, const TargetCoefficients<T>& gammas) {
  if (a.size() != gammas.size())
    throw DimensionError("solve_T_hat: " + std::to_string(gammas.size()) + " targets for n=" + std::to_string(a.size()));
  std::vector<Matrix<T>> t;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (gammas[i].rows() != a[i].rows() || gammas[i].cols() != a[i].cols())
      throw DimensionError("Gamma_" + std::to_string(i + 1) + " is " + gammas[i].shape() + ", expected " +
                           a[i].shape());
    Matrix<T> ti = a[i] - gammas[i];
    for (std::size_t j = 0; j < i; ++j) ti -= a[i - j - 1] * t[j];
    t.push_back(ti);
  }
  return t;
}

}  // namespace amca
