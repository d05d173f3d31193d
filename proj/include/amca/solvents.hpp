#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "assignment.hpp"
#include "blockmat.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "system.hpp"

namespace amca {

// Block (i, j) = X_j^{i-1}, 0-based i, j.
template <Scalar T>
BlockMatrix<T> block_vandermonde(const std::vector<Matrix<T>>& xs) {
  if (xs.empty()) throw DimensionError("block_vandermonde: no matrices");
  const std::size_t n = xs.size();
  const std::size_t s = xs.front().rows();
  BlockMatrix<T> v(n, n, s);
  for (std::size_t j = 0; j < n; ++j) {
    if (xs[j].rows() != s || xs[j].cols() != s)
      throw DimensionError("block_vandermonde: matrix " + std::to_string(j + 1) + " is " + xs[j].shape());
    Matrix<T> pw = Matrix<T>::identity(s);
    for (std::size_t i = 0; i < n; ++i) {
      v.set_block(i, j, pw);
      pw = pw * xs[j];
    }
  }
  return v;
}

template <Scalar T>
bool is_singular(const BlockMatrix<T>& v, std::optional<double> tol = std::nullopt) {
  return rank(v.matrix(), tol) < v.rows();
}

// Left solvents L_1..L_n together with their eigenvalues. The spectrum is
// computed numerically in float mode; in exact mode only for triangular solvents.
template <Scalar T>
struct SolventSet {
  std::vector<Matrix<T>> solvents;
  std::optional<std::vector<std::complex<double>>> spectrum;
  double vandermonde_condition = 0.0;

  explicit SolventSet(std::vector<Matrix<T>> ls, std::optional<double> tol = std::nullopt) : solvents(std::move(ls)) {
    BlockMatrix<T> v = block_vandermonde(solvents);
    if (is_singular(v, tol)) throw SolventSetError("singular block Vandermonde matrix");
    // The coefficients are recovered through the block transpose, which can be
    // singular even when V is not once n >= 3.
    if (is_singular(block_transpose(v), tol))
      throw SolventSetError("singular block Vandermonde matrix (block transpose)");
    vandermonde_condition = condition_number(v.matrix());
    spectrum = compute_spectrum(solvents);
  }

  std::size_t n() const { return solvents.size(); }
  std::size_t s() const { return solvents.front().rows(); }

 private:
  static std::optional<std::vector<std::complex<double>>> compute_spectrum(const std::vector<Matrix<T>>& ls) {
    std::vector<std::complex<double>> out;
    for (const auto& l : ls) {
      if constexpr (is_exact_v<T>) {
        bool upper = true, lower = true;
        for (std::size_t i = 0; i < l.rows(); ++i)
          for (std::size_t j = 0; j < l.cols(); ++j) {
            if (i > j && !is_zero(l(i, j))) upper = false;
            if (i < j && !is_zero(l(i, j))) lower = false;
          }
        if (!upper && !lower) return std::nullopt;
        for (std::size_t i = 0; i < l.rows(); ++i) out.emplace_back(to_double(l(i, i)), 0.0);
      } else {
        Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(l), false);
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
      }
    }
    return out;
  }
};

// Solves (V^T-block) col(Gamma_n, ..., Gamma_1) = -col(L_1^n, ..., L_n^n), where
// the coefficient matrix has block (i, j) = L_i^{j-1}.
template <Scalar T>
TargetCoefficients<T> gammas_from_solvents(const SolventSet<T>& ss) {
  const std::size_t n = ss.n();
  const std::size_t s = ss.s();
  BlockMatrix<T> vt = block_transpose(block_vandermonde(ss.solvents));
  Matrix<T> rhs(n * s, s);
  for (std::size_t i = 0; i < n; ++i) rhs.assign(i * s, 0, -power(ss.solvents[i], n));
  Matrix<T> x;
  try {
    x = solve(vt.matrix(), rhs);
  } catch (const NumericError&) {
    throw SolventSetError("singular block Vandermonde matrix");
  }
  TargetCoefficients<T> gammas(n);
  for (std::size_t i = 0; i < n; ++i) gammas[n - 1 - i] = x.slice(i * s, 0, s, s);
  return gammas;
}

template <Scalar T>
struct SolventCheck {
  bool ok = false;
  T residual{0};
};

// residual = max |L^n + L^{n-1} Gamma_1 + ... + L Gamma_{n-1} + Gamma_n|.
template <Scalar T>
SolventCheck<T> verify_solvent(const Matrix<T>& l, const TargetCoefficients<T>& gammas,
                               std::optional<double> tol = std::nullopt) {
  const std::size_t n = gammas.size();
  // Horner: ((L + Gamma_1) L + ... ) with left multiplication by L.
  Matrix<T> acc = Matrix<T>::identity(l.rows());
  for (std::size_t i = 0; i < n; ++i) acc = l * acc + gammas[i];
  SolventCheck<T> out;
  out.residual = acc.max_abs();
  double scale = std::max(1.0, to_double(power(l, n).max_abs()));
  for (const auto& g : gammas) scale = std::max(scale, to_double(g.max_abs()));
  out.ok = within_tolerance(out.residual, tol, scale);
  return out;
}

template <Scalar T>
struct SolventAssignment {
  AssignmentResult<T> result;
  TargetCoefficients<T> gammas;
  std::vector<T> solvent_residuals;
};

// Gamma from the solvents, then the gain by the ordinary assignment pipeline.
template <Scalar T>
SolventAssignment<T> assign_solvents(const BlockSystem<T>& sys, const SolventSet<T>& ss, const AssignOptions& opt = {}) {
  if (ss.n() != sys.n || ss.s() != sys.s)
    throw DimensionError("solvent set has n=" + std::to_string(ss.n()) + ", s=" + std::to_string(ss.s()) +
                         "; system has n=" + std::to_string(sys.n) + ", s=" + std::to_string(sys.s));
  SolventAssignment<T> out{{}, gammas_from_solvents(ss), {}};
  out.result = assign(sys, out.gammas, opt);
  const auto realized = frobenius_coefficients(out.result.Phi);
  for (std::size_t j = 0; j < ss.n(); ++j) {
    auto chk = verify_solvent(ss.solvents[j], realized, opt.tol);
    out.solvent_residuals.push_back(chk.residual);
    if (!chk.ok)
      throw NumericError("solvent " + std::to_string(j + 1) + " fails (residual " + to_string(chk.residual) + ")",
                         to_double(chk.residual));
  }
  return out;
}

}  // namespace amca
