#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blockmat.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "matrix.hpp"

namespace amca {

enum class Form { frobenius, hessenberg, general };

inline const char* form_name(Form f) {
  switch (f) {
    case Form::frobenius: return "frobenius";
    case Form::hessenberg: return "hessenberg";
    case Form::general: return "general";
  }
  return "?";
}

inline std::optional<Form> parse_form(std::string_view name) {
  if (name == "frobenius") return Form::frobenius;
  if (name == "hessenberg") return Form::hessenberg;
  if (name == "general") return Form::general;
  return std::nullopt;
}

// Gamma_1..Gamma_n, each s x s.
template <Scalar T>
using TargetCoefficients = std::vector<Matrix<T>>;

// A structural defect. Block indices are 1-based; 0 means "whole matrix".
struct Violation {
  std::string matrix;
  std::size_t block_row = 0;
  std::size_t block_col = 0;
  std::string message;

  std::string describe() const {
    std::string out = matrix;
    if (block_row || block_col) out += " block (" + std::to_string(block_row) + "," + std::to_string(block_col) + ")";
    return out + ": " + message;
  }
};

// Extracts A_1..A_n from the last block row of a frobenius matrix.
template <Scalar T>
std::vector<Matrix<T>> frobenius_coefficients(const BlockMatrix<T>& f) {
  const std::size_t n = f.q();
  std::vector<Matrix<T>> a;
  for (std::size_t i = 1; i <= n; ++i) a.push_back(-f.block(n - 1, n - i));
  return a;
}

// x' = F x + G u, y = H x with F: n x n blocks, G: n x m blocks, H: k x n
// blocks, block size s. The form is declared by the caller and checked by
// validate(), never inferred.
template <Scalar T>
struct BlockSystem {
  BlockMatrix<T> F, G, H;
  std::size_t n = 0, s = 0, m = 0, k = 0, p = 1;
  Form form = Form::general;

  BlockSystem() = default;

  BlockSystem(Matrix<T> f, Matrix<T> g, Matrix<T> h, std::size_t n_, std::size_t s_, std::size_t m_, std::size_t k_,
              std::size_t p_, Form form_)
      : n(n_), s(s_), m(m_), k(k_), p(p_), form(form_) {
    if (n == 0 || s == 0 || m == 0 || k == 0) throw DimensionError("n, s, m, k must be positive");
    if (p < 1 || p > n) throw DimensionError("p must lie in 1..n, got " + std::to_string(p));
    expect("F", f, n * s, n * s);
    expect("G", g, n * s, m * s);
    expect("H", h, k * s, n * s);
    F = BlockMatrix<T>(std::move(f), s);
    G = BlockMatrix<T>(std::move(g), s);
    H = BlockMatrix<T>(std::move(h), s);
  }

  // Last block row of a frobenius F read as A_1..A_n (A_i = -F_{n, n-i+1}).
  std::vector<Matrix<T>> coefficients() const { return frobenius_coefficients(F); }

  template <Scalar U>
  BlockSystem<U> cast() const {
    return BlockSystem<U>(F.matrix().template cast<U>(), G.matrix().template cast<U>(),
                          H.matrix().template cast<U>(), n, s, m, k, p, form);
  }

 private:
  static void expect(const char* name, const Matrix<T>& a, std::size_t r, std::size_t c) {
    if (a.rows() != r || a.cols() != c)
      throw DimensionError(std::string(name) + " is " + a.shape() + ", expected " + std::to_string(r) + "x" +
                           std::to_string(c));
  }
};

// Identity on the block superdiagonal, last block row (-Gamma_n, ..., -Gamma_1).
template <Scalar T>
BlockMatrix<T> frobenius_from_coeffs(const TargetCoefficients<T>& gammas) {
  if (gammas.empty()) throw DimensionError("frobenius_from_coeffs: no coefficients");
  const std::size_t n = gammas.size();
  const std::size_t s = gammas.front().rows();
  BlockMatrix<T> phi = shift_matrix<T>(n, s);
  for (std::size_t i = 1; i <= n; ++i) {
    if (gammas[i - 1].rows() != s || gammas[i - 1].cols() != s)
      throw DimensionError("Gamma_" + std::to_string(i) + " is " + gammas[i - 1].shape() + ", expected " +
                           std::to_string(s) + "x" + std::to_string(s));
    phi.set_block(n - 1, n - i, -gammas[i - 1]);
  }
  return phi;
}

// Frobenius pattern on the first n-1 block rows: I on the superdiagonal,
// zeros elsewhere.
template <Scalar T>
std::vector<Violation> frobenius_violations(const BlockMatrix<T>& f, std::string_view name = "F") {
  std::vector<Violation> out;
  const std::size_t n = f.q();
  const Matrix<T> eye = Matrix<T>::identity(f.s());
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix<T> b = f.block(i, j);
      if (j == i + 1 && !(b == eye))
        out.push_back({std::string(name), i + 1, j + 1, "superdiagonal block must be I"});
      else if (j != i + 1 && !b.is_zero())
        out.push_back({std::string(name), i + 1, j + 1, "block must be zero"});
    }
  return out;
}

// True if the s x s block is nonsingular: exactly in rational mode, by
// numerical rank in float mode.
template <Scalar T>
bool block_nonsingular(const Matrix<T>& b, std::optional<double> tol = std::nullopt) {
  return rank(b, tol) == b.rows();
}

template <Scalar T>
std::vector<Violation> hessenberg_violations(const BlockMatrix<T>& f, std::optional<double> tol = std::nullopt,
                                             std::string_view name = "F") {
  std::vector<Violation> out;
  const std::size_t n = f.q();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j)
      if (!f.block(i, j).is_zero()) out.push_back({std::string(name), i + 1, j + 1, "block must be zero"});
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!block_nonsingular(f.block(i, i + 1), tol))
      out.push_back({std::string(name), i + 1, i + 2, "superdiagonal block is singular"});
  return out;
}

// First p-1 block rows of G are zero; last n-p block columns of H are zero.
template <Scalar T>
std::vector<Violation> io_pattern_violations(const BlockMatrix<T>& g, const BlockMatrix<T>& h, std::size_t p) {
  std::vector<Violation> out;
  for (std::size_t i = 0; i + 1 < p && i < g.q(); ++i)
    for (std::size_t a = 0; a < g.r(); ++a)
      if (!g.block(i, a).is_zero())
        out.push_back({"G", i + 1, a + 1, "block must be zero (row above p=" + std::to_string(p) + ")"});
  for (std::size_t b = 0; b < h.q(); ++b)
    for (std::size_t j = p; j < h.r(); ++j)
      if (!h.block(b, j).is_zero())
        out.push_back({"H", b + 1, j + 1, "block must be zero (column beyond p=" + std::to_string(p) + ")"});
  return out;
}

template <Scalar T>
std::vector<Violation> validate(const BlockSystem<T>& sys, std::optional<double> tol = std::nullopt) {
  std::vector<Violation> out;
  if (sys.form == Form::general) return out;
  out = sys.form == Form::frobenius ? frobenius_violations(sys.F) : hessenberg_violations(sys.F, tol);
  auto io = io_pattern_violations(sys.G, sys.H, sys.p);
  out.insert(out.end(), io.begin(), io.end());
  return out;
}

inline std::string join_violations(const std::vector<Violation>& vs) {
  std::string out;
  for (const auto& v : vs) out += (out.empty() ? "" : "; ") + v.describe();
  return out;
}

// Throws PreconditionError unless the system has the wanted form and passes validation.
template <Scalar T>
void require_form(const BlockSystem<T>& sys, std::initializer_list<Form> allowed, std::optional<double> tol = std::nullopt) {
  bool ok = false;
  for (Form f : allowed) ok = ok || f == sys.form;
  if (!ok) throw PreconditionError(std::string("system form '") + form_name(sys.form) + "' is not supported here");
  auto vs = validate(sys, tol);
  if (!vs.empty()) throw PreconditionError("structural violations: " + join_violations(vs));
}

template <Scalar T>
BlockMatrix<T> closed_loop(const BlockSystem<T>& sys, const Matrix<T>& q) {
  if (q.rows() != sys.m * sys.s || q.cols() != sys.k * sys.s)
    throw DimensionError("gain Q is " + q.shape() + ", expected " + std::to_string(sys.m * sys.s) + "x" +
                         std::to_string(sys.k * sys.s));
  return {sys.F.matrix() + sys.G.matrix() * q * sys.H.matrix(), sys.s};
}

}  // namespace amca
