#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "blockmat.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "reduction.hpp"
#include "system.hpp"

namespace amca {

// x^(n) + A_1 x^(n-1) + ... + A_n x = sum_{l=p..n} sum_a B_{la} u_a^(n-l),
// y_b = sum_{v=1..p} C_{vb} x^(v-1).
// B[l-p][a] holds B_{l,a+1}; C[v-1][b] holds C_{v,b+1}.
template <Scalar T>
struct HigherOrderOde {
  std::size_t n = 0, s = 0, m = 0, k = 0, p = 1;
  std::vector<Matrix<T>> A;
  std::vector<std::vector<Matrix<T>>> B;
  std::vector<std::vector<Matrix<T>>> C;

  void check() const {
    if (n == 0 || s == 0 || m == 0 || k == 0) throw DimensionError("ode: n, s, m, k must be positive");
    if (p < 1 || p > n) throw DimensionError("ode: p must lie in 1..n");
    auto square = [&](const Matrix<T>& x, const std::string& what) {
      if (x.rows() != s || x.cols() != s)
        throw DimensionError("ode: " + what + " is " + x.shape() + ", expected " + std::to_string(s) + "x" +
                             std::to_string(s));
    };
    if (A.size() != n) throw DimensionError("ode: expected " + std::to_string(n) + " matrices A");
    for (std::size_t i = 0; i < n; ++i) square(A[i], "A_" + std::to_string(i + 1));
    if (B.size() != n - p + 1) throw DimensionError("ode: expected B rows for l = p..n");
    for (std::size_t l = 0; l < B.size(); ++l) {
      if (B[l].size() != m) throw DimensionError("ode: B row " + std::to_string(l + p) + " needs m entries");
      for (std::size_t a = 0; a < m; ++a) square(B[l][a], "B_" + std::to_string(l + p) + "," + std::to_string(a + 1));
    }
    if (C.size() != p) throw DimensionError("ode: expected C rows for v = 1..p");
    for (std::size_t v = 0; v < p; ++v) {
      if (C[v].size() != k) throw DimensionError("ode: C row " + std::to_string(v + 1) + " needs k entries");
      for (std::size_t b = 0; b < k; ++b) square(C[v][b], "C_" + std::to_string(v + 1) + "," + std::to_string(b + 1));
    }
  }
};

// Stacked input blocks: p-1 zero block rows over B_{la}, l = p..n.
template <Scalar T>
BlockMatrix<T> ode_input_matrix(const HigherOrderOde<T>& ode) {
  ode.check();
  BlockMatrix<T> b(ode.n, ode.m, ode.s);
  for (std::size_t l = ode.p; l <= ode.n; ++l)
    for (std::size_t a = 0; a < ode.m; ++a) b.set_block(l - 1, a, ode.B[l - ode.p][a]);
  return b;
}

// C_{vb} at block (v, b), v = 1..p, zero block rows below.
template <Scalar T>
BlockMatrix<T> ode_output_matrix(const HigherOrderOde<T>& ode) {
  ode.check();
  BlockMatrix<T> c(ode.n, ode.k, ode.s);
  for (std::size_t v = 0; v < ode.p; ++v)
    for (std::size_t b = 0; b < ode.k; ++b) c.set_block(v, b, ode.C[v][b]);
  return c;
}

// Block state-space form: F is the companion matrix of A, G = P^-1 (input
// matrix), H the block transpose of the output matrix.
template <Scalar T>
BlockSystem<T> ode_to_state_space(const HigherOrderOde<T>& ode) {
  ode.check();
  BlockMatrix<T> f = frobenius_from_coeffs(ode.A);
  BlockMatrix<T> p = build_P(ode.A);
  Matrix<T> g = block_lower_solve(p.matrix(), ode_input_matrix(ode).matrix(), ode.s);
  Matrix<T> h = block_transpose(ode_output_matrix(ode)).matrix();
  return BlockSystem<T>(f.matrix(), std::move(g), std::move(h), ode.n, ode.s, ode.m, ode.k, ode.p, Form::frobenius);
}

}  // namespace amca
