#pragma once

#include <cstddef>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"

namespace amca {

// Coefficients d_1..d_r of det(lambda I - M) = lambda^r + d_1 lambda^{r-1} + ... + d_r.
template <Scalar T>
std::vector<T> char_poly_faddeev(const Matrix<T>& a) {
  if (!a.square()) throw DimensionError("char_poly of non-square matrix " + a.shape());
  const std::size_t n = a.rows();
  std::vector<T> d(n, T(0));
  Matrix<T> m(n, n);
  T c(1);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    for (std::size_t i = 0; i < n; ++i) m(i, i) += c;
    c = -(a * m).trace() / T(static_cast<long>(k));
    d[k - 1] = c;
  }
  return d;
}

// Upper Hessenberg form by stabilized elementary similarity transformations.
template <Scalar T>
Matrix<T> upper_hessenberg(Matrix<T> h) {
  const std::size_t n = h.rows();
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t piv = c + 1;
    for (std::size_t i = c + 2; i < n; ++i)
      if (abs_value(h(i, c)) > abs_value(h(piv, c))) piv = i;
    if (is_zero(h(piv, c))) continue;
    if (piv != c + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(piv, j), h(c + 1, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(h(i, piv), h(i, c + 1));
    }
    for (std::size_t i = c + 2; i < n; ++i) {
      if (is_zero(h(i, c))) continue;
      T f = h(i, c) / h(c + 1, c);
      for (std::size_t j = 0; j < n; ++j) h(i, j) -= f * h(c + 1, j);
      for (std::size_t r = 0; r < n; ++r) h(r, c + 1) += f * h(r, i);
    }
  }
  return h;
}

// Same coefficients via the Hessenberg form and the determinant recurrence
// p_k = (lambda - h_kk) p_{k-1} - sum_{i<k} h_ik (h_{i+1,i} ... h_{k,k-1}) p_{i-1}.
template <Scalar T>
std::vector<T> char_poly_hessenberg(const Matrix<T>& a) {
  if (!a.square()) throw DimensionError("char_poly of non-square matrix " + a.shape());
  const std::size_t n = a.rows();
  const Matrix<T> h = upper_hessenberg(a);
  // p[k] holds the monic polynomial of degree k, ascending powers.
  std::vector<std::vector<T>> p{{T(1)}};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<T> next(k + 1, T(0));
    const auto& prev = p[k - 1];
    for (std::size_t j = 0; j < prev.size(); ++j) {
      next[j + 1] += prev[j];
      next[j] -= h(k - 1, k - 1) * prev[j];
    }
    T prod(1);
    for (std::size_t i = k - 1; i-- > 0;) {
      prod *= h(i + 1, i);
      T coef = h(i, k - 1) * prod;
      if (is_zero(coef)) continue;
      for (std::size_t j = 0; j < p[i].size(); ++j) next[j] -= coef * p[i][j];
    }
    p.push_back(std::move(next));
  }
  std::vector<T> d(n);
  for (std::size_t k = 1; k <= n; ++k) d[k - 1] = p[n][n - k];
  return d;
}

// Faddeev-LeVerrier in exact mode, Hessenberg recurrence in float mode.
template <Scalar T>
std::vector<T> char_poly(const Matrix<T>& a) {
  if constexpr (is_exact_v<T>)
    return char_poly_faddeev(a);
  else
    return char_poly_hessenberg(a);
}

}  // namespace amca
