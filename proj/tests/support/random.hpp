#pragma once

// Seeded generators for small integer-valued instances.

#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <amca/amca.hpp>

namespace gen {

using amca::BlockMatrix;
using amca::BlockSystem;
using amca::Form;
using amca::Matrix;

class Rng {
 public:
  explicit Rng(unsigned seed) : engine_(seed) {}
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  std::size_t size(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }
  std::mt19937& engine() { return engine_; }

 private:
  std::mt19937 engine_;
};

template <typename T>
Matrix<T> matrix(Rng& rng, std::size_t rows, std::size_t cols, long lo = -3, long hi = 3) {
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = T(rng.integer(lo, hi));
  return m;
}

template <typename T>
BlockMatrix<T> blocks(Rng& rng, std::size_t q, std::size_t r, std::size_t s, long lo = -3, long hi = 3) {
  return BlockMatrix<T>(matrix<T>(rng, q * s, r * s, lo, hi), s);
}

// Every block a scalar multiple of I.
template <typename T>
BlockMatrix<T> scalar_blocks(Rng& rng, std::size_t q, std::size_t r, std::size_t s, long lo = -3, long hi = 3) {
  return amca::scalar_lift(matrix<T>(rng, q, r, lo, hi), s);
}

template <typename T>
Matrix<T> nonsingular(Rng& rng, std::size_t s) {
  for (;;) {
    Matrix<T> m = matrix<T>(rng, s, s);
    if (amca::determinant(m.template cast<amca::Rational>()) != 0) return m;
  }
}

template <typename T>
std::vector<Matrix<T>> coefficients(Rng& rng, std::size_t n, std::size_t s) {
  std::vector<Matrix<T>> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back(matrix<T>(rng, s, s));
  return a;
}

template <typename T>
BlockMatrix<T> frobenius(Rng& rng, std::size_t n, std::size_t s) {
  return amca::frobenius_from_coeffs(coefficients<T>(rng, n, s));
}

// First p-1 block rows zero, last n-p block columns zero.
template <typename T>
BlockMatrix<T> perturbation(Rng& rng, std::size_t n, std::size_t s, std::size_t p) {
  BlockMatrix<T> d(n, n, s);
  for (std::size_t i = p - 1; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) d.set_block(i, j, matrix<T>(rng, s, s));
  return d;
}

template <typename T>
BlockMatrix<T> input_matrix(Rng& rng, std::size_t n, std::size_t m, std::size_t s, std::size_t p) {
  BlockMatrix<T> g = blocks<T>(rng, n, m, s);
  for (std::size_t i = 0; i + 1 < p; ++i)
    for (std::size_t a = 0; a < m; ++a) g.set_block(i, a, Matrix<T>(s, s));
  return g;
}

template <typename T>
BlockMatrix<T> output_matrix(Rng& rng, std::size_t k, std::size_t n, std::size_t s, std::size_t p) {
  BlockMatrix<T> h = blocks<T>(rng, k, n, s);
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t j = p; j < n; ++j) h.set_block(b, j, Matrix<T>(s, s));
  return h;
}

struct Dims {
  std::size_t n, s, m, k, p;
};

// n <= 4, s <= 3, m, k <= 3 with m k >= n.
inline Dims dims(Rng& rng, std::size_t max_n = 4, std::size_t max_s = 3) {
  for (;;) {
    Dims d{rng.size(1, max_n), rng.size(1, max_s), rng.size(1, 3), rng.size(1, 3), 1};
    d.p = rng.size(1, d.n);
    if (d.m * d.k >= d.n) return d;
  }
}

template <typename T>
BlockSystem<T> frobenius_system(Rng& rng, const Dims& d) {
  return BlockSystem<T>(frobenius<T>(rng, d.n, d.s).matrix(), input_matrix<T>(rng, d.n, d.m, d.s, d.p).matrix(),
                        output_matrix<T>(rng, d.k, d.n, d.s, d.p).matrix(), d.n, d.s, d.m, d.k, d.p, Form::frobenius);
}

// Redraws until rank Theta = n s^2. Some shapes never qualify under the
// input/output zero pattern (p = 1 with m < n, for instance), hence the bound.
template <typename T>
BlockSystem<T> solvable_system(Rng& rng, const Dims& d, int attempts = 200) {
  for (int t = 0; t < attempts; ++t) {
    auto sys = frobenius_system<T>(rng, d);
    if (amca::amca_solvable(sys).solvable) return sys;
  }
  throw std::runtime_error("no solvable system drawn for n=" + std::to_string(d.n) + " m=" + std::to_string(d.m) +
                           " k=" + std::to_string(d.k) + " p=" + std::to_string(d.p));
}

// Dimensions for which a random draw is solvable.
inline Dims solvable_dims(Rng& rng, std::size_t max_n = 4, std::size_t max_s = 3) {
  for (;;) {
    Dims d = dims(rng, max_n, max_s);
    for (int t = 0; t < 4; ++t)
      if (amca::amca_solvable(frobenius_system<double>(rng, d)).solvable) return d;
  }
}

// Unreduced lower block Hessenberg matrix.
template <typename T>
BlockMatrix<T> hessenberg(Rng& rng, std::size_t n, std::size_t s) {
  BlockMatrix<T> z = blocks<T>(rng, n, n, s);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) z.set_block(i, j, j == i + 1 ? nonsingular<T>(rng, s) : Matrix<T>(s, s));
  return z;
}

template <typename T>
std::vector<Matrix<T>> targets(Rng& rng, std::size_t n, std::size_t s) {
  return coefficients<T>(rng, n, s);
}

template <typename T>
amca::HigherOrderOde<T> ode(Rng& rng, const Dims& d) {
  amca::HigherOrderOde<T> o;
  o.n = d.n;
  o.s = d.s;
  o.m = d.m;
  o.k = d.k;
  o.p = d.p;
  o.A = coefficients<T>(rng, d.n, d.s);
  for (std::size_t l = d.p; l <= d.n; ++l) o.B.push_back(coefficients<T>(rng, d.m, d.s));
  for (std::size_t v = 1; v <= d.p; ++v) o.C.push_back(coefficients<T>(rng, d.k, d.s));
  return o;
}

}  // namespace gen
