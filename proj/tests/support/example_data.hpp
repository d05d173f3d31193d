#pragma once

// Published example data (integer valued), in exact arithmetic.

#include <vector>

#include <amca/amca.hpp>

namespace fixtures {

using amca::BlockMatrix;
using amca::BlockSystem;
using amca::Form;
using amca::Matrix;
using R = amca::Rational;
using Mat = Matrix<R>;

inline Mat eye2() { return Mat::identity(2); }
inline Mat scaled_eye2(long c) { return R(c) * Mat::identity(2); }

// Example 1: frobenius system, n = 3, s = 2, m = k = p = 2.
struct Example1 {
  Mat F{{0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0},
        {0, 0, 0, 0, 0, 1}, {2, 0, -1, 0, 0, 0}, {0, 0, 0, -1, 0, -1}};
  Mat G{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 1, 1, 0}, {0, -1, 0, 1}, {-1, 3, 1, -1}, {2, 1, 0, -1}};
  Mat H{{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {1, 0, 0, 0, 0, 0}, {0, -1, 1, 0, 0, 0}};
  std::vector<Mat> A{Mat{{0, 0}, {0, 1}}, eye2(), Mat{{-2, 0}, {0, 0}}};
  std::vector<Mat> gammas{scaled_eye2(6), scaled_eye2(11), scaled_eye2(6)};
  std::vector<Mat> T_hat{Mat{{-6, 0}, {0, -5}}, Mat{{-10, 0}, {0, -5}}, Mat{{-2, 0}, {0, 4}}};
  std::vector<long> w{-6, 0, 0, -5, -10, 0, 0, -5, -2, 0, 0, 4};
  std::vector<long> v{0, -2, -5, -16, -3, -5, 16, -21, 0, -2, 3, 9, -3, -5, -15, 9};
  Mat Q{{0, -5, 0, 3}, {-2, -16, -2, 9}, {-3, 16, -3, -15}, {-5, -21, -5, 9}};
  Mat closed_loop{{0, 0, 1, 0, 0, 0},     {0, 0, 0, 1, 0, 0},   {-10, 6, -6, 0, 1, 0},
                  {-6, 0, 0, -5, 0, 1},   {-6, 0, -1, -6, 0, 0}, {6, -6, 6, -6, 0, -1}};
  Mat S31{{-10, 6}, {-6, 0}};
  Mat S32{{-6, 0}, {0, -5}};
  Mat star_block11{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, -1}};
  // Published 12 x 16 solvability matrix, block rows X, Y, Z.
  Mat theta = Mat{{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0},
      {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0, 1},
      {0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 0, 0, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
      {0, 1, 0, 0, 1, 0, 0, 0, 0, 1, -1, 3, 1, 0, 1, -1},
      {0, -1, 0, 0, 0, 1, 0, 0, 0, -1, 2, 1, 0, 1, 0, -1},
      {0, 0, -1, 3, 0, 0, 1, -1, 0, 0, 0, -1, 0, 0, -1, 0},
      {0, 0, 2, 1, 0, 0, 0, -1, 0, 0, 0, 1, 0, 0, 0, -1},
      {-1, 3, 0, 0, 1, -1, 0, 0, -1, 3, 0, -1, 1, -1, -1, 0},
      {2, 1, 0, 0, 0, -1, 0, 0, 2, 1, -2, 0, 0, -1, 0, 0},
      {0, 0, 0, -1, 0, 0, -1, 0, 0, 0, 1, -3, 0, 0, -1, 1},
      {0, 0, -2, 0, 0, 0, 0, 0, 0, 0, -2, -1, 0, 0, 0, 1}};
  std::size_t rank_theta = 12;

  BlockSystem<R> system() const { return {F, G, H, 3, 2, 2, 2, 2, Form::frobenius}; }
  Mat S() const {
    Mat s = Mat::identity(6);
    s.assign(4, 0, S31);
    s.assign(4, 2, S32);
    return s;
  }
};

// Example 2: hessenberg system, n = 3, s = 2, m = k = p = 2.
struct Example2 {
  Mat F{{1, 0, -1, 0, 0, 0}, {0, 1, 0, -1, 0, 0}, {0, 0, -1, 0, 1, 0},
        {0, 0, 0, -1, 0, 1}, {1, -1, -2, 1, -1, 0}, {0, 2, 1, -2, -1, 1}};
  Mat G{{0, 0, 0, 0}, {0, 0, 0, 0}, {-1, 0, 1, 0}, {1, -1, -1, 1}, {1, 1, -1, 0}, {0, -1, 0, 1}};
  Mat H{{-1, -1, 1, 0, 0, 0}, {0, -1, -1, 1, 0, 0}, {1, -1, -1, 1, 0, 0}, {1, -1, 0, 0, 0, 0}};
  std::vector<Mat> gammas{Mat{{-1, 0}, {0, -1}}, Mat{{1, 0}, {0, 0}}, Mat{{-2, 1}, {0, 1}}};
  Mat S_tilde{{1, 0, 0, 0, 0, 0},  {0, 1, 0, 0, 0, 0}, {1, 0, -1, 0, 0, 0},
              {0, 1, 0, -1, 0, 0}, {1, 0, 0, 0, -1, 0}, {0, 1, 0, 0, 0, -1}};
  std::vector<Mat> A{Mat{{1, 0}, {1, -1}}, Mat{{1, -1}, {-1, 1}}, Mat{{-2, 0}, {0, 1}}};
  std::vector<Mat> T_hat{Mat{{2, 0}, {1, 0}}, Mat{{-2, -1}, {-2, 1}}, Mat{{1, 0}, {1, 2}}};
  std::vector<long> w{2, 1, 0, 0, -2, -2, -1, 1, 1, 1, 0, 2};
  std::vector<long> v{-1, -1, 1, 0, 1, 2, -1, -7, -1, -1, 1, 0, 1, 6, -1, -2};
  Mat Q{{-1, 1, -1, 1}, {-1, 0, -1, 0}, {1, -1, 1, -1}, {2, -7, 6, -2}};
  Mat transformed_closed_loop{{0, 0, 1, 0, 0, 0},  {0, 0, 0, 1, 0, 0},    {0, 0, 2, 0, 1, 0},
                              {-5, 1, 1, 0, 0, 1}, {2, -1, -3, 0, -1, 0}, {-5, 0, 4, -1, -1, 1}};
  Mat closed_loop{{1, 0, -1, 0, 0, 0}, {0, 1, 0, -1, 0, 0}, {-2, 0, 1, 0, 1, 0},
                  {4, -1, 1, -1, 0, 1}, {3, 1, -4, 0, -1, 0}, {2, 1, 4, -2, -1, 1}};
  Mat S31{{0, 0}, {-5, 1}};
  Mat S32{{2, 0}, {1, 0}};
  Mat R_matrix{{1, 0, 0, 0, 0, 0},  {0, 1, 0, 0, 0, 0},  {1, 0, -1, 0, 0, 0},
               {0, 1, 0, -1, 0, 0}, {3, 0, -2, 0, -1, 0}, {-4, 2, -1, 0, 0, -1}};
  Mat theta_hat = Mat{{-1, 0, 1, 0, 1, 0, -1, 0, 1, 0, 0, 0, -1, 0, 0, 0},
      {1, -1, -1, 1, -1, 1, 1, -1, -1, 1, 0, 0, 1, -1, 0, 0},
      {0, 0, -1, 0, 0, 0, 1, 0, -1, 0, 0, 0, 1, 0, 0, 0},
      {0, 0, 1, -1, 0, 0, -1, 1, 1, -1, 0, 0, -1, 1, 0, 0},
      {1, 1, -2, -1, -1, 0, 2, 0, -1, -1, 1, 0, 1, 0, -1, 0},
      {0, -1, 1, 0, 0, 1, -1, 0, 0, 1, -1, 1, 0, -1, 1, -1},
      {-1, 0, 1, 1, 1, 0, -1, 0, 1, 1, -1, 0, -1, 0, 1, 0},
      {1, -1, 0, -1, -1, 1, 0, 1, 0, -1, 1, -1, 0, 1, -1, 1},
      {1, -2, 0, 3, -1, 1, 0, -1, -1, 2, -1, -1, 1, -1, 1, 0},
      {-3, -1, 3, 0, 3, 0, -3, 1, 3, 1, 0, 1, -3, 0, 0, -1},
      {1, 1, 1, -2, -1, 0, -1, 1, 1, -2, 1, 1, -1, 1, -1, 0},
      {0, -1, -3, -1, 0, 1, 3, 0, -3, -1, 0, -1, 3, 0, 0, 1}};
  std::size_t rank_theta_hat = 12;

  BlockSystem<R> system() const { return {F, G, H, 3, 2, 2, 2, 2, Form::hessenberg}; }
};

// Example 3: hessenberg system, n = 4, s = 2, m = k = p = 2, with S~ = diag(I, A, AB, AB).
struct Example3 {
  Mat a{{2, 0}, {0, 1}};
  Mat b{{0, 1}, {1, 0}};

  BlockSystem<R> system() const {
    BlockMatrix<R> f(4, 4, 2), g(4, 2, 2), h(2, 4, 2);
    f.set_block(0, 1, a);
    f.set_block(1, 2, b);
    f.set_block(2, 3, eye2());
    f.set_block(3, 2, b);
    g.set_block(1, 0, eye2());
    g.set_block(2, 1, eye2());
    g.set_block(3, 0, eye2());
    h.set_block(0, 0, eye2());
    h.set_block(1, 1, eye2());
    return {f.matrix(), g.matrix(), h.matrix(), 4, 2, 2, 2, 2, Form::hessenberg};
  }
  Mat S_tilde() const {
    BlockMatrix<R> s(4, 4, 2);
    s.set_block(0, 0, eye2());
    s.set_block(1, 1, a);
    s.set_block(2, 2, a * b);
    s.set_block(3, 3, a * b);
    return s.matrix();
  }
  std::size_t rank_theta_hat = 16;
  std::size_t rank_theta_tilde = 12;
};

// Example 4: n = 2, s = 2, m = 1, k = 2, p = 2.
struct Example4 {
  BlockSystem<R> system() const {
    Mat f{{0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}};
    Mat g{{0, 0}, {0, 0}, {1, 0}, {0, 1}};
    Mat h{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}};
    return {f, g, h, 2, 2, 1, 2, 2, Form::frobenius};
  }
  // Gains making the characteristic polynomial l^4 + d1 l^3 + d2 l^2 + d3 l + d4;
  // q14 and q24 multiply a zero output and are set to 0.
  template <typename T>
  static Matrix<T> asca_gain(const T& d1, const T& d2, const T& d3, const T& d4) {
    return Matrix<T>{{-d2, T(1), -d1, T(0)}, {-d4, T(0), -d3, T(0)}};
  }
  static std::vector<Mat> amca_targets(long a) {
    return {scaled_eye2(-2 * a), scaled_eye2(a * a)};
  }
};

// Example 5: the system of Example 1 with left solvents -I, -2I, -3I.
struct Example5 {
  std::vector<Mat> solvents{scaled_eye2(-1), scaled_eye2(-2), scaled_eye2(-3)};
  std::vector<Mat> gammas{scaled_eye2(6), scaled_eye2(11), scaled_eye2(6)};
  Mat vandermonde() const {
    BlockMatrix<R> v(3, 3, 2);
    const long pw[3][3] = {{1, 1, 1}, {-1, -2, -3}, {1, 4, 9}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) v.set_block(i, j, scaled_eye2(pw[i][j]));
    return v.matrix();
  }
};

inline Mat column(const std::vector<long>& xs) {
  Mat out(xs.size(), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) out(i, 0) = R(xs[i]);
  return out;
}

}  // namespace fixtures
