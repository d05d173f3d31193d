// Assigns Gamma = (6I, 11I, 6I) to a small frobenius system and prints the gain.

#include <iostream>

#include <amca/amca.hpp>

int main() {
  using amca::Matrix;
  using R = amca::Rational;

  Matrix<R> f{{0, 0, 1, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0},
              {0, 0, 0, 0, 0, 1}, {2, 0, -1, 0, 0, 0}, {0, 0, 0, -1, 0, -1}};
  Matrix<R> g{{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 1, 1, 0}, {0, -1, 0, 1}, {-1, 3, 1, -1}, {2, 1, 0, -1}};
  Matrix<R> h{{1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {1, 0, 0, 0, 0, 0}, {0, -1, 1, 0, 0, 0}};
  amca::BlockSystem<R> sys(f, g, h, 3, 2, 2, 2, 2, amca::Form::frobenius);

  const Matrix<R> eye = Matrix<R>::identity(2);
  std::vector<Matrix<R>> gammas{R(6) * eye, R(11) * eye, R(6) * eye};

  auto res = amca::assign(sys, gammas);
  std::cout << "rank " << res.rank_solvability << " of " << res.required_rank << "\n";
  std::cout << "Q =\n" << res.Q << "\n";
  std::cout << "S =\n" << res.S.matrix() << "\n";
  std::cout << "residual " << amca::to_string(res.residual_similarity) << "\n";
}
