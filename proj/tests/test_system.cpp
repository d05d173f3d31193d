#include <gtest/gtest.h>

#include <amca/amca.hpp>

#include "support/oracles.hpp"
#include "support/example_data.hpp"
#include "support/random.hpp"

using amca::BlockMatrix;
using amca::BlockSystem;
using amca::Form;
using amca::Matrix;
using R = amca::Rational;

TEST(Form, NamesRoundTrip) {
  for (auto f : {Form::frobenius, Form::hessenberg, Form::general}) EXPECT_EQ(amca::parse_form(amca::form_name(f)), f);
  EXPECT_FALSE(amca::parse_form("upper").has_value());
}

TEST(BlockSystem, RejectsWrongDimensions) {
  EXPECT_THROW(BlockSystem<R>(Matrix<R>(6, 6), Matrix<R>(6, 3), Matrix<R>(4, 6), 3, 2, 2, 2, 2, Form::general),
               amca::DimensionError);
  EXPECT_THROW(BlockSystem<R>(Matrix<R>(6, 6), Matrix<R>(6, 4), Matrix<R>(4, 6), 3, 2, 2, 2, 4, Form::general),
               amca::DimensionError);
}

TEST(BlockSystem, ExampleSystemsValidate) {
  EXPECT_TRUE(amca::validate(fixtures::Example1{}.system()).empty());
  EXPECT_TRUE(amca::validate(fixtures::Example2{}.system()).empty());
  EXPECT_TRUE(amca::validate(fixtures::Example3{}.system()).empty());
  EXPECT_TRUE(amca::validate(fixtures::Example4{}.system()).empty());
}

TEST(BlockSystem, CoefficientsOfExample1) {
  fixtures::Example1 ex;
  EXPECT_EQ(ex.system().coefficients(), ex.A);
}

TEST(Validate, FrobeniusViolationNamesBlock) {
  fixtures::Example1 ex;
  Matrix<R> f = ex.F;
  f(0, 1) = 1;  // block (1,1)
  f(2, 4) = 2;  // superdiagonal block (2,3)
  BlockSystem<R> sys(f, ex.G, ex.H, 3, 2, 2, 2, 2, Form::frobenius);
  auto vs = amca::validate(sys);
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_EQ(vs[0].matrix, "F");
  EXPECT_EQ(vs[0].block_row, 1u);
  EXPECT_EQ(vs[0].block_col, 1u);
  EXPECT_EQ(vs[1].block_row, 2u);
  EXPECT_EQ(vs[1].block_col, 3u);
  EXPECT_THROW(amca::require_form(sys, {Form::frobenius}), amca::PreconditionError);
}

TEST(Validate, InputOutputPattern) {
  fixtures::Example1 ex;
  Matrix<R> g = ex.G, h = ex.H;
  g(0, 0) = 1;  // G block (1,1), above p = 2
  h(0, 5) = 1;  // H block (1,3), beyond p = 2
  auto vs = amca::validate(BlockSystem<R>(ex.F, g, h, 3, 2, 2, 2, 2, Form::frobenius));
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_EQ(vs[0].matrix, "G");
  EXPECT_EQ(vs[1].matrix, "H");
  EXPECT_EQ(vs[1].block_col, 3u);
}

TEST(Validate, SmallerDeclaredPAlsoChecked) {
  fixtures::Example1 ex;
  // Example 1's G has a nonzero second block row, so p = 3 is not a valid declaration.
  auto vs = amca::validate(BlockSystem<R>(ex.F, ex.G, ex.H, 3, 2, 2, 2, 3, Form::frobenius));
  EXPECT_FALSE(vs.empty());
  // H has zero last block column, so p = 2 is the largest valid one; p = 1 needs H zero beyond column 1.
  EXPECT_FALSE(amca::validate(BlockSystem<R>(ex.F, ex.G, ex.H, 3, 2, 2, 2, 1, Form::frobenius)).empty());
}

TEST(Validate, HessenbergSingularSuperdiagonal) {
  fixtures::Example2 ex;
  Matrix<R> f = ex.F;
  f(3, 5) = 0;  // F(2,3) = diag(1, 0)
  auto vs = amca::validate(BlockSystem<R>(f, ex.G, ex.H, 3, 2, 2, 2, 2, Form::hessenberg));
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].block_row, 2u);
  EXPECT_EQ(vs[0].block_col, 3u);
  EXPECT_NE(vs[0].describe().find("singular"), std::string::npos);
}

TEST(Validate, HessenbergZeroPattern) {
  fixtures::Example2 ex;
  Matrix<R> f = ex.F;
  f(0, 4) = 1;  // block (1,3)
  auto vs = amca::validate(BlockSystem<R>(f, ex.G, ex.H, 3, 2, 2, 2, 2, Form::hessenberg));
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].block_col, 3u);
}

TEST(Validate, FloatSingularityUsesNumericalRank) {
  fixtures::Example2 ex;
  Matrix<double> f = ex.F.cast<double>();
  f(3, 5) = 1e-20;  // F(2,3) = diag(1, 1e-20)
  BlockSystem<double> sys(f, ex.G.cast<double>(), ex.H.cast<double>(), 3, 2, 2, 2, 2, Form::hessenberg);
  EXPECT_FALSE(amca::validate(sys).empty());
}

TEST(Validate, GeneralFormStoredButRejectedBySynthesis) {
  fixtures::Example1 ex;
  BlockSystem<R> sys(ex.F, ex.G, ex.H, 3, 2, 2, 2, 2, Form::general);
  EXPECT_TRUE(amca::validate(sys).empty());
  EXPECT_THROW(amca::assign(sys, ex.gammas), amca::PreconditionError);
  EXPECT_THROW(amca::build_theta(sys), amca::PreconditionError);
}

TEST(ClosedLoop, Example1PublishedMatrix) {
  fixtures::Example1 ex;
  EXPECT_EQ(amca::closed_loop(ex.system(), ex.Q).matrix(), ex.closed_loop);
}

TEST(ClosedLoop, Example2PublishedMatrix) {
  fixtures::Example2 ex;
  EXPECT_EQ(amca::closed_loop(ex.system(), ex.Q).matrix(), ex.closed_loop);
}

TEST(ClosedLoop, RejectsWrongGainShape) {
  EXPECT_THROW(amca::closed_loop(fixtures::Example1{}.system(), Matrix<R>(4, 3)), amca::DimensionError);
}

TEST(ClosedLoop, AffineInGain) {
  gen::Rng rng(301);
  for (int t = 0; t < 100; ++t) {
    auto d = gen::dims(rng);
    auto sys = gen::frobenius_system<R>(rng, d);
    auto q1 = gen::matrix<R>(rng, d.m * d.s, d.k * d.s), q2 = gen::matrix<R>(rng, d.m * d.s, d.k * d.s);
    Matrix<R> diff = amca::closed_loop(sys, q1 + q2).matrix() - amca::closed_loop(sys, q2).matrix();
    ASSERT_EQ(diff, oracle::multiply(oracle::multiply(sys.G.matrix(), q1), sys.H.matrix()));
  }
}

TEST(FrobeniusFromCoeffs, RoundTrip) {
  gen::Rng rng(302);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = rng.size(1, 4), s = rng.size(1, 3);
    auto gammas = gen::targets<R>(rng, n, s);
    auto phi = amca::frobenius_from_coeffs(gammas);
    ASSERT_TRUE(oracle::is_frobenius(phi.matrix(), s));
    ASSERT_EQ(amca::frobenius_coefficients(phi), gammas);
  }
}

// ODE conversion.

TEST(Ode, FirstOrderIsDirect) {
  amca::HigherOrderOde<R> ode;
  ode.n = 1;
  ode.s = 2;
  ode.m = 1;
  ode.k = 1;
  ode.p = 1;
  Matrix<R> a{{1, 2}, {3, 4}}, b{{0, 1}, {5, 0}}, c{{-1, 2}, {2, 7}};
  ode.A = {a};
  ode.B = {{b}};
  ode.C = {{c}};
  auto sys = amca::ode_to_state_space(ode);
  EXPECT_EQ(sys.F.matrix(), -a);
  EXPECT_EQ(sys.G.matrix(), b);
  EXPECT_EQ(sys.H.matrix(), c);
  EXPECT_EQ(sys.form, Form::frobenius);
}

TEST(Ode, RejectsInconsistentShapes) {
  gen::Rng rng(303);
  auto ode = gen::ode<R>(rng, {3, 2, 2, 1, 2});
  ode.B.pop_back();
  EXPECT_THROW(amca::ode_to_state_space(ode), amca::DimensionError);
  ode = gen::ode<R>(rng, {3, 2, 2, 1, 2});
  ode.C[0][0] = Matrix<R>(3, 3);
  EXPECT_THROW(amca::ode_to_state_space(ode), amca::DimensionError);
}

TEST(Ode, RandomConversionsValidateAndRecoverInputs) {
  gen::Rng rng(304);
  for (int t = 0; t < 100; ++t) {
    auto d = gen::dims(rng);
    auto ode = gen::ode<R>(rng, d);
    auto sys = amca::ode_to_state_space(ode);
    ASSERT_TRUE(amca::validate(sys).empty()) << amca::join_violations(amca::validate(sys));
    ASSERT_EQ(sys.coefficients(), ode.A);
    // P G reproduces the stacked input matrix.
    ASSERT_EQ(amca::build_P(ode.A) * sys.G, amca::ode_input_matrix(ode));
    // B_{l a} = sum_{i=p..l} A_{l-i} G_{i a} with A_0 = I, blockwise.
    for (std::size_t l = d.p; l <= d.n; ++l)
      for (std::size_t a = 0; a < d.m; ++a) {
        Matrix<R> acc(d.s, d.s);
        for (std::size_t i = d.p; i <= l; ++i) {
          Matrix<R> ai = l == i ? Matrix<R>::identity(d.s) : ode.A[l - i - 1];
          acc += oracle::multiply(ai, sys.G.block(i - 1, a));
        }
        ASSERT_EQ(acc, ode.B[l - d.p][a]) << "l=" << l << " a=" << a + 1;
      }
    // H_{b v} = C_{v b} for v <= p.
    for (std::size_t b = 0; b < d.k; ++b)
      for (std::size_t v = 0; v < d.p; ++v) ASSERT_EQ(sys.H.block(b, v), ode.C[v][b]);
  }
}
