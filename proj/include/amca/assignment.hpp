#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blockmat.hpp"
#include "charpoly.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "reduction.hpp"
#include "system.hpp"

namespace amca {

enum class Method { automatic, general, scalar_h, scalar_fg, scalar_all };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::automatic: return "auto";
    case Method::general: return "general";
    case Method::scalar_h: return "scalar_h";
    case Method::scalar_fg: return "scalar_fg";
    case Method::scalar_all: return "scalar_all";
  }
  return "?";
}

inline std::optional<Method> parse_method(std::string_view name) {
  if (name == "auto" || name == "automatic") return Method::automatic;
  if (name == "general") return Method::general;
  if (name == "scalar-h" || name == "scalar_h") return Method::scalar_h;
  if (name == "scalar-fg" || name == "scalar_fg") return Method::scalar_fg;
  if (name == "scalar-all" || name == "scalar_all") return Method::scalar_all;
  return std::nullopt;
}

struct AssignOptions {
  Method method = Method::automatic;
  std::optional<double> tol;  // residual tolerance; exact mode defaults to 0
};

template <Scalar T>
struct AssignmentResult {
  Matrix<T> Q;
  BlockMatrix<T> S;    // for hessenberg input: R = S * S~
  BlockMatrix<T> Phi;  // realized frobenius matrix
  std::size_t rank_solvability = 0;
  std::size_t required_rank = 0;
  T residual_solve{0};
  T residual_similarity{0};
  Method method = Method::general;
  std::vector<std::string> diagnostics;

  std::vector<Matrix<T>> T_hat;
  Matrix<T> rhs;       // w (general), W (scalar_h, scalar_all) or Y^T (scalar_fg)
  Matrix<T> unknowns;  // v, V or X^T
  std::optional<BlockMatrix<T>> S_tilde;

  bool rank_test_passed() const { return rank_solvability == required_rank; }
};

// G, F G, ..., F^{n-1} G by repeated multiplication.
template <Scalar T>
std::vector<BlockMatrix<T>> krylov_blocks(const BlockMatrix<T>& f, const BlockMatrix<T>& g) {
  std::vector<BlockMatrix<T>> out{g};
  for (std::size_t i = 1; i < f.q(); ++i) out.push_back(f * out.back());
  return out;
}

// Rows VecRR_{s^2}((H^T)^T * F^{i-1} G), i = 1..n, with no structural checks.
template <Scalar T>
Matrix<T> theta_matrix(const BlockMatrix<T>& f, const BlockMatrix<T>& g, const BlockMatrix<T>& h) {
  const std::size_t s2 = f.s() * f.s();
  const BlockMatrix<T> ht = block_transpose(h).transpose();
  const auto powers = krylov_blocks(f, g);
  Matrix<T> theta(f.q() * s2, h.q() * g.r() * s2);
  for (std::size_t i = 0; i < powers.size(); ++i) theta.assign(i * s2, 0, unroll(star(ht, powers[i]), Unroll::RR).matrix());
  return theta;
}

// Rows VecRR_s((H^T)^T F^{i-1} G), i = 1..n.
template <Scalar T>
Matrix<T> omega_matrix(const BlockMatrix<T>& f, const BlockMatrix<T>& g, const BlockMatrix<T>& h) {
  const std::size_t s = f.s();
  const BlockMatrix<T> ht = block_transpose(h).transpose();
  const auto powers = krylov_blocks(f, g);
  Matrix<T> omega(f.q() * s, h.q() * g.r() * s);
  for (std::size_t i = 0; i < powers.size(); ++i) omega.assign(i * s, 0, unroll(ht * powers[i], Unroll::RR).matrix());
  return omega;
}

// Columns VecRC_s(H F^{i-1} G), i = 1..n.
template <Scalar T>
Matrix<T> xi_matrix(const BlockMatrix<T>& f, const BlockMatrix<T>& g, const BlockMatrix<T>& h) {
  const std::size_t s = f.s();
  const auto powers = krylov_blocks(f, g);
  Matrix<T> xi(h.q() * g.r() * s, f.q() * s);
  for (std::size_t i = 0; i < powers.size(); ++i) xi.assign(0, i * s, unroll(h * powers[i], Unroll::RC).matrix());
  return xi;
}

template <Scalar T>
Matrix<T> build_theta(const BlockSystem<T>& sys) {
  require_form(sys, {Form::frobenius});
  return theta_matrix(sys.F, sys.G, sys.H);
}

template <Scalar T>
Matrix<T> build_omega(const BlockSystem<T>& sys) {
  require_form(sys, {Form::frobenius});
  return omega_matrix(sys.F, sys.G, sys.H);
}

template <Scalar T>
Matrix<T> build_xi(const BlockSystem<T>& sys) {
  require_form(sys, {Form::frobenius});
  return xi_matrix(sys.F, sys.G, sys.H);
}

// Frobenius system similar to a hessenberg one: F = S~ F~ S~^-1, G = S~ G~,
// H = H~ S~^-1.
template <Scalar T>
struct HessenbergTransform {
  BlockSystem<T> system;
  ReductionResult<T> reduction;
};

template <Scalar T>
HessenbergTransform<T> transform_hessenberg(const BlockSystem<T>& sys, std::optional<double> tol = std::nullopt) {
  require_form(sys, {Form::hessenberg});
  auto red = hessenberg_to_frobenius(sys.F, tol);
  BlockSystem<T> out(red.Phi.matrix(), (red.S * sys.G).matrix(), (sys.H * red.S_inverse).matrix(), sys.n, sys.s, sys.m,
                     sys.k, sys.p, Form::frobenius);
  return {std::move(out), std::move(red)};
}

// Theta built directly from the hessenberg coefficients (equals the Theta of
// the transformed system when S~ has scalar blocks).
template <Scalar T>
Matrix<T> build_theta_hat(const BlockSystem<T>& sys) {
  require_form(sys, {Form::hessenberg});
  return theta_matrix(sys.F, sys.G, sys.H);
}

template <Scalar T>
Matrix<T> build_theta_tilde(const BlockSystem<T>& sys, std::optional<double> tol = std::nullopt) {
  auto tr = transform_hessenberg(sys, tol);
  return theta_matrix(tr.system.F, tr.system.G, tr.system.H);
}

struct Solvability {
  bool solvable = false;
  std::size_t rank = 0;
  std::size_t required = 0;
  bool mk_ge_n = false;
};

// rank Theta = n s^2 (Theta~ for hessenberg input). mk >= n is necessary.
template <Scalar T>
Solvability amca_solvable(const BlockSystem<T>& sys, std::optional<double> rank_tol = std::nullopt) {
  Matrix<T> theta = sys.form == Form::hessenberg ? build_theta_tilde(sys) : build_theta(sys);
  Solvability out;
  out.rank = rank(theta, rank_tol);
  out.required = sys.n * sys.s * sys.s;
  out.solvable = out.rank == out.required;
  out.mk_ge_n = sys.m * sys.k >= sys.n;
  return out;
}

struct ScalarIndependence {
  bool independent = false;
  std::size_t rank = 0;
  std::size_t required = 0;
};

// Rows vecr(H0 F0^{i-1} G0) for a system whose blocks are all scalar matrices.
template <Scalar T>
Matrix<T> omega0_matrix(const BlockSystem<T>& sys) {
  auto f0 = scalar_core(sys.F);
  auto g0 = scalar_core(sys.G);
  auto h0 = scalar_core(sys.H);
  if (!f0 || !g0 || !h0) throw PreconditionError("scalar_all requires every block of F, G and H to be a scalar matrix");
  Matrix<T> omega0(sys.n, sys.k * sys.m);
  Matrix<T> fg = *g0;
  for (std::size_t i = 0; i < sys.n; ++i) {
    omega0.assign(i, 0, vecr(Matrix<T>(*h0 * fg)));
    fg = *f0 * fg;
  }
  return omega0;
}

// Linear independence of H0 G0, H0 F0 G0, ..., H0 F0^{n-1} G0.
template <Scalar T>
ScalarIndependence check_scalar_all(const BlockSystem<T>& sys, std::optional<double> rank_tol = std::nullopt) {
  require_form(sys, {Form::frobenius});
  ScalarIndependence out;
  out.rank = rank(omega0_matrix(sys), rank_tol);
  out.required = sys.n;
  out.independent = out.rank == out.required;
  return out;
}

template <Scalar T>
struct SimilarityCheck {
  bool ok = false;
  T residual{0};
};

namespace detail {

template <Scalar T>
double similarity_scale(const Matrix<T>& s, const Matrix<T>& m, const Matrix<T>& s_inv) {
  return to_double(s.max_abs()) * to_double(m.max_abs()) * to_double(s_inv.max_abs()) * static_cast<double>(s.rows());
}

}  // namespace detail

// residual = max |S M S^-1 - Phi|.
template <Scalar T>
SimilarityCheck<T> verify_similarity(const Matrix<T>& s, const Matrix<T>& m, const Matrix<T>& phi,
                                  std::optional<double> tol = std::nullopt) {
  if (!s.square() || s.rows() != m.rows() || !m.square() || phi.rows() != m.rows() || !phi.square())
    throw DimensionError("verify_similarity: shapes " + s.shape() + ", " + m.shape() + ", " + phi.shape());
  Matrix<T> s_inv = inverse(s);
  T res = max_abs_diff(Matrix<T>(s * m * s_inv), phi);
  return {within_tolerance(res, tol, detail::similarity_scale(s, m, s_inv)), res};
}

namespace detail {

template <Scalar T>
void check_targets(const BlockSystem<T>& sys, const TargetCoefficients<T>& targets) {
  if (targets.size() != sys.n)
    throw DimensionError("expected " + std::to_string(sys.n) + " target coefficients, got " +
                         std::to_string(targets.size()));
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (targets[i].rows() != sys.s || targets[i].cols() != sys.s)
      throw DimensionError("Gamma_" + std::to_string(i + 1) + " is " + targets[i].shape() + ", expected " +
                           std::to_string(sys.s) + "x" + std::to_string(sys.s));
}

inline std::string rank_line(const char* what, std::size_t r, std::size_t req) {
  return std::string("rank ") + what + " = " + std::to_string(r) + " (required " + std::to_string(req) + ")";
}

// Throws if the linear solve left a residual: inconclusive when the rank test
// also failed.
template <Scalar T>
void check_solve(const AssignmentResult<T>& res, const Matrix<T>& a, std::optional<double> tol) {
  double scale = std::max(to_double(a.max_abs()) * to_double(res.unknowns.max_abs()) * static_cast<double>(a.cols()),
                          to_double(res.rhs.max_abs()));
  if (within_tolerance(res.residual_solve, tol, scale)) return;
  const bool inconclusive = !res.rank_test_passed();
  std::string msg = "linear system for the gain is inconsistent (residual " + to_string(res.residual_solve) + ")";
  if (inconclusive) msg += "; rank test failed; test inconclusive";
  throw UnsolvableError(msg, to_double(res.residual_solve), inconclusive);
}

// Reduces Z = F + G Q H and checks the result against the targets.
template <Scalar T>
void finish(AssignmentResult<T>& res, const BlockSystem<T>& sys, const TargetCoefficients<T>& targets,
            std::optional<double> tol) {
  BlockMatrix<T> z = closed_loop(sys, res.Q);
  auto red = hessenberg_to_frobenius(z, tol);
  res.S = red.S;
  res.Phi = red.Phi;
  res.diagnostics.insert(res.diagnostics.end(), red.diagnostics.begin(), red.diagnostics.end());
  const BlockMatrix<T> target_phi = frobenius_from_coeffs(targets);
  res.residual_similarity = max_abs_diff((red.S * z * red.S_inverse).matrix(), target_phi.matrix());
  double scale = similarity_scale(red.S.matrix(), z.matrix(), red.S_inverse.matrix());
  if (!within_tolerance(res.residual_similarity, tol, scale))
    throw NumericError("similarity check failed (residual " + to_string(res.residual_similarity) + ")",
                       to_double(res.residual_similarity));
}

template <Scalar T>
Matrix<T> stack_T(const std::vector<Matrix<T>>& ts) {
  const std::size_t s = ts.front().rows();
  Matrix<T> out(ts.size() * s, s);
  for (std::size_t i = 0; i < ts.size(); ++i) out.assign(i * s, 0, ts[i]);
  return out;
}

template <Scalar T>
AssignmentResult<T> start(const BlockSystem<T>& sys, const TargetCoefficients<T>& targets, Method m) {
  require_form(sys, {Form::frobenius});
  check_targets(sys, targets);
  AssignmentResult<T> res;
  res.method = m;
  res.T_hat = solve_T_hat(sys.coefficients(), targets);
  return res;
}

}  // namespace detail

// General path on a frobenius system: T^ = P^-1(A^ - Gamma^), w = col(vecc T_i),
// minimum-norm v with Theta v = w, Q = VecCR_s^-1(vecc^-1 v), S from the
// reduction of F + G Q H.
template <Scalar T>
AssignmentResult<T> solve_gain(const BlockSystem<T>& sys, const TargetCoefficients<T>& targets,
                               const AssignOptions& opt = {}) {
  auto res = detail::start(sys, targets, Method::general);
  const std::size_t s = sys.s;
  const Matrix<T> theta = theta_matrix(sys.F, sys.G, sys.H);
  res.required_rank = sys.n * s * s;

  res.rhs = Matrix<T>(sys.n * s * s, 1);
  for (std::size_t i = 0; i < sys.n; ++i) res.rhs.assign(i * s * s, 0, vecc(res.T_hat[i]));

  auto sol = min_norm_solve(theta, res.rhs);
  res.rank_solvability = sol.rank;
  res.unknowns = sol.x;
  res.residual_solve = sol.residual;
  res.diagnostics.push_back(detail::rank_line("Theta", sol.rank, res.required_rank));
  res.diagnostics.push_back(std::string("solve route: ") + route_name(sol.route));
  if (!res.rank_test_passed()) res.diagnostics.push_back("rank test failed; accepted only if the solve is consistent");
  detail::check_solve(res, theta, opt.tol);

  BlockMatrix<T> row(vecc_inverse(sol.x, s, sys.m * sys.k * s), s);
  res.Q = unroll_inverse(row, Unroll::CR, sys.m, sys.k).matrix();
  detail::finish(res, sys, targets, opt.tol);
  return res;
}

// Scalar-H path: Omega V = T^ with V = VecCC_s Q.
template <Scalar T>
AssignmentResult<T> solve_gain_scalar_h(const BlockSystem<T>& sys, const TargetCoefficients<T>& targets,
                                        const AssignOptions& opt = {}) {
  if (!scalar_core(sys.H)) throw PreconditionError("scalar_h requires every block of H to be a scalar matrix");
  auto res = detail::start(sys, targets, Method::scalar_h);
  const Matrix<T> omega = omega_matrix(sys.F, sys.G, sys.H);
  res.required_rank = sys.n * sys.s;
  res.rhs = detail::stack_T(res.T_hat);

  auto sol = min_norm_solve(omega, res.rhs);
  res.rank_solvability = sol.rank;
  res.unknowns = sol.x;
  res.residual_solve = sol.residual;
  res.diagnostics.push_back(detail::rank_line("Omega", sol.rank, res.required_rank));
  res.diagnostics.push_back(std::string("solve route: ") + route_name(sol.route));
  detail::check_solve(res, omega, opt.tol);

  res.Q = unroll_inverse(BlockMatrix<T>(sol.x, sys.s), Unroll::CC, sys.m, sys.k).matrix();
  detail::finish(res, sys, targets, opt.tol);
  return res;
}

// Scalar-FG path: X Xi = Y with X = VecCR_s Q, Y = [T_1 ... T_n]; solved as
// Xi^T X^T = Y^T for the minimum-norm X.
template <Scalar T>
AssignmentResult<T> solve_gain_scalar_fg(const BlockSystem<T>& sys, const TargetCoefficients<T>& targets,
                                         const AssignOptions& opt = {}) {
  if (!scalar_core(sys.F) || !scalar_core(sys.G))
    throw PreconditionError("scalar_fg requires every block of F and G to be a scalar matrix");
  auto res = detail::start(sys, targets, Method::scalar_fg);
  const Matrix<T> xi_t = xi_matrix(sys.F, sys.G, sys.H).transpose();
  res.required_rank = sys.n * sys.s;
  Matrix<T> y(sys.s, sys.n * sys.s);
  for (std::size_t i = 0; i < sys.n; ++i) y.assign(0, i * sys.s, res.T_hat[i]);
  res.rhs = y.transpose();

  auto sol = min_norm_solve(xi_t, res.rhs);
  res.rank_solvability = sol.rank;
  res.unknowns = sol.x;
  res.residual_solve = sol.residual;
  res.diagnostics.push_back(detail::rank_line("Xi", sol.rank, res.required_rank));
  res.diagnostics.push_back(std::string("solve route: ") + route_name(sol.route));
  detail::check_solve(res, xi_t, opt.tol);

  res.Q = unroll_inverse(BlockMatrix<T>(sol.x.transpose(), sys.s), Unroll::CR, sys.m, sys.k).matrix();
  detail::finish(res, sys, targets, opt.tol);
  return res;
}

// Scalar-all path: Omega = Omega0 (x) I, so V = (Omega0^+ (x) I) T^.
template <Scalar T>
AssignmentResult<T> solve_gain_scalar_all(const BlockSystem<T>& sys, const TargetCoefficients<T>& targets,
                                          const AssignOptions& opt = {}) {
  auto res = detail::start(sys, targets, Method::scalar_all);
  const Matrix<T> omega0 = omega0_matrix(sys);
  const Matrix<T> eye = Matrix<T>::identity(sys.s);
  res.required_rank = sys.n;
  res.rhs = detail::stack_T(res.T_hat);

  auto pinv = min_norm_solve(omega0, Matrix<T>::identity(sys.n));
  res.rank_solvability = pinv.rank;
  res.unknowns = kron(pinv.x, eye) * res.rhs;
  const Matrix<T> omega = kron(omega0, eye);
  res.residual_solve = (omega * res.unknowns - res.rhs).max_abs();
  res.diagnostics.push_back(detail::rank_line("Omega0", pinv.rank, res.required_rank));
  res.diagnostics.push_back(std::string("solve route: ") + route_name(pinv.route));
  detail::check_solve(res, omega, opt.tol);

  res.Q = unroll_inverse(BlockMatrix<T>(res.unknowns, sys.s), Unroll::CC, sys.m, sys.k).matrix();
  detail::finish(res, sys, targets, opt.tol);
  return res;
}

// First structurally applicable path: scalar_all, scalar_h, scalar_fg, general.
template <Scalar T>
Method select_method(const BlockSystem<T>& sys) {
  const bool f = scalar_core(sys.F).has_value();
  const bool g = scalar_core(sys.G).has_value();
  const bool h = scalar_core(sys.H).has_value();
  if (f && g && h) return Method::scalar_all;
  if (h) return Method::scalar_h;
  if (f && g) return Method::scalar_fg;
  return Method::general;
}

template <Scalar T>
AssignmentResult<T> solve_frobenius(const BlockSystem<T>& sys, const TargetCoefficients<T>& targets,
                                    const AssignOptions& opt = {}) {
  Method m = opt.method == Method::automatic ? select_method(sys) : opt.method;
  switch (m) {
    case Method::scalar_all: return solve_gain_scalar_all(sys, targets, opt);
    case Method::scalar_h: return solve_gain_scalar_h(sys, targets, opt);
    case Method::scalar_fg: return solve_gain_scalar_fg(sys, targets, opt);
    default: return solve_gain(sys, targets, opt);
  }
}

// Hessenberg input: reduce F~ by S~, solve on the transformed frobenius system,
// return R = S S~ with R (F~ + G~ Q H~) R^-1 = Phi.
template <Scalar T>
AssignmentResult<T> solve_gain_hessenberg(const BlockSystem<T>& sys, const TargetCoefficients<T>& targets,
                                          const AssignOptions& opt = {}) {
  detail::check_targets(sys, targets);
  auto tr = transform_hessenberg(sys, opt.tol);
  auto res = solve_frobenius(tr.system, targets, opt);
  res.diagnostics.insert(res.diagnostics.begin(), tr.reduction.diagnostics.begin(), tr.reduction.diagnostics.end());
  res.diagnostics.push_back(detail::rank_line("Theta^ (untransformed)", rank(theta_matrix(sys.F, sys.G, sys.H)),
                                              sys.n * sys.s * sys.s));
  res.S_tilde = tr.reduction.S;
  res.S = res.S * tr.reduction.S;

  const BlockMatrix<T> z = closed_loop(sys, res.Q);
  const Matrix<T> r_inverse = block_lower_inverse(res.S.matrix(), sys.s);
  res.residual_similarity =
      max_abs_diff(Matrix<T>(res.S.matrix() * z.matrix() * r_inverse), frobenius_from_coeffs(targets).matrix());
  if (!within_tolerance(res.residual_similarity, opt.tol,
                        detail::similarity_scale(res.S.matrix(), z.matrix(), r_inverse)))
    throw NumericError("similarity check failed for R (residual " + to_string(res.residual_similarity) + ")",
                       to_double(res.residual_similarity));
  return res;
}

// Entry point: dispatches on the declared form.
template <Scalar T>
AssignmentResult<T> assign(const BlockSystem<T>& sys, const TargetCoefficients<T>& targets,
                           const AssignOptions& opt = {}) {
  switch (sys.form) {
    case Form::frobenius: return solve_frobenius(sys, targets, opt);
    case Form::hessenberg: return solve_gain_hessenberg(sys, targets, opt);
    default: throw PreconditionError("synthesis requires a frobenius or hessenberg system");
  }
}

}  // namespace amca
