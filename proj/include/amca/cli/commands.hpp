#pragma once

#include <complex>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "../amca.hpp"
#include "json_io.hpp"

namespace amca::cli {

enum ExitCode : int { ok = 0, unsolvable = 2, bad_input = 3, numeric_failure = 4 };

struct CommandOptions {
  std::string system_path;
  std::string targets_path;
  std::string gain_path;
  Method method = Method::automatic;
  bool exact = false;
  std::optional<double> tol;
  bool charpoly = false;
};

struct Outcome {
  json output;
  int exit_code = ExitCode::ok;
};

namespace detail {

template <Scalar T>
json assignment_json(const AssignmentResult<T>& r) {
  json out = {{"solvable", r.rank_test_passed()},
              {"rank", r.rank_solvability},
              {"required_rank", r.required_rank},
              {"method", method_name(r.method)},
              {"Q", write_matrix(r.Q)},
              {"S", write_matrix(r.S.matrix())},
              {"Phi", write_matrix(r.Phi.matrix())},
              {"T_hat", write_matrix_list(r.T_hat)},
              {"residual_solve", write_scalar(r.residual_solve)},
              {"residual_similarity", write_scalar(r.residual_similarity)},
              {"diagnostics", write_strings(r.diagnostics)}};
  if (r.S_tilde) out["S_tilde"] = write_matrix(r.S_tilde->matrix());
  return out;
}

template <Scalar T>
Outcome check(const CommandOptions& o) {
  auto sys = read_system<T>(load_json(o.system_path));
  auto sv = amca_solvable(sys);
  json out = {{"command", "check"},
              {"form", form_name(sys.form)},
              {"solvable", sv.solvable},
              {"rank", sv.rank},
              {"required_rank", sv.required},
              {"mk_ge_n", sv.mk_ge_n}};
  if (sys.form == Form::hessenberg) out["rank_theta_hat"] = rank(build_theta_hat(sys));
  if (!sv.mk_ge_n) out["diagnostics"] = json::array({"mk < n: the rank condition cannot hold"});
  return {out, sv.solvable ? ExitCode::ok : ExitCode::unsolvable};
}

template <Scalar T>
Outcome assign(const CommandOptions& o) {
  auto sys = read_system<T>(load_json(o.system_path));
  auto gammas = read_targets<T>(load_json(o.targets_path), TargetKind::gammas, sys.n, sys.s);
  auto res = amca::assign(sys, gammas, AssignOptions{o.method, o.tol});
  json out = assignment_json(res);
  out["command"] = "assign";
  return {out, ExitCode::ok};
}

template <Scalar T>
Outcome assign_solvents(const CommandOptions& o) {
  auto sys = read_system<T>(load_json(o.system_path));
  auto ls = read_targets<T>(load_json(o.targets_path), TargetKind::solvents, sys.n, sys.s);
  SolventSet<T> ss(ls, o.tol);
  auto res = amca::assign_solvents(sys, ss, AssignOptions{o.method, o.tol});
  json out = assignment_json(res.result);
  out["command"] = "assign-solvents";
  out["gammas"] = write_matrix_list(res.gammas);
  json resid = json::array();
  for (const auto& r : res.solvent_residuals) resid.push_back(write_scalar(r));
  out["solvent_residuals"] = resid;
  if (ss.spectrum) {
    json spec = json::array();
    for (const auto& z : *ss.spectrum) spec.push_back(json::array({z.real(), z.imag()}));
    out["spectrum"] = spec;
  } else {
    out["spectrum"] = nullptr;
  }
  return {out, ExitCode::ok};
}

template <Scalar T>
Outcome reduce(const CommandOptions& o) {
  auto sys = read_system<T>(load_json(o.system_path));
  auto red = hessenberg_to_frobenius(sys.F, o.tol);
  return {{{"command", "reduce"},
           {"S", write_matrix(red.S.matrix())},
           {"Phi", write_matrix(red.Phi.matrix())},
           {"residual", write_scalar(red.residual)},
           {"diagnostics", write_strings(red.diagnostics)}},
          ExitCode::ok};
}

template <Scalar T>
Outcome verify(const CommandOptions& o) {
  auto sys = read_system<T>(load_json(o.system_path));
  json gain = load_json(o.gain_path);
  Matrix<T> q = read_gain<T>(gain, sys.m * sys.s, sys.k * sys.s, sys.s);
  auto gammas = read_targets<T>(load_json(o.targets_path), TargetKind::gammas, sys.n, sys.s);
  BlockMatrix<T> z = closed_loop(sys, q);
  Matrix<T> s;
  if (gain.contains("S"))
    s = read_matrix<T>(gain["S"], sys.n * sys.s, sys.n * sys.s, sys.s, "S");
  else
    s = hessenberg_to_frobenius(z, o.tol).S.matrix();
  const Matrix<T> phi = frobenius_from_coeffs(gammas).matrix();
  auto chk = verify_similarity(s, z.matrix(), phi, o.tol);
  json out = {{"command", "verify"}, {"ok", chk.ok}, {"residual_similarity", write_scalar(chk.residual)}, {"S", write_matrix(s)}};
  bool ok = chk.ok;
  if (o.charpoly) {
    auto a = char_poly(z.matrix());
    auto b = char_poly(phi);
    T diff(0);
    for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, abs_value(T(a[i] - b[i])));
    double scale = 1.0;
    for (const auto& c : b) scale = std::max(scale, to_double(abs_value(c)));
    bool agree = within_tolerance(diff, o.tol, scale);
    json cp = json::array(), tp = json::array();
    for (const auto& c : a) cp.push_back(write_scalar(c));
    for (const auto& c : b) tp.push_back(write_scalar(c));
    out["charpoly"] = {{"closed_loop", cp}, {"target", tp}, {"agree", agree}};
    ok = ok && agree;
  }
  return {out, ok ? ExitCode::ok : ExitCode::numeric_failure};
}

template <Scalar T>
Outcome ode2ss(const CommandOptions& o) {
  auto ode = read_ode<T>(load_json(o.system_path));
  return {write_system(ode_to_state_space(ode)), ExitCode::ok};
}

template <Scalar T>
Outcome dispatch(const std::string& command, const CommandOptions& o) {
  if (command == "check") return check<T>(o);
  if (command == "assign") return assign<T>(o);
  if (command == "assign-solvents") return assign_solvents<T>(o);
  if (command == "reduce") return reduce<T>(o);
  if (command == "verify") return verify<T>(o);
  if (command == "ode2ss") return ode2ss<T>(o);
  throw SchemaError("unknown command '" + command + "'");
}

inline Outcome failure(int code, const std::string& kind, const std::string& msg) {
  return {{{"error", msg}, {"kind", kind}}, code};
}

}  // namespace detail

// Runs one command; every failure becomes an error document with its exit code:
// 2 rank/solvability, 3 input or structural precondition, 4 numeric.
inline Outcome run(const std::string& command, const CommandOptions& o) {
  try {
    return o.exact ? detail::dispatch<Rational>(command, o) : detail::dispatch<double>(command, o);
  } catch (const UnsolvableError& e) {
    Outcome out = detail::failure(ExitCode::unsolvable, "unsolvable", e.what());
    out.output["residual"] = e.residual();
    out.output["inconclusive"] = e.inconclusive();
    return out;
  } catch (const SolventSetError& e) {
    return detail::failure(ExitCode::bad_input, "solvent-set", e.what());
  } catch (const SchemaError& e) {
    return detail::failure(ExitCode::bad_input, "schema", e.what());
  } catch (const DimensionError& e) {
    return detail::failure(ExitCode::bad_input, "dimension", e.what());
  } catch (const PreconditionError& e) {
    return detail::failure(ExitCode::bad_input, "precondition", e.what());
  } catch (const NumericError& e) {
    Outcome out = detail::failure(ExitCode::numeric_failure, "numeric", e.what());
    out.output["residual"] = e.residual();
    return out;
  } catch (const std::exception& e) {
    return detail::failure(ExitCode::bad_input, "input", e.what());
  }
}

}  // namespace amca::cli
