// amca: static output-feedback synthesis for block systems.
//
//   amca check SYSTEM
//   amca assign SYSTEM --targets FILE [--method M] [--exact] [--tol X]
//   amca assign-solvents SYSTEM --targets FILE
//   amca reduce SYSTEM
//   amca verify SYSTEM --gain FILE --targets FILE [--charpoly]
//   amca ode2ss ODE
//
// Exit codes: 0 success, 2 rank/solvability failure, 3 input error, 4 numeric failure.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <amca/cli/commands.hpp>

int main(int argc, char** argv) {
  CLI::App app{"Block-matrix coefficient assignment by static output feedback"};
  app.require_subcommand(1);

  amca::cli::CommandOptions opts;
  std::string method = "auto";
  std::string output;
  double tol = 0.0;

  const std::map<std::string, std::string> commands = {
      {"check", "rank test for solvability"},
      {"assign", "synthesize Q for target coefficients"},
      {"assign-solvents", "synthesize Q for prescribed left solvents"},
      {"reduce", "reduce F to lower block Frobenius form"},
      {"verify", "check a gain against target coefficients"},
      {"ode2ss", "convert a higher-order block ODE to state space"}};

  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", opts.system_path, name == "ode2ss" ? "ODE file" : "system file")
        ->required()
        ->check(CLI::ExistingFile);
    if (name == "assign" || name == "assign-solvents" || name == "verify")
      sub->add_option("--targets", opts.targets_path, "targets file (gammas or solvents)")
          ->required()
          ->check(CLI::ExistingFile);
    if (name == "verify") {
      sub->add_option("--gain", opts.gain_path, "gain file ({\"Q\": ...} or an assign result)")
          ->required()
          ->check(CLI::ExistingFile);
      sub->add_flag("--charpoly", opts.charpoly, "also compare characteristic polynomials");
    }
    if (name == "assign" || name == "assign-solvents")
      sub->add_option("--method", method, "auto|general|scalar-h|scalar-fg|scalar-all")
          ->check(CLI::IsMember({"auto", "general", "scalar-h", "scalar-fg", "scalar-all"}));
    sub->add_flag("--exact", opts.exact, "exact rational arithmetic");
    sub->add_option("--tol", tol, "residual tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--output", output, "write the result here instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : amca::cli::ExitCode::bad_input;
  }

  CLI::App* sub = app.get_subcommands().front();
  opts.method = *amca::parse_method(method);
  if (sub->count("--tol")) opts.tol = tol;

  amca::cli::Outcome out = amca::cli::run(sub->get_name(), opts);
  const std::string text = out.output.dump(2) + "\n";
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(output);
    if (!f) {
      std::cerr << "cannot write " << output << "\n";
      return amca::cli::ExitCode::bad_input;
    }
    f << text;
  }
  if (out.output.contains("error")) std::cerr << "amca: " << out.output["error"].get<std::string>() << "\n";
  return out.exit_code;
}
