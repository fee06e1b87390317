#include "lqham/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include <CLI11.hpp>

#include "lqham/error.hpp"
#include "lqham/instance_io.hpp"

namespace lqham {

namespace {

constexpr int kExitFail = 1;
constexpr int kExitError = 2;

std::string field(const char* name, double v) {
  return std::string("    \"") + name + "\": " + format_double(v);
}

std::string matrix_field(const char* name, const Matrix& m) {
  return std::string("    \"") + name + "\": " + format_matrix(m, 4);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += items[i];
    out += i + 1 < items.size() ? ",\n" : "\n";
  }
  return out;
}

void append_vector(std::string& row, const Vector& v) {
  for (double x : v) row += "," + format_double(x);
}

ModeParams read_params(const std::string& alpha, const std::string& beta,
                       std::size_t n) {
  ModeParams params{parse_real_list(alpha), parse_real_list(beta)};
  if (params.alpha.size() != n || params.beta.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch,
                "--alpha and --beta must have n = " + std::to_string(n) +
                    " entries");
  }
  return params;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    save_text(path, text);
  }
}

}  // namespace

bool RunReport::pass() const {
  if (!(identities.max() <= tolerances.identities)) return false;
  if (hamiltonian && !(hamiltonian->max() <= tolerances.trajectory)) {
    return false;
  }
  if (oracle && (!oracle->dims_match ||
                 !(oracle->containment_residual <= tolerances.containment))) {
    return false;
  }
  return true;
}

RunReport run_solve(const ProblemInstance& inst, const Tolerances& tol) {
  RunReport report;
  report.tolerances = tol;
  report.synthesis = synthesize(inst);
  report.identities = verify_identities(inst, report.synthesis);
  return report;
}

RunReport run_verify(const ProblemInstance& inst, const ModeParams& params,
                     bool with_oracle, const Tolerances& tol) {
  RunReport report = run_solve(inst, tol);
  const SynthesisResult& syn = report.synthesis;
  if (with_oracle && stacked_unknowns(inst) > kOracleMaxUnknowns) {
    // Refuse before doing trajectory work.
    build_stacked_system(inst);
  }
  const Trajectory xp = trajectory_xp(inst, syn, params);
  const Trajectory full =
      with_terminal_point(trajectory_xpu(inst, syn, params), xp);
  report.hamiltonian = hamiltonian_residual(inst, full);
  if (with_oracle) report.oracle = compare_solution_sets(inst, syn);
  return report;
}

std::string serialize_report(const RunReport& r) {
  const SynthesisResult& s = r.synthesis;
  std::string out = "{\n";
  out += std::string("  \"verdict\": \"") + (r.pass() ? "pass" : "fail") +
         "\",\n";
  out += "  \"tolerances\": {\n" +
         join({field("identities", r.tolerances.identities),
               field("trajectory", r.tolerances.trajectory),
               field("containment", r.tolerances.containment)}) +
         "  },\n";
  out += "  \"synthesis\": {\n" +
         join({"    \"dare_iterations\": " + std::to_string(s.dare_iterations),
               field("dare_residual", s.dare_residual),
               matrix_field("P_plus", s.P_plus),
               matrix_field("K_plus", s.K_plus),
               matrix_field("A_plus", s.A_plus), matrix_field("W", s.W),
               matrix_field("Kbar_plus", s.Kbar_plus),
               matrix_field("inner", s.inner)}) +
         "  },\n";
  const IdentityReport& id = r.identities;
  out += "  \"identities\": {\n" +
         join({field("riccati_residual", id.riccati_residual),
               field("lyapunov_residual", id.lyapunov_residual),
               field("eqW_residual", id.eqW_residual),
               field("property1_residual", id.property1_residual),
               field("property2_residual", id.property2_residual)}) +
         "  }";
  if (r.hamiltonian) {
    out += ",\n  \"hamiltonian\": {\n" +
           join({field("state", r.hamiltonian->state),
                 field("costate", r.hamiltonian->costate),
                 field("stationarity", r.hamiltonian->stationarity)}) +
           "  }";
  }
  if (r.oracle) {
    out += ",\n  \"oracle\": {\n" +
           join({"    \"oracle_dim\": " + std::to_string(r.oracle->oracle_dim),
                 "    \"param_rank\": " + std::to_string(r.oracle->param_rank),
                 field("containment_residual", r.oracle->containment_residual),
                 std::string("    \"dims_match\": ") +
                     (r.oracle->dims_match ? "true" : "false")}) +
           "  }";
  }
  out += "\n}\n";
  return out;
}

std::string trajectory_table(const Trajectory& traj) {
  const std::size_t n = traj.x.empty() ? 0 : traj.x.front().size();
  const std::size_t m = traj.u.empty() ? 0 : traj.u.front().size();
  std::string out = "k";
  for (std::size_t i = 0; i < n; ++i) out += ",x" + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i) out += ",p" + std::to_string(i);
  for (std::size_t i = 0; i < m; ++i) out += ",u" + std::to_string(i);
  out += "\n";
  for (std::size_t k = 0; k < traj.x.size(); ++k) {
    std::string row = std::to_string(k);
    append_vector(row, traj.x[k]);
    append_vector(row, traj.p[k]);
    if (traj.has_input()) append_vector(row, traj.u[k]);
    out += row + "\n";
  }
  return out;
}

Vector parse_real_list(const std::string& text) {
  Vector out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (token.empty() || end == token.c_str() || *end != '\0' ||
        !std::isfinite(v)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "invalid real '" + token + "' in list '" + text + "'");
    }
    out.push_back(v);
  }
  return out;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Structural matrices and solution families of singular "
               "discrete-time Hamiltonian systems"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  double tol = 1e-8;
  std::string alpha;
  std::string beta;
  std::string mode = "xpu";
  bool with_oracle = false;
  std::uint64_t seed = 1;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t kf = 0;

  CLI::App* solve = app.add_subcommand("solve", "Synthesize P+, K+, A+, W, K̄+ and check identities");
  solve->add_option("--input", input, "Instance file")->required();
  solve->add_option("--output", output, "Report file (default: stdout)");
  solve->add_option("--tol", tol, "Identity residual tolerance");

  CLI::App* traj = app.add_subcommand("trajectory", "Emit a trajectory table");
  traj->add_option("--input", input, "Instance file")->required();
  traj->add_option("--alpha", alpha, "Comma-separated α")->required();
  traj->add_option("--beta", beta, "Comma-separated β")->required();
  traj->add_option("--mode", mode, "xp (0..kf) or xpu (0..kf-1 with u)")
      ->check(CLI::IsMember({"xp", "xpu"}));
  traj->add_option("--output", output, "Table file (default: stdout)");

  CLI::App* verify = app.add_subcommand("verify", "End-to-end Hamiltonian check");
  verify->add_option("--input", input, "Instance file")->required();
  verify->add_option("--alpha", alpha, "Comma-separated α")->required();
  verify->add_option("--beta", beta, "Comma-separated β")->required();
  verify->add_flag("--with-oracle", with_oracle, "Also compare with null-space oracle");
  verify->add_option("--tol", tol, "Identity and trajectory residual tolerance");
  verify->add_option("--output", output, "Report file (default: stdout)");

  CLI::App* generate = app.add_subcommand("generate", "Write a seeded random instance");
  generate->add_option("--seed", seed, "RNG seed");
  generate->add_option("--n", n, "State dimension")->required()->check(CLI::PositiveNumber);
  generate->add_option("--m", m, "Input dimension")->required()->check(CLI::PositiveNumber);
  generate->add_option("--kf", kf, "Horizon")->required()->check(CLI::PositiveNumber);
  generate->add_option("--output", output, "Instance file (default: stdout)");

  std::vector<const char*> argv{"lqham"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitError;
  }

  try {
    Tolerances tols;
    tols.identities = tol;
    tols.trajectory = tol;
    if (*solve) {
      const RunReport report = run_solve(load_instance(input), tols);
      emit(serialize_report(report), output, out);
      return report.pass() ? 0 : kExitFail;
    }
    if (*traj) {
      const ProblemInstance inst = load_instance(input);
      const ModeParams params = read_params(alpha, beta, inst.n);
      if (mode == "xpu" && inst.kf == 0) {
        throw Error(ErrorKind::kHorizonTooShort,
                    "horizon too short: xpu needs kf >= 1");
      }
      const SynthesisResult syn = synthesize(inst);
      const Trajectory t = mode == "xp" ? trajectory_xp(inst, syn, params)
                                        : trajectory_xpu(inst, syn, params);
      emit(trajectory_table(t), output, out);
      return 0;
    }
    if (*verify) {
      const ProblemInstance inst = load_instance(input);
      const ModeParams params = read_params(alpha, beta, inst.n);
      const RunReport report = run_verify(inst, params, with_oracle, tols);
      emit(serialize_report(report), output, out);
      return report.pass() ? 0 : kExitFail;
    }
    if (*generate) {
      emit(serialize_instance(generate_instance(seed, n, m, kf)), output, out);
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace lqham
