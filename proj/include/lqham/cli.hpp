#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lqham/hamiltonian.hpp"
#include "lqham/oracle.hpp"
#include "lqham/synthesis.hpp"

namespace lqham {

struct Tolerances {
  double identities = 1e-8;
  double trajectory = 1e-8;
  double containment = 1e-7;
};

struct RunReport {
  SynthesisResult synthesis;
  IdentityReport identities;
  std::optional<ResidualReport> hamiltonian;
  std::optional<SubspaceComparison> oracle;
  Tolerances tolerances;

  /// Every evaluated residual within its tolerance, and the oracle dimensions
  /// agree when the oracle ran.
  bool pass() const;
};

/// Synthesis plus identity residuals.
RunReport run_solve(const ProblemInstance& inst, const Tolerances& tol = {});

/// Synthesis, the (x, p, u) trajectory for `params` checked against the
/// Hamiltonian equations, and optionally the null-space comparison.
RunReport run_verify(const ProblemInstance& inst, const ModeParams& params,
                     bool with_oracle, const Tolerances& tol = {});

/// Report document in the same nested-array text format as instance files.
std::string serialize_report(const RunReport& report);

/// Comma-delimited table with header k,x0..,p0..[,u0..] and one row per k.
std::string trajectory_table(const Trajectory& traj);

/// Parses "1,-0.5,2" into a vector. Throws InvalidArgument on bad tokens.
Vector parse_real_list(const std::string& text);

/// Entry point behind the lqham executable. Returns the process exit status:
/// 0 on pass, 1 when a verdict fails, 2 on any error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace lqham
