#include "lqham/oracle.hpp"

#include <algorithm>
#include <string>

#include "lqham/error.hpp"

namespace lqham {

std::size_t stacked_unknowns(const ProblemInstance& inst) {
  return 2 * inst.n * (inst.kf + 1) + inst.m * inst.kf;
}

StackedSystem build_stacked_system(const ProblemInstance& inst) {
  const std::size_t unknowns = stacked_unknowns(inst);
  if (unknowns > kOracleMaxUnknowns) {
    throw Error(ErrorKind::kTooLarge,
                "oracle: " + std::to_string(unknowns) +
                    " stacked unknowns exceeds the limit of " +
                    std::to_string(kOracleMaxUnknowns));
  }
  const std::size_t n = inst.n;
  const std::size_t m = inst.m;
  StackedSystem sys;
  sys.n = n;
  sys.m = m;
  sys.kf = inst.kf;
  sys.M = Matrix((2 * n + m) * inst.kf, unknowns);

  const Matrix I = Matrix::identity(n);
  const Matrix At = inst.A.transpose();
  const Matrix Bt = inst.B.transpose();
  const Matrix St = inst.S.transpose();
  for (std::size_t k = 0; k < inst.kf; ++k) {
    const std::size_t r_state = k * (2 * n + m);
    const std::size_t r_costate = r_state + n;
    const std::size_t r_stat = r_costate + n;

    sys.M.add_block(r_state, sys.x_offset(k + 1), I);
    sys.M.add_block(r_state, sys.x_offset(k), inst.A, -1.0);
    sys.M.add_block(r_state, sys.u_offset(k), inst.B, -1.0);

    sys.M.add_block(r_costate, sys.p_offset(k + 1), At, -1.0);
    sys.M.add_block(r_costate, sys.x_offset(k), inst.Q, -1.0);
    sys.M.add_block(r_costate, sys.p_offset(k), I);
    sys.M.add_block(r_costate, sys.u_offset(k), inst.S, -1.0);

    sys.M.add_block(r_stat, sys.p_offset(k + 1), Bt, -1.0);
    sys.M.add_block(r_stat, sys.x_offset(k), St, -1.0);
    sys.M.add_block(r_stat, sys.u_offset(k), inst.R, -1.0);
  }
  return sys;
}

Vector stack_trajectory(const ProblemInstance& inst, const Trajectory& traj) {
  const std::size_t kf = inst.kf;
  if (traj.x.size() != kf + 1 || traj.p.size() != kf + 1 ||
      traj.u.size() != kf) {
    throw Error(ErrorKind::kDimensionMismatch,
                "stack_trajectory: need kf + 1 states/costates and kf inputs");
  }
  Vector z;
  z.reserve(stacked_unknowns(inst));
  for (const Vector& x : traj.x) z.insert(z.end(), x.begin(), x.end());
  for (const Vector& p : traj.p) z.insert(z.end(), p.begin(), p.end());
  for (const Vector& u : traj.u) z.insert(z.end(), u.begin(), u.end());
  if (z.size() != stacked_unknowns(inst)) {
    throw Error(ErrorKind::kDimensionMismatch,
                "stack_trajectory: vector lengths disagree with n, m");
  }
  return z;
}

Trajectory unstack_trajectory(const ProblemInstance& inst,
                              std::span<const double> z) {
  if (z.size() != stacked_unknowns(inst)) {
    throw Error(ErrorKind::kDimensionMismatch,
                "unstack_trajectory: wrong stacked length");
  }
  const std::size_t n = inst.n;
  const std::size_t m = inst.m;
  Trajectory traj;
  auto take = [&](std::size_t offset, std::size_t len) {
    return Vector(z.begin() + static_cast<std::ptrdiff_t>(offset),
                  z.begin() + static_cast<std::ptrdiff_t>(offset + len));
  };
  for (std::size_t k = 0; k <= inst.kf; ++k) traj.x.push_back(take(k * n, n));
  for (std::size_t k = 0; k <= inst.kf; ++k) {
    traj.p.push_back(take((inst.kf + 1 + k) * n, n));
  }
  for (std::size_t k = 0; k < inst.kf; ++k) {
    traj.u.push_back(take(2 * n * (inst.kf + 1) + k * m, m));
  }
  return traj;
}

Matrix parametrization_matrix(const ProblemInstance& inst,
                              const SynthesisResult& syn) {
  const std::size_t n = inst.n;
  Matrix out(stacked_unknowns(inst), 2 * n);
  for (std::size_t j = 0; j < 2 * n; ++j) {
    ModeParams params{Vector(n, 0.0), Vector(n, 0.0)};
    if (j < n) {
      params.alpha[j] = 1.0;
    } else {
      params.beta[j - n] = 1.0;
    }
    Trajectory traj = trajectory_xp(inst, syn, params);
    const ModeTrajectory modes = propagate_modes(params, syn, inst.kf);
    for (std::size_t k = 0; k < inst.kf; ++k) {
      traj.u.push_back(input_from_modes(modes.v[k], modes.w[k + 1], syn));
    }
    out.set_col(j, stack_trajectory(inst, traj));
  }
  return out;
}

NullSpaceBasis solution_space(const ProblemInstance& inst, double tol) {
  return null_space_basis(build_stacked_system(inst).M, tol);
}

SubspaceComparison compare_solution_sets(const ProblemInstance& inst,
                                         const SynthesisResult& syn,
                                         double tol) {
  const NullSpaceBasis null = solution_space(inst, tol);
  const Matrix param = parametrization_matrix(inst, syn);

  SubspaceComparison cmp;
  cmp.oracle_dim = null.dim;
  cmp.param_rank = numerical_rank(param, tol);
  cmp.dims_match = cmp.oracle_dim == cmp.param_rank;

  const Matrix Nt = null.basis.transpose();
  for (std::size_t j = 0; j < param.cols(); ++j) {
    const Vector c = param.col(j);
    const Vector projected = null.basis * (Nt * c);
    cmp.containment_residual =
        std::max(cmp.containment_residual,
                 norm(c - projected) / std::max(1.0, norm(c)));
  }
  return cmp;
}

}  // namespace lqham
