#pragma once

#include <cstddef>

#include "lqham/hamiltonian.hpp"
#include "lqham/matrix.hpp"
#include "lqham/synthesis.hpp"

namespace lqham {

/// Upper bound on stacked unknowns accepted by the dense oracle.
inline constexpr std::size_t kOracleMaxUnknowns = 2000;

/// Default relative threshold for null-space extraction and rank decisions.
inline constexpr double kOracleNullTol = 1e-9;

/// All Hamiltonian constraints over the horizon as one homogeneous system
/// M·z = 0.
///
/// Unknowns z = (x_0..x_kf, p_0..p_kf, u_0..u_{kf−1}). Rows come in blocks of
/// 2n + m per time step k, in equation order:
///   state         +I·x_{k+1} − A·x_k − B·u_k
///   costate       −Aᵀ·p_{k+1} − Q·x_k + I·p_k − S·u_k
///   stationarity  −Bᵀ·p_{k+1} − Sᵀ·x_k − R·u_k
struct StackedSystem {
  Matrix M;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t kf = 0;

  std::size_t x_offset(std::size_t k) const { return k * n; }
  std::size_t p_offset(std::size_t k) const { return (kf + 1 + k) * n; }
  std::size_t u_offset(std::size_t k) const { return 2 * n * (kf + 1) + k * m; }
  std::size_t unknowns() const { return 2 * n * (kf + 1) + m * kf; }
};

struct SubspaceComparison {
  std::size_t oracle_dim = 0;
  std::size_t param_rank = 0;
  /// max over parametrization columns c of ‖c − NNᵀc‖ / max(1, ‖c‖).
  double containment_residual = 0.0;
  bool dims_match = false;
};

/// Number of stacked unknowns for an instance.
std::size_t stacked_unknowns(const ProblemInstance& inst);

/// Throws TooLarge above kOracleMaxUnknowns.
StackedSystem build_stacked_system(const ProblemInstance& inst);

/// Flattens a trajectory with kf + 1 states/costates and kf inputs into the
/// stacked variable layout.
Vector stack_trajectory(const ProblemInstance& inst, const Trajectory& traj);

/// Inverse of stack_trajectory.
Trajectory unstack_trajectory(const ProblemInstance& inst,
                              std::span<const double> z);

/// Column j < n is the stacked trajectory for α = e_j, β = 0; column n + j is
/// the one for α = 0, β = e_j. States and costates run through k = kf.
Matrix parametrization_matrix(const ProblemInstance& inst,
                              const SynthesisResult& syn);

/// Orthonormal basis of every admissible trajectory, i.e. null(M).
NullSpaceBasis solution_space(const ProblemInstance& inst,
                              double tol = kOracleNullTol);

SubspaceComparison compare_solution_sets(const ProblemInstance& inst,
                                         const SynthesisResult& syn,
                                         double tol = kOracleNullTol);

}  // namespace lqham
