#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "lqham/matrix.hpp"
#include "lqham/synthesis.hpp"

namespace lqham {

/// Free vectors of the solution family: α seeds the forward mode at k = 0,
/// β the backward mode at k = kf.
struct ModeParams {
  Vector alpha;
  Vector beta;
};

/// v_{k+1} = A₊v_k and A₊ᵀw_{k+1} = w_k on 0..kf.
struct ModeTrajectory {
  std::vector<Vector> v;
  std::vector<Vector> w;
};

/// State, costate and input sequences. x and p have kf + 1 entries for the
/// state/costate form and kf entries for the form that also carries u; u is
/// empty when absent.
struct Trajectory {
  std::vector<Vector> x;
  std::vector<Vector> p;
  std::vector<Vector> u;

  bool has_input() const { return !u.empty(); }
};

/// Maximum over k of each equation's residual norm, divided by
/// max(1, largest vector norm in the trajectory).
struct ResidualReport {
  double state = 0.0;         // x_{k+1} − Ax_k − Bu_k
  double costate = 0.0;       // −Aᵀp_{k+1} − Qx_k + p_k − Su_k
  double stationarity = 0.0;  // −Bᵀp_{k+1} − Sᵀx_k − Ru_k

  double max() const;
};

/// v_k = A₊ᵏα forward from α; w_k = (A₊ᵀ)^{kf−k}β backward from w_{kf} = β.
/// No inverse of A₊ is ever needed.
ModeTrajectory propagate_modes(const ModeParams& params,
                               const SynthesisResult& syn, std::size_t kf);

/// x = v + Ww, p = P₊v + (P₊W − I)w.
std::pair<Vector, Vector> couple(std::span<const double> v,
                                 std::span<const double> w,
                                 const SynthesisResult& syn);

/// Inverse of couple: w = P₊x − p, v = (I − WP₊)x + Wp.
std::pair<Vector, Vector> decouple(std::span<const double> x,
                                   std::span<const double> p,
                                   const SynthesisResult& syn);

/// Decouples every (x_k, p_k) of a trajectory.
ModeTrajectory decouple_trajectory(const Trajectory& traj,
                                   const SynthesisResult& syn);

/// u_k = −K₊v_k + K̄₊w_{k+1}.
Vector input_from_modes(std::span<const double> v_k,
                        std::span<const double> w_next,
                        const SynthesisResult& syn);

/// [x_k; p_k] = [I; P₊]A₊ᵏα + [W; P₊W − I](A₊ᵀ)^{kf−k}β for 0 ≤ k ≤ kf.
Trajectory trajectory_xp(const ProblemInstance& inst,
                         const SynthesisResult& syn, const ModeParams& params);

/// [x_k; p_k; u_k] = [I; P₊; −K₊]A₊ᵏα + [WA₊ᵀ; (P₊W − I)A₊ᵀ; K̄₊](A₊ᵀ)^{kf−k−1}β
/// for 0 ≤ k ≤ kf − 1. Throws HorizonTooShort when kf = 0.
Trajectory trajectory_xpu(const ProblemInstance& inst,
                          const SynthesisResult& syn, const ModeParams& params);

/// Appends x_{kf}, p_{kf} from the state/costate form so the Hamiltonian
/// equations can be evaluated at k = kf − 1.
Trajectory with_terminal_point(Trajectory xpu, const Trajectory& xp);

/// Substitutes a trajectory into the three Hamiltonian equations for
/// 0 ≤ k ≤ kf − 1. Requires kf + 1 state/costate entries and kf inputs;
/// throws MissingInput when u is absent.
ResidualReport hamiltonian_residual(const ProblemInstance& inst,
                                    const Trajectory& traj);

/// Largest ‖v_{k+1} − A₊v_k‖ and ‖A₊ᵀw_{k+1} − w_k‖ over k, relative to
/// max(1, largest mode norm).
std::pair<double, double> mode_recursion_residuals(const ModeTrajectory& modes,
                                                   const SynthesisResult& syn);

}  // namespace lqham
