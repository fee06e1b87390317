#pragma once

#include <cstddef>

#include "lqham/matrix.hpp"

namespace lqham {

/// Data of the Hamiltonian system
///
///   x_{k+1}    = A x_k + B u_k
///   −Aᵀp_{k+1} = Q x_k − p_k + S u_k
///   −Bᵀp_{k+1} = Sᵀx_k + R u_k,      0 ≤ k ≤ kf − 1.
///
/// R may be singular.
struct ProblemInstance {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t kf = 0;
  Matrix A;  // n×n
  Matrix B;  // n×m
  Matrix Q;  // n×n, symmetric
  Matrix R;  // m×m, symmetric
  Matrix S;  // n×m

  /// Throws InstanceInvalid when shapes disagree with (n, m), Q or R is not
  /// symmetric to 1e-10 relative, or [[Q, S], [Sᵀ, R]] is not PSD to 1e-9
  /// (relative to its Frobenius norm). Inputs are never symmetrized.
  void validate() const;
};

/// Builds and validates an instance.
ProblemInstance make_instance(std::size_t kf, Matrix A, Matrix B, Matrix Q,
                              Matrix R, Matrix S);

struct DareOptions {
  double tol = 1e-12;
  std::size_t max_iter = 10000;
};

struct DareSolution {
  Matrix P;
  std::size_t iterations = 0;
  /// ‖P − F(P)‖_F / max(1, ‖P‖_F) with F the Riccati right-hand side.
  double residual = 0.0;
};

struct SynthesisResult {
  Matrix P_plus;     // n×n
  Matrix K_plus;     // m×n
  Matrix A_plus;     // n×n
  Matrix W;          // n×n
  Matrix Kbar_plus;  // m×n
  Matrix inner;      // m×m, R + BᵀP₊B
  std::size_t dare_iterations = 0;
  double dare_residual = 0.0;
};

/// Relative Frobenius residual ‖LHS − RHS‖_F / max(1, ‖LHS‖_F) of each
/// identity the decoupling transform depends on.
struct IdentityReport {
  double riccati_residual = 0.0;    // P₊ = F(P₊)
  double lyapunov_residual = 0.0;   // W = A₊WA₊ᵀ + B(R + BᵀP₊B)⁻¹Bᵀ
  double eqW_residual = 0.0;        // −W + BK̄₊ = −AWA₊ᵀ
  double property1_residual = 0.0;  // Q − P₊ − SK₊ = −AᵀP₊A₊
  double property2_residual = 0.0;  // −Aᵀ(P₊W − I) = QWA₊ᵀ − (P₊W − I)A₊ᵀ + SK̄₊

  double max() const;
};

/// R + BᵀPB.
Matrix inner_matrix(const ProblemInstance& inst, const Matrix& P);

/// Riccati right-hand side
/// F(P) = Q + AᵀPA − (AᵀPB + S)(R + BᵀPB)⁻¹(BᵀPA + Sᵀ).
Matrix riccati_rhs(const ProblemInstance& inst, const Matrix& P);

/// Fixed-point iteration P_{j+1} = F(P_j) from P_0 = Q, symmetrizing each
/// iterate, until the Riccati residual ‖F(P_j) − P_j‖_F / max(1, ‖P_j‖_F) is
/// at most tol.
///
/// Throws SingularInnerMatrix if R + BᵀP_jB is numerically singular,
/// NoConvergence after max_iter steps (or on overflow), and NotStabilizing
/// when the limit does not make A − BK₊ Schur-stable.
DareSolution solve_dare(const ProblemInstance& inst,
                        const DareOptions& options = {});

/// K₊ = (R + BᵀP₊B)⁻¹(BᵀP₊A + Sᵀ).
Matrix compute_gain(const ProblemInstance& inst, const Matrix& P_plus);

/// A₊ = A − BK₊.
Matrix compute_closed_loop(const ProblemInstance& inst, const Matrix& K_plus);

/// W from A₊WA₊ᵀ − W + B(R + BᵀP₊B)⁻¹Bᵀ = 0.
Matrix solve_lyapunov_W(const ProblemInstance& inst, const Matrix& P_plus,
                        const Matrix& A_plus, double tol = 1e-14);

/// K̄₊ = (R + BᵀP₊B)⁻¹(Bᵀ − BᵀP₊AWA₊ᵀ − SᵀWA₊ᵀ).
Matrix compute_kbar(const ProblemInstance& inst, const Matrix& P_plus,
                    const Matrix& W, const Matrix& A_plus);

/// Runs the whole chain P₊ → K₊ → A₊ → W → K̄₊.
SynthesisResult synthesize(const ProblemInstance& inst,
                           const DareOptions& options = {});

IdentityReport verify_identities(const ProblemInstance& inst,
                                 const SynthesisResult& result);

}  // namespace lqham
