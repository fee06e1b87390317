#include "lqham/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "lqham/error.hpp"
#include "lqham/lyapunov.hpp"

namespace lqham {

namespace {

void expect_shape(const Matrix& mat, std::size_t rows, std::size_t cols,
                  const char* name) {
  if (mat.rows() != rows || mat.cols() != cols) {
    throw Error(ErrorKind::kInstanceInvalid,
                std::string(name) + " must be " + std::to_string(rows) + "x" +
                    std::to_string(cols) + ", got " +
                    std::to_string(mat.rows()) + "x" +
                    std::to_string(mat.cols()));
  }
}

bool symmetric_to(const Matrix& mat, double tol) {
  return distance(mat, mat.transpose()) <=
         tol * std::max(1.0, mat.frobenius_norm());
}

// X = (R + BᵀPB)⁻¹·rhs, with singularity reported against the inner matrix.
Matrix solve_inner(const ProblemInstance& inst, const Matrix& P,
                   const Matrix& rhs) {
  try {
    return solve_linear(inner_matrix(inst, P), rhs);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kSingularMatrix) throw;
    throw Error(ErrorKind::kSingularInnerMatrix,
                "R + BᵀPB is numerically singular");
  }
}

double relative_residual(const Matrix& lhs, const Matrix& rhs) {
  return distance(lhs, rhs) / std::max(1.0, lhs.frobenius_norm());
}

}  // namespace

void ProblemInstance::validate() const {
  if (n == 0 || m == 0) {
    throw Error(ErrorKind::kInstanceInvalid, "n and m must be positive");
  }
  expect_shape(A, n, n, "A");
  expect_shape(B, n, m, "B");
  expect_shape(Q, n, n, "Q");
  expect_shape(R, m, m, "R");
  expect_shape(S, n, m, "S");
  if (!symmetric_to(Q, 1e-10)) {
    throw Error(ErrorKind::kInstanceInvalid, "Q is not symmetric");
  }
  if (!symmetric_to(R, 1e-10)) {
    throw Error(ErrorKind::kInstanceInvalid, "R is not symmetric");
  }
  Matrix compound(n + m, n + m);
  compound.set_block(0, 0, Q);
  compound.set_block(0, n, S);
  compound.set_block(n, 0, S.transpose());
  compound.set_block(n, n, R);
  const double psd_tol = 1e-9 * std::max(1.0, compound.frobenius_norm());
  if (!check_symmetric_psd(compound, 1e-10, psd_tol)) {
    throw Error(ErrorKind::kInstanceInvalid,
                "[[Q, S], [Sᵀ, R]] is not positive semidefinite");
  }
}

ProblemInstance make_instance(std::size_t kf, Matrix A, Matrix B, Matrix Q,
                              Matrix R, Matrix S) {
  ProblemInstance inst;
  inst.n = A.rows();
  inst.m = B.cols();
  inst.kf = kf;
  inst.A = std::move(A);
  inst.B = std::move(B);
  inst.Q = std::move(Q);
  inst.R = std::move(R);
  inst.S = std::move(S);
  inst.validate();
  return inst;
}

double IdentityReport::max() const {
  return std::max({riccati_residual, lyapunov_residual, eqW_residual,
                   property1_residual, property2_residual});
}

Matrix inner_matrix(const ProblemInstance& inst, const Matrix& P) {
  return inst.R + inst.B.transpose() * P * inst.B;
}

Matrix riccati_rhs(const ProblemInstance& inst, const Matrix& P) {
  const Matrix At = inst.A.transpose();
  const Matrix cross = inst.B.transpose() * P * inst.A + inst.S.transpose();
  return inst.Q + At * P * inst.A -
         cross.transpose() * solve_inner(inst, P, cross);
}

DareSolution solve_dare(const ProblemInstance& inst,
                        const DareOptions& options) {
  if (!(options.tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "solve_dare: tol must be > 0");
  }
  Matrix P = inst.Q;
  for (std::size_t j = 0; j < options.max_iter; ++j) {
    const Matrix next = riccati_rhs(inst, P);
    const double next_norm = next.frobenius_norm();
    if (!std::isfinite(next_norm)) {
      throw Error(ErrorKind::kNoConvergence,
                  "solve_dare: iterate overflowed at step " +
                      std::to_string(j + 1));
    }
    // ‖F(P_j) − P_j‖ is both the step and the Riccati residual of P_j.
    const double residual = relative_residual(P, next);
    if (residual <= options.tol) {
      if (!check_schur_stable(compute_closed_loop(inst, compute_gain(inst, P)))) {
        throw Error(ErrorKind::kNotStabilizing,
                    "solve_dare: converged P does not stabilize A − BK");
      }
      DareSolution sol;
      sol.P = std::move(P);
      sol.iterations = j;
      sol.residual = residual;
      return sol;
    }
    P = next.symmetrized();
  }
  throw Error(ErrorKind::kNoConvergence,
              "solve_dare: no convergence after " +
                  std::to_string(options.max_iter) + " iterations");
}

Matrix compute_gain(const ProblemInstance& inst, const Matrix& P_plus) {
  return solve_inner(inst, P_plus,
                     inst.B.transpose() * P_plus * inst.A + inst.S.transpose());
}

Matrix compute_closed_loop(const ProblemInstance& inst, const Matrix& K_plus) {
  return inst.A - inst.B * K_plus;
}

Matrix solve_lyapunov_W(const ProblemInstance& inst, const Matrix& P_plus,
                        const Matrix& A_plus, double tol) {
  const Matrix G = inst.B * solve_inner(inst, P_plus, inst.B.transpose());
  return solve_discrete_lyapunov(A_plus, G.symmetrized(), tol);
}

Matrix compute_kbar(const ProblemInstance& inst, const Matrix& P_plus,
                    const Matrix& W, const Matrix& A_plus) {
  const Matrix Bt = inst.B.transpose();
  const Matrix WAt = W * A_plus.transpose();
  return solve_inner(inst, P_plus,
                     Bt - Bt * P_plus * inst.A * WAt - inst.S.transpose() * WAt);
}

SynthesisResult synthesize(const ProblemInstance& inst,
                           const DareOptions& options) {
  DareSolution dare = solve_dare(inst, options);
  SynthesisResult r;
  r.P_plus = std::move(dare.P);
  r.dare_iterations = dare.iterations;
  r.dare_residual = dare.residual;
  r.inner = inner_matrix(inst, r.P_plus);
  r.K_plus = compute_gain(inst, r.P_plus);
  r.A_plus = compute_closed_loop(inst, r.K_plus);
  r.W = solve_lyapunov_W(inst, r.P_plus, r.A_plus);
  r.Kbar_plus = compute_kbar(inst, r.P_plus, r.W, r.A_plus);
  return r;
}

IdentityReport verify_identities(const ProblemInstance& inst,
                                 const SynthesisResult& r) {
  const Matrix& A = inst.A;
  const Matrix& B = inst.B;
  const Matrix At = A.transpose();
  const Matrix ApT = r.A_plus.transpose();
  const Matrix I = Matrix::identity(inst.n);
  const Matrix PWmI = r.P_plus * r.W - I;

  IdentityReport rep;
  rep.riccati_residual = relative_residual(r.P_plus, riccati_rhs(inst, r.P_plus));

  const Matrix G = B * solve_inner(inst, r.P_plus, B.transpose());
  rep.lyapunov_residual =
      relative_residual(r.W, r.A_plus * r.W * ApT + G);

  rep.eqW_residual =
      relative_residual(-r.W + B * r.Kbar_plus, -(A * r.W * ApT));

  rep.property1_residual = relative_residual(
      inst.Q - r.P_plus - inst.S * r.K_plus, -(At * r.P_plus * r.A_plus));

  rep.property2_residual = relative_residual(
      -(At * PWmI),
      inst.Q * r.W * ApT - PWmI * ApT + inst.S * r.Kbar_plus);
  return rep;
}

}  // namespace lqham
