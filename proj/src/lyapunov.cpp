#include "lqham/lyapunov.hpp"

#include <cmath>

#include "lqham/error.hpp"

namespace lqham {

namespace {

void check_shapes(const Matrix& a, const Matrix& c) {
  if (!a.is_square() || !c.is_square() || a.rows() != c.rows()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "solve_discrete_lyapunov: A and C must be square and of equal "
                "size");
  }
}

}  // namespace

Matrix solve_discrete_lyapunov_direct(const Matrix& a, const Matrix& c) {
  check_shapes(a, c);
  const std::size_t n = a.rows();
  // Row-major vec: vec(A X Aᵀ) = (A ⊗ A)·vec(X).
  const Matrix system = Matrix::identity(n * n) - kron(a, a);
  const Matrix rhs(n * n, 1, std::vector<double>(c.data().begin(), c.data().end()));
  const Matrix x = solve_linear(system, rhs);
  return Matrix(n, n, std::vector<double>(x.data().begin(), x.data().end()))
      .symmetrized();
}

Matrix solve_discrete_lyapunov_series(const Matrix& a, const Matrix& c,
                                      double tol, std::size_t max_terms) {
  check_shapes(a, c);
  const Matrix at = a.transpose();
  Matrix term = c;
  Matrix sum = c;
  for (std::size_t j = 1; j < max_terms; ++j) {
    term = a * term * at;
    sum += term;
    const double tn = term.frobenius_norm();
    if (!std::isfinite(tn)) break;
    if (tn <= tol * sum.frobenius_norm() || tn == 0.0) return sum.symmetrized();
  }
  throw Error(ErrorKind::kNoConvergence,
              "solve_discrete_lyapunov: series did not converge");
}

Matrix solve_discrete_lyapunov(const Matrix& a, const Matrix& c, double tol,
                               std::size_t max_terms) {
  check_shapes(a, c);
  if (a.rows() <= kLyapunovDirectMaxDim) {
    return solve_discrete_lyapunov_direct(a, c);
  }
  return solve_discrete_lyapunov_series(a, c, tol, max_terms);
}

}  // namespace lqham
