#pragma once

#include <cstddef>

#include "lqham/matrix.hpp"

namespace lqham {

/// Largest dimension handled by the direct n²×n² solve; above it the series
/// form is used.
inline constexpr std::size_t kLyapunovDirectMaxDim = 30;

/// Solves X = A·X·Aᵀ + C for X, C symmetric. The result is returned
/// symmetrized.
///
/// For n ≤ kLyapunovDirectMaxDim the row-major vectorization
/// (I − A⊗A)·vec(X) = vec(C) is solved directly; a singular system (A has an
/// eigenvalue pair with λᵢλⱼ = 1) raises SingularMatrix. Larger problems sum
/// X = Σⱼ Aʲ C (Aᵀ)ʲ until a term falls below tol·‖X‖_F, raising NoConvergence
/// if that has not happened after `max_terms` terms.
Matrix solve_discrete_lyapunov(const Matrix& a, const Matrix& c, double tol,
                               std::size_t max_terms = 100000);

/// Series form only, exposed for testing against the direct form.
Matrix solve_discrete_lyapunov_series(const Matrix& a, const Matrix& c,
                                      double tol,
                                      std::size_t max_terms = 100000);

/// Direct form only, regardless of size.
Matrix solve_discrete_lyapunov_direct(const Matrix& a, const Matrix& c);

}  // namespace lqham
