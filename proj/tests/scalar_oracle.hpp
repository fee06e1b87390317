#pragma once

#include <cmath>

#include "lqham/synthesis.hpp"

namespace lqham::testing {

// A = 0.5, B = 1, Q = 1, R = 1, S = 0. Closed forms from the scalar Riccati
// quadratic P² − 0.25P − 1 = 0 and the scalar geometric series for W.
struct ScalarOracle {
  double P = (0.25 + std::sqrt(4.0625)) / 2.0;
  double K = 0.5 * P / (1.0 + P);
  double Ap = 0.5 - K;
  double G = 1.0 / (1.0 + P);
  double W = G / (1.0 - Ap * Ap);
  double Kbar = (1.0 - 0.5 * P * W * Ap) / (1.0 + P);
};

inline ProblemInstance scalar_instance(std::size_t kf = 2, double q = 1.0) {
  return make_instance(kf, Matrix{{0.5}}, Matrix{{1}}, Matrix{{q}},
                       Matrix{{1}}, Matrix{{0}});
}

inline ProblemInstance zero_instance(std::size_t n, std::size_t m,
                                     std::size_t kf) {
  return make_instance(kf, Matrix(n, n), Matrix(n, m), Matrix(n, n),
                       Matrix::identity(m), Matrix(n, m));
}

}  // namespace lqham::testing
