#include <cmath>

#include <doctest.h>

#include "lqham/error.hpp"
#include "lqham/hamiltonian.hpp"
#include "lqham/instance_io.hpp"
#include "scalar_oracle.hpp"
#include "test_util.hpp"

using namespace lqham;
using lqham::testing::Rng;
using lqham::testing::ScalarOracle;
using lqham::testing::scalar_instance;
using lqham::testing::zero_instance;

namespace {

double max_diff(const std::vector<Vector>& a, const std::vector<Vector>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, norm(a[k] - b[k]));
  return m;
}

Trajectory full_xpu(const ProblemInstance& inst, const SynthesisResult& syn,
                    const ModeParams& params) {
  return with_terminal_point(trajectory_xpu(inst, syn, params),
                             trajectory_xp(inst, syn, params));
}

}  // namespace

TEST_CASE("propagate_modes") {
  const auto inst = scalar_instance(2);
  const SynthesisResult syn = synthesize(inst);
  const ModeTrajectory zero = propagate_modes({{0.0}, {0.0}}, syn, 2);
  for (std::size_t k = 0; k <= 2; ++k) {
    CHECK(zero.v[k][0] == 0.0);
    CHECK(zero.w[k][0] == 0.0);
  }

  const ScalarOracle o;
  const ModeTrajectory modes = propagate_modes({{1.0}, {1.0}}, syn, 2);
  const double v_expected[] = {1.0, o.Ap, o.Ap * o.Ap};
  for (std::size_t k = 0; k <= 2; ++k) {
    CHECK(std::abs(modes.v[k][0] - v_expected[k]) <= 1e-12);
    CHECK(std::abs(modes.w[k][0] - v_expected[2 - k]) <= 1e-12);
  }
  CHECK(std::abs(o.Ap * o.Ap - 0.054957) <= 1e-5);

  // Nilpotent A₊: A = 0, B = 0 gives A₊ = 0.
  const auto nil = zero_instance(2, 1, 3);
  const SynthesisResult nsyn = synthesize(nil);
  const ModeTrajectory nm = propagate_modes({{1.0, 0.0}, {0.0, 0.0}}, nsyn, 3);
  CHECK(nm.v[0] == Vector{1.0, 0.0});
  for (std::size_t k = 1; k <= 3; ++k) CHECK(norm(nm.v[k]) == 0.0);

  CHECK_THROWS_AS(propagate_modes({{1.0, 2.0}, {0.0}}, syn, 2), Error);
}

TEST_CASE("couple and decouple") {
  const ScalarOracle o;
  const SynthesisResult syn = synthesize(scalar_instance());
  auto [x0, p0] = couple(Vector{0.0}, Vector{0.0}, syn);
  CHECK(x0[0] == 0.0);
  CHECK(p0[0] == 0.0);

  auto [x1, p1] = couple(Vector{2.0}, Vector{0.0}, syn);
  CHECK(x1[0] == 2.0);
  CHECK(std::abs(p1[0] - 2.0 * syn.P_plus(0, 0)) <= 1e-15);

  auto [x2, p2] = couple(Vector{0.0}, Vector{1.0}, syn);
  CHECK(std::abs(x2[0] - o.W) <= 1e-10);
  CHECK(std::abs(p2[0] - (o.P * o.W - 1.0)) <= 1e-10);
  CHECK(std::abs(p2[0] - (-0.43797)) <= 5e-5);  // Quoted from rounded inputs.

  auto [v, w] = decouple(x1, p1, syn);
  CHECK(std::abs(v[0] - 2.0) <= 1e-12);
  CHECK(std::abs(w[0]) <= 1e-12);
}

TEST_CASE("couple/decouple round trips against the explicit block inverse") {
  Rng rng(7);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = rng.index(1, 5);
    const auto inst = generate_instance(seed, n, rng.index(1, 3), 3);
    const SynthesisResult syn = synthesize(inst);

    // Block transform T = [[I, W], [P₊, P₊W − I]] and its inverse by direct
    // solve, independent of the closed form used by decouple.
    const std::size_t n2 = 2 * n;
    Matrix T(n2, n2);
    T.set_block(0, 0, Matrix::identity(n));
    T.set_block(0, n, syn.W);
    T.set_block(n, 0, syn.P_plus);
    T.set_block(n, n, syn.P_plus * syn.W - Matrix::identity(n));

    for (int trial = 0; trial < 5; ++trial) {
      const Vector x = rng.vector(n);
      const Vector p = rng.vector(n);
      auto [v, w] = decouple(x, p, syn);
      auto [xx, pp] = couple(v, w, syn);
      const double scale = std::max(1.0, norm(x) + norm(p));
      CHECK(norm(xx - x) <= 1e-12 * scale);
      CHECK(norm(pp - p) <= 1e-12 * scale);

      Vector xp = x;
      xp.insert(xp.end(), p.begin(), p.end());
      const Matrix vw = solve_linear(T, Matrix::column(xp));
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(vw(i, 0) - v[i]) <= 1e-10 * scale);
        CHECK(std::abs(vw(n + i, 0) - w[i]) <= 1e-10 * scale);
      }

      const Vector v2 = rng.vector(n);
      const Vector w2 = rng.vector(n);
      auto [x3, p3] = couple(v2, w2, syn);
      auto [v3, w3] = decouple(x3, p3, syn);
      const double s2 = std::max(1.0, norm(v2) + norm(w2));
      CHECK(norm(v3 - v2) <= 1e-12 * s2 * std::max(1.0, syn.W.frobenius_norm() * syn.P_plus.frobenius_norm()));
      CHECK(norm(w3 - w2) <= 1e-12 * s2 * std::max(1.0, syn.P_plus.frobenius_norm()));
    }
  }
}

TEST_CASE("input_from_modes") {
  const SynthesisResult syn = synthesize(scalar_instance());
  CHECK(input_from_modes(Vector{0.0}, Vector{0.0}, syn)[0] == 0.0);
  const ScalarOracle o;
  CHECK(std::abs(input_from_modes(Vector{1.0}, Vector{0.0}, syn)[0] + o.K) <= 1e-10);
  CHECK(std::abs(-o.K - (-0.26557)) <= 1e-5);

  const auto trivial = make_instance(2, Matrix{{0.5}}, Matrix{{1}}, Matrix{{0}},
                                     Matrix{{1}}, Matrix{{0}});
  const SynthesisResult tsyn = synthesize(trivial);
  CHECK(std::abs(input_from_modes(Vector{0.0}, Vector{1.0}, tsyn)[0] - 1.0) <= 1e-14);
}

TEST_CASE("trajectory_xp and trajectory_xpu on the scalar oracle") {
  const ScalarOracle o;
  const auto inst = scalar_instance(2);
  const SynthesisResult syn = synthesize(inst);

  const Trajectory zero = trajectory_xp(inst, syn, {{0.0}, {0.0}});
  for (const Vector& x : zero.x) CHECK(x[0] == 0.0);
  CHECK_FALSE(zero.has_input());
  const Trajectory zero_u = trajectory_xpu(inst, syn, {{0.0}, {0.0}});
  REQUIRE(zero_u.u.size() == 2);
  for (const Vector& u : zero_u.u) CHECK(u[0] == 0.0);

  const Trajectory t = trajectory_xp(inst, syn, {{1.0}, {1.0}});
  REQUIRE(t.x.size() == 3);
  CHECK(std::abs(t.x[0][0] - (1.0 + o.W * o.Ap * o.Ap)) <= 1e-10);
  CHECK(std::abs(t.x[0][0] - 1.02727) <= 1e-5);

  const Trajectory stable = trajectory_xp(inst, syn, {{1.0}, {0.0}});
  for (std::size_t k = 0; k <= 2; ++k) {
    CHECK(std::abs(stable.x[k][0] - std::pow(o.Ap, static_cast<double>(k))) <= 1e-12);
    CHECK(std::abs(stable.p[k][0] - o.P * stable.x[k][0]) <= 1e-12);
  }

  const Trajectory tu = trajectory_xpu(inst, syn, {{0.0}, {1.0}});
  REQUIRE(tu.x.size() == 2);
  CHECK(std::abs(tu.u[0][0] - o.Kbar * o.Ap) <= 1e-10);
  CHECK(std::abs(tu.u[0][0] - 0.102676) <= 1e-5);

  const auto short_inst = scalar_instance(0);
  try {
    trajectory_xpu(short_inst, syn, {{1.0}, {1.0}});
    FAIL("expected HorizonTooShort");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kHorizonTooShort);
  }
  CHECK(trajectory_xp(short_inst, syn, {{1.0}, {1.0}}).x.size() == 1);
}

TEST_CASE("hamiltonian_residual") {
  const auto inst = scalar_instance(3);
  const SynthesisResult syn = synthesize(inst);
  const Trajectory zero = full_xpu(inst, syn, {{0.0}, {0.0}});
  const ResidualReport rz = hamiltonian_residual(inst, zero);
  CHECK(rz.max() == 0.0);

  Trajectory t = full_xpu(inst, syn, {{0.6}, {0.8}});
  CHECK(hamiltonian_residual(inst, t).max() <= 1e-8);

  t.u[0][0] += 1.0;
  const ResidualReport bad = hamiltonian_residual(inst, t);
  CHECK(bad.state >= 0.1);
  CHECK(bad.stationarity >= 0.1);

  Trajectory no_u = trajectory_xp(inst, syn, {{0.6}, {0.8}});
  try {
    hamiltonian_residual(inst, no_u);
    FAIL("expected MissingInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kMissingInput);
  }
  CHECK_THROWS_AS(hamiltonian_residual(inst, trajectory_xpu(inst, syn, {{0.6}, {0.8}})),
                  Error);
}

TEST_CASE("random instances: decoupling, costate relation, linearity, consistency") {
  Rng rng(41);
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const std::size_t n = rng.index(1, 5);
    const std::size_t m = rng.index(1, 3);
    const std::size_t kf = rng.index(2, 12);
    const auto inst = generate_instance(seed, n, m, kf);
    const SynthesisResult syn = synthesize(inst);
    CAPTURE(seed);

    const ModeParams a{rng.unit_vector(n), rng.unit_vector(n)};
    const ModeParams b{rng.unit_vector(n), rng.unit_vector(n)};
    const ModeParams sum{a.alpha + b.alpha, a.beta + b.beta};

    const Trajectory ta = full_xpu(inst, syn, a);
    CHECK(hamiltonian_residual(inst, ta).max() <= 1e-8);

    const Trajectory xp = trajectory_xp(inst, syn, a);
    const Trajectory xpu = trajectory_xpu(inst, syn, a);
    for (std::size_t k = 0; k < kf; ++k) {
      CHECK(norm(xp.x[k] - xpu.x[k]) <= 1e-12);
      CHECK(norm(xp.p[k] - xpu.p[k]) <= 1e-12);
    }

    const ModeTrajectory modes = propagate_modes(a, syn, kf);
    for (std::size_t k = 0; k <= kf; ++k) {
      const Vector w = syn.P_plus * xp.x[k] - xp.p[k];
      CHECK(norm(w - modes.w[k]) <= 1e-10);
    }
    auto [rv, rw] = mode_recursion_residuals(decouple_trajectory(xp, syn), syn);
    CHECK(rv <= 1e-8);
    CHECK(rw <= 1e-8);

    const Trajectory tb = full_xpu(inst, syn, b);
    const Trajectory ts = full_xpu(inst, syn, sum);
    CHECK(max_diff(ts.x, [&] {
            std::vector<Vector> s;
            for (std::size_t k = 0; k < ta.x.size(); ++k) s.push_back(ta.x[k] + tb.x[k]);
            return s;
          }()) <= 1e-12);
    for (std::size_t k = 0; k < kf; ++k) {
      CHECK(norm(ts.p[k] - (ta.p[k] + tb.p[k])) <= 1e-12);
      CHECK(norm(ts.u[k] - (ta.u[k] + tb.u[k])) <= 1e-12);
    }
  }
}
