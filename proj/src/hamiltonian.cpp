#include "lqham/hamiltonian.hpp"

#include <algorithm>
#include <string>

#include "lqham/error.hpp"

namespace lqham {

namespace {

void check_length(std::span<const double> v, std::size_t n, const char* what) {
  if (v.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": expected length " + std::to_string(n) +
                    ", got " + std::to_string(v.size()));
  }
}

double largest_norm(const std::vector<Vector>& seq) {
  double m = 0.0;
  for (const Vector& v : seq) m = std::max(m, norm(v));
  return m;
}

}  // namespace

double ResidualReport::max() const {
  return std::max({state, costate, stationarity});
}

ModeTrajectory propagate_modes(const ModeParams& params,
                               const SynthesisResult& syn, std::size_t kf) {
  const std::size_t n = syn.A_plus.rows();
  check_length(params.alpha, n, "propagate_modes: alpha");
  check_length(params.beta, n, "propagate_modes: beta");
  const Matrix ApT = syn.A_plus.transpose();

  ModeTrajectory modes;
  modes.v.reserve(kf + 1);
  modes.v.push_back(params.alpha);
  for (std::size_t k = 0; k < kf; ++k) {
    modes.v.push_back(syn.A_plus * modes.v.back());
  }
  modes.w.assign(kf + 1, Vector());
  modes.w[kf] = params.beta;
  for (std::size_t k = kf; k-- > 0;) modes.w[k] = ApT * modes.w[k + 1];
  return modes;
}

std::pair<Vector, Vector> couple(std::span<const double> v,
                                 std::span<const double> w,
                                 const SynthesisResult& syn) {
  const std::size_t n = syn.P_plus.rows();
  check_length(v, n, "couple: v");
  check_length(w, n, "couple: w");
  Vector pw = syn.P_plus * (syn.W * w);
  Vector x = syn.W * w + v;
  Vector p = syn.P_plus * v + pw;
  p = std::move(p) - w;
  return {std::move(x), std::move(p)};
}

std::pair<Vector, Vector> decouple(std::span<const double> x,
                                   std::span<const double> p,
                                   const SynthesisResult& syn) {
  const std::size_t n = syn.P_plus.rows();
  check_length(x, n, "decouple: x");
  check_length(p, n, "decouple: p");
  Vector w = syn.P_plus * x - p;
  // v = x − Ww, algebraically (I − WP₊)x + Wp.
  Vector v = Vector(x.begin(), x.end()) - syn.W * w;
  return {std::move(v), std::move(w)};
}

ModeTrajectory decouple_trajectory(const Trajectory& traj,
                                   const SynthesisResult& syn) {
  if (traj.x.size() != traj.p.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "decouple_trajectory: x and p lengths differ");
  }
  ModeTrajectory modes;
  for (std::size_t k = 0; k < traj.x.size(); ++k) {
    auto [v, w] = decouple(traj.x[k], traj.p[k], syn);
    modes.v.push_back(std::move(v));
    modes.w.push_back(std::move(w));
  }
  return modes;
}

Vector input_from_modes(std::span<const double> v_k,
                        std::span<const double> w_next,
                        const SynthesisResult& syn) {
  return syn.Kbar_plus * w_next - syn.K_plus * v_k;
}

Trajectory trajectory_xp(const ProblemInstance& inst,
                         const SynthesisResult& syn, const ModeParams& params) {
  const ModeTrajectory modes = propagate_modes(params, syn, inst.kf);
  Trajectory traj;
  for (std::size_t k = 0; k <= inst.kf; ++k) {
    auto [x, p] = couple(modes.v[k], modes.w[k], syn);
    traj.x.push_back(std::move(x));
    traj.p.push_back(std::move(p));
  }
  return traj;
}

Trajectory trajectory_xpu(const ProblemInstance& inst,
                          const SynthesisResult& syn, const ModeParams& params) {
  if (inst.kf == 0) {
    throw Error(ErrorKind::kHorizonTooShort,
                "trajectory_xpu: horizon too short (kf = 0 has no control "
                "interval)");
  }
  const ModeTrajectory modes = propagate_modes(params, syn, inst.kf);
  const Matrix ApT = syn.A_plus.transpose();
  Trajectory traj;
  for (std::size_t k = 0; k < inst.kf; ++k) {
    // w_k written as A₊ᵀw_{k+1}.
    const Vector w_k = ApT * modes.w[k + 1];
    auto [x, p] = couple(modes.v[k], w_k, syn);
    traj.x.push_back(std::move(x));
    traj.p.push_back(std::move(p));
    traj.u.push_back(input_from_modes(modes.v[k], modes.w[k + 1], syn));
  }
  return traj;
}

Trajectory with_terminal_point(Trajectory xpu, const Trajectory& xp) {
  const std::size_t kf = xpu.x.size();
  if (xp.x.size() != kf + 1 || xp.p.size() != kf + 1) {
    throw Error(ErrorKind::kDimensionMismatch,
                "with_terminal_point: state/costate form must have kf + 1 "
                "points");
  }
  xpu.x.push_back(xp.x[kf]);
  xpu.p.push_back(xp.p[kf]);
  return xpu;
}

ResidualReport hamiltonian_residual(const ProblemInstance& inst,
                                    const Trajectory& traj) {
  if (!traj.has_input() && inst.kf > 0) {
    throw Error(ErrorKind::kMissingInput,
                "hamiltonian_residual: trajectory has no input sequence");
  }
  const std::size_t kf = inst.kf;
  if (traj.x.size() != kf + 1 || traj.p.size() != kf + 1 ||
      traj.u.size() != kf) {
    throw Error(ErrorKind::kDimensionMismatch,
                "hamiltonian_residual: need kf + 1 states/costates and kf "
                "inputs");
  }
  const Matrix At = inst.A.transpose();
  const Matrix Bt = inst.B.transpose();
  const Matrix St = inst.S.transpose();

  const double scale =
      std::max({1.0, largest_norm(traj.x), largest_norm(traj.p),
                largest_norm(traj.u)});
  ResidualReport rep;
  for (std::size_t k = 0; k < kf; ++k) {
    const Vector& x = traj.x[k];
    const Vector& p = traj.p[k];
    const Vector& u = traj.u[k];
    const Vector r1 = traj.x[k + 1] - inst.A * x - inst.B * u;
    const Vector r2 = p - At * traj.p[k + 1] - inst.Q * x - inst.S * u;
    const Vector r3 = -1.0 * (Bt * traj.p[k + 1]) - St * x - inst.R * u;
    rep.state = std::max(rep.state, norm(r1));
    rep.costate = std::max(rep.costate, norm(r2));
    rep.stationarity = std::max(rep.stationarity, norm(r3));
  }
  rep.state /= scale;
  rep.costate /= scale;
  rep.stationarity /= scale;
  return rep;
}

std::pair<double, double> mode_recursion_residuals(const ModeTrajectory& modes,
                                                   const SynthesisResult& syn) {
  const Matrix ApT = syn.A_plus.transpose();
  const double scale =
      std::max({1.0, largest_norm(modes.v), largest_norm(modes.w)});
  double rv = 0.0;
  double rw = 0.0;
  for (std::size_t k = 0; k + 1 < modes.v.size(); ++k) {
    rv = std::max(rv, norm(modes.v[k + 1] - syn.A_plus * modes.v[k]));
    rw = std::max(rw, norm(ApT * modes.w[k + 1] - modes.w[k]));
  }
  return {rv / scale, rw / scale};
}

}  // namespace lqham
