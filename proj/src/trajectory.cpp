#include "objmot/trajectory.hpp"

#include <random>
#include <string>

namespace objmot {

void GpParams::validate() const {
  if (!(tau > 0.0)) throw InvalidParameter("GpParams: tau must be positive");
  if (!(bounds_lo < bounds_hi)) throw InvalidParameter("GpParams: bounds_lo must be < bounds_hi");
  if (length < 1) throw InvalidParameter("GpParams: length must be >= 1");
  if (max_rejects < 1) throw InvalidParameter("GpParams: max_rejects must be >= 1");
}

bool Trajectory::inside(double lo, double hi) const {
  for (const auto& p : points)
    if (p.x() < lo || p.x() > hi || p.y() < lo || p.y() > hi) return false;
  return true;
}

Eigen::MatrixXd jittered_cholesky(const Eigen::MatrixXd& gram, double* jitter_used) {
  const auto n = gram.rows();
  for (double jitter = 1e-10; jitter <= 1e-6 * 1.0000001; jitter *= 10.0) {
    Eigen::LLT<Eigen::MatrixXd> llt(gram + jitter * Eigen::MatrixXd::Identity(n, n));
    if (llt.info() == Eigen::Success) {
      if (jitter_used) *jitter_used = jitter;
      return llt.matrixL();
    }
  }
  throw NumericalError("jittered_cholesky: factorization failed with jitter up to 1e-6");
}

Eigen::VectorXd sample_gp_path(Rng& rng, const Eigen::MatrixXd& factor) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(factor.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = normal(rng);
  return factor.triangularView<Eigen::Lower>() * z;
}

namespace {

Trajectory from_paths(const Eigen::VectorXd& xs, const Eigen::VectorXd& ys, const Vector2d& offset) {
  Trajectory traj;
  traj.offset = offset;
  traj.points.reserve(static_cast<std::size_t>(xs.size()));
  for (Eigen::Index t = 0; t < xs.size(); ++t) traj.points.emplace_back(xs[t] + offset.x(), ys[t] + offset.y());
  return traj;
}

}  // namespace

Trajectory sample_trajectory(Rng& rng, const GpParams& params) {
  params.validate();
  const Eigen::MatrixXd factor = jittered_cholesky(gram_matrix<double>(params.length, params.tau));
  for (int rejects = 0; rejects < params.max_rejects; ++rejects) {
    const Vector2d offset(uniform(rng, params.bounds_lo, params.bounds_hi),
                          uniform(rng, params.bounds_lo, params.bounds_hi));
    const Eigen::VectorXd xs = sample_gp_path(rng, factor);
    const Eigen::VectorXd ys = sample_gp_path(rng, factor);
    Trajectory traj = from_paths(xs, ys, offset);
    if (traj.inside(params.bounds_lo, params.bounds_hi)) return traj;
  }
  throw GenerationExhausted(
      "sample_trajectory: rejected " + std::to_string(params.max_rejects) + " trajectories",
      params.max_rejects);
}

CrossingSample sample_crossing_trajectories(Rng& rng, const GpParams& params, int n_objects) {
  params.validate();
  if (n_objects < 2) throw InvalidParameter("sample_crossing_trajectories: need at least 2 objects");

  CrossingSample out;
  Crossing& c = out.crossing;
  c.frame = uniform_int(rng, 0, params.length - 1);
  c.position = Vector2d(uniform(rng, params.bounds_lo, params.bounds_hi),
                        uniform(rng, params.bounds_lo, params.bounds_hi));
  c.first = uniform_int(rng, 0, n_objects - 1);
  c.second = uniform_int(rng, 0, n_objects - 2);
  if (c.second >= c.first) ++c.second;
  if (c.first > c.second) std::swap(c.first, c.second);

  const Eigen::MatrixXd factor = jittered_cholesky(gram_matrix<double>(params.length, params.tau));
  out.trajectories.reserve(static_cast<std::size_t>(n_objects));
  for (int k = 0; k < n_objects; ++k) {
    if (k != c.first && k != c.second) {
      out.trajectories.push_back(sample_trajectory(rng, params));
      continue;
    }
    // Shift the zero-mean path so it sits exactly on the crossing point at
    // the crossing frame.
    bool accepted = false;
    for (int rejects = 0; rejects < params.max_rejects; ++rejects) {
      const Eigen::VectorXd xs = sample_gp_path(rng, factor);
      const Eigen::VectorXd ys = sample_gp_path(rng, factor);
      const Vector2d offset(c.position.x() - xs[c.frame], c.position.y() - ys[c.frame]);
      Trajectory traj = from_paths(xs, ys, offset);
      traj.points[static_cast<std::size_t>(c.frame)] = c.position;
      if (traj.inside(params.bounds_lo, params.bounds_hi)) {
        out.trajectories.push_back(std::move(traj));
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw GenerationExhausted("sample_crossing_trajectories: rejected " +
                                    std::to_string(params.max_rejects) + " crossing paths",
                                params.max_rejects);
  }
  return out;
}

bool verify_crossing(const std::vector<Trajectory>& trajectories, const Crossing& crossing) {
  const auto n = static_cast<int>(trajectories.size());
  if (crossing.first < 0 || crossing.second < 0 || crossing.first >= n || crossing.second >= n ||
      crossing.first == crossing.second)
    return false;
  const auto& a = trajectories[static_cast<std::size_t>(crossing.first)];
  const auto& b = trajectories[static_cast<std::size_t>(crossing.second)];
  if (crossing.frame < 0 || crossing.frame >= a.length() || crossing.frame >= b.length()) return false;
  const Vector2d pa = a[crossing.frame].array().round();
  const Vector2d pb = b[crossing.frame].array().round();
  return pa == pb;
}

Trajectory sample_linear_trajectory(Rng& rng, const LinearParams& params) {
  if (params.length < 1) throw InvalidParameter("sample_linear_trajectory: length must be >= 1");
  if (!(params.bounds_lo < params.bounds_hi) || !(params.speed_lo <= params.speed_hi))
    throw InvalidParameter("sample_linear_trajectory: empty bounds or speed range");

  // Positions and velocities snap to a 1/256 px grid so p(0) + t v is exact
  // in double arithmetic.
  constexpr double grid = 256.0;
  auto snap = [](double v) { return std::round(v * grid) / grid; };
  const Vector2d start(snap(uniform(rng, params.bounds_lo, params.bounds_hi)),
                       snap(uniform(rng, params.bounds_lo, params.bounds_hi)));
  const Vector2d velocity(snap(uniform(rng, params.speed_lo, params.speed_hi)),
                          snap(uniform(rng, params.speed_lo, params.speed_hi)));
  Trajectory traj;
  traj.offset = start;
  for (int t = 0; t < params.length; ++t) traj.points.push_back(start + static_cast<double>(t) * velocity);
  return traj;
}

}  // namespace objmot
