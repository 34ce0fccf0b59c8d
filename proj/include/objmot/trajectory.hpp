#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>
#include <vector>

#include "objmot/core.hpp"
#include "objmot/rng.hpp"

namespace objmot {

struct GpParams {
  double tau = 10.0;
  double bounds_lo = 10.0;
  double bounds_hi = 54.0;
  int length = 10;
  int max_rejects = 1000;

  void validate() const;
};

/// Centroid path, one (x, y) per frame in continuous pixel coordinates
/// (x = column axis). `offset` is the initial shift applied to the
/// zero-mean process, kept so callers can recover the de-shifted path.
struct Trajectory {
  std::vector<Vector2d> points;
  Vector2d offset = Vector2d::Zero();

  int length() const { return static_cast<int>(points.size()); }
  const Vector2d& operator[](int t) const { return points[static_cast<std::size_t>(t)]; }

  bool inside(double lo, double hi) const;

  friend bool operator==(const Trajectory& a, const Trajectory& b) {
    return a.points == b.points && a.offset == b.offset;
  }
};

/// exp(-(s - t)^2 / (2 tau^2)).
template <typename Scalar>
Scalar se_kernel(long s, long t, Scalar tau) {
  if (!(tau > Scalar(0))) throw InvalidParameter("se_kernel: tau must be positive");
  const Scalar lag = static_cast<Scalar>(s - t);
  using std::exp;
  return exp(-(lag * lag) / (Scalar(2) * tau * tau));
}

template <typename Scalar>
MatrixX<Scalar> gram_matrix(int length, Scalar tau) {
  if (length < 1) throw InvalidParameter("gram_matrix: length must be >= 1");
  MatrixX<Scalar> k(length, length);
  for (int s = 0; s < length; ++s)
    for (int t = 0; t <= s; ++t) k(s, t) = k(t, s) = se_kernel<Scalar>(s, t, tau);
  return k;
}

/// Lower Cholesky factor of gram + jitter*I. Jitter starts at 1e-10 and
/// grows x10 up to 1e-6; NumericalError if that still fails.
Eigen::MatrixXd jittered_cholesky(const Eigen::MatrixXd& gram, double* jitter_used = nullptr);

/// One zero-mean draw from the process with the given Cholesky factor.
Eigen::VectorXd sample_gp_path(Rng& rng, const Eigen::MatrixXd& factor);

Trajectory sample_trajectory(Rng& rng, const GpParams& params);

struct Crossing {
  int frame = 0;
  Vector2d position = Vector2d::Zero();
  int first = 0;
  int second = 1;

  friend bool operator==(const Crossing&, const Crossing&) = default;
};

struct CrossingSample {
  std::vector<Trajectory> trajectories;
  Crossing crossing;
};

/// Independent paths where one random pair passes through the same pixel at
/// a random frame. Checked by `verify_crossing`.
CrossingSample sample_crossing_trajectories(Rng& rng, const GpParams& params, int n_objects);

bool verify_crossing(const std::vector<Trajectory>& trajectories, const Crossing& crossing);

struct LinearParams {
  int length = 10;
  double bounds_lo = 0.0;
  double bounds_hi = 128.0;
  double speed_lo = -3.0;
  double speed_hi = 3.0;
};

/// p(t) = p(0) + t v. No rejection: objects may leave the canvas.
Trajectory sample_linear_trajectory(Rng& rng, const LinearParams& params);

}  // namespace objmot
