#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coevo/rational.hpp"

namespace coevo {

using DVec = std::vector<double>;
using DMat = std::vector<DVec>;

DMat to_doubles(const Mat& m);

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<DVec> states;
  /// (Bx)_i at each recorded state.
  std::vector<DVec> fitness_series;
  /// Largest |Σx − 1| removed by renormalization.
  double max_drift = 0;
};

struct ReplicatorOptions {
  /// Local error tolerance of the embedded 5(4) pair.
  double tol = 1e-10;
  double initial_step = 1e-2;
  double max_step = 1.0;
  /// Record at most every `record_every` time units (0 records every step).
  double record_every = 0;
};

/// ẋ_i = x_i((Bx)_i − xᵀBx) integrated to `horizon` with an adaptive
/// Dormand–Prince step. Throws std::invalid_argument unless x0 is on the
/// simplex within 1e-9.
TrajectoryRecord replicate(const DMat& payoff, const DVec& x0, double horizon,
                           const ReplicatorOptions& opt = {});

struct ProbeRun {
  double radius = 0;
  DVec direction;
  double max_excursion = 0;
  double terminal_distance = 0;
  bool escaped = false;
};

struct ProbeReport {
  std::vector<ProbeRun> runs;
  bool escaped = false;
  /// Direction of the first escaping run.
  DVec escape_direction;
  /// Spread of (Bx*)_i over the support of x*.
  double rest_point_spread = 0;
};

struct ProbeOptions {
  /// Random perturbations per radius, on top of the pairwise directions e_j − e_k.
  size_t random_directions = 8;
  std::uint64_t seed = 1;
  /// A run escapes when its terminal distance exceeds factor · radius.
  double escape_factor = 10;
  double rest_tol = 1e-9;
  ReplicatorOptions integrator;
};

/// Perturbs x* by each radius along every feasible e_j − e_k and a few
/// random simplex directions, integrates and classifies escape. Throws
/// std::invalid_argument when x* is not a rest point.
ProbeReport stability_probe(const DMat& payoff, const DVec& x_star, const std::vector<double>& radii,
                            double horizon, const ProbeOptions& opt = {});

/// Time, frequencies and fitness per type, one row per recorded state.
std::string trajectory_csv(const TrajectoryRecord& t, const std::vector<std::string>& labels);

}  // namespace coevo
