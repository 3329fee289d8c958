#pragma once

#include "mpho/losses.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace mpho {

/// Learning-rate schedules for the stochastic subgradient method. Harmonic
/// and polynomial decay (exponent in (0.5, 1]) are nonnegative with
/// divergent sum and convergent sum of squares; a constant rate violates
/// that contract and warns at construction.
struct Schedule {
  enum class Kind { harmonic, constant, polynomial_decay };

  Kind kind = Kind::harmonic;
  double a0 = 0.1;
  double exponent = 1.0;

  static Schedule harmonic(double a0);
  static Schedule constant(double a0);
  static Schedule polynomial_decay(double a0, double exponent);

  double rate(long long k) const;
  bool summability_ok() const { return kind != Kind::constant; }
};

/// Coordinate-wise clamp box over the flattened iterate; `lo`/`hi` are
/// cycled when shorter than the iterate (one entry per ambient coordinate).
struct BoundingBox {
  std::vector<double> lo;
  std::vector<double> hi;
};

/// Bookkeeping of one subgradient-method run on a flattened iterate.
struct OptimizationState {
  std::vector<double> iterate;
  Schedule schedule;
  long long step_count = 0;
  std::vector<double> loss_trace;
  std::uint64_t seed = 0;
  std::mt19937_64 rng;
  double noise_scale = 0; // scale of the centered Gaussian noise term
  std::optional<BoundingBox> box;
  std::function<void(std::vector<double>&)> projector; // applied after each step

  static OptimizationState start(std::vector<double> x0, Schedule schedule, std::uint64_t seed);
};

using GradientProvider =
    std::function<std::pair<double, std::vector<double>>(const std::vector<double>&)>;

/// One update x <- x - a_k (y_k + noise), with optional clamping and
/// projection. Appends the evaluated loss to the trace.
void step(OptimizationState& state, const GradientProvider& provider);

/// Repairs a raw iterate back into filtration space: per coordinate, each
/// simplex value becomes the max of itself and its faces. Idempotent and the
/// identity on monotone inputs.
Filtration monotone_repair(Filtration f);

struct OptimizeOptions {
  PipelineSpec pipeline;
  LossSpec loss;
  Schedule schedule;
  int epochs = 100;
  std::uint64_t seed = 0;
  double noise_scale = 0;
  std::optional<BoundingBox> box;
};

struct TrajectoryPoint {
  int epoch = 0;
  double loss = 0; // raw descriptor loss, before the minimize/maximize sign
  PointCloud cloud;
};

/// Per epoch: re-estimate the density (function-Rips), rebuild the
/// filtration, evaluate loss and subgradient, step the points. Returns the
/// full trajectory including the final iterate. Deterministic per seed.
std::vector<TrajectoryPoint> optimize_pointcloud(const PointCloud& x0, const OptimizeOptions& options);

struct FiltrationTrajectoryPoint {
  int epoch = 0;
  double loss = 0;
  Filtration filtration;
};

/// Subgradient descent directly on filtration values, with the monotone
/// repair applied after every step.
std::vector<FiltrationTrajectoryPoint> optimize_filtration(const Filtration& f0, const LossSpec& loss,
                                                           const Schedule& schedule, int epochs,
                                                           std::uint64_t seed, double noise_scale = 0);

} // namespace mpho
