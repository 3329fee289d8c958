#include "mpho/optimizer.hpp"

#include "mpho/error.hpp"

#include <cmath>
#include <sstream>

namespace mpho {

Schedule Schedule::harmonic(double a0) {
  if (!(a0 > 0)) fail(errc::config_error, "schedule base rate must be positive");
  return Schedule{Kind::harmonic, a0, 1.0};
}

Schedule Schedule::constant(double a0) {
  if (!(a0 > 0)) fail(errc::config_error, "schedule base rate must be positive");
  warn("constant learning rate: the sum of squared rates diverges, convergence is not covered");
  return Schedule{Kind::constant, a0, 0.0};
}

Schedule Schedule::polynomial_decay(double a0, double exponent) {
  if (!(a0 > 0)) fail(errc::config_error, "schedule base rate must be positive");
  if (!(exponent > 0.5 && exponent <= 1.0))
    fail(errc::config_error, "polynomial decay exponent must lie in (0.5, 1]");
  return Schedule{Kind::polynomial_decay, a0, exponent};
}

double Schedule::rate(long long k) const {
  switch (kind) {
    case Kind::harmonic: return a0 / static_cast<double>(k + 1);
    case Kind::constant: return a0;
    case Kind::polynomial_decay: return a0 / std::pow(static_cast<double>(k + 1), exponent);
  }
  return a0;
}

OptimizationState OptimizationState::start(std::vector<double> x0, Schedule schedule,
                                           std::uint64_t seed) {
  OptimizationState state;
  state.iterate = std::move(x0);
  state.schedule = schedule;
  state.seed = seed;
  state.rng.seed(seed);
  return state;
}

namespace {

std::string dump_state(const OptimizationState& state) {
  std::ostringstream out;
  out << "step " << state.step_count << ", iterate [";
  for (std::size_t i = 0; i < state.iterate.size(); ++i) {
    if (i) out << ',';
    out << state.iterate[i];
  }
  out << ']';
  return out.str();
}

} // namespace

void step(OptimizationState& state, const GradientProvider& provider) {
  auto [loss, gradient] = provider(state.iterate);
  if (gradient.size() != state.iterate.size())
    fail(errc::size_mismatch, "gradient length does not match the iterate");
  if (!std::isfinite(loss)) fail(errc::non_finite_gradient, "loss is not finite at " + dump_state(state));
  for (double g : gradient)
    if (!std::isfinite(g))
      fail(errc::non_finite_gradient, "gradient is not finite at " + dump_state(state));

  const double a = state.schedule.rate(state.step_count);
  std::normal_distribution<double> noise(0.0, state.noise_scale);
  for (std::size_t i = 0; i < state.iterate.size(); ++i) {
    double zeta = state.noise_scale > 0 ? noise(state.rng) : 0.0;
    state.iterate[i] -= a * (gradient[i] + zeta);
  }
  if (state.box) {
    const auto& box = *state.box;
    for (std::size_t i = 0; i < state.iterate.size(); ++i) {
      double lo = box.lo[i % box.lo.size()];
      double hi = box.hi[i % box.hi.size()];
      state.iterate[i] = std::min(std::max(state.iterate[i], lo), hi);
    }
  }
  if (state.projector) state.projector(state.iterate);
  for (double x : state.iterate)
    if (!std::isfinite(x))
      fail(errc::non_finite_gradient, "iterate left the finite range at " + dump_state(state));
  state.loss_trace.push_back(loss);
  ++state.step_count;
}

Filtration monotone_repair(Filtration f) {
  // Simplices are ordered by dimension, so one ascending pass sees every
  // face before its cofaces.
  for (std::size_t s = 0; s < f.values.size(); ++s) {
    for (int face : f.complex->facets(static_cast<int>(s)))
      for (int i = 0; i < f.params; ++i)
        f.values[s][i] = std::max(f.values[s][i], f.values[face][i]);
  }
  return f;
}

namespace {

std::vector<double> flatten(const std::vector<std::vector<double>>& rows) {
  std::vector<double> flat;
  for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
  return flat;
}

std::vector<std::vector<double>> unflatten(const std::vector<double>& flat, std::size_t rows,
                                           std::size_t cols) {
  std::vector<std::vector<double>> out(rows, std::vector<double>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) out[r][c] = flat[r * cols + c];
  return out;
}

} // namespace

std::vector<TrajectoryPoint> optimize_pointcloud(const PointCloud& x0,
                                                 const OptimizeOptions& options) {
  if (options.epochs < 1) fail(errc::config_error, "epochs must be at least 1");

  const std::size_t n = x0.size();
  const int d = x0.dim;
  OptimizationState state =
      OptimizationState::start(flatten(x0.points), options.schedule, options.seed);
  state.noise_scale = options.noise_scale;
  state.box = options.box;

  std::vector<TrajectoryPoint> trajectory;
  const double sign = options.loss.sign;

  GradientProvider provider = [&](const std::vector<double>& flat) {
    PointCloud cloud = make_point_cloud(unflatten(flat, n, d));
    PointCloudEvaluation eval = pointcloud_gradient(cloud, options.pipeline, options.loss);
    return std::make_pair(eval.value, flatten(eval.gradient));
  };

  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    PointCloud current = make_point_cloud(unflatten(state.iterate, n, d));
    step(state, provider);
    trajectory.push_back({epoch, sign * state.loss_trace.back(), std::move(current)});
  }
  PointCloud final_cloud = make_point_cloud(unflatten(state.iterate, n, d));
  double final_loss = sign * pointcloud_gradient(final_cloud, options.pipeline, options.loss).value;
  trajectory.push_back({options.epochs, final_loss, std::move(final_cloud)});
  return trajectory;
}

std::vector<FiltrationTrajectoryPoint> optimize_filtration(const Filtration& f0, const LossSpec& loss,
                                                           const Schedule& schedule, int epochs,
                                                           std::uint64_t seed, double noise_scale) {
  if (epochs < 1) fail(errc::config_error, "epochs must be at least 1");
  validate_filtration(f0);

  const std::size_t rows = f0.values.size();
  const std::size_t cols = static_cast<std::size_t>(f0.params);
  OptimizationState state = OptimizationState::start(flatten(f0.values), schedule, seed);
  state.noise_scale = noise_scale;

  Filtration shape = f0;
  state.projector = [&](std::vector<double>& flat) {
    shape.values = unflatten(flat, rows, cols);
    shape = monotone_repair(std::move(shape));
    flat = flatten(shape.values);
  };

  GradientProvider provider = [&](const std::vector<double>& flat) {
    Filtration f = f0;
    f.values = unflatten(flat, rows, cols);
    LossEvaluation eval = loss_gradient(f, loss);
    return std::make_pair(eval.value, flatten(eval.gradient.values));
  };

  const double sign = loss.sign;
  std::vector<FiltrationTrajectoryPoint> trajectory;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    Filtration current = f0;
    current.values = unflatten(state.iterate, rows, cols);
    step(state, provider);
    trajectory.push_back({epoch, sign * state.loss_trace.back(), std::move(current)});
  }
  Filtration final_f = f0;
  final_f.values = unflatten(state.iterate, rows, cols);
  double final_loss = sign * loss_value(final_f, loss);
  trajectory.push_back({epochs, final_loss, std::move(final_f)});
  return trajectory;
}

} // namespace mpho
