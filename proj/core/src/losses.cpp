#include "mpho/losses.hpp"

#include "mpho/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace mpho {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

IntegrandSpec::Bump make_gaussian_bump(std::vector<double> center,
                                       const std::vector<std::vector<double>>& sigma_inverse,
                                       double weight) {
  const std::size_t n = center.size();
  if (sigma_inverse.size() != n)
    fail(errc::dimension_mismatch, "precision matrix does not match the center dimension");
  for (std::size_t i = 0; i < n; ++i) {
    if (sigma_inverse[i].size() != n)
      fail(errc::dimension_mismatch, "precision matrix is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(sigma_inverse[i][j] - sigma_inverse[j][i]) > 1e-12)
        fail(errc::config_error, "precision matrix is not symmetric");
  }

  // Cholesky: precision = U^T U with U upper triangular.
  std::vector<std::vector<double>> upper(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double sum = sigma_inverse[i][j];
      for (std::size_t k = 0; k < i; ++k) sum -= upper[k][i] * upper[k][j];
      if (i == j) {
        if (sum <= 0) fail(errc::config_error, "precision matrix is not positive definite");
        upper[i][i] = std::sqrt(sum);
      } else {
        upper[i][j] = sum / upper[i][i];
      }
    }
  }

  IntegrandSpec::Bump bump;
  bump.center = std::move(center);
  bump.factor = std::move(upper);
  bump.weight = weight;
  return bump;
}

double integrand_value(const IntegrandSpec& psi, const std::vector<double>& p) {
  if (psi.kind == IntegrandSpec::Kind::norm_power) {
    double sum = 0;
    for (double c : p) {
      if (std::isinf(c))
        fail(errc::incompatible_loss, "norm-power integrand over an infinite coordinate");
      sum += std::pow(std::abs(c), psi.exponent);
    }
    return sum;
  }
  double total = 0;
  for (const auto& bump : psi.bumps) {
    if (bump.center.size() != p.size())
      fail(errc::dimension_mismatch, "integrand dimension does not match mass locations");
    bool infinite = false;
    for (double c : p)
      if (std::isinf(c)) infinite = true;
    if (infinite) continue; // the bump vanishes at infinity
    double q = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      double row = 0;
      for (std::size_t j = i; j < p.size(); ++j) row += bump.factor[i][j] * (p[j] - bump.center[j]);
      q += row * row;
    }
    total += bump.weight * std::exp(-q);
  }
  return total;
}

std::vector<double> integrand_gradient(const IntegrandSpec& psi, const std::vector<double>& p) {
  std::vector<double> grad(p.size(), 0.0);
  if (psi.kind == IntegrandSpec::Kind::norm_power) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] == 0) continue; // subgradient choice at the kink
      grad[i] = psi.exponent * std::pow(std::abs(p[i]), psi.exponent - 1) *
                (p[i] > 0 ? 1.0 : -1.0);
    }
    return grad;
  }
  for (const auto& bump : psi.bumps) {
    bool infinite = false;
    for (double c : p)
      if (std::isinf(c)) infinite = true;
    if (infinite) continue;
    std::vector<double> u(p.size(), 0.0);
    double q = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = i; j < p.size(); ++j) u[i] += bump.factor[i][j] * (p[j] - bump.center[j]);
      q += u[i] * u[i];
    }
    double scale = -2.0 * bump.weight * std::exp(-q);
    // gradient = scale * U^T u
    for (std::size_t j = 0; j < p.size(); ++j) {
      double g = 0;
      for (std::size_t i = 0; i <= j; ++i) g += bump.factor[i][j] * u[i];
      grad[j] += scale * g;
    }
  }
  return grad;
}

LossSpec negated(LossSpec spec) {
  spec.sign = -spec.sign;
  return spec;
}

namespace {

// Grid-level measure with per-mass grid provenance, kept unsorted so the
// subgradients line up with the masses.
struct TrackedMeasure {
  SignedMeasure measure;
  std::vector<std::vector<int>> birth_levels;
  std::vector<std::vector<int>> death_levels; // empty rows for euclidean / infinite
};

TrackedMeasure tracked_hilbert(const Stratification& strat, int degree) {
  TrackedMeasure out;
  out.measure.ground = GroundSpace::euclidean;
  out.measure.params = strat.grid.params();
  for (const auto& gm : hilbert_grid_masses(hilbert_grid(strat.ord, degree))) {
    Mass mass;
    mass.multiplicity = gm.multiplicity;
    mass.location.resize(out.measure.params);
    for (int i = 0; i < out.measure.params; ++i)
      mass.location[i] = strat.iota.values[i][gm.point[i]];
    out.measure.masses.push_back(std::move(mass));
    out.birth_levels.push_back(gm.point);
    out.death_levels.emplace_back();
  }
  return out;
}

TrackedMeasure tracked_rank(const Stratification& strat, int degree) {
  TrackedMeasure out;
  out.measure.ground = GroundSpace::bars;
  out.measure.params = strat.grid.params();
  RankGrid ranks = rank_grid(strat.ord, degree);
  for (const auto& gm : rank_grid_masses(ranks)) {
    Mass mass;
    mass.multiplicity = gm.multiplicity;
    mass.location.resize(2 * out.measure.params);
    for (int i = 0; i < out.measure.params; ++i)
      mass.location[i] = strat.iota.values[i][gm.birth[i]];
    for (int i = 0; i < out.measure.params; ++i)
      mass.location[out.measure.params + i] =
          gm.death_infinite ? kInf : strat.iota.values[i][gm.death[i]];
    out.measure.masses.push_back(std::move(mass));
    out.birth_levels.push_back(gm.birth);
    out.death_levels.push_back(gm.death_infinite ? std::vector<int>{} : gm.death);
  }
  return out;
}

struct IotaGradient {
  std::vector<std::vector<double>> values; // [axis][level]

  explicit IotaGradient(const Grid& grid) {
    values.resize(grid.sizes.size());
    for (std::size_t i = 0; i < grid.sizes.size(); ++i) values[i].assign(grid.sizes[i], 0.0);
  }
};

// Stage two of the chain rule: a mass location is a copy of inclusion
// coordinates, so location gradients accumulate there.
void accumulate_mass_gradient(const TrackedMeasure& tracked, std::size_t mass_index,
                              const std::vector<double>& location_grad, IotaGradient& iota_grad) {
  const int params = tracked.measure.params;
  const auto& birth = tracked.birth_levels[mass_index];
  for (int i = 0; i < params; ++i) iota_grad.values[i][birth[i]] += location_grad[i];
  if (static_cast<int>(location_grad.size()) == 2 * params) {
    const auto& death = tracked.death_levels[mass_index];
    if (death.empty()) return; // infinite deaths carry no gradient
    for (int i = 0; i < params; ++i) iota_grad.values[i][death[i]] += location_grad[params + i];
  }
}

GroundMetric metric_for(const TrackedMeasure& tracked) {
  return GroundMetric{tracked.measure.ground, tracked.measure.params};
}

void check_target(const LossSpec& spec, const TrackedMeasure& tracked) {
  if (spec.target.ground != tracked.measure.ground)
    fail(errc::ground_space_mismatch, "target measure lives on the wrong ground space");
}

} // namespace

double loss_value(const Filtration& f, const LossSpec& spec) {
  if (spec.descriptor == DescriptorKind::landscape) {
    LandscapeEvaluator evaluator(f, spec.degree);
    double total = 0;
    for (const auto& query : spec.landscape_queries) {
      double lambda = evaluator.evaluate(query.k, query.z).value;
      double diff = lambda - query.target;
      total += diff * diff;
    }
    return spec.sign * total;
  }

  Stratification strat = stratify(f);
  TrackedMeasure tracked = spec.descriptor == DescriptorKind::hilbert
                               ? tracked_hilbert(strat, spec.degree)
                               : tracked_rank(strat, spec.degree);
  if (spec.kind == LossSpec::Kind::distance_to_measure) {
    check_target(spec, tracked);
    SignedMeasure target = spec.target;
    target.params = tracked.measure.params;
    return spec.sign * ot_distance(tracked.measure, target, metric_for(tracked)).cost;
  }
  double total = 0;
  for (const auto& mass : tracked.measure.masses)
    total += static_cast<double>(mass.multiplicity) * integrand_value(spec.integrand, mass.location);
  return spec.sign * total;
}

LossEvaluation loss_gradient(const Filtration& f, const LossSpec& spec) {
  Stratification strat = stratify(f);
  Carrier carrier = choose_carrier(strat.ord);
  IotaGradient iota_grad(strat.grid);
  double value = 0;

  if (spec.descriptor == DescriptorKind::landscape) {
    LandscapeEvaluator evaluator(f, spec.degree);
    for (const auto& query : spec.landscape_queries) {
      auto eval = evaluator.evaluate(query.k, query.z);
      double diff = eval.value - query.target;
      value += diff * diff;
      if (eval.axis >= 0) iota_grad.values[eval.axis][eval.level] += 2.0 * diff * eval.d_iota;
    }
  } else {
    TrackedMeasure tracked = spec.descriptor == DescriptorKind::hilbert
                                 ? tracked_hilbert(strat, spec.degree)
                                 : tracked_rank(strat, spec.degree);
    if (spec.kind == LossSpec::Kind::distance_to_measure) {
      check_target(spec, tracked);
      SignedMeasure target = spec.target;
      target.params = tracked.measure.params;
      TransportResult transport = ot_distance(tracked.measure, target, metric_for(tracked));
      value = transport.cost;
      auto grads = ot_subgradient(tracked.measure, transport.assignment);
      for (std::size_t m = 0; m < grads.size(); ++m)
        accumulate_mass_gradient(tracked, m, grads[m], iota_grad);
    } else {
      for (std::size_t m = 0; m < tracked.measure.masses.size(); ++m) {
        const Mass& mass = tracked.measure.masses[m];
        value += static_cast<double>(mass.multiplicity) * integrand_value(spec.integrand, mass.location);
        auto grad = integrand_gradient(spec.integrand, mass.location);
        for (double& g : grad) g *= static_cast<double>(mass.multiplicity);
        accumulate_mass_gradient(tracked, m, grad, iota_grad);
      }
    }
  }

  // Stage three: each inclusion coordinate equals the filtration value of
  // its carrier simplex, so the gradient lands there and nowhere else.
  LossEvaluation out;
  out.value = spec.sign * value;
  out.gradient.values.assign(f.values.size(), std::vector<double>(f.params, 0.0));
  for (int axis = 0; axis < strat.grid.params(); ++axis) {
    for (int level = 0; level < strat.grid.sizes[axis]; ++level) {
      double g = iota_grad.values[axis][level];
      if (g == 0) continue;
      out.gradient.values[carrier.simplex[axis][level]][axis] += spec.sign * g;
    }
  }
  return out;
}

PipelineBuild build_pipeline(const PointCloud& cloud, const PipelineSpec& pipeline) {
  PipelineBuild build;
  if (pipeline.kind == PipelineSpec::Kind::vietoris_rips) {
    auto rips = vietoris_rips(cloud, pipeline.max_dim, pipeline.max_radius);
    build.filtration = std::move(rips.filtration);
    build.max_edge = std::move(rips.max_edge);
    return build;
  }
  double bandwidth = pipeline.bandwidth > 0 ? pipeline.bandwidth : default_bandwidth(cloud);
  DensityEstimate density = gaussian_kde(cloud, bandwidth);
  auto rips = function_rips(cloud, density, pipeline.max_dim, pipeline.max_radius);
  build.filtration = std::move(rips.filtration);
  build.max_edge = std::move(rips.max_edge);
  build.peak_vertex = std::move(rips.peak_vertex);
  build.bandwidth = bandwidth;
  return build;
}

PointCloudEvaluation pointcloud_gradient(const PointCloud& cloud, const PipelineSpec& pipeline,
                                         const LossSpec& spec) {
  PipelineBuild build = build_pipeline(cloud, pipeline);
  LossEvaluation inner = loss_gradient(build.filtration, spec);

  PointCloudEvaluation out;
  out.value = inner.value;
  out.gradient.assign(cloud.size(), std::vector<double>(cloud.dim, 0.0));

  // Gradients of the KDE at each needed peak vertex, computed once.
  std::map<int, std::vector<std::vector<double>>> kde_grads;
  auto density_gradient = [&](int vertex) -> const std::vector<std::vector<double>>& {
    auto it = kde_grads.find(vertex);
    if (it == kde_grads.end())
      it = kde_grads.emplace(vertex, kde_gradient(cloud, build.bandwidth, vertex)).first;
    return it->second;
  };

  for (std::size_t s = 0; s < build.filtration.values.size(); ++s) {
    // Rips coordinate: the value is the length of the witnessing edge.
    double g0 = inner.gradient.values[s][0];
    if (g0 != 0) {
      auto [u, v] = build.max_edge[s];
      if (u >= 0) {
        double dist = euclidean_distance(cloud.points[u], cloud.points[v]);
        if (dist == 0) {
          warn("degenerate maximal edge on " +
               build.filtration.complex->simplex_label(static_cast<int>(s)) +
               ", dropping its gradient");
        } else {
          for (int c = 0; c < cloud.dim; ++c) {
            double dir = (cloud.points[u][c] - cloud.points[v][c]) / dist;
            out.gradient[u][c] += g0 * dir;
            out.gradient[v][c] -= g0 * dir;
          }
        }
      }
    }
    // Codensity coordinate: value is minus the density at the peak vertex.
    if (build.filtration.params >= 2) {
      double g1 = inner.gradient.values[s][1];
      if (g1 != 0) {
        const auto& dgrad = density_gradient(build.peak_vertex[s]);
        for (std::size_t p = 0; p < cloud.size(); ++p)
          for (int c = 0; c < cloud.dim; ++c) out.gradient[p][c] -= g1 * dgrad[p][c];
      }
    }
  }
  return out;
}

} // namespace mpho
