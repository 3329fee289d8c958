#pragma once

#include "mpho/descriptors.hpp"
#include "mpho/filtration.hpp"
#include "mpho/measure.hpp"
#include "mpho/transport.hpp"

#include <limits>
#include <vector>

namespace mpho {

/// Differentiable integrands for integration losses over signed measures.
struct IntegrandSpec {
  enum class Kind { gaussian_mixture, norm_power };

  struct Bump {
    std::vector<double> center;
    // Upper-triangular factor U with precision = U^T U, so
    // psi(p) = weight * exp(-|U (p - center)|^2).
    std::vector<std::vector<double>> factor;
    double weight = 1;
  };

  Kind kind = Kind::norm_power;
  std::vector<Bump> bumps;
  double exponent = 2; // norm_power: psi(x) = sum_j |x_j|^exponent
};

/// Validates symmetry and positive definiteness of sigma_inverse (by
/// Cholesky) and stores its factor.
IntegrandSpec::Bump make_gaussian_bump(std::vector<double> center,
                                       const std::vector<std::vector<double>>& sigma_inverse,
                                       double weight);

double integrand_value(const IntegrandSpec& psi, const std::vector<double>& p);
std::vector<double> integrand_gradient(const IntegrandSpec& psi, const std::vector<double>& p);

enum class DescriptorKind { hilbert, rank, landscape };

/// One landscape evaluation: level k at sample point z, compared against a
/// target value under squared error.
struct LandscapeQuery {
  int k = 1;
  std::vector<double> z;
  double target = 0;
};

/// A topological loss: a descriptor of the filtration composed with either
/// the transport distance to a fixed measure, integration of a fixed
/// integrand, or squared error of evaluated landscapes. sign = -1 maximizes.
struct LossSpec {
  enum class Kind { distance_to_measure, integration };

  Kind kind = Kind::distance_to_measure;
  DescriptorKind descriptor = DescriptorKind::hilbert;
  int degree = 0;
  int sign = 1;
  SignedMeasure target;                         // distance_to_measure
  IntegrandSpec integrand;                      // integration
  std::vector<LandscapeQuery> landscape_queries; // landscape descriptor
};

LossSpec negated(LossSpec spec);

/// Per-simplex, per-coordinate gradient, same shape as Filtration::values.
/// Nonzero only on carrier simplices.
struct FiltrationGradient {
  std::vector<std::vector<double>> values;
};

double loss_value(const Filtration& f, const LossSpec& spec);

struct LossEvaluation {
  double value = 0;
  FiltrationGradient gradient;
};

/// Value and one Clarke subgradient of the loss. The chain rule runs in
/// three stages: subgradients with respect to descriptor mass locations,
/// accumulation onto the grid-inclusion coordinates each location is a copy
/// of, and deposit onto the carrier simplex realizing each coordinate.
LossEvaluation loss_gradient(const Filtration& f, const LossSpec& spec);

/// Filtration constructors the point-cloud chain rule knows how to
/// differentiate. bandwidth <= 0 selects the data-dependent default at
/// construction time.
struct PipelineSpec {
  enum class Kind { vietoris_rips, function_rips };

  Kind kind = Kind::vietoris_rips;
  int max_dim = 2;
  double max_radius = std::numeric_limits<double>::infinity();
  double bandwidth = 0;
};

/// The filtration a pipeline produces, with its construction witnesses.
struct PipelineBuild {
  Filtration filtration;
  std::vector<std::array<int, 2>> max_edge;
  std::vector<int> peak_vertex; // function_rips only
  double bandwidth = 0;         // function_rips only
};

PipelineBuild build_pipeline(const PointCloud& cloud, const PipelineSpec& pipeline);

struct PointCloudEvaluation {
  double value = 0;
  std::vector<std::vector<double>> gradient; // [point][ambient coordinate]
};

/// Composes loss_gradient with the constructor chain rule: Rips coordinates
/// route to the endpoints of the witnessing edge, codensity coordinates
/// route through the closed-form KDE gradient (bandwidth held fixed).
PointCloudEvaluation pointcloud_gradient(const PointCloud& cloud, const PipelineSpec& pipeline,
                                         const LossSpec& spec);

} // namespace mpho
