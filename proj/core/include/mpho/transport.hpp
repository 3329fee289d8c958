#pragma once

#include "mpho/measure.hpp"

#include <vector>

namespace mpho {

/// Ground space for optimal transport: R^n under the sup norm, or bars with
/// the diagonal available as a sink (partial transport).
struct GroundMetric {
  GroundSpace space = GroundSpace::euclidean;
  int params = 1;
};

enum class MassOrigin { mu_plus, mu_minus, nu_plus, nu_minus, diagonal };

/// One matched pair of the optimal assignment. `left` comes from the
/// mu+ + nu- side, `right` from nu+ + mu-; `*_mass` indexes back into the
/// originating measure's mass list (-1 for diagonal slots).
struct MatchedPair {
  std::vector<double> left_location;
  std::vector<double> right_location;
  MassOrigin left_origin = MassOrigin::diagonal;
  MassOrigin right_origin = MassOrigin::diagonal;
  int left_mass = -1;
  int right_mass = -1;
  double cost = 0;
};

struct Assignment {
  std::vector<MatchedPair> pairs;
  double cost = 0;
  GroundMetric metric;
};

struct TransportResult {
  double cost = 0; // +infinity when no assignment exists
  Assignment assignment;
};

/// Optimal transport between signed measures: the signed problem reduces to
/// the positive one between mu+ + nu- and nu+ + mu-, solved exactly by the
/// Hungarian algorithm. On plain R^n a total-mass mismatch gives +infinity
/// (the assignment set is empty). On bars, every mass may instead pay its
/// sup-norm distance to the diagonal, via the usual augmented square matrix.
TransportResult ot_distance(const SignedMeasure& mu, const SignedMeasure& nu,
                            const GroundMetric& metric);

/// One Clarke subgradient of the assignment cost with respect to the mass
/// locations of mu (first argument of ot_distance). Sup-norm terms pick the
/// lowest maximizing coordinate; equal endpoints give a zero vector.
/// Requires a finite-cost assignment.
std::vector<std::vector<double>> ot_subgradient(const SignedMeasure& mu, const Assignment& assignment);

} // namespace mpho
