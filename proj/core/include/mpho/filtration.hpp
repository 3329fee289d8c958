#pragma once

#include "mpho/complex.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <vector>

namespace mpho {

/// An n-parameter filtration: one vector in R^n per simplex, monotone under
/// the face order in every coordinate. Values are immutable; optimization
/// works on fresh copies.
struct Filtration {
  ComplexPtr complex;
  int params = 1;
  std::vector<std::vector<double>> values; // [simplex][coordinate]

  double value(int simplex, int coordinate) const { return values[simplex][coordinate]; }
};

/// Checks finiteness and coordinatewise monotonicity; throws on violation.
void validate_filtration(const Filtration& f);
bool is_monotone(const Filtration& f);

struct PointCloud {
  std::vector<std::vector<double>> points;
  int dim = 0;

  std::size_t size() const { return points.size(); }
};

PointCloud make_point_cloud(std::vector<std::vector<double>> points);
double cloud_diameter(const PointCloud& cloud);
double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b);

struct DensityEstimate {
  std::vector<double> values; // one per point, strictly positive
  double bandwidth = 0;
  std::string kernel = "gaussian";
};

/// Extends vertex values to the whole complex by coordinatewise max over the
/// vertices of each simplex.
Filtration lower_star(ComplexPtr complex, const std::map<VertexId, std::vector<double>>& vertex_values);

/// Vietoris-Rips construction. Simplices are all subsets of at most
/// max_dim+1 points with pairwise distance <= max_radius; the filtration
/// value of a simplex is its diameter. max_edge records, per simplex, the
/// lexicographically smallest pair realizing the diameter (-1,-1 for
/// vertices); gradients flow through it.
struct VietorisRipsResult {
  Filtration filtration; // one parameter
  std::vector<std::array<int, 2>> max_edge;
};

VietorisRipsResult vietoris_rips(const PointCloud& cloud, int max_dim, double max_radius);

/// density(x_j) = (1/|X|) sum_k exp(-|x_j - x_k|^2 / (2 bandwidth^2)).
DensityEstimate gaussian_kde(const PointCloud& cloud, double bandwidth);
double default_bandwidth(const PointCloud& cloud); // 0.2 x cloud diameter

/// d(density)/d(point coordinates): gradient of the density at point `at`
/// with respect to every point of the cloud, in closed form.
std::vector<std::vector<double>> kde_gradient(const PointCloud& cloud, double bandwidth, int at);

/// Function-Rips bifiltration: first coordinate the Rips diameter, second
/// the max over vertices of the negated density (codensity), so both axes
/// grow sublevel sets. peak_vertex records the vertex attaining the max.
struct FunctionRipsResult {
  Filtration filtration; // two parameters
  std::vector<std::array<int, 2>> max_edge;
  std::vector<int> peak_vertex;
};

FunctionRipsResult function_rips(const PointCloud& cloud, const DensityEstimate& density,
                                 int max_dim, double max_radius);

/// Filtration file: one line per simplex with n comma-separated reals, in
/// the same order as the complex file. Point-cloud file: CSV, one point per
/// row.
Filtration read_filtration(std::istream& in, ComplexPtr complex, int params);
void write_filtration(std::ostream& out, const Filtration& f);
PointCloud read_point_cloud(std::istream& in);
void write_point_cloud(std::ostream& out, const PointCloud& cloud);

} // namespace mpho
