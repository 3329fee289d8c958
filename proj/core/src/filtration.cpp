#include "mpho/filtration.hpp"

#include "mpho/error.hpp"
#include "mpho/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace mpho {

void validate_filtration(const Filtration& f) {
  if (!f.complex) fail(errc::config_error, "filtration has no complex");
  if (f.values.size() != f.complex->size())
    fail(errc::length_mismatch, "filtration has " + std::to_string(f.values.size()) +
                                    " value rows for " + std::to_string(f.complex->size()) +
                                    " simplices");
  for (std::size_t s = 0; s < f.values.size(); ++s) {
    if (static_cast<int>(f.values[s].size()) != f.params)
      fail(errc::dimension_mismatch, "simplex " + f.complex->simplex_label(static_cast<int>(s)) +
                                         " has " + std::to_string(f.values[s].size()) +
                                         " coordinates, expected " + std::to_string(f.params));
    for (double v : f.values[s])
      if (!std::isfinite(v))
        fail(errc::parse_error,
             "non-finite filtration value on " + f.complex->simplex_label(static_cast<int>(s)));
  }
  for (std::size_t s = 0; s < f.values.size(); ++s) {
    for (int face : f.complex->facets(static_cast<int>(s))) {
      for (int i = 0; i < f.params; ++i) {
        if (f.values[face][i] > f.values[s][i])
          fail(errc::parse_error, "filtration not monotone: " + f.complex->simplex_label(face) +
                                      " exceeds " + f.complex->simplex_label(static_cast<int>(s)) +
                                      " in coordinate " + std::to_string(i + 1));
      }
    }
  }
}

bool is_monotone(const Filtration& f) {
  for (std::size_t s = 0; s < f.values.size(); ++s)
    for (int face : f.complex->facets(static_cast<int>(s)))
      for (int i = 0; i < f.params; ++i)
        if (f.values[face][i] > f.values[s][i]) return false;
  return true;
}

PointCloud make_point_cloud(std::vector<std::vector<double>> points) {
  if (points.empty()) fail(errc::config_error, "point cloud is empty");
  PointCloud cloud;
  cloud.dim = static_cast<int>(points.front().size());
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != cloud.dim)
      fail(errc::dimension_mismatch, "point cloud rows have inconsistent lengths");
    for (double c : p)
      if (!std::isfinite(c)) fail(errc::parse_error, "non-finite point coordinate");
  }
  cloud.points = std::move(points);
  return cloud;
}

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double sq = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    sq += d * d;
  }
  return std::sqrt(sq);
}

double cloud_diameter(const PointCloud& cloud) {
  double best = 0;
  for (std::size_t i = 0; i < cloud.size(); ++i)
    for (std::size_t j = i + 1; j < cloud.size(); ++j)
      best = std::max(best, euclidean_distance(cloud.points[i], cloud.points[j]));
  return best;
}

Filtration lower_star(ComplexPtr complex, const std::map<VertexId, std::vector<double>>& vertex_values) {
  if (vertex_values.empty()) fail(errc::missing_vertex_value, "no vertex values given");
  int params = static_cast<int>(vertex_values.begin()->second.size());

  std::vector<const std::vector<double>*> by_index(complex->vertex_count(), nullptr);
  for (std::size_t i = 0; i < complex->vertex_count(); ++i) {
    auto it = vertex_values.find(complex->vertex_ids()[i]);
    if (it == vertex_values.end())
      fail(errc::missing_vertex_value,
           "vertex " + std::to_string(complex->vertex_ids()[i]) + " has no value");
    if (static_cast<int>(it->second.size()) != params)
      fail(errc::dimension_mismatch, "vertex values have inconsistent lengths");
    by_index[i] = &it->second;
  }

  Filtration f;
  f.complex = complex;
  f.params = params;
  f.values.resize(complex->size());
  for (std::size_t s = 0; s < complex->size(); ++s) {
    std::vector<double> v(params, -std::numeric_limits<double>::infinity());
    for (int vertex : complex->simplex(static_cast<int>(s)))
      for (int i = 0; i < params; ++i) v[i] = std::max(v[i], (*by_index[vertex])[i]);
    f.values[static_cast<int>(s)] = std::move(v);
  }
  return f;
}

namespace {

// All cliques with at most max_dim+1 vertices in the distance graph, together
// with each simplex's diameter and the edge realizing it.
struct RipsSkeleton {
  ComplexPtr complex;
  std::vector<double> diameter;          // per simplex
  std::vector<std::array<int, 2>> edge;  // per simplex
};

RipsSkeleton build_rips(const PointCloud& cloud, int max_dim, double max_radius) {
  if (max_dim < 1) fail(errc::config_error, "max_dim must be at least 1");
  const int n = static_cast<int>(cloud.size());

  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    for (int j = 0; j < n; ++j)
      dist[i][j] = euclidean_distance(cloud.points[i], cloud.points[j]);
  });

  std::vector<std::vector<int>> cliques;
  for (int i = 0; i < n; ++i) cliques.push_back({i});
  std::size_t level_begin = 0, level_end = cliques.size();
  for (int d = 1; d <= max_dim; ++d) {
    for (std::size_t c = level_begin; c < level_end; ++c) {
      const std::vector<int> base = cliques[c];
      for (int v = base.back() + 1; v < n; ++v) {
        bool ok = true;
        for (int u : base) {
          if (dist[u][v] > max_radius) {
            ok = false;
            break;
          }
        }
        if (ok) {
          std::vector<int> next = base;
          next.push_back(v);
          cliques.push_back(std::move(next));
        }
      }
    }
    level_begin = level_end;
    level_end = cliques.size();
  }

  std::vector<std::vector<VertexId>> raw;
  raw.reserve(cliques.size());
  for (const auto& c : cliques) raw.emplace_back(c.begin(), c.end());

  RipsSkeleton skeleton;
  skeleton.complex = std::make_shared<const SimplicialComplex>(SimplicialComplex::validate(raw));
  skeleton.diameter.resize(skeleton.complex->size(), 0.0);
  skeleton.edge.resize(skeleton.complex->size(), {-1, -1});
  for (std::size_t s = 0; s < skeleton.complex->size(); ++s) {
    const auto& simplex = skeleton.complex->simplex(static_cast<int>(s));
    double best = 0;
    std::array<int, 2> best_edge = {-1, -1};
    for (std::size_t a = 0; a < simplex.size(); ++a) {
      for (std::size_t b = a + 1; b < simplex.size(); ++b) {
        double d = dist[simplex[a]][simplex[b]];
        if (d > best) {
          best = d;
          best_edge = {simplex[a], simplex[b]};
        }
      }
    }
    skeleton.diameter[s] = best;
    skeleton.edge[s] = best_edge;
  }
  return skeleton;
}

} // namespace

VietorisRipsResult vietoris_rips(const PointCloud& cloud, int max_dim, double max_radius) {
  RipsSkeleton skeleton = build_rips(cloud, max_dim, max_radius);
  VietorisRipsResult out;
  out.filtration.complex = skeleton.complex;
  out.filtration.params = 1;
  out.filtration.values.resize(skeleton.complex->size());
  for (std::size_t s = 0; s < skeleton.complex->size(); ++s)
    out.filtration.values[s] = {skeleton.diameter[s]};
  out.max_edge = std::move(skeleton.edge);
  return out;
}

DensityEstimate gaussian_kde(const PointCloud& cloud, double bandwidth) {
  if (!(bandwidth > 0)) fail(errc::nonpositive_bandwidth, std::to_string(bandwidth));
  const std::size_t n = cloud.size();
  DensityEstimate density;
  density.bandwidth = bandwidth;
  density.values.resize(n, 0.0);
  const double inv = 1.0 / (2.0 * bandwidth * bandwidth);
  parallel_for(n, [&](std::size_t j) {
    double sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
      double d = euclidean_distance(cloud.points[j], cloud.points[k]);
      sum += std::exp(-d * d * inv);
    }
    density.values[j] = sum / static_cast<double>(n);
  });
  return density;
}

double default_bandwidth(const PointCloud& cloud) { return 0.2 * cloud_diameter(cloud); }

std::vector<std::vector<double>> kde_gradient(const PointCloud& cloud, double bandwidth, int at) {
  const std::size_t n = cloud.size();
  const int d = cloud.dim;
  const double inv = 1.0 / (2.0 * bandwidth * bandwidth);
  std::vector<std::vector<double>> grad(n, std::vector<double>(d, 0.0));
  const auto& xj = cloud.points[at];
  for (std::size_t k = 0; k < n; ++k) {
    if (static_cast<int>(k) == at) continue;
    double dist = euclidean_distance(xj, cloud.points[k]);
    double w = std::exp(-dist * dist * inv) / static_cast<double>(n);
    for (int c = 0; c < d; ++c) {
      double diff = xj[c] - cloud.points[k][c];
      // d/dx_at of exp(-|x_at - x_k|^2 / (2h^2))
      grad[at][c] += -w * diff / (bandwidth * bandwidth);
      // d/dx_k of the same term
      grad[k][c] += w * diff / (bandwidth * bandwidth);
    }
  }
  return grad;
}

FunctionRipsResult function_rips(const PointCloud& cloud, const DensityEstimate& density,
                                 int max_dim, double max_radius) {
  if (density.values.size() != cloud.size())
    fail(errc::length_mismatch, "density has " + std::to_string(density.values.size()) +
                                    " values for " + std::to_string(cloud.size()) + " points");
  RipsSkeleton skeleton = build_rips(cloud, max_dim, max_radius);

  FunctionRipsResult out;
  out.filtration.complex = skeleton.complex;
  out.filtration.params = 2;
  out.filtration.values.resize(skeleton.complex->size());
  out.max_edge = std::move(skeleton.edge);
  out.peak_vertex.resize(skeleton.complex->size(), -1);
  for (std::size_t s = 0; s < skeleton.complex->size(); ++s) {
    const auto& simplex = skeleton.complex->simplex(static_cast<int>(s));
    int peak = simplex.front();
    double codensity = -density.values[peak];
    for (int v : simplex) {
      if (-density.values[v] > codensity) {
        codensity = -density.values[v];
        peak = v;
      }
    }
    out.peak_vertex[s] = peak;
    out.filtration.values[s] = {skeleton.diameter[s], codensity};
  }
  return out;
}

namespace {

std::vector<double> parse_real_row(const std::string& line, int line_no) {
  std::vector<double> out;
  std::stringstream tokens(line);
  std::string token;
  while (std::getline(tokens, token, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(token, &used);
      while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
      if (used != token.size()) throw std::invalid_argument(token);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(errc::parse_error, "line " + std::to_string(line_no) + ": bad number '" + token + "'");
    }
  }
  return out;
}

} // namespace

Filtration read_filtration(std::istream& in, ComplexPtr complex, int params) {
  Filtration f;
  f.complex = complex;
  f.params = params;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    auto row = parse_real_row(line, line_no);
    if (static_cast<int>(row.size()) != params)
      fail(errc::dimension_mismatch, "line " + std::to_string(line_no) + ": expected " +
                                         std::to_string(params) + " coordinates, got " +
                                         std::to_string(row.size()));
    f.values.push_back(std::move(row));
  }
  validate_filtration(f);
  return f;
}

void write_filtration(std::ostream& out, const Filtration& f) {
  out << std::setprecision(17);
  for (const auto& row : f.values) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << row[i];
    }
    out << '\n';
  }
}

PointCloud read_point_cloud(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    rows.push_back(parse_real_row(line, line_no));
  }
  return make_point_cloud(std::move(rows));
}

void write_point_cloud(std::ostream& out, const PointCloud& cloud) {
  out << std::setprecision(17);
  for (const auto& p : cloud.points) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) out << ',';
      out << p[i];
    }
    out << '\n';
  }
}

} // namespace mpho
