#pragma once

// Shared generators and independent oracles for the test suites. The
// oracles deliberately avoid the library's computation paths: textbook row
// reduction for F2 ranks, the classical pairing algorithm for barcodes,
// permutation search for transport, and a margin sweep for landscapes.

#include "mpho/complex.hpp"
#include "mpho/descriptors.hpp"
#include "mpho/filtration.hpp"
#include "mpho/measure.hpp"
#include "mpho/stratification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

namespace testutil {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------- oracles

/// Textbook Gaussian elimination over F2 on a dense 0/1 matrix.
inline int rank_mod2(std::vector<std::vector<int>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m.front().size();
  int rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[row]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r != row && m[r][col]) {
        for (std::size_t c = 0; c < cols; ++c) m[r][c] ^= m[row][c];
      }
    }
    ++row;
    ++rank;
  }
  return rank;
}

struct OracleBar {
  double birth = 0;
  double death = kInf;

  bool operator==(const OracleBar& o) const { return birth == o.birth && death == o.death; }
  bool operator<(const OracleBar& o) const {
    return birth != o.birth ? birth < o.birth : death < o.death;
  }
};

inline std::vector<int> xor_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) out.push_back(a[i++]);
    else if (b[j] < a[i]) out.push_back(b[j++]);
    else { ++i; ++j; }
  }
  out.insert(out.end(), a.begin() + i, a.end());
  out.insert(out.end(), b.begin() + j, b.end());
  return out;
}

/// Classical persistence pairing by column reduction, for one-parameter
/// filtrations. Zero-length bars are dropped.
inline std::vector<OracleBar> reduction_barcode(const mpho::Filtration& f, int degree) {
  const mpho::SimplicialComplex& complex = *f.complex;
  const int n = static_cast<int>(complex.size());

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (f.values[a][0] != f.values[b][0]) return f.values[a][0] < f.values[b][0];
    if (complex.simplex_dim(a) != complex.simplex_dim(b))
      return complex.simplex_dim(a) < complex.simplex_dim(b);
    return a < b;
  });
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;

  std::vector<std::vector<int>> reduced(n);
  for (int j = 0; j < n; ++j) {
    std::vector<int> col;
    for (int face : complex.facets(order[j])) col.push_back(position[face]);
    std::sort(col.begin(), col.end());
    reduced[j] = std::move(col);
  }

  std::vector<int> col_with_low(n, -1);
  std::vector<int> killer(n, -1);
  for (int j = 0; j < n; ++j) {
    while (!reduced[j].empty()) {
      int low = reduced[j].back();
      if (col_with_low[low] < 0) {
        col_with_low[low] = j;
        killer[low] = j;
        break;
      }
      reduced[j] = xor_sorted(reduced[j], reduced[col_with_low[low]]);
    }
  }

  std::vector<OracleBar> bars;
  for (int i = 0; i < n; ++i) {
    if (!reduced[i].empty()) continue; // negative column, creates nothing
    if (complex.simplex_dim(order[i]) != degree) continue;
    double birth = f.values[order[i]][0];
    double death = killer[i] >= 0 ? f.values[order[killer[i]]][0] : kInf;
    if (birth < death) bars.push_back({birth, death});
  }
  std::sort(bars.begin(), bars.end());
  return bars;
}

/// Expands a one-parameter rank measure into a sorted bar list for multiset
/// comparison against the reduction oracle. Requires positive multiplicities.
inline std::vector<OracleBar> bars_of_measure(const mpho::SignedMeasure& measure, bool& positive) {
  positive = true;
  std::vector<OracleBar> bars;
  for (const auto& mass : measure.masses) {
    if (mass.multiplicity < 0) positive = false;
    for (long long c = 0; c < std::llabs(mass.multiplicity); ++c)
      bars.push_back({mass.location[0], mass.location[1]});
  }
  std::sort(bars.begin(), bars.end());
  return bars;
}

/// Factorial brute force for the transport cost: minimum over all
/// permutations, with the diagonal slots written out explicitly for bars.
inline double brute_force_ot(const mpho::SignedMeasure& mu, const mpho::SignedMeasure& nu,
                             mpho::GroundSpace space, int params) {
  std::vector<std::vector<double>> left, right;
  for (const auto& m : mu.masses)
    for (long long c = 0; c < m.multiplicity; ++c) left.push_back(m.location);
  for (const auto& m : nu.masses)
    for (long long c = 0; c < -m.multiplicity; ++c) left.push_back(m.location);
  for (const auto& m : nu.masses)
    for (long long c = 0; c < m.multiplicity; ++c) right.push_back(m.location);
  for (const auto& m : mu.masses)
    for (long long c = 0; c < -m.multiplicity; ++c) right.push_back(m.location);

  const std::size_t la = left.size(), lb = right.size();
  std::size_t size = space == mpho::GroundSpace::bars ? la + lb : la;
  if (space == mpho::GroundSpace::euclidean && la != lb) return kInf;
  if (size == 0) return 0;

  auto cost_of = [&](std::size_t i, std::size_t j) -> double {
    if (space == mpho::GroundSpace::euclidean) return mpho::linf_distance(left[i], right[j]);
    bool left_real = i < la, right_real = j < lb;
    if (left_real && right_real) return mpho::linf_distance(left[i], right[j]);
    if (left_real && !right_real)
      return (j - lb == i) ? mpho::bar_diagonal_distance(left[i], params) : kInf;
    if (!left_real && right_real)
      return (i - la == j) ? mpho::bar_diagonal_distance(right[j], params) : kInf;
    return 0;
  };

  std::vector<int> perm(size);
  std::iota(perm.begin(), perm.end(), 0);
  double best = kInf;
  do {
    double total = 0;
    for (std::size_t i = 0; i < size && total < best; ++i) total += cost_of(i, perm[i]);
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Sublevel subcomplex at a real point.
inline mpho::Subcomplex sublevel_at(const mpho::Filtration& f, const std::vector<double>& r) {
  std::vector<char> mask(f.complex->size(), 0);
  for (std::size_t s = 0; s < f.complex->size(); ++s) {
    bool in = true;
    for (int i = 0; i < f.params; ++i)
      if (f.values[s][i] > r[i]) in = false;
    mask[s] = in ? 1 : 0;
  }
  return mpho::Subcomplex(f.complex, std::move(mask));
}

/// Margin sweep for the landscape: scans the rank of the diagonal segment on
/// a fine grid of margins. The true value lies within one step of the last
/// margin where the rank still reached k.
inline double landscape_sweep_oracle(const mpho::Filtration& f, int degree, int k,
                                     const std::vector<double>& z, double step, double max_margin) {
  double last_good = -1;
  for (double margin = 0; margin <= max_margin; margin += step) {
    std::vector<double> lo(z), hi(z);
    for (int i = 0; i < f.params; ++i) {
      lo[i] -= margin;
      hi[i] += margin;
    }
    mpho::Subcomplex inner = sublevel_at(f, lo);
    mpho::Subcomplex outer = sublevel_at(f, hi);
    int rank = mpho::inclusion_rank(inner, outer, degree);
    if (rank >= k) last_good = margin;
    else break;
  }
  return last_good < 0 ? 0 : last_good;
}

/// Checks the defining identity of the rank decomposition against the rank
/// table at every comparable grid pair and on the infinity rows, by prefix
/// sums over births and finite deaths.
inline bool verify_rank_identity(const mpho::RankGrid& ranks,
                                 const std::vector<mpho::GridBarMass>& masses) {
  const mpho::GridIndexer& indexer = ranks.indexer;
  const long long P = indexer.count;
  const int params = static_cast<int>(indexer.sizes.size());

  std::vector<long long> finite(static_cast<std::size_t>(P) * P, 0);
  std::vector<long long> essential(P, 0);
  for (const auto& bar : masses) {
    long long b = indexer.index_of(bar.birth);
    if (bar.death_infinite) essential[b] += bar.multiplicity;
    else finite[b * P + indexer.index_of(bar.death)] += bar.multiplicity;
  }

  // downset-cumulate births (both tables) and finite deaths
  for (int axis = 0; axis < params; ++axis) {
    long long stride = indexer.strides[axis];
    for (long long b = 0; b < P; ++b) {
      int level = static_cast<int>((b / stride) % indexer.sizes[axis]);
      if (level == 0) continue;
      essential[b] += essential[b - stride];
      for (long long d = 0; d < P; ++d) finite[b * P + d] += finite[(b - stride) * P + d];
    }
  }
  for (int axis = 0; axis < params; ++axis) {
    long long stride = indexer.strides[axis];
    for (long long d = 0; d < P; ++d) {
      int level = static_cast<int>((d / stride) % indexer.sizes[axis]);
      if (level == 0) continue;
      for (long long b = 0; b < P; ++b) finite[b * P + d] += finite[b * P + (d - stride)];
    }
  }

  for (long long r = 0; r < P; ++r) {
    long long total_finite = finite[r * P + (P - 1)];
    for (long long s = 0; s < P; ++s) {
      int rank = ranks.rank(r, s);
      if (rank < 0) continue;
      long long alive = total_finite - finite[r * P + s] + essential[r];
      if (alive != rank) return false;
    }
    if (essential[r] != ranks.rank(r, P - 1)) return false;
  }
  return true;
}

/// Total mass of the downset {s : s <= r}.
inline long long downset_mass(const mpho::SignedMeasure& measure, const std::vector<double>& r) {
  long long total = 0;
  for (const auto& mass : measure.masses) {
    bool inside = true;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (mass.location[i] > r[i]) inside = false;
    if (inside) total += mass.multiplicity;
  }
  return total;
}

// ------------------------------------------------------------- generators

/// Random face-closed complex: the flag complex (up to dimension 2) of a
/// random graph, truncated from the top dimension down to the size budget.
inline mpho::SimplicialComplex random_complex(std::mt19937_64& rng, int max_simplices) {
  std::uniform_int_distribution<int> vertex_count(2, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int v = vertex_count(rng);
  const double edge_prob = 0.25 + 0.5 * unit(rng);

  std::vector<std::vector<int>> adjacency(v, std::vector<int>(v, 0));
  std::vector<std::vector<mpho::VertexId>> raw;
  for (int i = 0; i < v; ++i) raw.push_back({i});
  std::vector<std::vector<mpho::VertexId>> edges, triangles;
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j)
      if (unit(rng) < edge_prob) {
        adjacency[i][j] = adjacency[j][i] = 1;
        edges.push_back({i, j});
      }
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j)
      for (int l = j + 1; l < v; ++l)
        if (adjacency[i][j] && adjacency[j][l] && adjacency[i][l]) triangles.push_back({i, j, l});

  int budget = max_simplices - static_cast<int>(raw.size()) - static_cast<int>(edges.size());
  std::shuffle(triangles.begin(), triangles.end(), rng);
  if (budget < static_cast<int>(triangles.size()))
    triangles.resize(std::max(budget, 0));
  raw.insert(raw.end(), edges.begin(), edges.end());
  raw.insert(raw.end(), triangles.begin(), triangles.end());
  return mpho::SimplicialComplex::validate(raw);
}

/// Random monotone filtration: vertices uniform, higher simplices the max of
/// their faces plus a nonnegative bump. Sometimes quantized to one decimal
/// to produce ties and duplicate values.
inline mpho::Filtration random_filtration(mpho::ComplexPtr complex, int params,
                                          std::mt19937_64& rng, bool allow_ties = true) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  mpho::Filtration f;
  f.complex = complex;
  f.params = params;
  f.values.resize(complex->size());
  for (std::size_t s = 0; s < complex->size(); ++s) {
    std::vector<double> value(params, 0.0);
    if (complex->simplex_dim(static_cast<int>(s)) == 0) {
      for (int i = 0; i < params; ++i) value[i] = unit(rng);
    } else {
      for (int face : complex->facets(static_cast<int>(s)))
        for (int i = 0; i < params; ++i) value[i] = std::max(value[i], f.values[face][i]);
      for (int i = 0; i < params; ++i) value[i] += 0.5 * unit(rng);
    }
    f.values[s] = std::move(value);
  }
  if (allow_ties && unit(rng) < 0.35) {
    for (auto& row : f.values)
      for (double& x : row) x = std::round(x * 10.0) / 10.0;
  }
  return f;
}

inline mpho::SignedMeasure random_measure(std::mt19937_64& rng, int params, int max_masses) {
  std::uniform_int_distribution<int> count(0, max_masses);
  std::uniform_int_distribution<int> mult(-2, 2);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  mpho::SignedMeasure measure;
  measure.ground = mpho::GroundSpace::euclidean;
  measure.params = params;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    mpho::Mass mass;
    for (int c = 0; c < params; ++c) mass.location.push_back(coord(rng));
    mass.multiplicity = mult(rng);
    measure.masses.push_back(std::move(mass));
  }
  return canonicalize(std::move(measure));
}

inline mpho::SignedMeasure random_bars_measure(std::mt19937_64& rng, int params, int max_masses) {
  std::uniform_int_distribution<int> count(0, max_masses);
  std::uniform_int_distribution<int> mult(-2, 2);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::uniform_real_distribution<double> stretch(0.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  mpho::SignedMeasure measure;
  measure.ground = mpho::GroundSpace::bars;
  measure.params = params;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    mpho::Mass mass;
    mass.location.resize(2 * params);
    bool infinite = unit(rng) < 0.2;
    for (int c = 0; c < params; ++c) {
      mass.location[c] = coord(rng);
      mass.location[params + c] = infinite ? kInf : mass.location[c] + stretch(rng);
    }
    mass.multiplicity = mult(rng);
    measure.masses.push_back(std::move(mass));
  }
  return canonicalize(std::move(measure));
}

inline mpho::PointCloud random_cloud(std::mt19937_64& rng, int count, int dim, double scale = 1.0) {
  std::uniform_real_distribution<double> coord(0.0, scale);
  std::vector<std::vector<double>> points;
  for (int i = 0; i < count; ++i) {
    std::vector<double> p;
    for (int c = 0; c < dim; ++c) p.push_back(coord(rng));
    points.push_back(std::move(p));
  }
  return mpho::make_point_cloud(std::move(points));
}

/// The running two-vertex example: a at (0,0), b at (1,0), edge at (1,1).
inline mpho::Filtration two_vertex_example() {
  auto complex = std::make_shared<const mpho::SimplicialComplex>(
      mpho::SimplicialComplex::validate({{0}, {1}, {0, 1}}));
  mpho::Filtration f;
  f.complex = complex;
  f.params = 2;
  f.values = {{0, 0}, {1, 0}, {1, 1}};
  return f;
}

/// Path a(0) -- b(1) joined by an edge at 2.
inline mpho::Filtration chain_example() {
  auto complex = std::make_shared<const mpho::SimplicialComplex>(
      mpho::SimplicialComplex::validate({{0}, {1}, {0, 1}}));
  mpho::Filtration f;
  f.complex = complex;
  f.params = 1;
  f.values = {{0}, {1}, {2}};
  return f;
}

inline double relative_error(double got, double want) {
  double denom = std::max(std::abs(want), 1.0);
  return std::abs(got - want) / denom;
}

} // namespace testutil
