#include "mpho/descriptors.hpp"

#include "mpho/complex.hpp"
#include "mpho/error.hpp"
#include "mpho/f2.hpp"
#include "mpho/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace mpho {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

GridIndexer::GridIndexer(const Grid& grid) : sizes(grid.sizes) {
  strides.assign(sizes.size(), 1);
  for (std::size_t i = sizes.size(); i-- > 0;) {
    if (i + 1 < sizes.size()) strides[i] = strides[i + 1] * sizes[i + 1];
  }
  count = sizes.empty() ? 0 : strides.front() * sizes.front();
}

long long GridIndexer::index_of(const std::vector<int>& levels) const {
  long long idx = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) idx += strides[i] * levels[i];
  return idx;
}

std::vector<int> GridIndexer::levels_of(long long index) const {
  std::vector<int> levels(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    levels[i] = static_cast<int>(index / strides[i]);
    index %= strides[i];
  }
  return levels;
}

int HilbertGrid::at(const std::vector<int>& levels) const {
  GridIndexer indexer(grid);
  return table[indexer.index_of(levels)];
}

HilbertGrid hilbert_grid(const GridFiltration& ord, int degree) {
  if (degree < 0) fail(errc::dimension_mismatch, "homology degree must be nonnegative");
  if (!componentwise_surjective(ord))
    fail(errc::not_surjective, "grid filtration is not componentwise surjective");

  const SimplicialComplex& complex = *ord.complex;
  HilbertGrid out;
  out.grid = ord.grid;
  out.degree = degree;
  GridIndexer indexer(out.grid);
  out.table.assign(indexer.count, 0);
  if (degree > complex.dimension()) return out;

  const int params = out.grid.params();
  const int sweep_size = out.grid.sizes[0];
  const std::size_t low_rows = degree >= 1 ? complex.simplices_of_dim(degree - 1).size() : 0;
  const std::size_t mid_rows = complex.simplices_of_dim(degree).size();

  // Rest = fixed levels of axes 1..n-1; sweep axis 0 upward, adding columns
  // to incremental eliminations. Ranks only ever grow, so one elimination
  // pass per rest-combination covers the whole sweep line.
  Grid rest_grid;
  rest_grid.sizes.assign(out.grid.sizes.begin() + 1, out.grid.sizes.end());
  GridIndexer rest_indexer;
  long long rest_count = 1;
  if (params > 1) {
    rest_indexer = GridIndexer(rest_grid);
    rest_count = rest_indexer.count;
  }

  parallel_for(static_cast<std::size_t>(rest_count), [&](std::size_t rest_idx) {
    std::vector<int> rest =
        params > 1 ? rest_indexer.levels_of(static_cast<long long>(rest_idx)) : std::vector<int>{};

    // Bucket simplices of the two relevant dimensions by entry level.
    std::vector<std::vector<int>> enter_mid(sweep_size), enter_high(sweep_size);
    auto eligible = [&](int s) {
      for (int i = 1; i < params; ++i)
        if (ord.levels[s][i] > rest[i - 1]) return false;
      return true;
    };
    for (int s : complex.simplices_of_dim(degree))
      if (eligible(s)) enter_mid[ord.levels[s][0]].push_back(s);
    for (int s : complex.simplices_of_dim(degree + 1))
      if (eligible(s)) enter_high[ord.levels[s][0]].push_back(s);

    f2::DenseEliminator low(low_rows == 0 ? 1 : low_rows);
    f2::DenseEliminator high(mid_rows == 0 ? 1 : mid_rows);
    int mid_count = 0;

    std::vector<int> levels(params);
    for (int i = 1; i < params; ++i) levels[i] = rest[i - 1];
    for (int t = 0; t < sweep_size; ++t) {
      for (int s : enter_mid[t]) {
        ++mid_count;
        if (degree >= 1) {
          std::vector<int> support;
          for (int f : complex.facets(s)) support.push_back(complex.position_in_dim(f));
          low.insert(f2::make_bitvector(low_rows, support));
        }
      }
      for (int s : enter_high[t]) {
        std::vector<int> support;
        for (int f : complex.facets(s)) support.push_back(complex.position_in_dim(f));
        high.insert(f2::make_bitvector(mid_rows, support));
      }
      levels[0] = t;
      out.table[indexer.index_of(levels)] = mid_count - low.rank() - high.rank();
    }
  });
  return out;
}

std::vector<GridMass> hilbert_grid_masses(const HilbertGrid& hilbert) {
  GridIndexer indexer(hilbert.grid);
  std::vector<long long> work(hilbert.table.begin(), hilbert.table.end());

  // First differences along each axis turn the downset-cumulative table into
  // point masses; descending order makes the pass in-place.
  for (std::size_t axis = 0; axis < indexer.sizes.size(); ++axis) {
    long long stride = indexer.strides[axis];
    for (long long idx = indexer.count; idx-- > 0;) {
      int level = static_cast<int>((idx / stride) % indexer.sizes[axis]);
      if (level > 0) work[idx] -= work[idx - stride];
    }
  }

  std::vector<GridMass> masses;
  for (long long idx = 0; idx < indexer.count; ++idx) {
    if (work[idx] == 0) continue;
    masses.push_back({indexer.levels_of(idx), work[idx]});
  }
  return masses;
}

SignedMeasure push_masses(const std::vector<GridMass>& masses, const GridInclusion& iota) {
  SignedMeasure measure;
  measure.ground = GroundSpace::euclidean;
  measure.params = static_cast<int>(iota.values.size());
  for (const auto& gm : masses) {
    Mass mass;
    mass.multiplicity = gm.multiplicity;
    mass.location.resize(measure.params);
    for (int i = 0; i < measure.params; ++i) mass.location[i] = iota.values[i][gm.point[i]];
    measure.masses.push_back(std::move(mass));
  }
  return canonicalize(std::move(measure));
}

SignedMeasure hilbert_measure(const Filtration& f, int degree) {
  Stratification strat = stratify(f);
  return push_masses(hilbert_grid_masses(hilbert_grid(strat.ord, degree)), strat.iota);
}

int RankGrid::rank_at(const std::vector<int>& p, const std::vector<int>& q) const {
  return rank(indexer.index_of(p), indexer.index_of(q));
}

int RankGrid::rank_to_top(const std::vector<int>& p) const {
  return rank(indexer.index_of(p), indexer.count - 1);
}

RankGrid rank_grid(const GridFiltration& ord, int degree) {
  if (degree < 0) fail(errc::dimension_mismatch, "homology degree must be nonnegative");
  if (!componentwise_surjective(ord))
    fail(errc::not_surjective, "grid filtration is not componentwise surjective");

  const SimplicialComplex& complex = *ord.complex;
  RankGrid out;
  out.grid = ord.grid;
  out.degree = degree;
  out.indexer = GridIndexer(out.grid);
  const long long P = out.indexer.count;
  // the pair table is quadratic in the grid size
  if (P > 5000)
    fail(errc::too_large, "rank grid with " + std::to_string(P) + " points is too large");
  out.table.assign(P * P, -1);

  const std::size_t face_rows = degree >= 1 ? complex.simplices_of_dim(degree - 1).size() : 0;
  const std::size_t cycle_rows = complex.simplices_of_dim(degree).size();

  // Per grid point: echelon form of the one-degree-up boundary image and a
  // kernel basis of the degree boundary, both over global row indexing.
  struct PointData {
    std::vector<f2::BitVector> image; // echelon columns
    std::vector<int> image_pivot;     // row -> column index or -1
    std::vector<f2::BitVector> cycles;
  };
  std::vector<PointData> data(P);

  const bool degenerate = degree > complex.dimension();
  if (!degenerate) {
    parallel_for(static_cast<std::size_t>(P), [&](std::size_t idx) {
      std::vector<int> levels = out.indexer.levels_of(static_cast<long long>(idx));
      auto inside = [&](int s) {
        for (int i = 0; i < out.grid.params(); ++i)
          if (ord.levels[s][i] > levels[i]) return false;
        return true;
      };

      f2::KernelEliminator kernel(face_rows == 0 ? 1 : face_rows,
                                  cycle_rows == 0 ? 1 : cycle_rows);
      for (int s : complex.simplices_of_dim(degree)) {
        if (!inside(s)) continue;
        std::vector<int> support;
        if (degree >= 1)
          for (int f : complex.facets(s)) support.push_back(complex.position_in_dim(f));
        kernel.insert(f2::make_bitvector(face_rows == 0 ? 1 : face_rows, support),
                      static_cast<std::size_t>(complex.position_in_dim(s)));
      }

      f2::DenseEliminator image(cycle_rows == 0 ? 1 : cycle_rows);
      for (int s : complex.simplices_of_dim(degree + 1)) {
        if (!inside(s)) continue;
        std::vector<int> support;
        for (int f : complex.facets(s)) support.push_back(complex.position_in_dim(f));
        image.insert(f2::make_bitvector(cycle_rows == 0 ? 1 : cycle_rows, support));
      }

      data[idx].cycles = kernel.kernel();
      data[idx].image = image.columns();
      data[idx].image_pivot = image.pivot_map();
    });
  }

  parallel_for(static_cast<std::size_t>(P), [&](std::size_t pi) {
    std::vector<int> p = out.indexer.levels_of(static_cast<long long>(pi));
    for (long long qi = 0; qi < P; ++qi) {
      std::vector<int> q = out.indexer.levels_of(qi);
      bool leq = true;
      for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] > q[i]) leq = false;
      if (!leq) continue;
      if (degenerate) {
        out.table[pi * P + qi] = 0;
        continue;
      }
      // rank = number of inner cycles independent of the outer boundaries.
      const PointData& outer = data[qi];
      std::vector<f2::BitVector> cols = outer.image;
      std::vector<int> pivots = outer.image_pivot;
      int rank = 0;
      for (f2::BitVector cycle : data[pi].cycles) {
        int low = cycle.highest_set();
        while (low >= 0 && pivots[low] >= 0) {
          cycle.xor_with(cols[pivots[low]]);
          low = cycle.highest_set();
        }
        if (low < 0) continue;
        pivots[low] = static_cast<int>(cols.size());
        cols.push_back(std::move(cycle));
        ++rank;
      }
      out.table[pi * P + qi] = rank;
    }
  });
  return out;
}

std::vector<GridBarMass> rank_grid_masses(const RankGrid& ranks) {
  const GridIndexer& indexer = ranks.indexer;
  const long long P = indexer.count;
  const int params = static_cast<int>(indexer.sizes.size());

  // Birth inversion: difference the first argument downward along each axis.
  std::vector<long long> born(ranks.table.begin(), ranks.table.end());
  for (auto& v : born)
    if (v < 0) v = 0; // incomparable slots are never read below
  for (int axis = 0; axis < params; ++axis) {
    long long stride = indexer.strides[axis];
    for (long long a = P; a-- > 0;) {
      int level = static_cast<int>((a / stride) % indexer.sizes[axis]);
      if (level == 0) continue;
      for (long long s = 0; s < P; ++s) {
        if (ranks.table[a * P + s] < 0) continue;
        // (a - e_axis, s) is comparable whenever (a, s) is.
        born[a * P + s] -= born[(a - stride) * P + s];
      }
    }
  }

  std::vector<GridBarMass> masses;
  std::vector<long long> row;
  for (long long a = 0; a < P; ++a) {
    std::vector<int> birth = indexer.levels_of(a);

    long long at_top = born[a * P + (P - 1)];
    if (at_top != 0) {
      GridBarMass mass;
      mass.birth = birth;
      mass.death_infinite = true;
      mass.multiplicity = at_top;
      masses.push_back(std::move(mass));
    }

    // Death inversion over the box {s : s >= birth}: downward differences of
    // the still-alive counts, negated; levels below the box contribute 0.
    row.assign(born.begin() + a * P, born.begin() + (a + 1) * P);
    for (int axis = 0; axis < params; ++axis) {
      long long stride = indexer.strides[axis];
      for (long long s = P; s-- > 0;) {
        if (ranks.table[a * P + s] < 0) continue;
        int level = static_cast<int>((s / stride) % indexer.sizes[axis]);
        if (level > birth[axis]) row[s] -= row[s - stride];
      }
    }
    for (long long s = 0; s < P; ++s) {
      if (s == a) continue; // diagonal bars carry no rank information
      if (ranks.table[a * P + s] < 0) continue;
      long long mult = -row[s];
      if (mult == 0) continue;
      GridBarMass mass;
      mass.birth = birth;
      mass.death = indexer.levels_of(s);
      mass.multiplicity = mult;
      masses.push_back(std::move(mass));
    }
  }
  return masses;
}

SignedMeasure rank_measure(const Filtration& f, int degree) {
  Stratification strat = stratify(f);
  RankGrid ranks = rank_grid(strat.ord, degree);
  std::vector<GridBarMass> masses = rank_grid_masses(ranks);

  SignedMeasure measure;
  measure.ground = GroundSpace::bars;
  measure.params = f.params;
  for (const auto& gm : masses) {
    Mass mass;
    mass.multiplicity = gm.multiplicity;
    mass.location.resize(2 * f.params);
    for (int i = 0; i < f.params; ++i) mass.location[i] = strat.iota.values[i][gm.birth[i]];
    for (int i = 0; i < f.params; ++i)
      mass.location[f.params + i] = gm.death_infinite ? kInf : strat.iota.values[i][gm.death[i]];
    measure.masses.push_back(std::move(mass));
  }
  return canonicalize(std::move(measure));
}

SortedHilbert sorted_hilbert(const Filtration& f, int degree) {
  Stratification strat = stratify(f);
  SortedHilbert out;
  out.cell = cell_id(strat.ord);
  SignedMeasure measure = push_masses(hilbert_grid_masses(hilbert_grid(strat.ord, degree)), strat.iota);
  for (const auto& mass : measure.masses) {
    auto& side = mass.multiplicity > 0 ? out.positives : out.negatives;
    for (long long c = 0; c < std::llabs(mass.multiplicity); ++c) side.push_back(mass.location);
  }
  std::sort(out.positives.begin(), out.positives.end());
  std::sort(out.negatives.begin(), out.negatives.end());
  return out;
}

LandscapeEvaluator::LandscapeEvaluator(const Filtration& f, int degree)
    : strat_(stratify(f)), ranks_(rank_grid(strat_.ord, degree)) {}

int LandscapeEvaluator::rank_between(const std::vector<double>& lo,
                                     const std::vector<double>& hi) const {
  const int params = strat_.grid.params();
  std::vector<int> p(params), q(params);
  for (int i = 0; i < params; ++i) {
    const auto& axis = strat_.iota.values[i];
    // Largest grid level whose value is <= the query; below the grid the
    // sublevel complex is empty.
    auto floor_of = [&](double v) {
      auto it = std::upper_bound(axis.begin(), axis.end(), v);
      return static_cast<int>(it - axis.begin()) - 1;
    };
    p[i] = floor_of(lo[i]);
    q[i] = floor_of(hi[i]);
    if (p[i] < 0 || q[i] < 0) return 0;
  }
  return ranks_.rank_at(p, q);
}

LandscapeEvaluator::Evaluation LandscapeEvaluator::evaluate(int k,
                                                            const std::vector<double>& z) const {
  if (k < 1) fail(errc::config_error, "landscape level k must be at least 1");
  const int params = strat_.grid.params();
  if (static_cast<int>(z.size()) != params)
    fail(errc::dimension_mismatch, "landscape query point has wrong dimension");

  Evaluation result;

  // Crossing margins: where the diagonal segment [z - e*1, z + e*1] meets a
  // grid hyperplane. The rank along the segment only changes there.
  struct Crossing {
    double margin;
    int axis;
    int level;
    bool lower; // true when z[axis] - iota crosses going down
  };
  std::vector<Crossing> crossings;
  crossings.push_back({0.0, -1, -1, false});
  for (int i = 0; i < params; ++i) {
    const auto& axis = strat_.iota.values[i];
    for (int t = 0; t < static_cast<int>(axis.size()); ++t) {
      double down = z[i] - axis[t];
      double up = axis[t] - z[i];
      if (down > 0) crossings.push_back({down, i, t, true});
      if (up > 0) crossings.push_back({up, i, t, false});
    }
  }
  std::sort(crossings.begin(), crossings.end(), [](const Crossing& a, const Crossing& b) {
    if (a.margin != b.margin) return a.margin < b.margin;
    if (a.axis != b.axis) return a.axis < b.axis;
    if (a.level != b.level) return a.level < b.level;
    return a.lower && !b.lower;
  });
  crossings.erase(std::unique(crossings.begin(), crossings.end(),
                              [](const Crossing& a, const Crossing& b) {
                                return a.margin == b.margin;
                              }),
                  crossings.end());

  auto rank_at_margin = [&](double margin) {
    std::vector<double> lo(params), hi(params);
    for (int i = 0; i < params; ++i) {
      lo[i] = z[i] - margin;
      hi[i] = z[i] + margin;
    }
    return rank_between(lo, hi);
  };

  if (rank_at_margin(0.0) < k) return result;

  // The rank along the diagonal is nonincreasing in the margin, so the
  // landscape value is the crossing where it first drops below k.
  for (std::size_t c = 0; c < crossings.size(); ++c) {
    double probe = c + 1 < crossings.size()
                       ? 0.5 * (crossings[c].margin + crossings[c + 1].margin)
                       : crossings[c].margin + 1.0;
    if (rank_at_margin(probe) < k) {
      const Crossing& bind = crossings[c];
      result.value = bind.margin;
      result.axis = bind.axis;
      result.level = bind.level;
      if (bind.axis >= 0) {
        result.d_iota = bind.lower ? -1.0 : 1.0;
        result.d_z = bind.lower ? 1.0 : -1.0;
      }
      return result;
    }
  }
  // Unreachable: the rank vanishes once the segment leaves the grid.
  return result;
}

double landscape(const Filtration& f, int degree, int k, const std::vector<double>& z) {
  return LandscapeEvaluator(f, degree).evaluate(k, z).value;
}

} // namespace mpho
