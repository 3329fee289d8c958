#pragma once

#include "mpho/measure.hpp"
#include "mpho/stratification.hpp"

#include <vector>

namespace mpho {

/// Row-major addressing of the points of a grid.
struct GridIndexer {
  std::vector<int> sizes;
  std::vector<long long> strides;
  long long count = 1;

  GridIndexer() = default;
  explicit GridIndexer(const Grid& grid);

  long long index_of(const std::vector<int>& levels) const;
  std::vector<int> levels_of(long long index) const;
};

/// dim H_degree of the sublevel subcomplex at every grid point.
struct HilbertGrid {
  Grid grid;
  int degree = 0;
  std::vector<int> table; // row-major over grid points

  int at(const std::vector<int>& levels) const;
};

HilbertGrid hilbert_grid(const GridFiltration& ord, int degree);

/// The unique signed measure on the grid whose downset-cumulative function
/// is the Hilbert table, by iterated first differences along each axis.
struct GridMass {
  std::vector<int> point;
  long long multiplicity = 0;
};

std::vector<GridMass> hilbert_grid_masses(const HilbertGrid& hilbert);

/// Pushes grid masses into R^n through the inclusion.
SignedMeasure push_masses(const std::vector<GridMass>& masses, const GridInclusion& iota);

SignedMeasure hilbert_measure(const Filtration& f, int degree);

/// Ranks of all inclusion-induced maps between sublevel subcomplexes at grid
/// pairs p <= q. The top grid point doubles as the infinity row:
/// rank_to_top(p) is the rank surviving past every grid level.
struct RankGrid {
  Grid grid;
  int degree = 0;
  GridIndexer indexer;
  std::vector<int> table; // P x P row-major, -1 for incomparable pairs

  int rank(long long p, long long q) const { return table[p * indexer.count + q]; }
  int rank_at(const std::vector<int>& p, const std::vector<int>& q) const;
  int rank_to_top(const std::vector<int>& p) const;
};

RankGrid rank_grid(const GridFiltration& ord, int degree);

/// A bar on the grid: birth point, death point or infinity.
struct GridBarMass {
  std::vector<int> birth;
  std::vector<int> death; // empty when infinite
  bool death_infinite = false;
  long long multiplicity = 0;
};

/// Moebius inversion of the rank table over bars: differences the birth
/// index downward along each axis, then the death index upward along each
/// axis with the infinity sentinel as the last level. Diagonal bars are
/// dropped. Validated against the defining identity in the tests rather
/// than trusted.
std::vector<GridBarMass> rank_grid_masses(const RankGrid& ranks);

SignedMeasure rank_measure(const Filtration& f, int degree);

/// Hilbert decomposition with multiplicities expanded to repeated locations
/// and each sign class sorted lexicographically, tagged with the cell.
struct SortedHilbert {
  CellId cell;
  std::vector<std::vector<double>> positives;
  std::vector<std::vector<double>> negatives;
};

SortedHilbert sorted_hilbert(const Filtration& f, int degree);

/// Evaluates persistence landscapes: the k-th landscape at z is the largest
/// margin such that the rank from z - margin*1 to z + margin*1 stays at
/// least k. Computed exactly by scanning the grid crossings of the diagonal
/// segment; the rank table is built once and shared across queries.
class LandscapeEvaluator {
public:
  LandscapeEvaluator(const Filtration& f, int degree);

  struct Evaluation {
    double value = 0;
    // The binding crossing: value = |z[axis] - iota[axis][level]|. d_iota
    // and d_z are the derivatives with respect to that inclusion coordinate
    // and that coordinate of z (zero at value 0).
    int axis = -1;
    int level = -1;
    double d_iota = 0;
    double d_z = 0;
  };

  Evaluation evaluate(int k, const std::vector<double>& z) const;

  const Stratification& stratification() const { return strat_; }
  const RankGrid& ranks() const { return ranks_; }

private:
  int rank_between(const std::vector<double>& lo, const std::vector<double>& hi) const;

  Stratification strat_;
  RankGrid ranks_;
};

double landscape(const Filtration& f, int degree, int k, const std::vector<double>& z);

} // namespace mpho
