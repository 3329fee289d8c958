#pragma once

#include "mpho/filtration.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mpho {

/// Product poset [m_1] x ... x [m_n].
struct Grid {
  std::vector<int> sizes;

  int params() const { return static_cast<int>(sizes.size()); }
  long long point_count() const;
  bool operator==(const Grid& other) const { return sizes == other.sizes; }
};

/// A filtration with values in a grid: per-simplex level per coordinate.
/// Produced by stratify(), in which case every coordinate map is onto.
struct GridFiltration {
  ComplexPtr complex;
  Grid grid;
  std::vector<std::vector<int>> levels; // [simplex][coordinate]

  int level(int simplex, int coordinate) const { return levels[simplex][coordinate]; }
  bool operator==(const GridFiltration& other) const {
    return grid == other.grid && levels == other.levels;
  }
};

bool componentwise_surjective(const GridFiltration& gf);

/// Strictly increasing real values per coordinate: the map [m_i] -> R that
/// places grid levels back into filtration space. Stores the original input
/// floats, so composing with the grid filtration reproduces the filtration
/// bit-exactly.
struct GridInclusion {
  std::vector<std::vector<double>> values; // [coordinate][level]

  double value(int coordinate, int level) const { return values[coordinate][level]; }
  bool matches(const Grid& grid) const;
};

/// For each coordinate and level, a chosen simplex realizing that level.
struct Carrier {
  std::vector<std::vector<int>> simplex; // [coordinate][level]
};

/// Canonical, hashable identity of the cell of a filtration: grid sizes plus
/// the full level table. Two filtrations share a CellId exactly when they
/// have equal grids and equal grid filtrations.
struct CellId {
  std::string bytes;

  bool operator==(const CellId& other) const { return bytes == other.bytes; }
  bool operator<(const CellId& other) const { return bytes < other.bytes; }
  std::string hex() const;
};

CellId cell_id(const GridFiltration& gf);

struct Stratification {
  Grid grid;
  GridFiltration ord;
  GridInclusion iota;
};

/// Factors f coordinatewise through its sorted distinct values:
/// iota(ord(simplex)) == f(simplex) exactly, ord componentwise onto, iota
/// strictly increasing. Level sets use exact float equality; callers wanting
/// tolerance-based snapping must pre-quantize.
Stratification stratify(const Filtration& f);

/// Deterministic carrier: per coordinate and level, the simplex of smallest
/// dimension (then smallest index) at that level.
Carrier choose_carrier(const GridFiltration& ord);

/// True when the two filtrations have equal grids and equal level tables.
bool same_cell(const Filtration& f, const Filtration& g);

GridInclusion its_incl(const Filtration& f);

/// Reassembles a filtration from grid levels and an inclusion:
/// value(simplex, i) = kappa_i(level_i(simplex)). Inverse of its_incl on the
/// cell of any filtration with these levels.
Filtration from_incl(const GridFiltration& ord, const GridInclusion& kappa);

} // namespace mpho

template <>
struct std::hash<mpho::CellId> {
  std::size_t operator()(const mpho::CellId& id) const noexcept {
    return std::hash<std::string>{}(id.bytes);
  }
};
