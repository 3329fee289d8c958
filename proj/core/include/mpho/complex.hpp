#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace mpho {

using VertexId = std::int64_t;

/// Finite simplicial complex over F2. Simplices are stored in a canonical
/// order (dimension, then lexicographic on vertex indices) and referenced by
/// their index in that order. Immutable after construction.
class SimplicialComplex {
public:
  /// Builds a complex from raw vertex-id sets, checking the invariants:
  /// no empty simplex, no duplicates, closure under faces (a missing face is
  /// an error, not silently added).
  static SimplicialComplex validate(const std::vector<std::vector<VertexId>>& raw);

  std::size_t size() const { return simplices_.size(); }
  int dimension() const { return dimension_; }
  std::size_t vertex_count() const { return vertex_ids_.size(); }

  const std::vector<VertexId>& vertex_ids() const { return vertex_ids_; }

  /// Simplex as sorted internal vertex indices (positions in vertex_ids()).
  const std::vector<int>& simplex(int s) const { return simplices_[s]; }
  int simplex_dim(int s) const { return static_cast<int>(simplices_[s].size()) - 1; }

  /// Codimension-1 faces of simplex s, as simplex indices.
  const std::vector<int>& facets(int s) const { return facets_[s]; }

  /// Indices of all simplices of the given dimension, ascending.
  const std::vector<int>& simplices_of_dim(int d) const;

  /// Position of simplex s within its own dimension class.
  int position_in_dim(int s) const { return pos_in_dim_[s]; }

  /// Simplex written with original vertex ids (for messages and files).
  std::string simplex_label(int s) const;
  std::vector<VertexId> simplex_vertices(int s) const;

  int index_of(const std::vector<int>& vertex_indices) const; // -1 when absent

  bool operator==(const SimplicialComplex& other) const;

private:
  std::vector<VertexId> vertex_ids_;          // sorted original labels
  std::vector<std::vector<int>> simplices_;   // canonical order
  std::vector<std::vector<int>> facets_;
  std::vector<std::vector<int>> by_dim_;
  std::vector<int> pos_in_dim_;
  std::map<std::vector<int>, int> index_;
  int dimension_ = 0;
};

using ComplexPtr = std::shared_ptr<const SimplicialComplex>;

/// Sparse boundary matrix in homological degree `degree`: one column per
/// degree-simplex with ones at its codimension-1 faces. Rows are indexed by
/// the position of (degree-1)-simplices within their dimension class.
struct BoundaryMatrix {
  int degree = 0;
  std::size_t rows = 0;
  std::vector<int> column_simplices;          // simplex index per column
  std::vector<std::vector<int>> columns;      // sorted row indices
};

BoundaryMatrix boundary_matrix(const SimplicialComplex& complex, int degree);

/// Subcomplex of a fixed parent, as a membership mask over simplex indices.
/// The mask must be closed under faces.
class Subcomplex {
public:
  Subcomplex(ComplexPtr parent, std::vector<char> member);

  static Subcomplex full(ComplexPtr parent);

  const SimplicialComplex& parent() const { return *parent_; }
  const ComplexPtr& parent_ptr() const { return parent_; }
  bool contains(int s) const { return member_[s] != 0; }
  const std::vector<char>& mask() const { return member_; }
  std::size_t count() const;

  bool subset_of(const Subcomplex& other) const;

private:
  ComplexPtr parent_;
  std::vector<char> member_;
};

/// dim H_degree of the subcomplex over F2, computed as
/// nullity of the boundary in `degree` minus the rank of the boundary one
/// degree up. Degrees above the complex dimension give 0.
int homology_dimension(const Subcomplex& sub, int degree);

/// Rank of the map H_degree(inner) -> H_degree(outer) induced by inclusion.
int inclusion_rank(const Subcomplex& inner, const Subcomplex& outer, int degree);

/// Alternating sum #even-dimensional - #odd-dimensional simplices.
long long euler_characteristic(const Subcomplex& sub);

/// Complex file format: one simplex per line as comma-separated vertex ids,
/// `#` starts a comment, blank lines are ignored.
std::vector<std::vector<VertexId>> parse_complex_lines(std::istream& in);
SimplicialComplex read_complex(std::istream& in);
void write_complex(std::ostream& out, const SimplicialComplex& complex);

} // namespace mpho
