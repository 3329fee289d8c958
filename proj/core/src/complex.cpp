#include "mpho/complex.hpp"

#include "mpho/error.hpp"
#include "mpho/f2.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace mpho {

namespace {

std::string label_of(const std::vector<VertexId>& vertices) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (i) out << ',';
    out << vertices[i];
  }
  out << '}';
  return out.str();
}

} // namespace

SimplicialComplex SimplicialComplex::validate(const std::vector<std::vector<VertexId>>& raw) {
  if (raw.empty()) fail(errc::empty_simplex, "empty simplex list");

  std::set<VertexId> vertex_set;
  std::vector<std::vector<VertexId>> cleaned;
  cleaned.reserve(raw.size());
  for (const auto& simplex : raw) {
    if (simplex.empty()) fail(errc::empty_simplex, "a simplex with no vertices was given");
    std::vector<VertexId> sorted = simplex;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i] == sorted[i - 1])
        fail(errc::duplicate_simplex, "repeated vertex in simplex " + label_of(simplex));
    }
    vertex_set.insert(sorted.begin(), sorted.end());
    cleaned.push_back(std::move(sorted));
  }

  SimplicialComplex complex;
  complex.vertex_ids_.assign(vertex_set.begin(), vertex_set.end());
  auto vertex_index = [&](VertexId v) {
    return static_cast<int>(std::lower_bound(complex.vertex_ids_.begin(), complex.vertex_ids_.end(), v) -
                            complex.vertex_ids_.begin());
  };

  std::vector<std::vector<int>> simplices;
  simplices.reserve(cleaned.size());
  for (const auto& simplex : cleaned) {
    std::vector<int> indices;
    indices.reserve(simplex.size());
    for (VertexId v : simplex) indices.push_back(vertex_index(v));
    simplices.push_back(std::move(indices));
  }

  std::sort(simplices.begin(), simplices.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  for (std::size_t i = 1; i < simplices.size(); ++i) {
    if (simplices[i] == simplices[i - 1]) {
      std::vector<VertexId> ids;
      for (int v : simplices[i]) ids.push_back(complex.vertex_ids_[v]);
      fail(errc::duplicate_simplex, "simplex " + label_of(ids) + " listed twice");
    }
  }

  complex.simplices_ = std::move(simplices);
  for (std::size_t s = 0; s < complex.simplices_.size(); ++s)
    complex.index_[complex.simplices_[s]] = static_cast<int>(s);

  complex.dimension_ = 0;
  complex.facets_.resize(complex.simplices_.size());
  complex.pos_in_dim_.resize(complex.simplices_.size());
  for (std::size_t s = 0; s < complex.simplices_.size(); ++s) {
    const auto& simplex = complex.simplices_[s];
    int dim = static_cast<int>(simplex.size()) - 1;
    complex.dimension_ = std::max(complex.dimension_, dim);
    if (static_cast<int>(complex.by_dim_.size()) <= dim) complex.by_dim_.resize(dim + 1);
    complex.pos_in_dim_[s] = static_cast<int>(complex.by_dim_[dim].size());
    complex.by_dim_[dim].push_back(static_cast<int>(s));

    if (dim == 0) continue;
    for (std::size_t drop = 0; drop < simplex.size(); ++drop) {
      std::vector<int> face;
      face.reserve(simplex.size() - 1);
      for (std::size_t i = 0; i < simplex.size(); ++i)
        if (i != drop) face.push_back(simplex[i]);
      auto it = complex.index_.find(face);
      if (it == complex.index_.end()) {
        std::vector<VertexId> sigma, tau;
        for (int v : simplex) sigma.push_back(complex.vertex_ids_[v]);
        for (int v : face) tau.push_back(complex.vertex_ids_[v]);
        fail(errc::missing_face, "face " + label_of(tau) + " of " + label_of(sigma) + " is not listed");
      }
      complex.facets_[s].push_back(it->second);
    }
    std::sort(complex.facets_[s].begin(), complex.facets_[s].end());
  }
  return complex;
}

const std::vector<int>& SimplicialComplex::simplices_of_dim(int d) const {
  static const std::vector<int> empty;
  if (d < 0 || d >= static_cast<int>(by_dim_.size())) return empty;
  return by_dim_[d];
}

std::string SimplicialComplex::simplex_label(int s) const {
  return label_of(simplex_vertices(s));
}

std::vector<VertexId> SimplicialComplex::simplex_vertices(int s) const {
  std::vector<VertexId> out;
  out.reserve(simplices_[s].size());
  for (int v : simplices_[s]) out.push_back(vertex_ids_[v]);
  return out;
}

int SimplicialComplex::index_of(const std::vector<int>& vertex_indices) const {
  auto it = index_.find(vertex_indices);
  return it == index_.end() ? -1 : it->second;
}

bool SimplicialComplex::operator==(const SimplicialComplex& other) const {
  return vertex_ids_ == other.vertex_ids_ && simplices_ == other.simplices_;
}

BoundaryMatrix boundary_matrix(const SimplicialComplex& complex, int degree) {
  BoundaryMatrix matrix;
  matrix.degree = degree;
  matrix.rows = degree >= 1 ? complex.simplices_of_dim(degree - 1).size() : 0;
  for (int s : complex.simplices_of_dim(degree)) {
    matrix.column_simplices.push_back(s);
    std::vector<int> support;
    if (degree >= 1) {
      for (int f : complex.facets(s)) support.push_back(complex.position_in_dim(f));
      std::sort(support.begin(), support.end());
    }
    matrix.columns.push_back(std::move(support));
  }
  return matrix;
}

Subcomplex::Subcomplex(ComplexPtr parent, std::vector<char> member)
    : parent_(std::move(parent)), member_(std::move(member)) {
  if (member_.size() != parent_->size())
    fail(errc::size_mismatch, "membership mask does not match the parent complex");
  for (std::size_t s = 0; s < member_.size(); ++s) {
    if (!member_[s]) continue;
    for (int f : parent_->facets(static_cast<int>(s))) {
      if (!member_[f])
        fail(errc::missing_face, "subcomplex drops face " + parent_->simplex_label(f) + " of " +
                                     parent_->simplex_label(static_cast<int>(s)));
    }
  }
}

Subcomplex Subcomplex::full(ComplexPtr parent) {
  std::vector<char> all(parent->size(), 1);
  return Subcomplex(std::move(parent), std::move(all));
}

std::size_t Subcomplex::count() const {
  std::size_t n = 0;
  for (char c : member_)
    if (c) ++n;
  return n;
}

bool Subcomplex::subset_of(const Subcomplex& other) const {
  if (!(parent_ == other.parent_ || *parent_ == *other.parent_)) return false;
  for (std::size_t s = 0; s < member_.size(); ++s)
    if (member_[s] && !other.member_[s]) return false;
  return true;
}

namespace {

// Columns of the boundary in `degree` restricted to the masked simplices.
// Faces of members are members (closure), so the global row space is usable
// as is.
std::vector<std::vector<int>> restricted_columns(const SimplicialComplex& complex,
                                                 const std::vector<char>& mask, int degree) {
  std::vector<std::vector<int>> cols;
  for (int s : complex.simplices_of_dim(degree)) {
    if (!mask[s]) continue;
    std::vector<int> support;
    for (int f : complex.facets(s)) support.push_back(complex.position_in_dim(f));
    std::sort(support.begin(), support.end());
    cols.push_back(std::move(support));
  }
  return cols;
}

} // namespace

int homology_dimension(const Subcomplex& sub, int degree) {
  if (degree < 0) fail(errc::dimension_mismatch, "homology degree must be nonnegative");
  const SimplicialComplex& complex = sub.parent();
  if (degree > complex.dimension()) return 0;

  long long cols = 0;
  for (int s : complex.simplices_of_dim(degree))
    if (sub.contains(s)) ++cols;

  int rank_low = 0;
  if (degree >= 1) {
    std::size_t rows = complex.simplices_of_dim(degree - 1).size();
    rank_low = f2::column_rank(rows, restricted_columns(complex, sub.mask(), degree));
  }
  int rank_high = 0;
  {
    std::size_t rows = complex.simplices_of_dim(degree).size();
    rank_high = f2::column_rank(rows, restricted_columns(complex, sub.mask(), degree + 1));
  }
  return static_cast<int>(cols) - rank_low - rank_high;
}

int inclusion_rank(const Subcomplex& inner, const Subcomplex& outer, int degree) {
  if (!inner.subset_of(outer))
    fail(errc::not_nested, "inner subcomplex is not contained in the outer one");
  const SimplicialComplex& complex = inner.parent();
  if (degree < 0) fail(errc::dimension_mismatch, "homology degree must be nonnegative");
  if (degree > complex.dimension()) return 0;

  const std::size_t cycle_rows = complex.simplices_of_dim(degree).size();
  const std::size_t face_rows = degree >= 1 ? complex.simplices_of_dim(degree - 1).size() : 0;

  // Kernel of the boundary restricted to the inner subcomplex, expressed over
  // the global degree-simplex row space.
  f2::KernelEliminator kernel(face_rows == 0 ? 1 : face_rows, cycle_rows);
  for (int s : complex.simplices_of_dim(degree)) {
    if (!inner.contains(s)) continue;
    std::vector<int> support;
    if (degree >= 1) {
      for (int f : complex.facets(s)) support.push_back(complex.position_in_dim(f));
    }
    kernel.insert(f2::make_bitvector(face_rows == 0 ? 1 : face_rows, support),
                  static_cast<std::size_t>(complex.position_in_dim(s)));
  }

  // rank(H(inner) -> H(outer)) = dim(Z_inner + B_outer) - dim B_outer.
  f2::DenseEliminator span(cycle_rows == 0 ? 1 : cycle_rows);
  for (int s : complex.simplices_of_dim(degree + 1)) {
    if (!outer.contains(s)) continue;
    std::vector<int> support;
    for (int f : complex.facets(s)) support.push_back(complex.position_in_dim(f));
    span.insert(f2::make_bitvector(cycle_rows == 0 ? 1 : cycle_rows, support));
  }
  int boundary_rank = span.rank();
  for (const auto& cycle : kernel.kernel()) span.insert(cycle);
  return span.rank() - boundary_rank;
}

long long euler_characteristic(const Subcomplex& sub) {
  const SimplicialComplex& complex = sub.parent();
  long long chi = 0;
  for (std::size_t s = 0; s < complex.size(); ++s) {
    if (!sub.contains(static_cast<int>(s))) continue;
    chi += complex.simplex_dim(static_cast<int>(s)) % 2 == 0 ? 1 : -1;
  }
  return chi;
}

std::vector<std::vector<VertexId>> parse_complex_lines(std::istream& in) {
  std::vector<std::vector<VertexId>> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
    if (trimmed.empty()) continue;
    std::vector<VertexId> simplex;
    std::stringstream tokens(trimmed);
    std::string token;
    while (std::getline(tokens, token, ',')) {
      try {
        std::size_t used = 0;
        VertexId v = std::stoll(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        simplex.push_back(v);
      } catch (const std::exception&) {
        fail(errc::parse_error,
             "line " + std::to_string(line_no) + ": bad vertex id '" + token + "'");
      }
    }
    if (simplex.empty())
      fail(errc::parse_error, "line " + std::to_string(line_no) + ": empty simplex");
    out.push_back(std::move(simplex));
  }
  return out;
}

SimplicialComplex read_complex(std::istream& in) {
  return SimplicialComplex::validate(parse_complex_lines(in));
}

void write_complex(std::ostream& out, const SimplicialComplex& complex) {
  for (std::size_t s = 0; s < complex.size(); ++s) {
    auto ids = complex.simplex_vertices(static_cast<int>(s));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (i) out << ',';
      out << ids[i];
    }
    out << '\n';
  }
}

} // namespace mpho
