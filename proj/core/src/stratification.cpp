#include "mpho/stratification.hpp"

#include "mpho/error.hpp"

#include <algorithm>

namespace mpho {

long long Grid::point_count() const {
  long long n = 1;
  for (int m : sizes) n *= m;
  return n;
}

bool componentwise_surjective(const GridFiltration& gf) {
  for (int i = 0; i < gf.grid.params(); ++i) {
    std::vector<char> hit(gf.grid.sizes[i], 0);
    for (const auto& row : gf.levels) hit[row[i]] = 1;
    for (char h : hit)
      if (!h) return false;
  }
  return true;
}

bool GridInclusion::matches(const Grid& grid) const {
  if (values.size() != grid.sizes.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (static_cast<int>(values[i].size()) != grid.sizes[i]) return false;
  return true;
}

namespace {

void append_u32(std::string& out, std::uint32_t v) {
  char buf[4];
  buf[0] = static_cast<char>(v & 0xff);
  buf[1] = static_cast<char>((v >> 8) & 0xff);
  buf[2] = static_cast<char>((v >> 16) & 0xff);
  buf[3] = static_cast<char>((v >> 24) & 0xff);
  out.append(buf, 4);
}

} // namespace

CellId cell_id(const GridFiltration& gf) {
  CellId id;
  append_u32(id.bytes, static_cast<std::uint32_t>(gf.grid.params()));
  for (int m : gf.grid.sizes) append_u32(id.bytes, static_cast<std::uint32_t>(m));
  for (const auto& row : gf.levels)
    for (int level : row) append_u32(id.bytes, static_cast<std::uint32_t>(level));
  return id;
}

std::string CellId::hex() const {
  static const char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char c : bytes) {
    out.push_back(digits[c >> 4]);
    out.push_back(digits[c & 0xf]);
  }
  return out;
}

Stratification stratify(const Filtration& f) {
  const std::size_t count = f.values.size();
  Stratification out;
  out.ord.complex = f.complex;
  out.ord.levels.assign(count, std::vector<int>(f.params, 0));
  out.grid.sizes.resize(f.params);
  out.iota.values.resize(f.params);

  for (int i = 0; i < f.params; ++i) {
    std::vector<double> distinct;
    distinct.reserve(count);
    for (const auto& row : f.values) distinct.push_back(row[i]);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    out.iota.values[i] = distinct;
    out.grid.sizes[i] = static_cast<int>(distinct.size());
    for (std::size_t s = 0; s < count; ++s) {
      auto it = std::lower_bound(distinct.begin(), distinct.end(), f.values[s][i]);
      out.ord.levels[s][i] = static_cast<int>(it - distinct.begin());
    }
  }
  out.ord.grid = out.grid;
  return out;
}

Carrier choose_carrier(const GridFiltration& ord) {
  if (!componentwise_surjective(ord))
    fail(errc::not_surjective, "grid filtration is not componentwise surjective");
  const SimplicialComplex& complex = *ord.complex;
  Carrier carrier;
  carrier.simplex.resize(ord.grid.params());
  for (int i = 0; i < ord.grid.params(); ++i) {
    carrier.simplex[i].assign(ord.grid.sizes[i], -1);
    for (std::size_t s = 0; s < ord.levels.size(); ++s) {
      int level = ord.levels[s][i];
      int current = carrier.simplex[i][level];
      if (current < 0) {
        carrier.simplex[i][level] = static_cast<int>(s);
        continue;
      }
      int sd = complex.simplex_dim(static_cast<int>(s));
      int cd = complex.simplex_dim(current);
      if (sd < cd || (sd == cd && static_cast<int>(s) < current))
        carrier.simplex[i][level] = static_cast<int>(s);
    }
  }
  return carrier;
}

bool same_cell(const Filtration& f, const Filtration& g) {
  if (f.complex != g.complex && !(*f.complex == *g.complex))
    fail(errc::complex_mismatch, "filtrations live on different complexes");
  if (f.params != g.params)
    fail(errc::complex_mismatch, "filtrations have different parameter counts");
  Stratification sf = stratify(f);
  Stratification sg = stratify(g);
  return sf.grid == sg.grid && sf.ord.levels == sg.ord.levels;
}

GridInclusion its_incl(const Filtration& f) { return stratify(f).iota; }

Filtration from_incl(const GridFiltration& ord, const GridInclusion& kappa) {
  if (!kappa.matches(ord.grid))
    fail(errc::size_mismatch, "inclusion shape does not match the grid");
  for (const auto& axis : kappa.values)
    for (std::size_t k = 1; k < axis.size(); ++k)
      if (!(axis[k - 1] < axis[k]))
        fail(errc::non_increasing, "inclusion values must be strictly increasing");

  Filtration f;
  f.complex = ord.complex;
  f.params = ord.grid.params();
  f.values.resize(ord.levels.size());
  for (std::size_t s = 0; s < ord.levels.size(); ++s) {
    std::vector<double> row(f.params);
    for (int i = 0; i < f.params; ++i) row[i] = kappa.values[i][ord.levels[s][i]];
    f.values[s] = std::move(row);
  }
  return f;
}

} // namespace mpho
