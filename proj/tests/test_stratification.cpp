#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mpho/error.hpp"
#include "mpho/stratification.hpp"
#include "test_util.hpp"

#include <random>

using namespace mpho;

TEST_CASE("stratify factors the two-vertex example") {
  Filtration f = testutil::two_vertex_example();
  Stratification s = stratify(f);
  CHECK(s.grid.sizes == std::vector<int>{2, 2});
  // canonical simplex order: {a}, {b}, {a,b}
  CHECK(s.ord.levels[0] == std::vector<int>{0, 0});
  CHECK(s.ord.levels[1] == std::vector<int>{1, 0});
  CHECK(s.ord.levels[2] == std::vector<int>{1, 1});
  CHECK(s.iota.values[0] == std::vector<double>{0, 1});
  CHECK(s.iota.values[1] == std::vector<double>{0, 1});
  CHECK(componentwise_surjective(s.ord));
}

TEST_CASE("stratify collapses duplicates and keeps constants") {
  auto complex = std::make_shared<const SimplicialComplex>(
      SimplicialComplex::validate({{0}, {1}, {2}}));
  Filtration f{complex, 1, {{0.5}, {0.2}, {0.5}}};
  Stratification s = stratify(f);
  CHECK(s.grid.sizes == std::vector<int>{2});
  CHECK(s.iota.values[0] == std::vector<double>{0.2, 0.5});

  Filtration constant{complex, 2, {{3, -1}, {3, -1}, {3, -1}}};
  Stratification sc = stratify(constant);
  CHECK(sc.grid.sizes == std::vector<int>{1, 1});
  CHECK(sc.iota.values[0] == std::vector<double>{3});
  CHECK(sc.iota.values[1] == std::vector<double>{-1});
  for (const auto& row : sc.ord.levels) CHECK(row == std::vector<int>{0, 0});
}

TEST_CASE("factorization is exact on random filtrations") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    auto complex =
        std::make_shared<const SimplicialComplex>(testutil::random_complex(rng, 40));
    Filtration f = testutil::random_filtration(complex, 2, rng);
    Stratification s = stratify(f);
    Filtration rebuilt = from_incl(s.ord, s.iota);
    CHECK(rebuilt.values == f.values); // bit-exact, not approximate
    CHECK(componentwise_surjective(s.ord));
    // its_incl round trip
    GridInclusion iota = its_incl(f);
    CHECK(iota.values == s.iota.values);
  }
}

TEST_CASE("carrier of the two-vertex example follows the tie-break") {
  Filtration f = testutil::two_vertex_example();
  Stratification s = stratify(f);
  Carrier carrier = choose_carrier(s.ord);
  // axis 1: level 0 -> a, level 1 -> b (beats the edge by dimension)
  CHECK(carrier.simplex[0][0] == 0);
  CHECK(carrier.simplex[0][1] == 1);
  // axis 2: level 0 -> a (smallest index among a, b), level 1 -> the edge
  CHECK(carrier.simplex[1][0] == 0);
  CHECK(carrier.simplex[1][1] == 2);
}

TEST_CASE("carrier realizes its level on random filtrations") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    auto complex =
        std::make_shared<const SimplicialComplex>(testutil::random_complex(rng, 40));
    Filtration f = testutil::random_filtration(complex, 2, rng);
    Stratification s = stratify(f);
    Carrier carrier = choose_carrier(s.ord);
    for (int axis = 0; axis < 2; ++axis)
      for (int level = 0; level < s.grid.sizes[axis]; ++level)
        CHECK(s.ord.levels[carrier.simplex[axis][level]][axis] == level);
    // pullback consistency: kappa(level) = value of the carrier simplex
    Filtration g = from_incl(s.ord, s.iota);
    for (int axis = 0; axis < 2; ++axis)
      for (int level = 0; level < s.grid.sizes[axis]; ++level)
        CHECK(g.values[carrier.simplex[axis][level]][axis] == s.iota.values[axis][level]);
  }
}

TEST_CASE("same_cell on shifted, tied, and mismatched filtrations") {
  Filtration f = testutil::two_vertex_example();
  CHECK(same_cell(f, f));

  Filtration shifted = f;
  for (auto& row : shifted.values)
    for (double& x : row) x += 0.1;
  CHECK(same_cell(f, shifted));

  auto two_points = std::make_shared<const SimplicialComplex>(
      SimplicialComplex::validate({{0}, {1}}));
  Filtration p{two_points, 2, {{0, 0}, {1, 0}}};
  Filtration q{two_points, 2, {{0, 0}, {0, 0}}};
  CHECK(!same_cell(p, q)); // grid sizes differ

  Filtration other{two_points, 2, {{0, 0}, {1, 0}}};
  CHECK_THROWS_AS(same_cell(f, other), Error); // different complexes
}

TEST_CASE("from_incl substitutes values and validates input") {
  Filtration f = testutil::two_vertex_example();
  Stratification s = stratify(f);
  GridInclusion kappa;
  kappa.values = {{0.3, 0.7}, {-1, 2}};
  Filtration g = from_incl(s.ord, kappa);
  CHECK(g.values[0] == std::vector<double>{0.3, -1});
  CHECK(g.values[1] == std::vector<double>{0.7, -1});
  CHECK(g.values[2] == std::vector<double>{0.7, 2});

  GridInclusion wrong;
  wrong.values = {{0.3, 0.7}};
  CHECK_THROWS_AS(from_incl(s.ord, wrong), Error);
  GridInclusion decreasing;
  decreasing.values = {{0.7, 0.3}, {-1, 2}};
  CHECK_THROWS_AS(from_incl(s.ord, decreasing), Error);
}

TEST_CASE("from_incl is linear in the inclusion") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    auto complex =
        std::make_shared<const SimplicialComplex>(testutil::random_complex(rng, 30));
    Filtration f = testutil::random_filtration(complex, 2, rng, false);
    Stratification s = stratify(f);
    // kappa' = kappa scaled and shifted stays strictly increasing
    GridInclusion kappa2 = s.iota;
    for (auto& axis : kappa2.values)
      for (double& x : axis) x = 2 * x + 1;
    double a = unit(rng), b = unit(rng);
    GridInclusion mix;
    mix.values = s.iota.values;
    for (std::size_t axis = 0; axis < mix.values.size(); ++axis)
      for (std::size_t l = 0; l < mix.values[axis].size(); ++l)
        mix.values[axis][l] = a * s.iota.values[axis][l] + b * kappa2.values[axis][l];
    Filtration left = from_incl(s.ord, mix);
    Filtration right_a = from_incl(s.ord, s.iota);
    Filtration right_b = from_incl(s.ord, kappa2);
    for (std::size_t sx = 0; sx < left.values.size(); ++sx)
      for (int i = 0; i < 2; ++i)
        CHECK(left.values[sx][i] ==
              doctest::Approx(a * right_a.values[sx][i] + b * right_b.values[sx][i]).epsilon(1e-12));
  }
}

TEST_CASE("cell ids are finite in number and serialize canonically") {
  std::mt19937_64 rng(34);
  auto complex = std::make_shared<const SimplicialComplex>(
      SimplicialComplex::validate({{0}, {1}, {0, 1}}));
  std::set<CellId> ids;
  for (int trial = 0; trial < 500; ++trial) {
    Filtration f = testutil::random_filtration(complex, 1, rng);
    ids.insert(cell_id(stratify(f).ord));
  }
  // 3 simplices, one parameter: the level maps are very limited
  CHECK(ids.size() <= 13);
  CHECK(ids.size() >= 2);

  Filtration f = testutil::two_vertex_example();
  CellId id = cell_id(stratify(f).ord);
  CHECK(id == cell_id(stratify(f).ord));
  CHECK(!id.hex().empty());
}
