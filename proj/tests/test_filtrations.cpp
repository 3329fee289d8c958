#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mpho/error.hpp"
#include "mpho/filtration.hpp"
#include "test_util.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace mpho;

TEST_CASE("lower star extends vertex values by coordinatewise max") {
  auto complex = std::make_shared<const SimplicialComplex>(
      SimplicialComplex::validate({{0}, {1}, {0, 1}}));

  std::map<VertexId, std::vector<double>> values{{0, {0, 0}}, {1, {1, 0}}};
  Filtration f = lower_star(complex, values);
  CHECK(f.values[2] == std::vector<double>{1, 0});

  std::map<VertexId, std::vector<double>> mixed{{0, {0, 1}}, {1, {1, 0}}};
  Filtration g = lower_star(complex, mixed);
  CHECK(g.values[2] == std::vector<double>{1, 1}); // coordinates mix

  auto point = std::make_shared<const SimplicialComplex>(SimplicialComplex::validate({{5}}));
  Filtration h = lower_star(point, {{5, {5, -2}}});
  CHECK(h.values[0] == std::vector<double>{5, -2});

  CHECK_THROWS_AS(lower_star(complex, {{0, {0, 0}}}), Error); // vertex 1 missing
}

TEST_CASE("lower star is idempotent through re-extension") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 25; ++trial) {
    auto complex =
        std::make_shared<const SimplicialComplex>(testutil::random_complex(rng, 40));
    std::map<VertexId, std::vector<double>> values;
    std::uniform_real_distribution<double> unit(0, 1);
    for (VertexId v : complex->vertex_ids()) values[v] = {unit(rng), unit(rng)};
    Filtration f = lower_star(complex, values);
    validate_filtration(f);
    // read vertex values back off the filtration and re-extend
    std::map<VertexId, std::vector<double>> recovered;
    for (std::size_t s = 0; s < complex->size(); ++s)
      if (complex->simplex_dim(static_cast<int>(s)) == 0)
        recovered[complex->simplex_vertices(static_cast<int>(s))[0]] = f.values[s];
    Filtration again = lower_star(complex, recovered);
    CHECK(again.values == f.values);
  }
}

TEST_CASE("vietoris rips on the named configurations") {
  // equilateral triangle at mutual distance 1
  PointCloud triangle = make_point_cloud({{0, 0}, {1, 0}, {0.5, std::sqrt(3) / 2}});
  auto full = vietoris_rips(triangle, 2, 2.0);
  CHECK(full.filtration.complex->size() == 7);
  for (std::size_t s = 0; s < full.filtration.complex->size(); ++s) {
    int dim = full.filtration.complex->simplex_dim(static_cast<int>(s));
    if (dim == 0) CHECK(full.filtration.values[s][0] == 0);
    else CHECK(full.filtration.values[s][0] == doctest::Approx(1.0));
  }

  // threshold cuts the single edge
  PointCloud far_points = make_point_cloud({{0, 0}, {5, 0}});
  auto cut = vietoris_rips(far_points, 2, 2.0);
  CHECK(cut.filtration.complex->size() == 2);

  // collinear points 0, 1, 3: edge values are the pairwise distances
  PointCloud line = make_point_cloud({{0}, {1}, {3}});
  auto edges = vietoris_rips(line, 1, 10.0);
  CHECK(edges.filtration.complex->size() == 6);
  std::vector<double> edge_values;
  for (std::size_t s = 0; s < edges.filtration.complex->size(); ++s)
    if (edges.filtration.complex->simplex_dim(static_cast<int>(s)) == 1)
      edge_values.push_back(edges.filtration.values[s][0]);
  std::sort(edge_values.begin(), edge_values.end());
  CHECK(edge_values == std::vector<double>{1, 2, 3});
}

TEST_CASE("rips simplex values equal the max of their edges") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    PointCloud cloud = testutil::random_cloud(rng, 8, 2);
    auto rips = vietoris_rips(cloud, 2, 0.8);
    validate_filtration(rips.filtration);
    const auto& complex = *rips.filtration.complex;
    for (std::size_t s = 0; s < complex.size(); ++s) {
      if (complex.simplex_dim(static_cast<int>(s)) < 1) continue;
      const auto& simplex = complex.simplex(static_cast<int>(s));
      double best = 0;
      for (std::size_t a = 0; a < simplex.size(); ++a)
        for (std::size_t b = a + 1; b < simplex.size(); ++b) {
          std::vector<int> edge{simplex[a], simplex[b]};
          int e = complex.index_of(edge);
          REQUIRE(e >= 0);
          best = std::max(best, rips.filtration.values[e][0]);
        }
      CHECK(rips.filtration.values[s][0] == best);
      // the witness edge realizes the value
      auto [u, v] = rips.max_edge[s];
      CHECK(euclidean_distance(cloud.points[u], cloud.points[v]) ==
            doctest::Approx(rips.filtration.values[s][0]));
    }
  }
}

TEST_CASE("gaussian kde closed forms") {
  PointCloud solo = make_point_cloud({{0.4, 0.7}});
  CHECK(gaussian_kde(solo, 1.0).values[0] == doctest::Approx(1.0));

  PointCloud twins = make_point_cloud({{1, 2}, {1, 2}});
  auto d = gaussian_kde(twins, 0.5);
  CHECK(d.values[0] == doctest::Approx(1.0));
  CHECK(d.values[1] == doctest::Approx(1.0));

  double h = 0.37;
  PointCloud pair = make_point_cloud({{0}, {h}});
  auto dh = gaussian_kde(pair, h);
  double expected = (1 + std::exp(-0.5)) / 2;
  CHECK(dh.values[0] == doctest::Approx(expected));
  CHECK(dh.values[1] == doctest::Approx(expected));

  CHECK_THROWS_AS(gaussian_kde(pair, 0.0), Error);
  CHECK_THROWS_AS(gaussian_kde(pair, -1.0), Error);
}

TEST_CASE("kde gradient matches finite differences") {
  std::mt19937_64 rng(43);
  PointCloud cloud = testutil::random_cloud(rng, 6, 2);
  const double h = 0.4, fd = 1e-6;
  for (int at = 0; at < 3; ++at) {
    auto grad = kde_gradient(cloud, h, at);
    for (std::size_t p = 0; p < cloud.size(); ++p) {
      for (int c = 0; c < 2; ++c) {
        PointCloud plus = cloud, minus = cloud;
        plus.points[p][c] += fd;
        minus.points[p][c] -= fd;
        double numeric =
            (gaussian_kde(plus, h).values[at] - gaussian_kde(minus, h).values[at]) / (2 * fd);
        CHECK(grad[p][c] == doctest::Approx(numeric).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("function rips bifiltration named examples") {
  PointCloud solo = make_point_cloud({{2, 3}});
  auto d1 = gaussian_kde(solo, 1.0);
  auto one = function_rips(solo, d1, 2, 10.0);
  CHECK(one.filtration.values[0] == std::vector<double>{0, -1});

  PointCloud pair = make_point_cloud({{0, 0}, {1, 0}});
  auto d2 = gaussian_kde(pair, 0.8);
  CHECK(d2.values[0] == doctest::Approx(d2.values[1]));
  auto two = function_rips(pair, d2, 2, 10.0);
  // the edge sits at (1, -rho)
  CHECK(two.filtration.values[2][0] == doctest::Approx(1.0));
  CHECK(two.filtration.values[2][1] == doctest::Approx(-d2.values[0]));

  DensityEstimate bad;
  bad.values = {1.0};
  bad.bandwidth = 1;
  CHECK_THROWS_AS(function_rips(pair, bad, 2, 10.0), Error);
}

TEST_CASE("function rips passes the monotonicity check on random clouds") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    PointCloud cloud = testutil::random_cloud(rng, 7, 2);
    auto density = gaussian_kde(cloud, default_bandwidth(cloud) + 1e-9);
    auto built = function_rips(cloud, density, 2, 1.5);
    validate_filtration(built.filtration); // throws on violation
    // direct pairwise check of the monotone invariant
    const auto& complex = *built.filtration.complex;
    for (std::size_t s = 0; s < complex.size(); ++s)
      for (int face : complex.facets(static_cast<int>(s)))
        for (int i = 0; i < 2; ++i)
          CHECK(built.filtration.values[face][i] <= built.filtration.values[s][i]);
  }
}

TEST_CASE("filtration and point cloud files round trip") {
  std::mt19937_64 rng(45);
  auto complex = std::make_shared<const SimplicialComplex>(testutil::random_complex(rng, 25));
  Filtration f = testutil::random_filtration(complex, 2, rng);
  std::stringstream buffer;
  write_filtration(buffer, f);
  Filtration parsed = read_filtration(buffer, complex, 2);
  CHECK(parsed.values == f.values);

  std::stringstream wrong("0.5\n");
  CHECK_THROWS_AS(read_filtration(wrong, complex, 2), Error);

  PointCloud cloud = testutil::random_cloud(rng, 9, 3);
  std::stringstream cloud_buffer;
  write_point_cloud(cloud_buffer, cloud);
  PointCloud cloud_back = read_point_cloud(cloud_buffer);
  CHECK(cloud_back.points == cloud.points);
}
