#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mpho/error.hpp"
#include "mpho/optimizer.hpp"
#include "test_util.hpp"

#include <random>

using namespace mpho;

namespace {

int warnings_seen = 0;
void count_warning(const std::string&) { ++warnings_seen; }

} // namespace

TEST_CASE("schedules implement their decay laws") {
  Schedule h = Schedule::harmonic(0.5);
  CHECK(h.rate(0) == 0.5);
  CHECK(h.rate(4) == doctest::Approx(0.1));
  CHECK(h.summability_ok());

  Schedule p = Schedule::polynomial_decay(1.0, 0.75);
  CHECK(p.rate(0) == 1.0);
  CHECK(p.rate(15) == doctest::Approx(1.0 / std::pow(16.0, 0.75)));
  CHECK(p.summability_ok());
  CHECK_THROWS_AS(Schedule::polynomial_decay(1.0, 0.5), Error);
  CHECK_THROWS_AS(Schedule::polynomial_decay(1.0, 1.5), Error);
  CHECK_THROWS_AS(Schedule::harmonic(0.0), Error);

  warnings_seen = 0;
  set_warning_handler(&count_warning);
  Schedule c = Schedule::constant(0.1);
  set_warning_handler(nullptr);
  CHECK(warnings_seen == 1);
  CHECK(!c.summability_ok());
  CHECK(c.rate(100) == 0.1);
}

TEST_CASE("zero gradient and zero noise leave the iterate unchanged") {
  OptimizationState state = OptimizationState::start({1.0, -2.0}, Schedule::harmonic(0.5), 3);
  GradientProvider flat = [](const std::vector<double>& x) {
    return std::make_pair(0.0, std::vector<double>(x.size(), 0.0));
  };
  step(state, flat);
  CHECK(state.iterate == std::vector<double>{1.0, -2.0});
  CHECK(state.loss_trace == std::vector<double>{0.0});
}

TEST_CASE("harmonic descent contracts the quadratic") {
  OptimizationState state = OptimizationState::start({1.0}, Schedule::harmonic(0.5), 0);
  GradientProvider quadratic = [](const std::vector<double>& x) {
    return std::make_pair(x[0] * x[0], std::vector<double>{2 * x[0]});
  };
  for (int k = 0; k < 200; ++k) step(state, quadratic);
  CHECK(std::abs(state.iterate[0]) < 0.2);
  // the loss trace is monotone decreasing for this recursion
  for (std::size_t i = 1; i < state.loss_trace.size(); ++i)
    CHECK(state.loss_trace[i] <= state.loss_trace[i - 1] + 1e-15);
}

TEST_CASE("seeded runs are bit-reproducible") {
  auto run = [](std::uint64_t seed) {
    OptimizationState state = OptimizationState::start({1.0, 0.5}, Schedule::harmonic(0.3), seed);
    state.noise_scale = 0.1;
    GradientProvider quadratic = [](const std::vector<double>& x) {
      double loss = 0;
      std::vector<double> grad(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        loss += x[i] * x[i];
        grad[i] = 2 * x[i];
      }
      return std::make_pair(loss, grad);
    };
    for (int k = 0; k < 50; ++k) step(state, quadratic);
    return state;
  };
  OptimizationState a = run(42), b = run(42), c = run(43);
  CHECK(a.loss_trace == b.loss_trace);
  CHECK(a.iterate == b.iterate);
  CHECK(a.loss_trace != c.loss_trace);
}

TEST_CASE("bounding box clamps every coordinate") {
  OptimizationState state = OptimizationState::start({0.9, -0.9}, Schedule::constant(10.0), 0);
  state.box = BoundingBox{{-1, -1}, {1, 1}};
  GradientProvider push = [](const std::vector<double>&) {
    return std::make_pair(0.0, std::vector<double>{-5.0, 5.0});
  };
  for (int k = 0; k < 5; ++k) step(state, push);
  CHECK(state.iterate[0] == 1.0);
  CHECK(state.iterate[1] == -1.0);
}

TEST_CASE("non-finite gradients abort with a diagnostic") {
  OptimizationState state = OptimizationState::start({1.0}, Schedule::harmonic(0.5), 0);
  GradientProvider bad = [](const std::vector<double>&) {
    return std::make_pair(0.0, std::vector<double>{std::numeric_limits<double>::quiet_NaN()});
  };
  CHECK_THROWS_WITH_AS(step(state, bad), doctest::Contains("NonFiniteGradient"), Error);
}

TEST_CASE("monotone repair is idempotent and fixes violations") {
  std::mt19937_64 rng(91);
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);
  for (int trial = 0; trial < 30; ++trial) {
    auto complex =
        std::make_shared<const SimplicialComplex>(testutil::random_complex(rng, 35));
    Filtration f = testutil::random_filtration(complex, 2, rng);
    CHECK(monotone_repair(f).values == f.values); // identity on monotone input

    Filtration broken = f;
    for (auto& row : broken.values)
      for (double& x : row) x += jitter(rng);
    Filtration fixed = monotone_repair(broken);
    CHECK(is_monotone(fixed));
    CHECK(monotone_repair(fixed).values == fixed.values);
    // repair only ever raises values, and by no more than the perturbation spread
    for (std::size_t s = 0; s < fixed.values.size(); ++s)
      for (int c = 0; c < 2; ++c) CHECK(fixed.values[s][c] >= broken.values[s][c]);
  }
}

TEST_CASE("filtration optimization descends an integration loss") {
  auto complex = std::make_shared<const SimplicialComplex>(
      SimplicialComplex::validate({{0}, {1}, {0, 1}}));
  Filtration f0{complex, 1, {{1.0}, {2.0}, {3.0}}};

  LossSpec spec;
  spec.kind = LossSpec::Kind::integration;
  spec.descriptor = DescriptorKind::hilbert;
  spec.degree = 0;
  spec.integrand.kind = IntegrandSpec::Kind::norm_power;
  spec.integrand.exponent = 2;

  auto trajectory = optimize_filtration(f0, spec, Schedule::harmonic(0.2), 60, 7);
  CHECK(trajectory.size() == 61);
  CHECK(trajectory.back().loss < trajectory.front().loss);
  for (const auto& point : trajectory) CHECK(is_monotone(point.filtration));
}

TEST_CASE("pointcloud optimization is deterministic and tracks the loss") {
  std::mt19937_64 rng(92);
  PointCloud cloud = testutil::random_cloud(rng, 8, 2);

  OptimizeOptions options;
  options.pipeline.kind = PipelineSpec::Kind::vietoris_rips;
  options.pipeline.max_dim = 2;
  options.loss.kind = LossSpec::Kind::distance_to_measure;
  options.loss.descriptor = DescriptorKind::hilbert;
  options.loss.degree = 1;
  options.loss.sign = -1;
  options.loss.target.ground = GroundSpace::euclidean;
  options.loss.target.params = 1;
  options.schedule = Schedule::harmonic(0.05);
  options.epochs = 5;
  options.seed = 11;

  auto a = optimize_pointcloud(cloud, options);
  auto b = optimize_pointcloud(cloud, options);
  REQUIRE(a.size() == 6);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].loss == b[i].loss);
    CHECK(a[i].cloud.points == b[i].cloud.points);
  }
  CHECK_THROWS_AS(optimize_pointcloud(cloud, [&] {
                    auto broken = options;
                    broken.epochs = 0;
                    return broken;
                  }()),
                  Error);
}
