#include "mpho/descriptors.hpp"
#include "mpho/losses.hpp"
#include "mpho/transport.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace mpho;

namespace {

PointCloud square_cloud(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  std::vector<std::vector<double>> points;
  for (int i = 0; i < count; ++i) points.push_back({coord(rng), coord(rng)});
  return make_point_cloud(std::move(points));
}

} // namespace

static void BM_HilbertMeasureRips(benchmark::State& state) {
  PointCloud cloud = square_cloud(static_cast<int>(state.range(0)), 7);
  auto rips = vietoris_rips(cloud, 2, std::numeric_limits<double>::infinity());
  for (auto _ : state) {
    benchmark::DoNotOptimize(hilbert_measure(rips.filtration, 1));
  }
}
BENCHMARK(BM_HilbertMeasureRips)->Arg(15)->Arg(25)->Arg(30);

static void BM_HilbertMeasureFunctionRips(benchmark::State& state) {
  PointCloud cloud = square_cloud(static_cast<int>(state.range(0)), 7);
  auto density = gaussian_kde(cloud, default_bandwidth(cloud));
  auto rips = function_rips(cloud, density, 2, std::numeric_limits<double>::infinity());
  for (auto _ : state) {
    benchmark::DoNotOptimize(hilbert_measure(rips.filtration, 1));
  }
}
BENCHMARK(BM_HilbertMeasureFunctionRips)->Arg(15)->Arg(25)->Arg(30);

static void BM_RankGrid(benchmark::State& state) {
  PointCloud cloud = square_cloud(static_cast<int>(state.range(0)), 7);
  auto density = gaussian_kde(cloud, default_bandwidth(cloud));
  auto rips = function_rips(cloud, density, 2, std::numeric_limits<double>::infinity());
  Stratification strat = stratify(rips.filtration);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_grid(strat.ord, 1));
  }
}
BENCHMARK(BM_RankGrid)->Arg(8)->Arg(12);

static void BM_HungarianAssignment(benchmark::State& state) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> coord(0.0, 1.0);
  const int n = static_cast<int>(state.range(0));
  SignedMeasure mu, nu;
  mu.ground = nu.ground = GroundSpace::euclidean;
  mu.params = nu.params = 2;
  for (int i = 0; i < n; ++i) {
    mu.masses.push_back({{coord(rng), coord(rng)}, 1});
    nu.masses.push_back({{coord(rng), coord(rng)}, 1});
  }
  mu = canonicalize(std::move(mu));
  nu = canonicalize(std::move(nu));
  GroundMetric metric{GroundSpace::euclidean, 2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ot_distance(mu, nu, metric));
  }
}
BENCHMARK(BM_HungarianAssignment)->Arg(32)->Arg(128)->Arg(512);

static void BM_PointCloudGradient(benchmark::State& state) {
  PointCloud cloud = square_cloud(static_cast<int>(state.range(0)), 7);
  PipelineSpec pipeline;
  pipeline.kind = PipelineSpec::Kind::function_rips;
  pipeline.max_dim = 2;
  LossSpec loss;
  loss.kind = LossSpec::Kind::distance_to_measure;
  loss.descriptor = DescriptorKind::hilbert;
  loss.degree = 1;
  loss.sign = -1;
  loss.target.ground = GroundSpace::euclidean;
  loss.target.params = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pointcloud_gradient(cloud, pipeline, loss));
  }
}
BENCHMARK(BM_PointCloudGradient)->Arg(15)->Arg(30);

BENCHMARK_MAIN();
