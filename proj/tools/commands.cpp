#include "commands.hpp"

#include "mpho/complex.hpp"
#include "mpho/descriptors.hpp"
#include "mpho/error.hpp"
#include "mpho/filtration.hpp"
#include "mpho/losses.hpp"
#include "mpho/measure.hpp"
#include "mpho/optimizer.hpp"
#include "mpho/transport.hpp"

#include "json.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

namespace mpho::cli {

namespace {

using nlohmann::json;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::config_error, "cannot open " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(errc::config_error, "cannot open " + path + " for writing");
  return out;
}

Filtration load_filtration(const std::string& complex_path, const std::string& filtration_path,
                           int params) {
  auto complex_in = open_input(complex_path);
  auto complex = std::make_shared<const SimplicialComplex>(read_complex(complex_in));
  auto filtration_in = open_input(filtration_path);
  return read_filtration(filtration_in, complex, params);
}

std::vector<std::vector<double>> load_points(const std::string& path) {
  auto in = open_input(path);
  return read_point_cloud(in).points;
}

void print_measure_summary(const SignedMeasure& measure) {
  std::cout << "masses: " << measure.masses.size() << " locations, +" << measure.positive_count()
            << " / -" << measure.negative_count() << ", total mass " << measure.total_mass()
            << "\n";
}

IntegrandSpec parse_integrand(const json& spec) {
  IntegrandSpec integrand;
  std::string kind = spec.value("kind", "norm_power");
  if (kind == "norm_power") {
    integrand.kind = IntegrandSpec::Kind::norm_power;
    integrand.exponent = spec.value("exponent", 2.0);
    if (!(integrand.exponent > 0)) fail(errc::config_error, "integrand exponent must be positive");
    return integrand;
  }
  if (kind != "gaussian") fail(errc::config_error, "unknown integrand kind '" + kind + "'");
  integrand.kind = IntegrandSpec::Kind::gaussian_mixture;
  if (!spec.contains("bumps") || !spec["bumps"].is_array() || spec["bumps"].empty())
    fail(errc::config_error, "gaussian integrand needs a nonempty 'bumps' array");
  for (const auto& bump : spec["bumps"]) {
    std::vector<double> center = bump.at("center").get<std::vector<double>>();
    std::vector<std::vector<double>> precision =
        bump.at("sigma_inverse").get<std::vector<std::vector<double>>>();
    double weight = bump.value("weight", 1.0);
    integrand.bumps.push_back(make_gaussian_bump(std::move(center), precision, weight));
  }
  return integrand;
}

LossSpec parse_loss(const json& spec, int params) {
  LossSpec loss;
  std::string descriptor = spec.value("descriptor", "hilbert");
  if (descriptor == "hilbert") loss.descriptor = DescriptorKind::hilbert;
  else if (descriptor == "rank") loss.descriptor = DescriptorKind::rank;
  else if (descriptor == "landscape") loss.descriptor = DescriptorKind::landscape;
  else fail(errc::config_error, "unknown descriptor '" + descriptor + "'");

  loss.degree = spec.value("degree", 0);
  if (loss.degree < 0) fail(errc::config_error, "degree must be nonnegative");
  loss.sign = spec.value("sign", 1);
  if (loss.sign != 1 && loss.sign != -1) fail(errc::config_error, "sign must be +1 or -1");

  std::string kind = spec.value("loss", "distance_to_measure");
  if (kind == "distance_to_measure") {
    loss.kind = LossSpec::Kind::distance_to_measure;
    std::string target = spec.value("target", "zero");
    if (target == "zero") {
      loss.target.ground =
          loss.descriptor == DescriptorKind::rank ? GroundSpace::bars : GroundSpace::euclidean;
      loss.target.params = params;
    } else {
      auto in = open_input(target);
      loss.target = read_measure(in);
    }
  } else if (kind == "integration") {
    loss.kind = LossSpec::Kind::integration;
    if (!spec.contains("integrand")) fail(errc::config_error, "integration loss needs 'integrand'");
    loss.integrand = parse_integrand(spec["integrand"]);
  } else {
    fail(errc::config_error, "unknown loss '" + kind + "'");
  }

  if (loss.descriptor == DescriptorKind::landscape) {
    if (!spec.contains("landscape") || !spec["landscape"].is_array())
      fail(errc::config_error, "landscape descriptor needs a 'landscape' query array");
    for (const auto& query : spec["landscape"]) {
      LandscapeQuery q;
      q.k = query.value("k", 1);
      q.z = query.at("z").get<std::vector<double>>();
      q.target = query.value("target", 0.0);
      loss.landscape_queries.push_back(std::move(q));
    }
  }
  return loss;
}

} // namespace

int run_compute(const ComputeArgs& args) {
  Filtration f = load_filtration(args.complex_path, args.filtration_path, args.params);

  if (args.descriptor == "hilbert" || args.descriptor == "rank") {
    SignedMeasure measure = args.descriptor == "hilbert" ? hilbert_measure(f, args.degree)
                                                         : rank_measure(f, args.degree);
    auto out = open_output(args.out_path);
    write_measure(out, measure);
    print_measure_summary(measure);
    return exit_ok;
  }
  if (args.descriptor != "landscape")
    fail(errc::config_error, "unknown descriptor '" + args.descriptor + "'");

  if (args.points_path.empty())
    fail(errc::config_error, "landscape output needs --points with sample locations");
  if (args.landscape_k < 1) fail(errc::config_error, "landscape level k must be at least 1");
  auto samples = load_points(args.points_path);
  LandscapeEvaluator evaluator(f, args.degree);
  auto out = open_output(args.out_path);
  for (int i = 1; i <= f.params; ++i) out << "z_" << i << ',';
  out << "k,value\n" << std::setprecision(17);
  for (const auto& z : samples) {
    if (static_cast<int>(z.size()) != f.params)
      fail(errc::dimension_mismatch, "sample point dimension does not match the filtration");
    double value = evaluator.evaluate(args.landscape_k, z).value;
    for (double c : z) out << c << ',';
    out << args.landscape_k << ',' << value << '\n';
  }
  std::cout << "evaluated " << samples.size() << " landscape queries at level " << args.landscape_k
            << "\n";
  return exit_ok;
}

int run_distance(const DistanceArgs& args) {
  auto in_a = open_input(args.a_path);
  SignedMeasure a = read_measure(in_a);
  auto in_b = open_input(args.b_path);
  SignedMeasure b = read_measure(in_b);

  GroundMetric metric;
  if (args.ground == "rn") metric.space = GroundSpace::euclidean;
  else if (args.ground == "bars") metric.space = GroundSpace::bars;
  else fail(errc::config_error, "unknown ground space '" + args.ground + "'");
  metric.params = a.params;

  TransportResult result = ot_distance(a, b, metric);
  if (std::isinf(result.cost)) {
    warn("total masses differ, no finite assignment exists");
    std::cout << "inf\n";
    return exit_ok;
  }
  std::cout << std::setprecision(17) << result.cost << "\n";

  if (!args.assignment_path.empty()) {
    auto out = open_output(args.assignment_path);
    out << "left,right,cost\n" << std::setprecision(17);
    auto print_loc = [&](const std::vector<double>& loc) {
      if (loc.empty()) {
        out << "diagonal";
        return;
      }
      out << '(';
      for (std::size_t i = 0; i < loc.size(); ++i) {
        if (i) out << ' ';
        out << loc[i];
      }
      out << ')';
    };
    for (const auto& pair : result.assignment.pairs) {
      print_loc(pair.left_location);
      out << ',';
      print_loc(pair.right_location);
      out << ',' << pair.cost << '\n';
    }
  }
  return exit_ok;
}

namespace {

PointCloud starting_cloud(const json& config) {
  if (config.contains("input")) {
    auto in = open_input(config["input"].get<std::string>());
    return read_point_cloud(in);
  }
  if (!config.contains("generate"))
    fail(errc::config_error, "optimize config needs 'input' or 'generate'");
  const json& gen = config["generate"];
  std::string kind = gen.value("kind", "uniform-square");
  if (kind != "uniform-square")
    fail(errc::config_error, "unknown generator '" + kind + "'");
  int count = gen.value("count", 30);
  if (count < 1) fail(errc::config_error, "generator count must be positive");
  double scale = gen.value("scale", 1.0);
  std::mt19937_64 rng(gen.value("seed", 0));
  std::uniform_real_distribution<double> coord(0.0, scale);
  std::vector<std::vector<double>> points;
  for (int i = 0; i < count; ++i) points.push_back({coord(rng), coord(rng)});
  return make_point_cloud(std::move(points));
}

PipelineSpec parse_pipeline(const json& config) {
  PipelineSpec pipeline;
  std::string kind = config.value("kind", "vietoris_rips");
  if (kind == "vietoris_rips") pipeline.kind = PipelineSpec::Kind::vietoris_rips;
  else if (kind == "function_rips") pipeline.kind = PipelineSpec::Kind::function_rips;
  else fail(errc::config_error, "unknown pipeline '" + kind + "'");
  pipeline.max_dim = config.value("max_dim", 2);
  if (pipeline.max_dim < 1) fail(errc::config_error, "max_dim must be at least 1");
  if (config.contains("max_radius") && !config["max_radius"].is_null())
    pipeline.max_radius = config["max_radius"].get<double>();
  if (config.contains("bandwidth") && !config["bandwidth"].is_null())
    pipeline.bandwidth = config["bandwidth"].get<double>();
  return pipeline;
}

Schedule parse_schedule(const json& config) {
  std::string kind = config.value("kind", "harmonic");
  double a0 = config.value("a0", 0.1);
  if (kind == "harmonic") return Schedule::harmonic(a0);
  if (kind == "constant") return Schedule::constant(a0);
  if (kind == "polynomial") return Schedule::polynomial_decay(a0, config.value("exponent", 0.75));
  fail(errc::config_error, "unknown schedule '" + kind + "'");
}

double diameter_of(const PointCloud& cloud) { return cloud_diameter(cloud); }

double max_norm_of(const PointCloud& cloud) {
  double best = 0;
  for (const auto& p : cloud.points) {
    double norm = 0;
    for (double c : p) norm += c * c;
    best = std::max(best, std::sqrt(norm));
  }
  return best;
}

} // namespace

int run_optimize(const OptimizeArgs& args) {
  json config;
  {
    auto in = open_input(args.config_path);
    try {
      in >> config;
    } catch (const json::exception& e) {
      fail(errc::config_error, std::string("bad config JSON: ") + e.what());
    }
  }

  try {
    OptimizeOptions options;
    options.pipeline = parse_pipeline(config.value("pipeline", json::object()));
    int params = options.pipeline.kind == PipelineSpec::Kind::function_rips ? 2 : 1;
    json loss_json = config.value("loss", json::object());
    if (!args.loss_override.empty()) loss_json = json::parse(args.loss_override);
    options.loss = parse_loss(loss_json, params);
    options.schedule = parse_schedule(config.value("schedule", json::object()));
    options.epochs = config.value("epochs", 0);
    if (options.epochs < 1) fail(errc::config_error, "epochs must be at least 1");
    options.seed = args.seed ? *args.seed : config.value("seed", 0);
    options.noise_scale = config.value("noise_scale", 0.0);
    if (config.contains("box")) {
      BoundingBox box;
      box.lo = config["box"].at("lo").get<std::vector<double>>();
      box.hi = config["box"].at("hi").get<std::vector<double>>();
      if (box.lo.empty() || box.lo.size() != box.hi.size())
        fail(errc::config_error, "box needs matching lo/hi arrays");
      options.box = std::move(box);
    }

    PointCloud x0 = starting_cloud(config);

    std::filesystem::create_directories(args.out_dir);
    auto trajectory = optimize_pointcloud(x0, options);

    std::ofstream log(std::filesystem::path(args.out_dir) / "trajectory.jsonl");
    for (const auto& point : trajectory) {
      std::ostringstream name;
      name << "epoch_" << std::setw(4) << std::setfill('0') << point.epoch << ".csv";
      auto csv = open_output((std::filesystem::path(args.out_dir) / name.str()).string());
      write_point_cloud(csv, point.cloud);
      json line = {{"epoch", point.epoch}, {"loss", point.loss}, {"points", name.str()}};
      log << line.dump() << "\n";
    }

    double initial = trajectory.front().loss, final_loss = trajectory.back().loss;
    double diam0 = diameter_of(trajectory.front().cloud);
    double diam1 = diameter_of(trajectory.back().cloud);
    std::cout << std::setprecision(10) << "epochs: " << options.epochs << "\n"
              << "loss: " << initial << " -> " << final_loss << "\n"
              << "diameter: " << diam0 << " -> " << diam1 << " (ratio "
              << (diam0 > 0 ? diam1 / diam0 : 0) << ")\n"
              << "max point norm: " << max_norm_of(trajectory.back().cloud) << "\n";
    return exit_ok;
  } catch (const json::exception& e) {
    fail(errc::config_error, std::string("bad config: ") + e.what());
  }
}

} // namespace mpho::cli
