#include "commands.hpp"

#include "mpho/error.hpp"
#include "mpho/parallel.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Differentiable multiparameter persistence descriptors"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: all cores)");

  mpho::cli::ComputeArgs compute_args;
  CLI::App* compute = app.add_subcommand("compute", "compute a descriptor of a filtration");
  compute->add_option("--complex", compute_args.complex_path, "complex file")->required();
  compute->add_option("--filtration", compute_args.filtration_path, "filtration value file")
      ->required();
  compute->add_option("--degree", compute_args.degree, "homology degree")->required();
  compute->add_option("--descriptor", compute_args.descriptor, "hilbert | rank | landscape");
  compute->add_option("--n", compute_args.params, "number of filtration parameters")->required();
  compute->add_option("--out", compute_args.out_path, "output file")->required();
  compute->add_option("--k", compute_args.landscape_k, "landscape level");
  compute->add_option("--points", compute_args.points_path, "landscape sample points (CSV)");

  // `landscape` is compute with the descriptor preselected
  mpho::cli::ComputeArgs landscape_args;
  landscape_args.descriptor = "landscape";
  CLI::App* landscape = app.add_subcommand("landscape", "evaluate persistence landscapes");
  landscape->add_option("--complex", landscape_args.complex_path, "complex file")->required();
  landscape->add_option("--filtration", landscape_args.filtration_path, "filtration value file")
      ->required();
  landscape->add_option("--degree", landscape_args.degree, "homology degree")->required();
  landscape->add_option("--n", landscape_args.params, "number of filtration parameters")
      ->required();
  landscape->add_option("--k", landscape_args.landscape_k, "landscape level")->required();
  landscape->add_option("--points", landscape_args.points_path, "sample points (CSV)")->required();
  landscape->add_option("--out", landscape_args.out_path, "output file")->required();

  mpho::cli::DistanceArgs distance_args;
  CLI::App* distance = app.add_subcommand("distance", "transport distance between measure files");
  distance->add_option("--a", distance_args.a_path, "first measure CSV")->required();
  distance->add_option("--b", distance_args.b_path, "second measure CSV")->required();
  distance->add_option("--ground", distance_args.ground, "rn | bars");
  distance->add_option("--assignment", distance_args.assignment_path,
                       "write the optimal assignment here");

  mpho::cli::OptimizeArgs optimize_args;
  std::uint64_t seed_value = 0;
  CLI::App* optimize = app.add_subcommand("optimize", "subgradient descent on a point cloud");
  optimize->add_option("--config", optimize_args.config_path, "run configuration (JSON)")
      ->required();
  optimize->add_option("--out", optimize_args.out_dir, "output directory")->required();
  optimize->add_option("--loss", optimize_args.loss_override, "inline loss JSON override");
  CLI::Option* seed_opt = optimize->add_option("--seed", seed_value, "seed override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mpho::cli::exit_usage;
  }

  if (threads > 0) mpho::set_thread_count(threads);

  try {
    if (compute->parsed()) return mpho::cli::run_compute(compute_args);
    if (landscape->parsed()) return mpho::cli::run_compute(landscape_args);
    if (distance->parsed()) return mpho::cli::run_distance(distance_args);
    if (optimize->parsed()) {
      if (seed_opt->count() > 0) optimize_args.seed = seed_value;
      return mpho::cli::run_optimize(optimize_args);
    }
  } catch (const mpho::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == mpho::errc::config_error ? mpho::cli::exit_usage : mpho::cli::exit_data;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mpho::cli::exit_data;
  }
  return mpho::cli::exit_usage;
}
