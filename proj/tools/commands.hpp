#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace mpho::cli {

// Exit codes: 0 success, 1 usage/config error, 2 data/invariant error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_data = 2;

struct ComputeArgs {
  std::string complex_path;
  std::string filtration_path;
  std::string out_path;
  std::string descriptor = "hilbert"; // hilbert | rank | landscape
  int degree = 0;
  int params = 1;
  int landscape_k = 1;
  std::string points_path; // landscape sample points
};

struct DistanceArgs {
  std::string a_path;
  std::string b_path;
  std::string ground = "rn"; // rn | bars
  std::string assignment_path;
};

struct OptimizeArgs {
  std::string config_path;
  std::string out_dir;
  std::string loss_override; // inline JSON, optional
  std::optional<std::uint64_t> seed;
};

int run_compute(const ComputeArgs& args);
int run_distance(const DistanceArgs& args);
int run_optimize(const OptimizeArgs& args);

} // namespace mpho::cli
