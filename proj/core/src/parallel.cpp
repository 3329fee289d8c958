#include "mpho/parallel.hpp"
#include "mpho/error.hpp"

#include <atomic>
#include <cstdio>
#include <mutex>
#include <thread>
#include <vector>

namespace mpho {

namespace {

std::atomic<int> g_threads{0}; // 0 = not set yet, use hardware concurrency

std::mutex g_warn_mutex;
void (*g_warn_handler)(const std::string&) = nullptr;

} // namespace

void set_thread_count(int threads) { g_threads.store(threads < 1 ? 1 : threads); }

int thread_count() {
  int t = g_threads.load();
  if (t > 0) return t;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  int workers = thread_count();
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  if (static_cast<std::size_t>(workers) > count) workers = static_cast<int>(count);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        body(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

const char* errc_name(errc code) {
  switch (code) {
    case errc::missing_face: return "MissingFace";
    case errc::duplicate_simplex: return "DuplicateSimplex";
    case errc::empty_simplex: return "EmptySimplex";
    case errc::not_nested: return "NotNested";
    case errc::missing_vertex_value: return "MissingVertexValue";
    case errc::nonpositive_bandwidth: return "NonpositiveBandwidth";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::complex_mismatch: return "ComplexMismatch";
    case errc::not_surjective: return "NotSurjective";
    case errc::size_mismatch: return "SizeMismatch";
    case errc::non_increasing: return "NonIncreasing";
    case errc::ground_space_mismatch: return "GroundSpaceMismatch";
    case errc::infinite_cost: return "InfiniteCost";
    case errc::non_finite_gradient: return "NonFiniteGradient";
    case errc::incompatible_loss: return "IncompatibleLoss";
    case errc::parse_error: return "ParseError";
    case errc::config_error: return "ConfigError";
    case errc::too_large: return "TooLarge";
  }
  return "Error";
}

void warn(const std::string& message) {
  std::lock_guard<std::mutex> lock(g_warn_mutex);
  if (g_warn_handler) {
    g_warn_handler(message);
  } else {
    std::fprintf(stderr, "warning: %s\n", message.c_str());
  }
}

void set_warning_handler(void (*handler)(const std::string&)) {
  std::lock_guard<std::mutex> lock(g_warn_mutex);
  g_warn_handler = handler;
}

} // namespace mpho
