#pragma once

// Timing harness for the structured O(n) operations against the dense
// reference routines.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "crossmat/crossmat.hpp"
#include "crossmat/oracle.hpp"

namespace crossmat::bench {

inline const std::vector<std::string>& known_ops() {
  static const std::vector<std::string> ops{"det", "inv", "mul", "solve", "eig", "svd"};
  return ops;
}

inline bool is_known_op(const std::string& op) {
  const auto& k = known_ops();
  return std::find(k.begin(), k.end(), op) != k.end();
}

struct Config {
  std::vector<std::size_t> sizes;
  std::vector<std::string> ops;
  int repeats = 5;
  std::size_t dense_max = 2048;
  double min_batch_seconds = 2e-3;  // each timed sample runs at least this long
  std::uint64_t seed = 12345;
};

struct Row {
  std::string op;
  std::size_t n = 0;
  double structured = 0;          // seconds per call
  std::optional<double> dense;    // seconds per call, when measured
};

struct Slope {
  std::string op;
  double slope = 0;
};

struct Report {
  std::vector<Row> rows;
  std::vector<Slope> slopes;
};

/// Least-squares slope of log(time) against log(n).
inline double loglog_slope(const std::vector<std::size_t>& n, const std::vector<double>& t) {
  const std::size_t m = n.size();
  if (m < 2) return 0;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double x = std::log(static_cast<double>(n[i]));
    const double y = std::log(t[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = m * sxx - sx * sx;
  return den == 0 ? 0 : (m * sxy - sx * sy) / den;
}

namespace detail {

// Keeps results observable so the optimizer cannot drop the timed work.
inline volatile double sink = 0;

inline CrossMatrix<double> random_matrix(std::size_t n, std::mt19937_64& rng) {
  // Entries in [1, 2] on the diagonal and [-0.5, 0.5] off it keep every pair
  // block diagonally dominant, so det/inverse/solve are well defined.
  std::uniform_real_distribution<double> dd(1.0, 2.0), od(-0.5, 0.5);
  std::vector<double> diag(n), anti(n);
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = dd(rng);
    anti[i] = od(rng);
  }
  if (n % 2 == 1) anti[n / 2] = diag[n / 2];
  return CrossMatrix<double>(n, std::move(diag), std::move(anti));
}

// Minimum over `repeats` samples of the per-call time, each sample a batch
// long enough to be well above clock resolution.
template <typename F>
double time_call(F&& f, int repeats, double min_batch) {
  using clock = std::chrono::steady_clock;
  std::size_t batch = 1;
  for (;;) {
    const auto t0 = clock::now();
    for (std::size_t i = 0; i < batch; ++i) f();
    const double dt = std::chrono::duration<double>(clock::now() - t0).count();
    if (dt >= min_batch || batch >= (std::size_t{1} << 30)) break;
    batch = dt <= 0 ? batch * 16
                    : std::max(batch * 2, static_cast<std::size_t>(batch * min_batch / dt * 1.2));
  }
  double best = 1e300;
  for (int r = 0; r < std::max(repeats, 1); ++r) {
    const auto t0 = clock::now();
    for (std::size_t i = 0; i < batch; ++i) f();
    const double dt = std::chrono::duration<double>(clock::now() - t0).count();
    best = std::min(best, dt / static_cast<double>(batch));
  }
  return best;
}

inline double time_structured(const std::string& op, const CrossMatrix<double>& x,
                              const CrossMatrix<double>& y, const std::vector<double>& b,
                              const Config& cfg) {
  auto run = [&](auto&& f) { return time_call(f, cfg.repeats, cfg.min_batch_seconds); };
  if (op == "det") return run([&] { sink = det(x); });
  if (op == "inv") return run([&] { sink = inverse(x).diag()[0]; });
  if (op == "mul") return run([&] { sink = mul(x, y).diag()[0]; });
  if (op == "solve") return run([&] { sink = solve(x, b)[0]; });
  if (op == "eig") return run([&] { sink = eigenvalues_complex(x)[0].real(); });
  if (op == "svd") return run([&] { sink = svd(x).S[0]; });
  throw std::invalid_argument("unknown op " + op);
}

inline double time_dense(const std::string& op, const DenseMatrix<double>& a,
                         const DenseMatrix<double>& c, const std::vector<double>& b,
                         const Config& cfg) {
  // Dense kernels are O(n^3); one call per sample is plenty above n ~ 64.
  auto run = [&](auto&& f) { return time_call(f, std::min(cfg.repeats, 3), cfg.min_batch_seconds); };
  if (op == "det") return run([&] { sink = oracle::dense_det(a); });
  if (op == "inv") return run([&] { sink = oracle::dense_inverse(a)(0, 0); });
  if (op == "mul") return run([&] { sink = oracle::dense_mul(a, c)(0, 0); });
  if (op == "solve") return run([&] { sink = oracle::dense_solve(a, b)[0]; });
  if (op == "eig") return run([&] { sink = oracle::dense_eig(a)[0].real(); });
  if (op == "svd") return run([&] { sink = oracle::dense_svd(a).S[0]; });
  throw std::invalid_argument("unknown op " + op);
}

}  // namespace detail

/// Runs every op at every size. Dense timings are skipped above dense_max
/// (and for the iterative eig/svd oracles above 256, where they are slow
/// enough to dominate the run).
inline Report run(const Config& cfg) {
  Report rep;
  std::mt19937_64 rng(cfg.seed);
  for (const auto& op : cfg.ops) {
    std::vector<double> times;
    for (std::size_t n : cfg.sizes) {
      const auto x = detail::random_matrix(n, rng);
      const auto y = detail::random_matrix(n, rng);
      std::vector<double> b(n);
      std::uniform_real_distribution<double> u(-1, 1);
      for (auto& v : b) v = u(rng);
      Row row{op, n, detail::time_structured(op, x, y, b, cfg), std::nullopt};
      const std::size_t cap = (op == "eig" || op == "svd") ? std::min<std::size_t>(cfg.dense_max, 256)
                                                           : cfg.dense_max;
      if (n <= cap) row.dense = detail::time_dense(op, to_dense(x), to_dense(y), b, cfg);
      times.push_back(row.structured);
      rep.rows.push_back(row);
    }
    rep.slopes.push_back({op, loglog_slope(cfg.sizes, times)});
  }
  return rep;
}

inline std::string cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        auto s = line.substr(colon + 1);
        s.erase(0, s.find_first_not_of(' '));
        return s;
      }
    }
  }
  return "unknown";
}

struct MachineInfo {
  std::string cpu;
  unsigned threads;
  std::string compiler;
};

inline MachineInfo machine_info() {
#if defined(__clang__)
  const std::string compiler = "clang " __clang_version__;
#elif defined(__GNUC__)
  const std::string compiler = "gcc " __VERSION__;
#else
  const std::string compiler = "unknown";
#endif
  return {cpu_model(), std::thread::hardware_concurrency(), compiler};
}

}  // namespace crossmat::bench
