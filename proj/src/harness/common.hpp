#pragma once

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "lcs/harness.hpp"

namespace lcs::harness::detail {

struct Accum {
  double max_abs = 0.0;
  double max_rel = 0.0;
  std::size_t samples = 0;

  void add(double diff, double reference) {
    diff = std::fabs(diff);
    // NaN must not vanish in the max
    if (std::isnan(diff)) {
      max_abs = max_rel = diff;
    } else if (!std::isnan(max_abs)) {
      max_abs = std::max(max_abs, diff);
      max_rel = std::max(max_rel, diff / std::max(std::fabs(reference), 1.0));
    }
  }
  void merge(const Accum& o) {
    if (std::isnan(o.max_abs) || std::isnan(max_abs)) {
      max_abs = max_rel = std::nan("");
    } else {
      max_abs = std::max(max_abs, o.max_abs);
      max_rel = std::max(max_rel, o.max_rel);
    }
    samples += o.samples;
  }
};

/// Runs fn(i, acc) for i in [0, n), split over `threads` workers; the max
/// reduction makes the result independent of the split.
template <class Fn>
Accum sweep(std::size_t n, int threads, Fn fn) {
  const std::size_t workers = std::clamp<std::size_t>(threads < 1 ? 1 : threads, 1, std::max<std::size_t>(n, 1));
  std::vector<Accum> parts(workers);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i, parts[0]);
      ++parts[0].samples;
    }
    return parts[0];
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) {
          fn(i, parts[w]);
          ++parts[w].samples;
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  Accum total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

inline double form_diff(const FormValue<double>& a, const FormValue<double>& b) {
  return max_abs(a - b);
}

/// Shortest round-trip decimal representation.
std::string fmt(double v);
std::string at_point(const Point<double>& p);
std::string a_tag(double a);

CheckReport make_check(std::string name, std::string anchor, const Accum& acc, double tol,
                       std::string notes = {});
/// Residual is the number of violating samples; passes only at zero.
CheckReport make_count_check(std::string name, std::string anchor, std::size_t samples,
                             std::size_t violations, std::string notes = {});
CheckReport make_ledger(std::string name, std::string anchor, std::vector<Comparison> rows,
                        std::string notes);

std::vector<CheckReport> suite_mc(const SuiteConfig& cfg);
std::vector<CheckReport> suite_lcs(const SuiteConfig& cfg);
std::vector<CheckReport> suite_charts(const SuiteConfig& cfg);
std::vector<CheckReport> suite_metric(const SuiteConfig& cfg);
std::vector<CheckReport> suite_bridge(const SuiteConfig& cfg);
std::vector<CheckReport> suite_cover(const SuiteConfig& cfg);

}  // namespace lcs::harness::detail
