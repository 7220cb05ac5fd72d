#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace wargame {

struct Interval {
  double low = 0.0;
  double high = 0.0;

  bool contains(double x) const noexcept { return low <= x && x <= high; }
  bool excludes_zero() const noexcept { return low > 0.0 || high < 0.0; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct BootstrapOptions {
  int resamples = 10000;
  double level = 0.95;
  std::uint64_t seed = 1;
  int threads = 1;

  // Throws ConfigError.
  void validate() const;
};

// Receives the indices of one with-replacement resample.
using IndexStatistic = std::function<double(std::span<const std::uint32_t>)>;

// Percentile interval of `statistic` over resamples of n items. The indices of
// resample r come from a generator seeded by (seed, r), so the interval is the
// same for any thread count. Throws Error for n == 0.
Interval bootstrap_ci(std::size_t n, const IndexStatistic& statistic, const BootstrapOptions& opts);

// Interval for the mean. Values are sorted first, so the result depends only
// on the multiset of values.
Interval bootstrap_mean_ci(std::span<const double> values, const BootstrapOptions& opts);

// Interval for mean(a) - mean(b), resampling each group independently.
// Each group's resample stream is keyed by its own content, so swapping the
// groups negates and mirrors the interval exactly. Identical groups get an
// interval symmetric about zero.
Interval bootstrap_diff_ci(std::span<const double> a, std::span<const double> b, const BootstrapOptions& opts);

// Linear-interpolation quantile of sorted data, q in [0, 1].
double sorted_quantile(std::span<const double> sorted, double q);

double mean(std::span<const double> values);

}  // namespace wargame
