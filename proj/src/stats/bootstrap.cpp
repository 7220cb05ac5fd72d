#include "wargame/stats/bootstrap.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>

#include "wargame/kernels/kernels.hpp"
#include "wargame/util/error.hpp"
#include "wargame/util/hash.hpp"
#include "wargame/util/rng.hpp"

namespace wargame {

void BootstrapOptions::validate() const {
  if (resamples < 2) throw ConfigError("bootstrap needs at least 2 resamples");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("bootstrap level must be in (0, 1)");
  if (threads < 1) throw ConfigError("bootstrap threads must be >= 1");
}

double sorted_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw Error("quantile of empty data");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

double mean(std::span<const double> values) {
  if (values.empty()) throw Error("mean of empty data");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

namespace {

// Runs fill(r) for every resample, split over threads in contiguous blocks.
template <typename F>
void for_each_resample(const BootstrapOptions& opts, F&& fill) {
  const auto total = static_cast<std::size_t>(opts.resamples);
  const auto n_threads = std::min<std::size_t>(static_cast<std::size_t>(opts.threads), total);
  if (n_threads <= 1) {
    for (std::size_t r = 0; r < total; ++r) fill(r);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t block = (total + n_threads - 1) / n_threads;
  for (std::size_t t = 0; t < n_threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t r = t * block; r < std::min(total, (t + 1) * block); ++r) fill(r);
    });
  for (auto& th : pool) th.join();
}

Interval percentile(std::vector<double>& stats, double level) {
  std::sort(stats.begin(), stats.end());
  const double alpha = 1.0 - level;
  return {sorted_quantile(stats, alpha / 2.0), sorted_quantile(stats, 1.0 - alpha / 2.0)};
}

void draw(util::SplitMixRng& rng, std::size_t n, std::vector<std::uint32_t>& idx) {
  idx.resize(n);
  for (auto& i : idx) i = static_cast<std::uint32_t>(rng.uniform_index(n));
}

std::uint64_t fingerprint(std::span<const double> sorted) {
  std::uint64_t h = util::splitmix64(sorted.size());
  for (double v : sorted) h = util::splitmix64(h ^ std::bit_cast<std::uint64_t>(v));
  return h;
}

constexpr std::uint64_t kIndexTag = 0xb007;
constexpr std::uint64_t kGroupTag = 0xd1ff;

}  // namespace

Interval bootstrap_ci(std::size_t n, const IndexStatistic& statistic, const BootstrapOptions& opts) {
  opts.validate();
  if (n == 0) throw Error("bootstrap over an empty record set");
  if (n > 0xffffffffULL) throw Error("bootstrap input too large");
  std::vector<double> stats(static_cast<std::size_t>(opts.resamples));
  for_each_resample(opts, [&](std::size_t r) {
    thread_local std::vector<std::uint32_t> idx;
    util::SplitMixRng rng(util::derive_seed(opts.seed, {kIndexTag, r}));
    draw(rng, n, idx);
    stats[r] = statistic(idx);
  });
  return percentile(stats, opts.level);
}

Interval bootstrap_mean_ci(std::span<const double> values, const BootstrapOptions& opts) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  return bootstrap_ci(
      sorted.size(), [&](std::span<const std::uint32_t> idx) { return kernels::gather_sum(sorted, idx) / n; }, opts);
}

Interval bootstrap_diff_ci(std::span<const double> a, std::span<const double> b, const BootstrapOptions& opts) {
  opts.validate();
  if (a.empty() || b.empty()) throw Error("effect estimate needs two non-empty groups");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const std::uint64_t fa = fingerprint(sa), fb = fingerprint(sb);
  const bool same = fa == fb && sa == sb;
  const std::uint64_t ta = same ? 0 : 2, tb = same ? 1 : 2;
  const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
  std::vector<double> stats(static_cast<std::size_t>(opts.resamples));
  for_each_resample(opts, [&](std::size_t r) {
    thread_local std::vector<std::uint32_t> ia, ib;
    util::SplitMixRng ra(util::derive_seed(opts.seed, {kGroupTag, r, fa, ta}));
    util::SplitMixRng rb(util::derive_seed(opts.seed, {kGroupTag, r, fb, tb}));
    draw(ra, sa.size(), ia);
    draw(rb, sb.size(), ib);
    stats[r] = kernels::gather_sum(sa, ia) / na - kernels::gather_sum(sb, ib) / nb;
  });
  Interval ci = percentile(stats, opts.level);
  if (same) {
    // Identical groups: the delta distribution is symmetric about 0.
    const double half = std::max(-ci.low, ci.high);
    ci = {-half, half};
  }
  return ci;
}

}  // namespace wargame
