#include <bit>

#include "wargame/kernels/kernels.hpp"

namespace wargame::kernels::scalar {

void stance_counts(std::span<const std::uint32_t> masks, std::uint32_t agg_mask, std::uint32_t des_mask,
                   std::span<std::uint32_t> agg_out, std::span<std::uint32_t> des_out) {
  for (std::size_t i = 0; i < masks.size(); ++i) {
    agg_out[i] = static_cast<std::uint32_t>(std::popcount(masks[i] & agg_mask));
    des_out[i] = static_cast<std::uint32_t>(std::popcount(masks[i] & des_mask));
  }
}

void accumulate_bit_counts(std::span<const std::uint32_t> masks, std::span<const std::uint32_t> indices,
                           std::span<std::uint32_t, 32> counts) {
  for (std::uint32_t idx : indices) {
    std::uint32_t m = masks[idx];
    while (m) {
      counts[static_cast<std::size_t>(std::countr_zero(m))] += 1;
      m &= m - 1;
    }
  }
}

double gather_sum(std::span<const double> values, std::span<const std::uint32_t> indices) {
  // Lane layout mirrors the 4-wide AVX2 accumulator.
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  const std::size_t n = indices.size();
  const std::size_t body = n & ~std::size_t{3};
  for (std::size_t i = 0; i < body; i += 4)
    for (std::size_t l = 0; l < 4; ++l) lane[l] += values[indices[i + l]];
  double tail = 0.0;
  for (std::size_t i = body; i < n; ++i) tail += values[indices[i]];
  return ((lane[0] + lane[1]) + (lane[2] + lane[3])) + tail;
}

void rank1_update(std::span<double> matrix, std::span<const double> x, double weight) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = weight * x[i];
    double* row = matrix.data() + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] += wi * x[j];
  }
}

}  // namespace wargame::kernels::scalar
