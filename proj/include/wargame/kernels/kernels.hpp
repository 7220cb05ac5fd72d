#pragma once

// Data-parallel inner loops used by the metrics and statistics code.
//
// Every kernel has a scalar reference in `kernels::scalar` and, on x86-64, an
// AVX2 variant in `kernels::avx2`. The unqualified entry points dispatch once
// per process to the best variant the CPU supports. All variants produce
// bit-identical results: the floating-point kernels use the same lane-wise
// association order in both implementations and never contract to FMA.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace wargame::kernels {

enum class Isa { Scalar, Avx2 };

bool isa_available(Isa isa) noexcept;
// Variant chosen for the unqualified entry points. Honors WARGAME_SIMD=scalar.
Isa active_isa() noexcept;
// Test hook: override dispatch; ignored when the ISA is unavailable.
void force_isa(Isa isa) noexcept;
std::string_view to_string(Isa isa) noexcept;

// agg_out[i] = popcount(masks[i] & agg_mask), des_out[i] likewise.
void stance_counts(std::span<const std::uint32_t> masks, std::uint32_t agg_mask, std::uint32_t des_mask,
                   std::span<std::uint32_t> agg_out, std::span<std::uint32_t> des_out);

// counts[b] += number of i with bit b set in masks[indices[i]].
void accumulate_bit_counts(std::span<const std::uint32_t> masks, std::span<const std::uint32_t> indices,
                           std::span<std::uint32_t, 32> counts);

// Sum of values[indices[i]], accumulated in four interleaved lanes.
double gather_sum(std::span<const double> values, std::span<const std::uint32_t> indices);

// Row-major n x n update: matrix += weight * x * x^T.
void rank1_update(std::span<double> matrix, std::span<const double> x, double weight);

namespace scalar {
void stance_counts(std::span<const std::uint32_t> masks, std::uint32_t agg_mask, std::uint32_t des_mask,
                   std::span<std::uint32_t> agg_out, std::span<std::uint32_t> des_out);
void accumulate_bit_counts(std::span<const std::uint32_t> masks, std::span<const std::uint32_t> indices,
                           std::span<std::uint32_t, 32> counts);
double gather_sum(std::span<const double> values, std::span<const std::uint32_t> indices);
void rank1_update(std::span<double> matrix, std::span<const double> x, double weight);
}  // namespace scalar

#if defined(__x86_64__)
namespace avx2 {
void stance_counts(std::span<const std::uint32_t> masks, std::uint32_t agg_mask, std::uint32_t des_mask,
                   std::span<std::uint32_t> agg_out, std::span<std::uint32_t> des_out);
void accumulate_bit_counts(std::span<const std::uint32_t> masks, std::span<const std::uint32_t> indices,
                           std::span<std::uint32_t, 32> counts);
double gather_sum(std::span<const double> values, std::span<const std::uint32_t> indices);
void rank1_update(std::span<double> matrix, std::span<const double> x, double weight);
}  // namespace avx2
#endif

}  // namespace wargame::kernels
