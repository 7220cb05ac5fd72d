#include <atomic>
#include <cstdlib>
#include <cstring>

#include "wargame/kernels/kernels.hpp"

namespace wargame::kernels {
namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("WARGAME_SIMD"); env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

bool isa_available(Isa isa) noexcept {
  if (isa == Isa::Scalar) return true;
#if defined(__x86_64__) && defined(WARGAME_HAVE_AVX2)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void force_isa(Isa isa) noexcept {
  if (isa_available(isa)) active().store(isa, std::memory_order_relaxed);
}

std::string_view to_string(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

#if defined(__x86_64__) && defined(WARGAME_HAVE_AVX2)
#define WARGAME_DISPATCH(fn, ...) \
  (active_isa() == Isa::Avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define WARGAME_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void stance_counts(std::span<const std::uint32_t> masks, std::uint32_t agg_mask, std::uint32_t des_mask,
                   std::span<std::uint32_t> agg_out, std::span<std::uint32_t> des_out) {
  WARGAME_DISPATCH(stance_counts, masks, agg_mask, des_mask, agg_out, des_out);
}

void accumulate_bit_counts(std::span<const std::uint32_t> masks, std::span<const std::uint32_t> indices,
                           std::span<std::uint32_t, 32> counts) {
  WARGAME_DISPATCH(accumulate_bit_counts, masks, indices, counts);
}

double gather_sum(std::span<const double> values, std::span<const std::uint32_t> indices) {
  return WARGAME_DISPATCH(gather_sum, values, indices);
}

void rank1_update(std::span<double> matrix, std::span<const double> x, double weight) {
  WARGAME_DISPATCH(rank1_update, matrix, x, weight);
}

#undef WARGAME_DISPATCH

}  // namespace wargame::kernels
