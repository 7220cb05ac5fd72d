// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include "wargame/kernels/kernels.hpp"

namespace wargame::kernels::avx2 {
namespace {

// Per-lane popcount of eight 32-bit values via the nibble lookup table.
inline __m256i popcount_epi32(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2,
                                       3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  const __m256i pairs = _mm256_maddubs_epi16(bytes, _mm256_set1_epi8(1));
  return _mm256_madd_epi16(pairs, _mm256_set1_epi16(1));
}

}  // namespace

void stance_counts(std::span<const std::uint32_t> masks, std::uint32_t agg_mask, std::uint32_t des_mask,
                   std::span<std::uint32_t> agg_out, std::span<std::uint32_t> des_out) {
  const __m256i agg = _mm256_set1_epi32(static_cast<int>(agg_mask));
  const __m256i des = _mm256_set1_epi32(static_cast<int>(des_mask));
  const std::size_t n = masks.size();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks.data() + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(agg_out.data() + i), popcount_epi32(_mm256_and_si256(v, agg)));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(des_out.data() + i), popcount_epi32(_mm256_and_si256(v, des)));
  }
  if (i < n)
    scalar::stance_counts(masks.subspan(i), agg_mask, des_mask, agg_out.subspan(i), des_out.subspan(i));
}

void accumulate_bit_counts(std::span<const std::uint32_t> masks, std::span<const std::uint32_t> indices,
                           std::span<std::uint32_t, 32> counts) {
  const __m256i sel0 = _mm256_setr_epi32(1 << 0, 1 << 1, 1 << 2, 1 << 3, 1 << 4, 1 << 5, 1 << 6, 1 << 7);
  const __m256i sel1 = _mm256_slli_epi32(sel0, 8);
  const __m256i sel2 = _mm256_slli_epi32(sel0, 16);
  const __m256i sel3 = _mm256_slli_epi32(sel0, 24);
  __m256i c0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(counts.data()));
  __m256i c1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(counts.data() + 8));
  __m256i c2 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(counts.data() + 16));
  __m256i c3 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(counts.data() + 24));
  for (std::uint32_t idx : indices) {
    const __m256i m = _mm256_set1_epi32(static_cast<int>(masks[idx]));
    // cmpeq yields -1 in lanes whose bit is set; subtracting increments.
    c0 = _mm256_sub_epi32(c0, _mm256_cmpeq_epi32(_mm256_and_si256(m, sel0), sel0));
    c1 = _mm256_sub_epi32(c1, _mm256_cmpeq_epi32(_mm256_and_si256(m, sel1), sel1));
    c2 = _mm256_sub_epi32(c2, _mm256_cmpeq_epi32(_mm256_and_si256(m, sel2), sel2));
    c3 = _mm256_sub_epi32(c3, _mm256_cmpeq_epi32(_mm256_and_si256(m, sel3), sel3));
  }
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(counts.data()), c0);
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(counts.data() + 8), c1);
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(counts.data() + 16), c2);
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(counts.data() + 24), c3);
}

double gather_sum(std::span<const double> values, std::span<const std::uint32_t> indices) {
  __m256d acc = _mm256_setzero_pd();
  const std::size_t n = indices.size();
  const std::size_t body = n & ~std::size_t{3};
  for (std::size_t i = 0; i < body; i += 4) {
    const __m128i idx = _mm_loadu_si128(reinterpret_cast<const __m128i*>(indices.data() + i));
    acc = _mm256_add_pd(acc, _mm256_i32gather_pd(values.data(), idx, 8));
  }
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double tail = 0.0;
  for (std::size_t i = body; i < n; ++i) tail += values[indices[i]];
  return ((lane[0] + lane[1]) + (lane[2] + lane[3])) + tail;
}

void rank1_update(std::span<double> matrix, std::span<const double> x, double weight) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = weight * x[i];
    const __m256d w = _mm256_set1_pd(wi);
    double* row = matrix.data() + i * n;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      const __m256d prod = _mm256_mul_pd(w, _mm256_loadu_pd(x.data() + j));
      _mm256_storeu_pd(row + j, _mm256_add_pd(_mm256_loadu_pd(row + j), prod));
    }
    for (; j < n; ++j) row[j] += wi * x[j];
  }
}

}  // namespace wargame::kernels::avx2
