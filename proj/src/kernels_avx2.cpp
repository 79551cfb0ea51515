// AVX2 + FMA engine.  This translation unit is compiled with -mavx2 -mfma and
// must only be entered after the cpuid check in kernels.cpp.

#ifdef __AVX2__

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "kernels_lane.hpp"

namespace qmw::kernels::detail {

struct Avx2Lane {
  __m256d v;

  static Avx2Lane wrap(__m256d x) { return Avx2Lane{x}; }
  static Avx2Lane load(const double* p) { return wrap(_mm256_loadu_pd(p)); }
  static void store(double* p, Avx2Lane a) { _mm256_storeu_pd(p, a.v); }
  static Avx2Lane broadcast(double x) { return wrap(_mm256_set1_pd(x)); }

  static Avx2Lane add(Avx2Lane a, Avx2Lane b) { return wrap(_mm256_add_pd(a.v, b.v)); }
  static Avx2Lane sub(Avx2Lane a, Avx2Lane b) { return wrap(_mm256_sub_pd(a.v, b.v)); }
  static Avx2Lane mul(Avx2Lane a, Avx2Lane b) { return wrap(_mm256_mul_pd(a.v, b.v)); }
  static Avx2Lane div(Avx2Lane a, Avx2Lane b) { return wrap(_mm256_div_pd(a.v, b.v)); }
  static Avx2Lane fma(Avx2Lane a, Avx2Lane b, Avx2Lane c) {
    return wrap(_mm256_fmadd_pd(a.v, b.v, c.v));
  }
  static Avx2Lane round_nearest(Avx2Lane a) {
    return wrap(_mm256_round_pd(a.v, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC));
  }
  static Avx2Lane floor(Avx2Lane a) { return wrap(_mm256_floor_pd(a.v)); }

  static Avx2Lane cmp_lt(Avx2Lane a, Avx2Lane b) {
    return wrap(_mm256_cmp_pd(a.v, b.v, _CMP_LT_OQ));
  }
  static Avx2Lane cmp_gt(Avx2Lane a, Avx2Lane b) {
    return wrap(_mm256_cmp_pd(a.v, b.v, _CMP_GT_OQ));
  }
  static Avx2Lane cmp_eq(Avx2Lane a, Avx2Lane b) {
    return wrap(_mm256_cmp_pd(a.v, b.v, _CMP_EQ_OQ));
  }
  static Avx2Lane cmp_neq(Avx2Lane a, Avx2Lane b) {
    return wrap(_mm256_cmp_pd(a.v, b.v, _CMP_NEQ_UQ));
  }
  static Avx2Lane blend(Avx2Lane mask, Avx2Lane a, Avx2Lane b) {
    return wrap(_mm256_blendv_pd(b.v, a.v, mask.v));
  }

  static Avx2Lane bits_srl52(Avx2Lane a) {
    return wrap(_mm256_castsi256_pd(_mm256_srli_epi64(_mm256_castpd_si256(a.v), 52)));
  }
  static Avx2Lane bits_and_mantissa(Avx2Lane a) {
    const __m256i mask = _mm256_set1_epi64x(static_cast<long long>(kMantissaMask));
    return wrap(_mm256_castsi256_pd(_mm256_and_si256(_mm256_castpd_si256(a.v), mask)));
  }
  static Avx2Lane bits_or(Avx2Lane a, std::uint64_t bits) {
    const __m256i b = _mm256_set1_epi64x(static_cast<long long>(bits));
    return wrap(_mm256_castsi256_pd(_mm256_or_si256(_mm256_castpd_si256(a.v), b)));
  }
  static Avx2Lane bits_or_mask(Avx2Lane a, Avx2Lane b) {
    return wrap(_mm256_or_pd(a.v, b.v));
  }
  static Avx2Lane pow2_int(Avx2Lane k) {
    const __m256d kb = _mm256_add_pd(k.v, _mm256_set1_pd(kTwo52 + 1023.0));
    const __m256i mask = _mm256_set1_epi64x(static_cast<long long>(kMantissaMask));
    const __m256i bits =
        _mm256_slli_epi64(_mm256_and_si256(_mm256_castpd_si256(kb), mask), 52);
    return wrap(_mm256_castsi256_pd(bits));
  }
};

void pow_terms_avx2(const double* x, std::size_t n, double e, double* out) {
  pow_terms_impl<Avx2Lane>(x, n, e, out);
}

double pairwise_sum_avx2(const double* x, std::size_t n) {
  return pairwise_sum_impl<Avx2Lane>(x, n);
}

}  // namespace qmw::kernels::detail

#endif  // __AVX2__
