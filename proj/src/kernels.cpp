#include "qmwiener/kernels.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>

#include "kernels_lane.hpp"

namespace qmw::kernels {

namespace detail {

// Four doubles processed with plain scalar operations.  std::fma and
// nearbyint round exactly like their vector counterparts, so this engine is
// bit-compatible with the AVX2 one.
struct PortableLane {
  double v[4];

  static PortableLane load(const double* p) { return {p[0], p[1], p[2], p[3]}; }
  static void store(double* p, PortableLane a) {
    p[0] = a.v[0]; p[1] = a.v[1]; p[2] = a.v[2]; p[3] = a.v[3];
  }
  static PortableLane broadcast(double x) { return {x, x, x, x}; }

  static PortableLane add(PortableLane a, PortableLane b) {
    return {a.v[0] + b.v[0], a.v[1] + b.v[1], a.v[2] + b.v[2], a.v[3] + b.v[3]};
  }
  static PortableLane sub(PortableLane a, PortableLane b) {
    return {a.v[0] - b.v[0], a.v[1] - b.v[1], a.v[2] - b.v[2], a.v[3] - b.v[3]};
  }
  static PortableLane mul(PortableLane a, PortableLane b) {
    return {a.v[0] * b.v[0], a.v[1] * b.v[1], a.v[2] * b.v[2], a.v[3] * b.v[3]};
  }
  static PortableLane div(PortableLane a, PortableLane b) {
    return {a.v[0] / b.v[0], a.v[1] / b.v[1], a.v[2] / b.v[2], a.v[3] / b.v[3]};
  }
  static PortableLane fma(PortableLane a, PortableLane b, PortableLane c) {
    return {std::fma(a.v[0], b.v[0], c.v[0]), std::fma(a.v[1], b.v[1], c.v[1]),
            std::fma(a.v[2], b.v[2], c.v[2]), std::fma(a.v[3], b.v[3], c.v[3])};
  }
  static PortableLane round_nearest(PortableLane a) {
    return {std::nearbyint(a.v[0]), std::nearbyint(a.v[1]),
            std::nearbyint(a.v[2]), std::nearbyint(a.v[3])};
  }
  static PortableLane floor(PortableLane a) {
    return {std::floor(a.v[0]), std::floor(a.v[1]), std::floor(a.v[2]), std::floor(a.v[3])};
  }

  static PortableLane mask_of(bool m0, bool m1, bool m2, bool m3) {
    const double t = std::bit_cast<double>(~0ULL);
    return {m0 ? t : 0.0, m1 ? t : 0.0, m2 ? t : 0.0, m3 ? t : 0.0};
  }
  static PortableLane cmp_lt(PortableLane a, PortableLane b) {
    return mask_of(a.v[0] < b.v[0], a.v[1] < b.v[1], a.v[2] < b.v[2], a.v[3] < b.v[3]);
  }
  static PortableLane cmp_gt(PortableLane a, PortableLane b) {
    return mask_of(a.v[0] > b.v[0], a.v[1] > b.v[1], a.v[2] > b.v[2], a.v[3] > b.v[3]);
  }
  static PortableLane cmp_eq(PortableLane a, PortableLane b) {
    return mask_of(a.v[0] == b.v[0], a.v[1] == b.v[1], a.v[2] == b.v[2], a.v[3] == b.v[3]);
  }
  static PortableLane cmp_neq(PortableLane a, PortableLane b) {
    return mask_of(a.v[0] != b.v[0], a.v[1] != b.v[1], a.v[2] != b.v[2], a.v[3] != b.v[3]);
  }
  // selects by the mask's sign bit, mirroring _mm256_blendv_pd
  static PortableLane blend(PortableLane mask, PortableLane a, PortableLane b) {
    PortableLane r;
    for (int i = 0; i < 4; ++i) {
      const bool take = (std::bit_cast<std::uint64_t>(mask.v[i]) >> 63) != 0;
      r.v[i] = take ? a.v[i] : b.v[i];
    }
    return r;
  }

  static PortableLane bits_srl52(PortableLane a) {
    PortableLane r;
    for (int i = 0; i < 4; ++i) {
      r.v[i] = std::bit_cast<double>(std::bit_cast<std::uint64_t>(a.v[i]) >> 52);
    }
    return r;
  }
  static PortableLane bits_and_mantissa(PortableLane a) {
    PortableLane r;
    for (int i = 0; i < 4; ++i) {
      r.v[i] = std::bit_cast<double>(std::bit_cast<std::uint64_t>(a.v[i]) & kMantissaMask);
    }
    return r;
  }
  static PortableLane bits_or(PortableLane a, std::uint64_t bits) {
    PortableLane r;
    for (int i = 0; i < 4; ++i) {
      r.v[i] = std::bit_cast<double>(std::bit_cast<std::uint64_t>(a.v[i]) | bits);
    }
    return r;
  }
  static PortableLane bits_or_mask(PortableLane a, PortableLane b) {
    PortableLane r;
    for (int i = 0; i < 4; ++i) {
      r.v[i] = std::bit_cast<double>(std::bit_cast<std::uint64_t>(a.v[i]) |
                                     std::bit_cast<std::uint64_t>(b.v[i]));
    }
    return r;
  }
  // 2^k for integer-valued k in [-1080, 1030]
  static PortableLane pow2_int(PortableLane k) {
    PortableLane r;
    for (int i = 0; i < 4; ++i) {
      const double kb = k.v[i] + (kTwo52 + 1023.0);
      const std::uint64_t bits = (std::bit_cast<std::uint64_t>(kb) & kMantissaMask) << 52;
      r.v[i] = std::bit_cast<double>(bits);
    }
    return r;
  }
};

#ifdef QMW_HAVE_AVX2_TU
void pow_terms_avx2(const double* x, std::size_t n, double e, double* out);
double pairwise_sum_avx2(const double* x, std::size_t n);
#endif

bool cpu_has_avx2() {
#if defined(QMW_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace detail

namespace {
std::atomic<Backend> g_backend{Backend::Auto};
}

void set_backend(Backend b) noexcept { g_backend.store(b, std::memory_order_relaxed); }
Backend requested_backend() noexcept { return g_backend.load(std::memory_order_relaxed); }

bool avx2_available() noexcept {
  static const bool ok = detail::cpu_has_avx2();
  return ok;
}

Engine active_engine() noexcept {
  switch (requested_backend()) {
    case Backend::Scalar: return Engine::Scalar;
    case Backend::Simd: return simd::flavor();
    case Backend::Auto: break;
  }
  return avx2_available() ? Engine::Avx2 : Engine::Scalar;
}

std::string_view engine_name(Engine e) noexcept {
  switch (e) {
    case Engine::Scalar: return "scalar";
    case Engine::Avx2: return "avx2";
    case Engine::Portable: return "portable";
  }
  return "unknown";
}

namespace scalar {

void pow_terms(std::span<const double> x, double e, std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::pow(x[i], e);
}

double pairwise_sum(std::span<const double> x) {
  return detail::pairwise_sum_impl<detail::PortableLane>(x.data(), x.size());
}

}  // namespace scalar

namespace simd {

Engine flavor() noexcept { return avx2_available() ? Engine::Avx2 : Engine::Portable; }

void pow_terms(std::span<const double> x, double e, std::span<double> out) {
#ifdef QMW_HAVE_AVX2_TU
  if (avx2_available()) {
    detail::pow_terms_avx2(x.data(), x.size(), e, out.data());
    return;
  }
#endif
  detail::pow_terms_impl<detail::PortableLane>(x.data(), x.size(), e, out.data());
}

double pairwise_sum(std::span<const double> x) {
#ifdef QMW_HAVE_AVX2_TU
  if (avx2_available()) return detail::pairwise_sum_avx2(x.data(), x.size());
#endif
  return detail::pairwise_sum_impl<detail::PortableLane>(x.data(), x.size());
}

}  // namespace simd

void pow_terms(std::span<const double> x, double e, std::span<double> out) {
  if (active_engine() == Engine::Scalar) {
    scalar::pow_terms(x, e, out);
  } else {
    simd::pow_terms(x, e, out);
  }
}

double pairwise_sum(std::span<const double> x) {
  if (active_engine() == Engine::Scalar) return scalar::pairwise_sum(x);
  return simd::pairwise_sum(x);
}

void kahan_prefix_sums(std::span<const double> x, std::span<double> out) {
  double sum = 0.0;
  double comp = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = sum + x[i];
    if (std::abs(sum) >= std::abs(x[i])) {
      comp += (sum - t) + x[i];
    } else {
      comp += (x[i] - t) + sum;
    }
    sum = t;
    out[i] = sum + comp;
  }
}

}  // namespace qmw::kernels
