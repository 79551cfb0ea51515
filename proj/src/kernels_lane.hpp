#pragma once

// Four-lane pow/sum kernels shared by the AVX2 and the portable builds.
// The lane type L wraps four doubles and exposes arithmetic, compares,
// blends and raw bit manipulation; instantiating the same template for both
// engines keeps their numerics in lock step.
//
// x^e is evaluated as exp2(e * log2 x):
//   log2 x: split x = m * 2^k with m in (sqrt(1/2), sqrt(2)], then
//           log2 m = (2/ln 2) * atanh(s), s = (m-1)/(m+1), |s| <= 0.1716,
//           via the odd series through s^17.
//   exp2 t: t = n + f with |f| <= 1/2, exp(f ln 2) by a degree-13 Horner
//           polynomial, scaled by 2^n built from exponent bits in two
//           factors so subnormal results round correctly.
// Worst-case relative error grows like |e * log2 x| * 2^-52; for results
// down to 1e-300 it stays below ~1e-12, which the equivalence suite pins.

#include <cstdint>
#include <cstddef>
#include <limits>

namespace qmw::kernels::detail {

inline constexpr double kTwo52 = 4503599627370496.0;  // 2^52
inline constexpr std::uint64_t kMantissaMask = 0x000FFFFFFFFFFFFFULL;
inline constexpr std::uint64_t kOneBits = 0x3FF0000000000000ULL;
inline constexpr std::uint64_t kTwo52Bits = 0x4330000000000000ULL;
inline constexpr double kSqrt2 = 1.4142135623730951;
inline constexpr double kLn2 = 0.6931471805599453;

// (2/ln2)/(2k+1), k = 0..8
inline constexpr double kLog2Series[9] = {
    2.8853900817779268,
    0.96179669392597556,
    0.57707801635558536,
    0.41219858311113240,
    0.32059889797532520,
    0.26230818925253880,
    0.22195308321368668,
    0.19235933878519512,
    0.16972882833987805,
};

// 1/k!, k = 13..2 (Horner order), then the 1 + g*(1 + ...) wrap below
inline constexpr double kExpSeries[12] = {
    1.6059043836821613e-10,  // 1/13!
    2.0876756987868099e-9,   // 1/12!
    2.5052108385441719e-8,   // 1/11!
    2.7557319223985893e-7,   // 1/10!
    2.7557319223985888e-6,   // 1/9!
    2.4801587301587302e-5,   // 1/8!
    1.9841269841269841e-4,   // 1/7!
    1.3888888888888889e-3,   // 1/6!
    8.3333333333333332e-3,   // 1/5!
    4.1666666666666664e-2,   // 1/4!
    1.6666666666666666e-1,   // 1/3!
    5.0e-1,                  // 1/2!
};

template <class L>
inline L lane_log2(L x) {
  // subnormal inputs: renormalize by 2^108
  const L tiny = L::broadcast(2.2250738585072014e-308);
  const L sub_mask = L::cmp_lt(x, tiny);
  x = L::blend(sub_mask, L::mul(x, L::broadcast(0x1p108)), x);
  const L sub_shift = L::blend(sub_mask, L::broadcast(108.0), L::broadcast(0.0));

  // biased exponent -> double via the 2^52 bit trick
  const L kb = L::bits_or(L::bits_srl52(x), kTwo52Bits);
  L k = L::sub(kb, L::broadcast(kTwo52 + 1023.0));
  L m = L::bits_or(L::bits_and_mantissa(x), kOneBits);  // m in [1, 2)

  const L gt = L::cmp_gt(m, L::broadcast(kSqrt2));
  m = L::blend(gt, L::mul(m, L::broadcast(0.5)), m);
  k = L::add(k, L::blend(gt, L::broadcast(1.0), L::broadcast(0.0)));
  k = L::sub(k, sub_shift);

  const L s = L::div(L::sub(m, L::broadcast(1.0)), L::add(m, L::broadcast(1.0)));
  const L s2 = L::mul(s, s);
  L poly = L::broadcast(kLog2Series[8]);
  for (int i = 7; i >= 0; --i) {
    poly = L::fma(poly, s2, L::broadcast(kLog2Series[i]));
  }
  return L::fma(s, poly, k);
}

template <class L>
inline L lane_exp2(L t) {
  const L inf = L::broadcast(std::numeric_limits<double>::infinity());
  const L over = L::cmp_gt(t, L::broadcast(1025.0));
  const L under = L::cmp_lt(t, L::broadcast(-1075.5));
  // clamp so the bit paths below stay in range on the masked-out lanes
  t = L::blend(over, L::broadcast(1025.0), t);
  t = L::blend(under, L::broadcast(-1075.5), t);

  const L n = L::round_nearest(t);
  const L f = L::sub(t, n);
  const L g = L::mul(f, L::broadcast(kLn2));

  L poly = L::broadcast(kExpSeries[0]);
  for (int i = 1; i < 12; ++i) {
    poly = L::fma(poly, g, L::broadcast(kExpSeries[i]));
  }
  // 1 + g + g^2 * poly
  L e = L::fma(L::mul(g, g), poly, L::add(g, L::broadcast(1.0)));

  // 2^n = 2^n2 * 2^n1, each factor's exponent stays normal
  const L n2 = L::floor(L::mul(n, L::broadcast(0.5)));
  const L n1 = L::sub(n, n2);
  e = L::mul(e, L::pow2_int(n1));
  e = L::mul(e, L::pow2_int(n2));

  e = L::blend(under, L::broadcast(0.0), e);
  e = L::blend(over, inf, e);
  return e;
}

template <class L>
inline L lane_pow(L x, double e) {
  const L zero = L::broadcast(0.0);
  const L zero_mask = L::cmp_eq(x, zero);
  const L inf = L::broadcast(std::numeric_limits<double>::infinity());
  const L inf_mask = L::cmp_eq(x, inf);
  const L bad_mask = L::bits_or_mask(L::cmp_lt(x, zero), L::cmp_neq(x, x));

  L r = lane_exp2(L::mul(lane_log2(x), L::broadcast(e)));
  const L zero_val = e > 0.0 ? zero : inf;
  const L inf_val = e > 0.0 ? inf : zero;
  r = L::blend(zero_mask, zero_val, r);
  r = L::blend(inf_mask, inf_val, r);
  r = L::blend(bad_mask, L::broadcast(std::numeric_limits<double>::quiet_NaN()), r);
  return r;
}

template <class L>
inline void pow_terms_impl(const double* x, std::size_t n, double e, double* out) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    L::store(out + i, lane_pow<L>(L::load(x + i), e));
  }
  if (i < n) {
    double in[4] = {1.0, 1.0, 1.0, 1.0};
    double res[4];
    for (std::size_t j = i; j < n; ++j) in[j - i] = x[j];
    L::store(res, lane_pow<L>(L::load(in), e));
    for (std::size_t j = i; j < n; ++j) out[j] = res[j - i];
  }
}

// 4-strand pairwise tree.  Rows of four consecutive elements are combined by
// recursive halving with a sequential 8-row base case; the four strand totals
// collapse as (l0+l1)+(l2+l3).  Both engines follow this order exactly, so
// the sum is bit-identical between them.
template <class L>
inline L row_load(const double* x, std::size_t n, std::size_t row) {
  const std::size_t base = 4 * row;
  if (base + 4 <= n) return L::load(x + base);
  double tmp[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t j = base; j < n; ++j) tmp[j - base] = x[j];
  return L::load(tmp);
}

template <class L>
inline L row_tree(const double* x, std::size_t n, std::size_t row, std::size_t count) {
  if (count <= 8) {
    L acc = row_load<L>(x, n, row);
    for (std::size_t i = 1; i < count; ++i) {
      acc = L::add(acc, row_load<L>(x, n, row + i));
    }
    return acc;
  }
  const std::size_t half = count / 2;
  return L::add(row_tree<L>(x, n, row, half), row_tree<L>(x, n, row + half, count - half));
}

template <class L>
inline double pairwise_sum_impl(const double* x, std::size_t n) {
  if (n == 0) return 0.0;
  const std::size_t rows = (n + 3) / 4;
  const L v = row_tree<L>(x, n, 0, rows);
  double lanes[4];
  L::store(lanes, v);
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace qmw::kernels::detail
