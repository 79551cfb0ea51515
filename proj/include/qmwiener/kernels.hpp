#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace qmw::kernels {

// Requested kernel set.  Auto picks the best engine the CPU supports.
enum class Backend { Auto, Scalar, Simd };

// What actually runs after dispatch.
enum class Engine { Scalar, Avx2, Portable };

void set_backend(Backend b) noexcept;
Backend requested_backend() noexcept;
Engine active_engine() noexcept;
std::string_view engine_name(Engine e) noexcept;
bool avx2_available() noexcept;

// out[i] = x[i]^e with x[i] >= 0 finite and e != 0 finite.
// x[i] == 0 maps to 0 for e > 0 and to +inf for e < 0.
void pow_terms(std::span<const double> x, double e, std::span<double> out);

// Deterministic 4-strand pairwise tree reduction.  Every engine performs the
// additions in the same order, so the result is bit-identical across them.
double pairwise_sum(std::span<const double> x);

// Compensated (Neumaier) running prefix: out[i] = sum_{j<=i} x[j].
void kahan_prefix_sums(std::span<const double> x, std::span<double> out);

// Engine-pinned entry points, used by the equivalence tests.
namespace scalar {
void pow_terms(std::span<const double> x, double e, std::span<double> out);
double pairwise_sum(std::span<const double> x);
}  // namespace scalar

namespace simd {
// Polynomial exp2/log2 kernels: AVX2 when the CPU supports it, otherwise the
// portable four-lane build of the same algorithm.
void pow_terms(std::span<const double> x, double e, std::span<double> out);
double pairwise_sum(std::span<const double> x);
Engine flavor() noexcept;
}  // namespace simd

}  // namespace qmw::kernels
