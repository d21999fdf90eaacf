#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference in
// kernels::scalar and, on x86-64, an AVX2 variant in kernels::avx2. The
// unqualified entry points dispatch once, at first use, to the best variant
// the CPU supports. All variants produce bit-identical results.
//
// Setting PWTEST_ISA=scalar in the environment pins dispatch to the scalar
// reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace pwtest::kernels {

enum class Isa { Scalar, Avx2 };

/// Variant selected by the dispatcher for this process.
Isa active_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;
/// True when the AVX2 variant is compiled in and the CPU supports it.
bool avx2_available() noexcept;

/// Writes to `out` the first out.size() indices t >= start (in increasing
/// order) with lo < xs[t] < hi, and returns how many were found.
std::size_t find_in_window(std::span<const double> xs, std::size_t start, double lo, double hi,
                           std::span<std::size_t> out);

/// Maps raw 64-bit words to doubles on the open interval (0, 1): the top 52
/// bits become the mantissa of a value in [1, 2), then 1 - 2^-53 is
/// subtracted. The result (2j + 1) * 2^-53 is exact.
void unit_from_bits(std::span<const std::uint64_t> bits, std::span<double> out);

namespace scalar {
std::size_t find_in_window(std::span<const double> xs, std::size_t start, double lo, double hi,
                           std::span<std::size_t> out);
void unit_from_bits(std::span<const std::uint64_t> bits, std::span<double> out);
} // namespace scalar

#if defined(PWTEST_HAVE_AVX2)
namespace avx2 {
std::size_t find_in_window(std::span<const double> xs, std::size_t start, double lo, double hi,
                           std::span<std::size_t> out);
void unit_from_bits(std::span<const std::uint64_t> bits, std::span<double> out);
} // namespace avx2
#endif

} // namespace pwtest::kernels
