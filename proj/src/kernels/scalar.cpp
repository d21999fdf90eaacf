#include "pwtest/kernels.hpp"

#include <bit>
#include <cassert>

namespace pwtest::kernels::scalar {

std::size_t find_in_window(std::span<const double> xs, std::size_t start, double lo, double hi,
                           std::span<std::size_t> out) {
    std::size_t found = 0;
    if (out.empty()) {
        return 0;
    }
    for (std::size_t t = start; t < xs.size(); ++t) {
        const double x = xs[t];
        if (lo < x && x < hi) {
            out[found++] = t;
            if (found == out.size()) {
                break;
            }
        }
    }
    return found;
}

void unit_from_bits(std::span<const std::uint64_t> bits, std::span<double> out) {
    assert(out.size() >= bits.size());
    constexpr std::uint64_t kOne = 0x3FF0000000000000ULL;
    constexpr double kOffset = 1.0 - 0x1.0p-53;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        out[i] = std::bit_cast<double>((bits[i] >> 12) | kOne) - kOffset;
    }
}

} // namespace pwtest::kernels::scalar
