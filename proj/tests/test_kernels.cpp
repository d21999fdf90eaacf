#include <gtest/gtest.h>

#include <bit>
#include <vector>

#include "pwtest/kernels.hpp"
#include "pwtest/rng.hpp"

using namespace pwtest;

namespace {

std::vector<std::size_t> reference_window(const std::vector<double>& xs, std::size_t start, double lo,
                                          double hi, std::size_t want) {
    std::vector<std::size_t> out;
    for (std::size_t t = start; t < xs.size() && out.size() < want; ++t) {
        if (lo < xs[t] && xs[t] < hi) {
            out.push_back(t);
        }
    }
    return out;
}

} // namespace

TEST(Kernels, ScalarWindowMatchesDefinition) {
    Rng rng(1);
    std::vector<double> xs(5000);
    rng.fill_uniform(xs);
    for (int trial = 0; trial < 200; ++trial) {
        const double c = rng.uniform();
        const double w = 0.001 * (1 + rng.below(50));
        const std::size_t start = rng.below(xs.size());
        const std::size_t want = 1 + rng.below(40);
        std::vector<std::size_t> out(want);
        const std::size_t n = kernels::scalar::find_in_window(xs, start, c - w, c + w, out);
        out.resize(n);
        EXPECT_EQ(out, reference_window(xs, start, c - w, c + w, want));
    }
}

TEST(Kernels, OpenWindowExcludesEndpoints) {
    const std::vector<double> xs{0.1, 0.2, 0.3, 0.2, 0.25};
    std::vector<std::size_t> out(5);
    EXPECT_EQ(kernels::find_in_window(xs, 0, 0.2, 0.3, out), 1u);
    EXPECT_EQ(out[0], 4u);
}

#if defined(PWTEST_HAVE_AVX2)
TEST(Kernels, Avx2MatchesScalar) {
    if (!kernels::avx2_available()) {
        GTEST_SKIP() << "CPU lacks AVX2";
    }
    Rng rng(2);
    for (std::size_t size : {0u, 1u, 3u, 15u, 16u, 17u, 33u, 1000u, 4099u}) {
        std::vector<double> xs(size);
        rng.fill_uniform(xs);
        // Exact endpoint hits must be excluded identically.
        if (size > 5) {
            xs[3] = 0.5;
            xs[5] = 0.52;
        }
        for (int trial = 0; trial < 100; ++trial) {
            const double lo = trial == 0 ? 0.5 : rng.uniform();
            const double hi = trial == 0 ? 0.52 : lo + 0.05 * rng.uniform();
            const std::size_t start = size ? rng.below(size + 1) : 0;
            const std::size_t want = 1 + rng.below(64);
            std::vector<std::size_t> a(want), b(want);
            const std::size_t na = kernels::scalar::find_in_window(xs, start, lo, hi, a);
            const std::size_t nb = kernels::avx2::find_in_window(xs, start, lo, hi, b);
            ASSERT_EQ(na, nb);
            a.resize(na);
            b.resize(nb);
            ASSERT_EQ(a, b);
        }
    }
}

TEST(Kernels, Avx2UnitFromBitsBitIdentical) {
    if (!kernels::avx2_available()) {
        GTEST_SKIP() << "CPU lacks AVX2";
    }
    Rng rng(3);
    for (std::size_t size : {0u, 1u, 4u, 7u, 1024u, 1029u}) {
        std::vector<std::uint64_t> bits(size);
        for (auto& b : bits) {
            b = rng.bits();
        }
        if (size >= 4) {
            bits[0] = 0;
            bits[1] = ~0ULL;
        }
        std::vector<double> a(size), b(size);
        kernels::scalar::unit_from_bits(bits, a);
        kernels::avx2::unit_from_bits(bits, b);
        for (std::size_t i = 0; i < size; ++i) {
            ASSERT_EQ(std::bit_cast<std::uint64_t>(a[i]), std::bit_cast<std::uint64_t>(b[i]));
        }
    }
}
#endif

TEST(Kernels, UnitFromBitsOpenInterval) {
    const std::vector<std::uint64_t> bits{0, ~0ULL};
    std::vector<double> out(2);
    kernels::unit_from_bits(bits, out);
    EXPECT_GT(out[0], 0.0);
    EXPECT_LT(out[1], 1.0);
    EXPECT_EQ(out[0], 0x1p-53);
}
