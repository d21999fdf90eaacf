#include "pwtest/rng.hpp"

#include "pwtest/kernels.hpp"

#include <algorithm>
#include <limits>

namespace pwtest {

namespace {

std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::size_t kChunk = 1 << 14;

} // namespace

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) noexcept {
    return mix64(mix64(master) ^ (index * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

double Rng::uniform() {
    double out = 0.0;
    const std::uint64_t b = engine_();
    kernels::scalar::unit_from_bits({&b, 1}, {&out, 1});
    return out;
}

std::uint64_t Rng::below(std::uint64_t n) {
    // Rejection keeps the result exactly uniform.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t b = engine_();
    while (b >= limit) {
        b = engine_();
    }
    return b % n;
}

void Rng::fill_uniform(std::span<double> out) {
    scratch_.resize(std::min(out.size(), kChunk));
    for (std::size_t done = 0; done < out.size();) {
        const std::size_t n = std::min(kChunk, out.size() - done);
        for (std::size_t i = 0; i < n; ++i) {
            scratch_[i] = engine_();
        }
        kernels::unit_from_bits({scratch_.data(), n}, out.subspan(done, n));
        done += n;
    }
}

} // namespace pwtest
