#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace pwtest {

/// Derives an independent stream seed from a master seed and a stream index
/// (splitmix64 finalizer over both words). Trial i of a run always gets the
/// same stream no matter how many trials follow it.
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) noexcept;

/// Deterministic random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; every conversion to doubles is done
/// here rather than through the implementation-defined std distributions so
/// results are bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on the open interval (0, 1).
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n);

    /// Fills `out` with Uniform(0,1) variates; equal to calling uniform()
    /// out.size() times.
    void fill_uniform(std::span<double> out);

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
    std::vector<std::uint64_t> scratch_;
};

} // namespace pwtest
