#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "pwtest/base_class.hpp"
#include "pwtest/distance.hpp"
#include "pwtest/piecewise.hpp"

namespace pwtest {

/// k - 1 sorted Uniform(0,1) breakpoints and k random members of H.
/// Constants take values in {0,1,2,3} with neighbouring pieces distinct;
/// polynomials and sines use default_member_sampler. Throws for k < 1.
PiecewiseFunction gen_in_class(const BaseClass& h, int k, std::uint64_t seed);

/// Two-valued step function alternating on n' equal pieces, n' = 8k, 16k,
/// ... until the exact distance to F_k(constants) reaches eps. The seed
/// picks which value comes first. The family's distance tends to 1/2.
/// Throws std::domain_error unless 0 < eps < 1/2, and std::runtime_error
/// past n' = 8k * 2^4.
std::pair<StepFunction, DistanceCertificate> gen_alternating_far(int k, double eps, std::uint64_t seed);

/// n' equal pieces with independent fair-coin values in {0,1}, redrawn
/// (from derived seeds) until the exact distance to F_k(constants) reaches
/// eps. Throws std::domain_error unless n' >= 8k, and std::runtime_error
/// after `retries` failed draws.
std::pair<StepFunction, DistanceCertificate> gen_random_partition_far(int k, std::size_t n_prime,
                                                                      double eps, std::uint64_t seed,
                                                                      int retries = 16);

/// x -> amplitude * sin(frequency * x).
Target sine_probe(double frequency = 10.0, double amplitude = 1.0);

enum class InstanceKind { InClass, AlternatingFar, RandomPartitionFar, SineProbe };

std::string_view to_string(InstanceKind k) noexcept;
std::optional<InstanceKind> parse_instance_kind(std::string_view s) noexcept;

struct InstanceSpec {
    InstanceKind kind = InstanceKind::InClass;
    /// Base class name as accepted by parse_base_class. Far step instances
    /// are certified against F_k(constants); by zero-measure crossings the
    /// distance of a step function to F_k(polynomials) is the same.
    std::string base = "constants";
    int k = 1;
    double eps = 0.1;
    std::uint64_t seed = 42;
    /// Random-partition piece count; 0 means 64k.
    std::size_t n_prime = 0;
    double frequency = 10.0;
    double amplitude = 1.0;
    /// Grid for sine-probe certificates.
    std::size_t grid_size = 4096;
};

/// A generated target together with whichever concrete form it has.
struct Instance {
    InstanceSpec spec;
    Target target;
    std::optional<PiecewiseFunction> piecewise;
    std::optional<StepFunction> step;
    /// Present for every far kind; distance >= spec.eps is guaranteed.
    std::optional<DistanceCertificate> certificate;
};

/// Builds the instance described by `spec`. Far kinds are certified and
/// throw std::runtime_error if the certificate falls short of spec.eps.
Instance make_instance(const InstanceSpec& spec);

} // namespace pwtest
