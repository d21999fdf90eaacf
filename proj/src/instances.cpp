#include "pwtest/instances.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pwtest/rng.hpp"

namespace pwtest {

PiecewiseFunction gen_in_class(const BaseClass& h, int k, std::uint64_t seed) {
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    Rng rng(seed);
    std::vector<double> bps(static_cast<std::size_t>(k) - 1);
    rng.fill_uniform(bps);
    std::sort(bps.begin(), bps.end());
    std::vector<Member> pieces;
    pieces.reserve(static_cast<std::size_t>(k));
    if (h.kind() == BaseKind::Constants) {
        std::uint64_t v = rng.below(4);
        pieces.push_back(Member::constant(static_cast<double>(v)));
        for (int i = 1; i < k; ++i) {
            v = (v + 1 + rng.below(3)) % 4;
            pieces.push_back(Member::constant(static_cast<double>(v)));
        }
    } else {
        const MemberSampler draw = default_member_sampler(h);
        for (int i = 0; i < k; ++i) {
            pieces.push_back(draw(rng));
        }
    }
    return {std::move(bps), std::move(pieces)};
}

namespace {

StepFunction equal_pieces(std::vector<double> values) {
    const std::size_t n = values.size();
    std::vector<double> bps(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        bps[i - 1] = static_cast<double>(i) / static_cast<double>(n);
    }
    return {std::move(bps), std::move(values)};
}

} // namespace

std::pair<StepFunction, DistanceCertificate> gen_alternating_far(int k, double eps, std::uint64_t seed) {
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    if (!(eps > 0.0 && eps < 0.5)) {
        throw std::domain_error("alternating family needs 0 < eps < 1/2");
    }
    Rng rng(seed);
    const double first = static_cast<double>(rng.below(2));
    const std::size_t limit = 8 * static_cast<std::size_t>(k) * 16;
    for (std::size_t n = 8 * static_cast<std::size_t>(k); n <= limit; n *= 2) {
        std::vector<double> values(n);
        for (std::size_t i = 0; i < n; ++i) {
            values[i] = (i % 2 == 0) ? first : 1.0 - first;
        }
        StepFunction f = equal_pieces(std::move(values));
        const double d = dist_step_to_piecewise_const(f, k);
        if (d >= eps) {
            DistanceCertificate cert{"alternating-k" + std::to_string(k) + "-n" + std::to_string(n), k, d,
                                     DistanceMethod::DpExact, std::nullopt};
            return {std::move(f), std::move(cert)};
        }
    }
    throw std::runtime_error("alternating search passed its piece-count bound");
}

std::pair<StepFunction, DistanceCertificate> gen_random_partition_far(int k, std::size_t n_prime,
                                                                      double eps, std::uint64_t seed,
                                                                      int retries) {
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    if (n_prime < 8 * static_cast<std::size_t>(k)) {
        throw std::domain_error("random partition needs n' >= 8k");
    }
    for (int attempt = 0; attempt < std::max(retries, 1); ++attempt) {
        Rng rng(substream_seed(seed, static_cast<std::uint64_t>(attempt)));
        std::vector<double> values(n_prime);
        for (double& v : values) {
            v = static_cast<double>(rng.bits() >> 63);
        }
        StepFunction f = equal_pieces(std::move(values));
        const double d = dist_step_to_piecewise_const(f, k);
        if (d >= eps) {
            DistanceCertificate cert{"random-partition-k" + std::to_string(k) + "-n" + std::to_string(n_prime) +
                                         "-s" + std::to_string(seed) + "-a" + std::to_string(attempt),
                                     k, d, DistanceMethod::DpExact, std::nullopt};
            return {std::move(f), std::move(cert)};
        }
    }
    throw std::runtime_error("random partition: retry limit reached; n' is too small for eps");
}

Target sine_probe(double frequency, double amplitude) {
    return [frequency, amplitude](double x) { return amplitude * std::sin(frequency * x); };
}

std::string_view to_string(InstanceKind k) noexcept {
    switch (k) {
    case InstanceKind::AlternatingFar:
        return "alternating-far";
    case InstanceKind::RandomPartitionFar:
        return "random-partition-far";
    case InstanceKind::SineProbe:
        return "sine-probe";
    case InstanceKind::InClass:
        break;
    }
    return "in-class";
}

std::optional<InstanceKind> parse_instance_kind(std::string_view s) noexcept {
    for (InstanceKind k : {InstanceKind::InClass, InstanceKind::AlternatingFar,
                           InstanceKind::RandomPartitionFar, InstanceKind::SineProbe}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    return std::nullopt;
}

Instance make_instance(const InstanceSpec& spec) {
    const auto h = parse_base_class(spec.base);
    if (!h) {
        throw std::invalid_argument("unknown base class '" + spec.base + "'");
    }
    Instance out;
    out.spec = spec;
    switch (spec.kind) {
    case InstanceKind::InClass: {
        out.piecewise = gen_in_class(*h, spec.k, spec.seed);
        out.target = out.piecewise->as_target();
        return out;
    }
    case InstanceKind::AlternatingFar: {
        auto [f, cert] = gen_alternating_far(spec.k, spec.eps, spec.seed);
        out.step = std::move(f);
        out.certificate = std::move(cert);
        break;
    }
    case InstanceKind::RandomPartitionFar: {
        const std::size_t n = spec.n_prime ? spec.n_prime : 64 * static_cast<std::size_t>(spec.k);
        auto [f, cert] = gen_random_partition_far(spec.k, n, spec.eps, spec.seed);
        out.step = std::move(f);
        out.certificate = std::move(cert);
        break;
    }
    case InstanceKind::SineProbe: {
        out.target = sine_probe(spec.frequency, spec.amplitude);
        const double d = dist_grid_general(out.target, *h, spec.k, spec.grid_size);
        out.certificate = DistanceCertificate{"sine-probe-f" + std::to_string(spec.frequency), spec.k, d,
                                              DistanceMethod::GridApprox, spec.grid_size};
        break;
    }
    }
    if (out.step) {
        out.target = out.step->as_target();
    }
    if (!(out.certificate->distance >= spec.eps)) {
        throw std::runtime_error("far instance certificate " + std::to_string(out.certificate->distance) +
                                 " is below eps " + std::to_string(spec.eps));
    }
    return out;
}

} // namespace pwtest
