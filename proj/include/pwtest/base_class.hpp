#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pwtest/rng.hpp"
#include "pwtest/value.hpp"

namespace pwtest {

enum class BaseKind { Constants, Polynomial, ShiftedSine };

/// Descriptor of one member h of a base class.
///   Constants:   params = {c}            h(x) = c
///   Polynomial:  params = {a_0..a_p}     h(x) = sum a_i x^i
///   ShiftedSine: params = {t}            h(x) = sin(x + t)
/// Two descriptors may denote the same function (e.g. sine shifts that
/// differ by 2*pi); descriptor equality is not function equality.
struct Member {
    BaseKind kind = BaseKind::Constants;
    std::vector<double> params;

    double operator()(double x) const noexcept;

    static Member constant(double c) { return {BaseKind::Constants, {c}}; }
    static Member polynomial(std::vector<double> coeffs) {
        return {BaseKind::Polynomial, std::move(coeffs)};
    }
    static Member sine(double shift) { return {BaseKind::ShiftedSine, {shift}}; }

    friend bool operator==(const Member&, const Member&) = default;
};

/// A hypothesis family H whose distinct members cross only on null sets.
class BaseClass {
public:
    static BaseClass constants(ValueEquality eq = {});
    static BaseClass polynomials(int degree, ValueEquality eq = {});
    static BaseClass shifted_sine(ValueEquality eq = {});

    BaseKind kind() const noexcept { return kind_; }
    /// Polynomial degree p; 0 for constants and for the sine class.
    int degree() const noexcept { return degree_; }
    /// VC dimension of the member graphs: 1 for constants, p+1 for
    /// degree-p polynomials, 1 for shifted sines.
    int graph_dimension() const noexcept;
    const ValueEquality& equality() const noexcept { return eq_; }
    bool equal(double a, double b) const noexcept { return eq_(a, b); }

    /// "constants", "poly<p>" or "shifted-sine".
    std::string name() const;

    friend bool operator==(const BaseClass&, const BaseClass&) = default;

private:
    BaseClass(BaseKind kind, int degree, ValueEquality eq) : kind_(kind), degree_(degree), eq_(eq) {}

    BaseKind kind_;
    int degree_;
    ValueEquality eq_;
};

/// Parses the name() format; nullopt on anything else.
std::optional<BaseClass> parse_base_class(const std::string& name, ValueEquality eq = {});

using MemberSampler = std::function<Member(Rng&)>;

/// Random members: constants from {0,1,2,3}, polynomial coefficients
/// Uniform(-1,1), sine shifts Uniform(0, 2*pi).
MemberSampler default_member_sampler(const BaseClass& h);

/// Result of minimising disagreements over members pinned to an anchor.
struct AnchoredFit {
    /// Number of probes the best anchored member disagrees with, or
    /// probes.size() + 1 when no member passes through the anchor.
    std::size_t count = 0;
    /// The minimising member; absent exactly when the anchored set is empty.
    std::optional<Member> witness;

    bool anchored_set_empty() const noexcept { return !witness.has_value(); }
};

/// min over h in H with h(anchor.x) = anchor.y of #{probes p : h(p.x) != p.y}.
///
/// Constants count the probes whose label differs from the anchor label.
/// Degree-p polynomials enumerate size-p probe subsets in lexicographic
/// order, interpolate through the anchor and the subset, and keep the first
/// subset reaching the minimum; subsets with repeated x are skipped, and if
/// none of size p is usable the subset size drops until one is. Shifted
/// sines try both phases consistent with the anchor.
///
/// Throws std::invalid_argument on an empty probe list or non-finite input.
AnchoredFit min_disagreements_anchored(const BaseClass& h, ValuePoint anchor,
                                       std::span<const ValuePoint> probes);

struct CrossingCheck {
    bool passed = true;
    /// Largest fraction of grid points on which a sampled pair agreed.
    double worst_fraction = 0.0;
    std::size_t trials = 0;
};

/// Statistical check of the zero-measure crossings property: draws `trials`
/// pairs of members with distinct descriptors and fails if any pair agrees
/// on more than `max_fraction` of a random grid of `grid_size` points.
CrossingCheck check_zero_measure_crossings(const BaseClass& h, std::size_t trials,
                                           std::size_t grid_size, std::uint64_t seed,
                                           double max_fraction = 0.01,
                                           const MemberSampler& sampler = {});

} // namespace pwtest
