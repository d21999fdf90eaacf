#include "pwtest/base_class.hpp"

#include "pwtest/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwtest {

double Member::operator()(double x) const noexcept {
    switch (kind) {
    case BaseKind::Constants:
        return params[0];
    case BaseKind::Polynomial:
        return eval_monomial(params, x);
    case BaseKind::ShiftedSine:
        return std::sin(x + params[0]);
    }
    return params[0];
}

BaseClass BaseClass::constants(ValueEquality eq) { return {BaseKind::Constants, 0, eq}; }

BaseClass BaseClass::polynomials(int degree, ValueEquality eq) {
    if (degree < 0) {
        throw std::invalid_argument("polynomial degree must be nonnegative");
    }
    return {BaseKind::Polynomial, degree, eq};
}

BaseClass BaseClass::shifted_sine(ValueEquality eq) { return {BaseKind::ShiftedSine, 0, eq}; }

int BaseClass::graph_dimension() const noexcept {
    switch (kind_) {
    case BaseKind::Polynomial:
        return degree_ + 1;
    case BaseKind::Constants:
    case BaseKind::ShiftedSine:
        break;
    }
    return 1;
}

std::string BaseClass::name() const {
    switch (kind_) {
    case BaseKind::Polynomial:
        return "poly" + std::to_string(degree_);
    case BaseKind::ShiftedSine:
        return "shifted-sine";
    case BaseKind::Constants:
        break;
    }
    return "constants";
}

std::optional<BaseClass> parse_base_class(const std::string& name, ValueEquality eq) {
    if (name == "constants") {
        return BaseClass::constants(eq);
    }
    if (name == "shifted-sine") {
        return BaseClass::shifted_sine(eq);
    }
    if (name.size() > 4 && name.starts_with("poly")) {
        int degree = 0;
        for (char c : name.substr(4)) {
            if (c < '0' || c > '9') {
                return std::nullopt;
            }
            degree = degree * 10 + (c - '0');
            if (degree > 64) {
                return std::nullopt;
            }
        }
        return BaseClass::polynomials(degree, eq);
    }
    return std::nullopt;
}

MemberSampler default_member_sampler(const BaseClass& h) {
    switch (h.kind()) {
    case BaseKind::Polynomial: {
        const int p = h.degree();
        return [p](Rng& rng) {
            std::vector<double> coeffs(static_cast<std::size_t>(p) + 1);
            for (double& c : coeffs) {
                c = rng.uniform(-1.0, 1.0);
            }
            return Member::polynomial(std::move(coeffs));
        };
    }
    case BaseKind::ShiftedSine:
        return [](Rng& rng) { return Member::sine(rng.uniform(0.0, 2.0 * std::numbers::pi)); };
    case BaseKind::Constants:
        break;
    }
    return [](Rng& rng) { return Member::constant(static_cast<double>(rng.below(4))); };
}

namespace {

void require_finite(ValuePoint p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw std::invalid_argument("anchored fit: non-finite coordinate");
    }
}

template <class F>
std::size_t count_mismatches(const F& h, std::span<const ValuePoint> probes, const ValueEquality& eq,
                             std::size_t stop_at) {
    std::size_t count = 0;
    for (const ValuePoint& p : probes) {
        if (!eq(h(p.x), p.y) && ++count >= stop_at) {
            break;
        }
    }
    return count;
}

AnchoredFit fit_constant(const BaseClass& h, ValuePoint anchor, std::span<const ValuePoint> probes) {
    std::size_t count = 0;
    for (const ValuePoint& p : probes) {
        count += h.equal(p.y, anchor.y) ? 0 : 1;
    }
    return {count, Member::constant(anchor.y)};
}

AnchoredFit fit_sine(const BaseClass& h, ValuePoint anchor, std::span<const ValuePoint> probes) {
    const auto& eq = h.equality();
    if (std::abs(anchor.y) > 1.0 + eq.abs_tol + eq.rel_tol) {
        return {probes.size() + 1, std::nullopt};
    }
    const double y = std::clamp(anchor.y, -1.0, 1.0);
    const double two_pi = 2.0 * std::numbers::pi;
    auto wrap = [two_pi](double t) {
        t = std::fmod(t, two_pi);
        return t < 0.0 ? t + two_pi : t;
    };
    const double shifts[2] = {wrap(std::asin(y) - anchor.x),
                              wrap(std::numbers::pi - std::asin(y) - anchor.x)};
    AnchoredFit best{probes.size() + 1, std::nullopt};
    for (double t : shifts) {
        const Member m = Member::sine(t);
        const std::size_t c = count_mismatches(m, probes, eq, best.count);
        if (c < best.count) {
            best = {c, m};
        }
    }
    return best;
}

AnchoredFit fit_polynomial(const BaseClass& h, ValuePoint anchor, std::span<const ValuePoint> probes) {
    const auto& eq = h.equality();
    const std::size_t n = probes.size();
    std::vector<ValuePoint> nodes;
    std::vector<std::size_t> idx;

    for (std::size_t r = std::min<std::size_t>(static_cast<std::size_t>(h.degree()), n);; --r) {
        std::optional<NewtonPolynomial> best_poly;
        std::size_t best = n + 1;
        idx.resize(r);
        for (std::size_t i = 0; i < r; ++i) {
            idx[i] = i;
        }
        // Lexicographic r-subsets of the probe indices.
        while (true) {
            nodes.assign(1, anchor);
            for (std::size_t i : idx) {
                nodes.push_back(probes[i]);
            }
            if (auto poly = NewtonPolynomial::through(nodes)) {
                const std::size_t c = count_mismatches(*poly, probes, eq, best);
                if (c < best) {
                    best = c;
                    best_poly = std::move(poly);
                    if (best == 0) {
                        break;
                    }
                }
            }
            std::size_t pos = r;
            while (pos > 0 && idx[pos - 1] == n - r + pos - 1) {
                --pos;
            }
            if (pos == 0) {
                break;
            }
            ++idx[pos - 1];
            for (std::size_t i = pos; i < r; ++i) {
                idx[i] = idx[i - 1] + 1;
            }
        }
        if (best_poly) {
            std::vector<double> coeffs = best_poly->monomial();
            coeffs.resize(static_cast<std::size_t>(h.degree()) + 1, 0.0);
            return {best, Member::polynomial(std::move(coeffs))};
        }
        if (r == 0) {
            break;
        }
    }
    // Unreachable: the r = 0 subset interpolates the anchor alone.
    return {n + 1, std::nullopt};
}

} // namespace

AnchoredFit min_disagreements_anchored(const BaseClass& h, ValuePoint anchor,
                                       std::span<const ValuePoint> probes) {
    if (probes.empty()) {
        throw std::invalid_argument("anchored fit: probe list is empty");
    }
    require_finite(anchor);
    for (const ValuePoint& p : probes) {
        require_finite(p);
    }
    switch (h.kind()) {
    case BaseKind::Polynomial:
        return fit_polynomial(h, anchor, probes);
    case BaseKind::ShiftedSine:
        return fit_sine(h, anchor, probes);
    case BaseKind::Constants:
        break;
    }
    return fit_constant(h, anchor, probes);
}

CrossingCheck check_zero_measure_crossings(const BaseClass& h, std::size_t trials,
                                           std::size_t grid_size, std::uint64_t seed,
                                           double max_fraction, const MemberSampler& sampler) {
    if (trials == 0 || grid_size == 0) {
        throw std::invalid_argument("crossing check needs trials and grid_size >= 1");
    }
    const MemberSampler draw = sampler ? sampler : default_member_sampler(h);
    Rng rng(seed);
    std::vector<double> grid(grid_size);
    CrossingCheck report;
    report.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        const Member a = draw(rng);
        Member b = draw(rng);
        for (int attempt = 0; b == a; ++attempt) {
            if (attempt == 1000) {
                throw std::runtime_error("crossing check: sampler never produced distinct members");
            }
            b = draw(rng);
        }
        rng.fill_uniform(grid);
        std::size_t agree = 0;
        for (double x : grid) {
            agree += h.equal(a(x), b(x)) ? 1 : 0;
        }
        const double frac = static_cast<double>(agree) / static_cast<double>(grid_size);
        report.worst_fraction = std::max(report.worst_fraction, frac);
        if (frac > max_fraction) {
            report.passed = false;
        }
    }
    return report;
}

} // namespace pwtest
