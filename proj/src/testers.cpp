#include "pwtest/testers.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pwtest/interpolation.hpp"

namespace pwtest {

TesterReport active_test_general(TargetOracle& oracle, const BaseClass& h, const ActiveParams& params,
                                 QueryCounting counting) {
    const GeneralEstimate est = ns_hat_general(oracle, h, params);
    TesterReport r;
    r.tester = "active-general";
    r.samples_used = oracle.samples_drawn();
    r.query_calls = oracle.query_calls();
    r.queries_used = counting == QueryCounting::Distinct ? oracle.queries_made() : oracle.query_calls();
    if (params.q > params.s) {
        r.queries_used = oracle.queries_made();
    }
    r.statistic = est.estimate.value;
    r.threshold = params.threshold;
    r.failure = est.failure;
    r.verdict = decide(r.statistic, r.threshold, r.failure);
    return r;
}

TesterReport constant_test(TargetOracle& oracle, const ConstantParams& params, LabelMode mode,
                           ValueEquality eq) {
    const PairsEstimate est = ns_hat_pairs(oracle, params, mode, eq);
    TesterReport r;
    r.tester = mode == LabelMode::Active ? "constant-active" : "constant-passive";
    r.samples_used = oracle.samples_drawn();
    r.queries_used = oracle.queries_made();
    r.query_calls = oracle.query_calls();
    r.statistic = est.estimate.value;
    r.threshold = params.threshold;
    r.failure = est.failure;
    r.verdict = decide(r.statistic, r.threshold, r.failure);
    return r;
}

namespace {

// Incremental consistency of one run of points with a single member of H.
class RunFit {
public:
    explicit RunFit(const BaseClass& h) : h_(h) {}

    /// Starts a run at p; false if no member matches p alone.
    bool start(ValuePoint p) {
        points_.assign(1, p);
        poly_.reset();
        phases_.clear();
        if (h_.kind() == BaseKind::ShiftedSine) {
            const ValueEquality& eq = h_.equality();
            if (std::abs(p.y) > 1.0 + eq.abs_tol + eq.rel_tol) {
                return false;
            }
            const double a = std::asin(std::clamp(p.y, -1.0, 1.0));
            phases_ = {a - p.x, std::numbers::pi - a - p.x};
        }
        return true;
    }

    /// Adds p if the run stays consistent.
    bool extend(ValuePoint p) {
        switch (h_.kind()) {
        case BaseKind::Constants:
            if (!h_.equal(p.y, points_.front().y)) {
                return false;
            }
            break;
        case BaseKind::Polynomial: {
            const auto full = static_cast<std::size_t>(h_.degree()) + 1;
            if (points_.size() >= full) {
                if (!poly_) {
                    poly_ = NewtonPolynomial::through(std::span<const ValuePoint>(points_).first(full));
                }
                if (!poly_ || !h_.equal((*poly_)(p.x), p.y)) {
                    return false;
                }
            }
            break;
        }
        case BaseKind::ShiftedSine: {
            std::vector<double> alive;
            for (double t : phases_) {
                if (h_.equal(std::sin(p.x + t), p.y)) {
                    alive.push_back(t);
                }
            }
            if (alive.empty()) {
                return false;
            }
            phases_ = std::move(alive);
            break;
        }
        }
        points_.push_back(p);
        return true;
    }

    Member member() const {
        switch (h_.kind()) {
        case BaseKind::Polynomial: {
            const auto full = static_cast<std::size_t>(h_.degree()) + 1;
            const auto n = std::min(full, points_.size());
            auto coeffs = NewtonPolynomial::through(std::span<const ValuePoint>(points_).first(n))->monomial();
            coeffs.resize(full, 0.0);
            return Member::polynomial(std::move(coeffs));
        }
        case BaseKind::ShiftedSine:
            return Member::sine(phases_.front());
        case BaseKind::Constants:
            break;
        }
        return Member::constant(points_.front().y);
    }

    double last_x() const { return points_.back().x; }

private:
    const BaseClass& h_;
    std::vector<ValuePoint> points_;
    std::optional<NewtonPolynomial> poly_;
    std::vector<double> phases_;
};

Member default_member(const BaseClass& h) {
    switch (h.kind()) {
    case BaseKind::Polynomial:
        return Member::polynomial(std::vector<double>(static_cast<std::size_t>(h.degree()) + 1, 0.0));
    case BaseKind::ShiftedSine:
        return Member::sine(0.0);
    case BaseKind::Constants:
        break;
    }
    return Member::constant(0.0);
}

} // namespace

std::optional<PiecewiseFunction> fit_consistent_piecewise(std::span<const ValuePoint> points,
                                                          const BaseClass& h, int k) {
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (!(points[i - 1].x < points[i].x)) {
            throw std::invalid_argument("points must be sorted by x with distinct x");
        }
    }
    if (points.empty()) {
        return PiecewiseFunction({}, {default_member(h)});
    }
    std::vector<double> bps;
    std::vector<Member> pieces;
    RunFit run(h);
    for (std::size_t i = 0; i < points.size();) {
        if (!run.start(points[i])) {
            return std::nullopt;
        }
        std::size_t j = i + 1;
        while (j < points.size() && run.extend(points[j])) {
            ++j;
        }
        pieces.push_back(run.member());
        if (pieces.size() > static_cast<std::size_t>(k)) {
            return std::nullopt;
        }
        if (j < points.size()) {
            bps.push_back(0.5 * (run.last_x() + points[j].x));
        }
        i = j;
    }
    return PiecewiseFunction(std::move(bps), std::move(pieces));
}

TesterReport learn_validate_test(TargetOracle& oracle, const BaseClass& h,
                                 const LearnValidateParams& params) {
    const std::span<const double> xs = oracle.draw(params.budget());
    oracle.query_all();
    std::vector<ValuePoint> train(params.train_size);
    for (std::size_t i = 0; i < params.train_size; ++i) {
        train[i] = {xs[i], oracle.query(i)};
    }
    std::sort(train.begin(), train.end(), [](ValuePoint a, ValuePoint b) { return a.x < b.x; });

    TesterReport r;
    r.tester = "learn-validate";
    r.threshold = params.eps / 2.0;
    const auto fit = fit_consistent_piecewise(train, h, params.k);
    if (!fit) {
        r.statistic = 1.0;
    } else {
        std::size_t agree = 0;
        for (std::size_t i = params.train_size; i < xs.size(); ++i) {
            agree += h.equal((*fit)(xs[i]), oracle.query(i)) ? 1 : 0;
        }
        r.statistic = static_cast<double>(params.validate_size - agree) /
                      static_cast<double>(params.validate_size);
    }
    r.samples_used = oracle.samples_drawn();
    r.queries_used = oracle.queries_made();
    r.query_calls = oracle.query_calls();
    r.verdict = decide(r.statistic, r.threshold, std::nullopt);
    return r;
}

TesterReport poly_exact_test(TargetOracle& oracle, int p, double eps, ValueEquality eq) {
    const PolyExactParams params = make_poly_exact_params(p, eps);
    const std::span<const double> xs = oracle.draw(params.s);
    std::vector<ValuePoint> nodes(params.fit_size);
    for (std::size_t i = 0; i < params.fit_size; ++i) {
        nodes[i] = {xs[i], oracle.query(i)};
    }
    const auto poly = NewtonPolynomial::through(nodes);
    if (!poly) {
        throw std::runtime_error("fitting samples repeat an x coordinate");
    }
    std::size_t disagree = 0;
    for (std::size_t i = params.fit_size; i < params.s; ++i) {
        disagree += eq((*poly)(xs[i]), oracle.query(i)) ? 0 : 1;
    }
    TesterReport r;
    r.tester = "poly-exact";
    r.samples_used = oracle.samples_drawn();
    r.queries_used = oracle.queries_made();
    r.query_calls = oracle.query_calls();
    r.statistic = static_cast<double>(disagree) / static_cast<double>(params.validate_size);
    r.threshold = 0.0;
    r.verdict = decide(r.statistic, r.threshold, std::nullopt);
    return r;
}

} // namespace pwtest
