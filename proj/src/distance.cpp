#include "pwtest/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "pwtest/interpolation.hpp"

namespace pwtest {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (values_.size() != breakpoints_.size() + 1) {
        throw std::invalid_argument("step function needs exactly one more value than breakpoints");
    }
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        const double t = breakpoints_[i];
        if (!(t >= 0.0 && t <= 1.0) || (i > 0 && t < breakpoints_[i - 1])) {
            throw std::invalid_argument("step breakpoints must be nondecreasing within [0, 1]");
        }
    }
}

double StepFunction::operator()(double x) const noexcept {
    const auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

std::vector<double> StepFunction::masses() const {
    std::vector<double> out(values_.size());
    double left = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double right = i < breakpoints_.size() ? breakpoints_[i] : 1.0;
        out[i] = right - left;
        left = right;
    }
    return out;
}

StepFunction StepFunction::normalized() const {
    const std::vector<double> mass = masses();
    std::vector<double> bps;
    std::vector<double> vals;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (mass[i] <= 0.0 && values_.size() > 1) {
            continue;
        }
        if (!vals.empty() && vals.back() == values_[i]) {
            bps.back() = i < breakpoints_.size() ? breakpoints_[i] : 1.0;
            continue;
        }
        vals.push_back(values_[i]);
        bps.push_back(i < breakpoints_.size() ? breakpoints_[i] : 1.0);
    }
    if (vals.empty()) {
        vals.push_back(values_.front());
        bps.push_back(1.0);
    }
    bps.pop_back();
    return {std::move(bps), std::move(vals)};
}

PiecewiseFunction StepFunction::to_piecewise() const {
    std::vector<Member> pieces;
    pieces.reserve(values_.size());
    for (double v : values_) {
        pieces.push_back(Member::constant(v));
    }
    return {breakpoints_, std::move(pieces)};
}

Target StepFunction::as_target() const {
    auto self = std::make_shared<const StepFunction>(*this);
    return [self](double x) { return (*self)(x); };
}

std::string_view to_string(DistanceMethod m) noexcept {
    switch (m) {
    case DistanceMethod::GridApprox:
        return "grid-approx";
    case DistanceMethod::Exhaustive:
        return "exhaustive";
    case DistanceMethod::DpExact:
        break;
    }
    return "dp-exact";
}

std::optional<DistanceMethod> parse_distance_method(std::string_view s) noexcept {
    for (DistanceMethod m : {DistanceMethod::DpExact, DistanceMethod::GridApprox, DistanceMethod::Exhaustive}) {
        if (to_string(m) == s) {
            return m;
        }
    }
    return std::nullopt;
}

namespace {

// D_j(b): least weight relabelled so items [0, b) form at most j runs.
// With Q_v(b) the weight of items before b not labelled v,
//   D_j(b) = min(D_{j-1}(b), min_v [Q_v(b) + min_{a <= b} (D_{j-1}(a) - Q_v(a))]).
template <class W>
W relabel_dp(std::span<const W> weights, std::span<const int> labels, int k) {
    if (weights.size() != labels.size()) {
        throw std::invalid_argument("weights and labels differ in length");
    }
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    const std::size_t n = weights.size();
    if (n <= static_cast<std::size_t>(k)) {
        return W{0};
    }
    std::map<int, std::size_t> ids;
    std::vector<std::size_t> lab(n);
    for (std::size_t i = 0; i < n; ++i) {
        lab[i] = ids.try_emplace(labels[i], ids.size()).first->second;
    }
    const std::size_t nv = ids.size();
    const W inf = std::numeric_limits<W>::max() / 4;

    std::vector<W> prev(n + 1, inf);
    std::vector<W> cur(n + 1);
    std::vector<W> q(nv);
    std::vector<W> run(nv);
    prev[0] = W{0};
    for (int j = 1; j <= k; ++j) {
        std::fill(q.begin(), q.end(), W{0});
        std::fill(run.begin(), run.end(), inf);
        for (std::size_t b = 0; b <= n; ++b) {
            if (b > 0) {
                for (std::size_t v = 0; v < nv; ++v) {
                    if (lab[b - 1] != v) {
                        q[v] += weights[b - 1];
                    }
                }
            }
            W best = prev[b];
            for (std::size_t v = 0; v < nv; ++v) {
                if (prev[b] < inf) {
                    run[v] = std::min(run[v], prev[b] - q[v]);
                }
                if (run[v] < inf) {
                    best = std::min(best, q[v] + run[v]);
                }
            }
            cur[b] = best;
        }
        std::swap(prev, cur);
    }
    return prev[n];
}

} // namespace

std::int64_t min_relabel_weight(std::span<const std::int64_t> weights, std::span<const int> labels,
                                int k) {
    return relabel_dp<std::int64_t>(weights, labels, k);
}

double min_relabel_weight(std::span<const double> weights, std::span<const int> labels, int k) {
    return relabel_dp<double>(weights, labels, k);
}

double dist_step_to_piecewise_const(const StepFunction& f, int k) {
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    const StepFunction g = f.normalized();
    if (g.piece_count() <= static_cast<std::size_t>(k)) {
        return 0.0;
    }
    std::map<double, int> ids;
    std::vector<int> labels;
    labels.reserve(g.piece_count());
    for (double v : g.values()) {
        labels.push_back(ids.try_emplace(v, static_cast<int>(ids.size())).first->second);
    }
    const std::vector<double> mass = g.masses();
    return std::clamp(min_relabel_weight(std::span<const double>(mass), labels, k), 0.0, 1.0);
}

namespace {

// Agreement sets (as sorted grid indices) of the members of H that match
// more grid points than the class can match for free.
class CandidateSets {
public:
    explicit CandidateSets(std::size_t grid) : members_(grid) {}

    void add(const std::vector<std::uint32_t>& set) {
        const auto id = static_cast<std::uint32_t>(count_++);
        for (std::uint32_t g : set) {
            members_[g].push_back(id);
        }
    }

    std::size_t count() const noexcept { return count_; }
    const std::vector<std::uint32_t>& at(std::size_t g) const { return members_[g]; }

private:
    std::vector<std::vector<std::uint32_t>> members_;
    std::size_t count_ = 0;
};

template <class F>
std::vector<std::uint32_t> agreement_set(const F& h, std::span<const ValuePoint> pts,
                                         const ValueEquality& eq) {
    std::vector<std::uint32_t> out;
    for (std::size_t g = 0; g < pts.size(); ++g) {
        if (eq(h(pts[g].x), pts[g].y)) {
            out.push_back(static_cast<std::uint32_t>(g));
        }
    }
    return out;
}

// Leading divided difference f[x_0, ..., x_r].
double leading_divided_difference(std::span<const ValuePoint> pts) {
    std::vector<double> c(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        c[i] = pts[i].y;
    }
    for (std::size_t level = 1; level < pts.size(); ++level) {
        for (std::size_t i = pts.size() - 1; i >= level; --i) {
            c[i] = (c[i] - c[i - 1]) / (pts[i].x - pts[i - level].x);
        }
    }
    return c.back();
}

// Every polynomial of degree <= p through >= p + 2 grid points is reached
// from its first p + 1 agreeing points: fix the first p as a base, group the
// later points by the divided difference they complete, and verify each
// group member by evaluation. A set is kept only from its canonical base.
void polynomial_candidates(std::span<const ValuePoint> pts, int p, const ValueEquality& eq,
                           CandidateSets& out) {
    const std::size_t n = pts.size();
    const auto pp = static_cast<std::size_t>(p);
    std::vector<std::size_t> base(pp);
    std::vector<ValuePoint> nodes(pp + 1);
    std::vector<std::pair<double, std::size_t>> keyed;
    std::vector<char> covered(n);

    auto process_base = [&]() {
        const std::size_t from = pp == 0 ? 0 : base.back() + 1;
        if (from + 1 >= n) {
            return;
        }
        for (std::size_t i = 0; i < pp; ++i) {
            nodes[i] = pts[base[i]];
        }
        keyed.clear();
        for (std::size_t j = from; j < n; ++j) {
            nodes[pp] = pts[j];
            const double dd = leading_divided_difference(nodes);
            if (std::isfinite(dd)) {
                keyed.emplace_back(dd, j);
            }
        }
        std::sort(keyed.begin(), keyed.end());
        std::fill(covered.begin(), covered.end(), 0);
        for (std::size_t lo = 0; lo < keyed.size();) {
            std::size_t hi = lo + 1;
            while (hi < keyed.size() &&
                   keyed[hi].first - keyed[hi - 1].first <= 1e-6 * (1.0 + std::abs(keyed[hi].first))) {
                ++hi;
            }
            if (hi - lo >= 2) {
                std::vector<std::size_t> group;
                for (std::size_t t = lo; t < hi; ++t) {
                    group.push_back(keyed[t].second);
                }
                std::sort(group.begin(), group.end());
                for (std::size_t j : group) {
                    if (covered[j]) {
                        continue;
                    }
                    nodes[pp] = pts[j];
                    const auto poly = NewtonPolynomial::through(nodes);
                    if (!poly) {
                        continue;
                    }
                    const auto set = agreement_set(*poly, pts, eq);
                    for (std::uint32_t g : set) {
                        covered[g] = 1;
                    }
                    const bool canonical =
                        set.size() >= pp + 2 &&
                        std::equal(base.begin(), base.end(), set.begin(),
                                   [](std::size_t a, std::uint32_t b) { return a == b; }) &&
                        set[pp] == j;
                    if (canonical) {
                        out.add(set);
                    }
                }
            }
            lo = hi;
        }
    };

    if (pp == 0) {
        process_base();
        return;
    }
    if (n < pp) {
        return;
    }
    for (std::size_t i = 0; i < pp; ++i) {
        base[i] = i;
    }
    while (true) {
        process_base();
        std::size_t pos = pp;
        while (pos > 0 && base[pos - 1] == n - pp + pos - 1) {
            --pos;
        }
        if (pos == 0) {
            break;
        }
        ++base[pos - 1];
        for (std::size_t i = pos; i < pp; ++i) {
            base[i] = base[i - 1] + 1;
        }
    }
}

void sine_candidates(std::span<const ValuePoint> pts, const ValueEquality& eq, CandidateSets& out) {
    for (const ValuePoint& pt : pts) {
        if (!std::isfinite(pt.y) || std::abs(pt.y) > 1.0 + eq.abs_tol + eq.rel_tol) {
            continue;
        }
        const double a = std::asin(std::clamp(pt.y, -1.0, 1.0));
        for (double shift : {a - pt.x, std::numbers::pi - a - pt.x}) {
            const Member m = Member::sine(shift);
            const auto set = agreement_set(m, pts, eq);
            if (!set.empty()) {
                out.add(set);
            }
        }
    }
}

} // namespace

double dist_grid_general(const Target& f, const BaseClass& h, int k, std::size_t grid_size) {
    if (k < 1) {
        throw std::invalid_argument("k must be at least 1");
    }
    if (grid_size < 4 * static_cast<std::size_t>(k)) {
        throw std::invalid_argument("grid_size must be at least 4k");
    }
    const std::size_t n = grid_size;
    std::vector<ValuePoint> pts(n);
    for (std::size_t g = 0; g < n; ++g) {
        const double x = (static_cast<double>(g) + 0.5) / static_cast<double>(n);
        pts[g] = {x, f(x)};
    }

    CandidateSets cands(n);
    // Any `free_fit` points with finite labels are matched by some member.
    std::size_t free_fit = 0;
    switch (h.kind()) {
    case BaseKind::Constants:
        polynomial_candidates(pts, 0, h.equality(), cands);
        free_fit = 1;
        break;
    case BaseKind::Polynomial:
        polynomial_candidates(pts, h.degree(), h.equality(), cands);
        free_fit = static_cast<std::size_t>(h.degree()) + 1;
        break;
    case BaseKind::ShiftedSine:
        sine_candidates(pts, h.equality(), cands);
        break;
    }
    std::vector<char> finite(n);
    for (std::size_t g = 0; g < n; ++g) {
        finite[g] = std::isfinite(pts[g].y) ? 1 : 0;
    }

    const auto kk = static_cast<std::size_t>(k);
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    // d[j][b]: fewest disagreements covering grid points [0, b) with j pieces.
    std::vector<std::vector<std::int64_t>> d(kk + 1, std::vector<std::int64_t>(n + 1, inf));
    d[0][0] = 0;
    std::vector<std::uint32_t> count(cands.count(), 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::uint32_t c : touched) {
            count[c] = 0;
        }
        touched.clear();
        std::size_t best = 0;
        std::size_t finite_run = 0;
        for (std::size_t b = a + 1; b <= n; ++b) {
            const std::size_t g = b - 1;
            finite_run += finite[g];
            for (std::uint32_t c : cands.at(g)) {
                if (count[c]++ == 0) {
                    touched.push_back(c);
                }
                best = std::max<std::size_t>(best, count[c]);
            }
            const std::size_t agree = std::max(best, std::min(finite_run, free_fit));
            const auto cost = static_cast<std::int64_t>((b - a) - agree);
            for (std::size_t j = 1; j <= kk; ++j) {
                if (d[j - 1][a] < inf) {
                    d[j][b] = std::min(d[j][b], d[j - 1][a] + cost);
                }
            }
        }
    }
    std::int64_t best = inf;
    for (std::size_t j = 1; j <= kk; ++j) {
        best = std::min(best, d[j][n]);
    }
    return static_cast<double>(best) / static_cast<double>(n);
}

} // namespace pwtest
