#pragma once

#include <algorithm>
#include <cstddef>

namespace pwtest {

/// Neighbourhood half-width delta = eps^2 / (32 k).
/// Throws std::domain_error unless 0 < eps < 1/2 and k >= 2.
double derive_delta(double eps, int k);

/// True when k >= 80/eps, the regime where the noise-sensitivity testers
/// apply; below it the learn-then-validate tester is used instead.
bool noise_sensitivity_regime(double eps, int k) noexcept;

/// The unspecified numerical constants of the testers. Defaults are the
/// practical desk-scale values (all 1); see TheoryBudget for the
/// concentration-scale values.
struct TesterConstants {
    double c = 1.0;
    double c_prime = 1.0;
    double c_dprime = 1.0;
    double c1 = 1.0;
    double c2 = 1.0;
};

/// Budgets of the general active tester.
///   m = ceil(c / eps^4)                        anchors
///   ell = ceil(c' d / eps^4 * ln(c'' / eps))   neighbours per anchor
///   s = m + ceil(max(2 ell / delta, (8 / delta) ln(12 m)))
///   q = m (ell + 1)
///   threshold = (k - 1)(delta / 2)(1 + eps / 8)
/// q may exceed s; the tester then labels all s points instead.
struct ActiveParams {
    double eps = 0.0;
    int k = 0;
    int d = 0;
    TesterConstants constants;
    double delta = 0.0;
    std::size_t m = 0;
    std::size_t ell = 0;
    std::size_t s = 0;
    std::size_t q = 0;
    double threshold = 0.0;

    std::size_t query_budget() const noexcept { return std::min(q, s); }
};

/// Throws std::domain_error outside 0 < eps < 1/2, d >= 1, or k < 80/eps.
ActiveParams make_active_params(double eps, int k, int d, const TesterConstants& constants = {});

/// Budgets of the birthday-pairing tester for piecewise constants.
///   m' = ceil(c / eps^4), n = 1 + ceil(2 sqrt(ceil(1 / delta))), s' = 4 n m'
struct ConstantParams {
    double eps = 0.0;
    int k = 0;
    double c = 1.0;
    double delta = 0.0;
    std::size_t m_prime = 0;
    std::size_t n = 0;
    std::size_t s_prime = 0;
    std::size_t q_active = 0;
    std::size_t q_passive = 0;
    double threshold = 0.0;

    std::size_t blocks() const noexcept { return s_prime / n; }
};

/// Throws std::domain_error outside 0 < eps < 1/2 or k < 80/eps.
ConstantParams make_constant_params(double eps, int k, double c = 1.0);

/// Same schedule with delta supplied directly instead of derived from
/// (eps, k); the regime check is skipped. Used to probe the estimator at a
/// chosen scale.
ConstantParams constant_params_for_delta(double eps, int k, double delta, double c = 1.0);

/// 4 d k log2(2 e k): bound on the graph dimension of k-piecewise H.
double sauer_graph_dimension_bound(int d, int k);

/// Budgets of the learn-then-validate tester.
///   train = ceil(c1 d k / eps * ln(2 e k) * ln(1 / eps)), validate = ceil(c2 / eps)
struct LearnValidateParams {
    double eps = 0.0;
    int k = 0;
    int d = 0;
    double c1 = 1.0;
    double c2 = 1.0;
    std::size_t train_size = 0;
    std::size_t validate_size = 0;
    /// Accept iff at least (1 - eps/2) * validate_size validation labels agree.
    double agreement_threshold = 0.0;
    /// ceil(sauer_graph_dimension_bound(d, k)).
    std::size_t graph_dimension_bound = 0;

    std::size_t budget() const noexcept { return train_size + validate_size; }
};

LearnValidateParams make_learn_validate_params(double eps, int k, int d,
                                               const TesterConstants& constants = {});

/// Budgets of the exact-polynomial tester: p + 1 fitting points and
/// ceil(ln(3) / eps) validation points, all labelled.
struct PolyExactParams {
    int p = 0;
    double eps = 0.0;
    std::size_t fit_size = 0;
    std::size_t validate_size = 0;
    std::size_t s = 0;
};

PolyExactParams make_poly_exact_params(int p, double eps);

/// Budgets with constants large enough for the concentration steps behind
/// the 2/3 guarantees. Computed for reporting only; they are far beyond
/// desk scale.
///
/// c_active makes the anchor average concentrate within a factor
/// (1 +- eps/33) of a mean of at least eps^2/65 (multiplicative Chernoff,
/// failure 1/12). ell is the least value with
/// 4 (d ln(2 e ell / d) + ln(96 m)) / ell <= eps^4 / (65 * 68 * 33).
/// c_constant covers the pair-count Chernoff steps (relative slack eps/8
/// above and eps/16 below a mean of at least eps^2/65) and the block
/// existence step (c >= 4 ln 6).
struct TheoryBudget {
    double c_active = 0.0;
    std::size_t m = 0;
    std::size_t ell = 0;
    std::size_t s = 0;
    std::size_t q = 0;
    double c_constant = 0.0;
    std::size_t m_prime = 0;
    std::size_t s_prime = 0;
};

TheoryBudget theory_budget(double eps, int k, int d);

} // namespace pwtest
