#include "pwtest/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pwtest {

namespace {

// ceil() that ignores rounding noise just above an integer, e.g.
// 72 / 2.5e-5 evaluating to 2880000.0000000005.
std::size_t ceil_count(double x) {
    if (!std::isfinite(x) || x < 0.0) {
        throw std::domain_error("budget is not a finite nonnegative number");
    }
    const double r = std::ceil(x - 1e-9 * std::max(1.0, std::abs(x)));
    return static_cast<std::size_t>(std::max(r, 0.0));
}

void require_eps(double eps) {
    if (!(eps > 0.0 && eps < 0.5)) {
        throw std::domain_error("eps must lie in (0, 1/2)");
    }
}

void require_regime(double eps, int k) {
    if (!noise_sensitivity_regime(eps, k)) {
        throw std::domain_error("k < 80/eps: use the learn-then-validate tester");
    }
}

double threshold_for(int k, double delta, double eps) {
    return (k - 1) * (delta / 2.0) * (1.0 + eps / 8.0);
}

std::size_t pool_size(std::size_t m, std::size_t ell, double delta) {
    const double tail = std::max(2.0 * static_cast<double>(ell) / delta,
                                 (8.0 / delta) * std::log(12.0 * static_cast<double>(m)));
    return m + ceil_count(tail);
}

std::size_t block_size(double delta) {
    return 1 + ceil_count(2.0 * std::sqrt(static_cast<double>(ceil_count(1.0 / delta))));
}

} // namespace

double derive_delta(double eps, int k) {
    require_eps(eps);
    if (k < 2) {
        throw std::domain_error("k must be at least 2");
    }
    return eps * eps / (32.0 * k);
}

bool noise_sensitivity_regime(double eps, int k) noexcept {
    return static_cast<double>(k) * eps >= 80.0 * (1.0 - 1e-12);
}

ActiveParams make_active_params(double eps, int k, int d, const TesterConstants& constants) {
    require_eps(eps);
    if (d < 1) {
        throw std::domain_error("graph dimension must be positive");
    }
    require_regime(eps, k);
    ActiveParams p;
    p.eps = eps;
    p.k = k;
    p.d = d;
    p.constants = constants;
    p.delta = derive_delta(eps, k);
    const double eps4 = std::pow(eps, 4);
    p.m = ceil_count(constants.c / eps4);
    p.ell = ceil_count(constants.c_prime * d / eps4 * std::log(constants.c_dprime / eps));
    if (p.m == 0 || p.ell == 0) {
        throw std::domain_error("constants give an empty anchor or neighbour set");
    }
    p.s = pool_size(p.m, p.ell, p.delta);
    p.q = p.m * (p.ell + 1);
    p.threshold = threshold_for(k, p.delta, eps);
    return p;
}

ConstantParams constant_params_for_delta(double eps, int k, double delta, double c) {
    require_eps(eps);
    if (!(delta > 0.0 && delta < 0.5)) {
        throw std::domain_error("delta must lie in (0, 1/2)");
    }
    ConstantParams p;
    p.eps = eps;
    p.k = k;
    p.c = c;
    p.delta = delta;
    p.m_prime = ceil_count(c / std::pow(eps, 4));
    if (p.m_prime == 0) {
        throw std::domain_error("constant c gives no pairs");
    }
    p.n = block_size(delta);
    p.s_prime = 4 * p.n * p.m_prime;
    p.q_active = 2 * p.m_prime;
    p.q_passive = p.s_prime;
    p.threshold = threshold_for(k, delta, eps);
    return p;
}

ConstantParams make_constant_params(double eps, int k, double c) {
    require_eps(eps);
    require_regime(eps, k);
    return constant_params_for_delta(eps, k, derive_delta(eps, k), c);
}

double sauer_graph_dimension_bound(int d, int k) {
    return 4.0 * d * k * std::log2(2.0 * std::numbers::e * k);
}

LearnValidateParams make_learn_validate_params(double eps, int k, int d,
                                               const TesterConstants& constants) {
    require_eps(eps);
    if (k < 1 || d < 1) {
        throw std::domain_error("k and d must be positive");
    }
    LearnValidateParams p;
    p.eps = eps;
    p.k = k;
    p.d = d;
    p.c1 = constants.c1;
    p.c2 = constants.c2;
    p.train_size = ceil_count(constants.c1 * d * k / eps * std::log(2.0 * std::numbers::e * k) *
                              std::log(1.0 / eps));
    p.validate_size = ceil_count(constants.c2 / eps);
    if (p.validate_size == 0) {
        throw std::domain_error("constant c2 gives no validation points");
    }
    p.agreement_threshold = (1.0 - eps / 2.0) * static_cast<double>(p.validate_size);
    p.graph_dimension_bound = ceil_count(sauer_graph_dimension_bound(d, k));
    return p;
}

PolyExactParams make_poly_exact_params(int p, double eps) {
    if (p < 0) {
        throw std::domain_error("degree must be nonnegative");
    }
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::domain_error("eps must lie in (0, 1)");
    }
    PolyExactParams out;
    out.p = p;
    out.eps = eps;
    out.fit_size = static_cast<std::size_t>(p) + 1;
    out.validate_size = ceil_count(std::log(3.0) / eps);
    out.s = out.fit_size + out.validate_size;
    return out;
}

TheoryBudget theory_budget(double eps, int k, int d) {
    require_eps(eps);
    require_regime(eps, k);
    const double ln12 = std::log(12.0);
    const double eps4 = std::pow(eps, 4);
    const double delta = derive_delta(eps, k);

    TheoryBudget b;
    b.c_active = 3.0 * ln12 * 33.0 * 33.0 * 65.0;
    b.m = ceil_count(b.c_active / eps4);
    const double target = eps4 / (65.0 * 68.0 * 33.0);
    auto deviation = [&](double ell) {
        return 4.0 * (d * std::log(2.0 * std::numbers::e * ell / d) + std::log(96.0 * b.m)) / ell;
    };
    double ell = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double next = std::ceil(4.0 * (d * std::log(2.0 * std::numbers::e * ell / d) +
                                             std::log(96.0 * b.m)) /
                                      target);
        if (next <= ell) {
            break;
        }
        ell = next;
    }
    while (deviation(ell) > target) {
        ell += 1.0;
    }
    b.ell = static_cast<std::size_t>(ell);
    b.s = pool_size(b.m, b.ell, delta);
    b.q = b.m * (b.ell + 1);

    b.c_constant = std::max({4.0 * std::log(6.0), 3.0 * ln12 * 64.0 * 65.0, 2.0 * ln12 * 256.0 * 65.0});
    b.m_prime = ceil_count(b.c_constant / eps4);
    b.s_prime = 4 * block_size(delta) * b.m_prime;
    return b;
}

} // namespace pwtest
