#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "pwtest/params.hpp"

using namespace pwtest;

TEST(Params, DeriveDelta) {
    EXPECT_NEAR(derive_delta(0.2, 100), 1.25e-5, 1e-20);
    EXPECT_NEAR(derive_delta(0.4, 200), 2.5e-5, 1e-20);
    // 0.16 / 64.
    EXPECT_NEAR(derive_delta(0.4, 2), 2.5e-3, 1e-18);
    EXPECT_THROW(derive_delta(0.5, 10), std::domain_error);
    EXPECT_THROW(derive_delta(0.0, 10), std::domain_error);
    EXPECT_THROW(derive_delta(0.2, 1), std::domain_error);
}

TEST(Params, ActiveFormulas) {
    const ActiveParams p = make_active_params(0.4, 200, 1);
    EXPECT_EQ(p.m, 40u);
    EXPECT_EQ(p.ell, 36u);
    EXPECT_EQ(p.q, 1480u);
    // s = m + ceil(max(2*36/2.5e-5, (8/2.5e-5) ln 480)) = 40 + 2,880,000.
    EXPECT_EQ(p.s, 2880040u);
    EXPECT_EQ(p.query_budget(), 1480u);
    EXPECT_DOUBLE_EQ(p.threshold, 199 * (2.5e-5 / 2) * 1.05);

    const ActiveParams p2 = make_active_params(0.4, 200, 2);
    EXPECT_EQ(p2.ell, 72u);
    EXPECT_EQ(p2.q, 40u * 73u);
}

TEST(Params, ActiveQueryCountIsIndependentOfK) {
    for (int d : {1, 2, 3}) {
        const std::size_t q = make_active_params(0.4, 200, d).q;
        EXPECT_EQ(make_active_params(0.4, 800, d).q, q);
        EXPECT_EQ(make_active_params(0.4, 3200, d).q, q);
    }
}

TEST(Params, ActiveRegime) {
    EXPECT_TRUE(noise_sensitivity_regime(0.4, 200));
    EXPECT_FALSE(noise_sensitivity_regime(0.4, 199));
    EXPECT_TRUE(noise_sensitivity_regime(0.2, 400));
    EXPECT_THROW(make_active_params(0.2, 10, 1), std::domain_error);
    EXPECT_THROW(make_constant_params(0.2, 10), std::domain_error);
}

TEST(Params, ConstantFormulas) {
    const ConstantParams p = make_constant_params(0.4, 200);
    EXPECT_EQ(p.m_prime, 40u);
    EXPECT_EQ(p.n, 401u); // 1 + ceil(2 sqrt(40000))
    EXPECT_EQ(p.s_prime, 4u * 401u * 40u);
    EXPECT_EQ(p.q_active, 80u);
    EXPECT_EQ(p.q_passive, p.s_prime);
    EXPECT_EQ(p.blocks(), 160u);

    const ConstantParams p4 = make_constant_params(0.4, 800);
    EXPECT_EQ(p4.n, 801u);
    const double ratio = static_cast<double>(p4.s_prime) / static_cast<double>(p.s_prime);
    EXPECT_GE(ratio, 1.9);
    EXPECT_LE(ratio, 2.1);

    const ConstantParams pd = constant_params_for_delta(0.4, 2, 0.01);
    EXPECT_EQ(pd.n, 21u);
}

TEST(Params, LearnValidate) {
    // Independent evaluation of ceil(c1 d k / eps ln(2ek) ln(1/eps)).
    const double train = 1.0 * 10 / 0.2 * std::log(2 * std::numbers::e * 10) * std::log(5.0);
    const LearnValidateParams p = make_learn_validate_params(0.2, 10, 1);
    EXPECT_EQ(p.train_size, static_cast<std::size_t>(std::ceil(train)));
    EXPECT_EQ(p.train_size, 322u);
    EXPECT_EQ(p.validate_size, 5u);
    EXPECT_DOUBLE_EQ(p.agreement_threshold, 0.9 * 5);
    EXPECT_EQ(p.graph_dimension_bound, 231u);
    // 40 * log2(20 e) = 230.58...
    EXPECT_NEAR(sauer_graph_dimension_bound(1, 10), 40 * std::log2(20 * std::numbers::e), 1e-12);
    EXPECT_GT(sauer_graph_dimension_bound(1, 10), 230.0);
    EXPECT_EQ(p.budget(), 327u);
}

TEST(Params, PolyExact) {
    const PolyExactParams p = make_poly_exact_params(3, 0.25);
    EXPECT_EQ(p.fit_size, 4u);
    EXPECT_EQ(p.validate_size, 5u);
    EXPECT_EQ(p.s, 9u);
    EXPECT_EQ(make_poly_exact_params(1, 0.25).s, 7u);
}

TEST(Params, TheoryBudgetsDominatePractical) {
    const TheoryBudget b = theory_budget(0.4, 200, 1);
    const ActiveParams p = make_active_params(0.4, 200, 1);
    EXPECT_GT(b.m, p.m);
    EXPECT_GT(b.ell, p.ell);
    EXPECT_GT(b.s, p.s);
    EXPECT_GT(b.m_prime, 40u);
    // ell satisfies its defining inequality and is the least such value.
    const double target = std::pow(0.4, 4) / (65.0 * 68.0 * 33.0);
    auto dev = [&](double ell) {
        return 4.0 * (std::log(2.0 * std::numbers::e * ell) + std::log(96.0 * b.m)) / ell;
    };
    EXPECT_LE(dev(static_cast<double>(b.ell)), target);
    EXPECT_GT(dev(static_cast<double>(b.ell - 1)), target);
}
