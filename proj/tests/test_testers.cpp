#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <cmath>

#include "pwtest/instances.hpp"
#include "pwtest/rng.hpp"
#include "pwtest/testers.hpp"
#include "support/oracles.hpp"

using namespace pwtest;


TEST(Fit, TruthIsAlwaysConsistent) {
    const BaseClass h = BaseClass::constants();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const PiecewiseFunction f = gen_in_class(h, 3, seed);
        Rng rng(seed + 1000);
        std::vector<ValuePoint> pts(200);
        for (auto& p : pts) {
            p.x = rng.uniform();
        }
        std::sort(pts.begin(), pts.end(), [](auto a, auto b) { return a.x < b.x; });
        for (auto& p : pts) {
            p.y = f(p.x);
        }
        const auto fit = fit_consistent_piecewise(pts, h, 3);
        ASSERT_TRUE(fit.has_value());
        EXPECT_LE(fit->piece_count(), 3u);
        for (const auto& p : pts) {
            EXPECT_EQ((*fit)(p.x), p.y);
        }
    }
}

TEST(Fit, AlternatingNeedsFourPieces) {
    const std::vector<ValuePoint> pts{{0.1, 0}, {0.2, 1}, {0.3, 0}, {0.4, 1}};
    EXPECT_FALSE(fit_consistent_piecewise(pts, BaseClass::constants(), 2).has_value());
    EXPECT_FALSE(fit_consistent_piecewise(pts, BaseClass::constants(), 3).has_value());
    const auto four = fit_consistent_piecewise(pts, BaseClass::constants(), 4);
    ASSERT_TRUE(four.has_value());
    EXPECT_EQ(four->breakpoints()[0], 0.15000000000000002);
}

TEST(Fit, RecoversQuadratic) {
    std::vector<ValuePoint> pts;
    for (double x : {0.1, 0.3, 0.45, 0.6, 0.9}) {
        pts.push_back({x, x * x});
    }
    const auto fit = fit_consistent_piecewise(pts, BaseClass::polynomials(2), 1);
    ASSERT_TRUE(fit.has_value());
    const auto& c = fit->pieces()[0].params;
    EXPECT_NEAR(c[0], 0.0, 1e-9);
    EXPECT_NEAR(c[1], 0.0, 1e-9);
    EXPECT_NEAR(c[2], 1.0, 1e-9);
}

TEST(Fit, ShiftedSine) {
    std::vector<ValuePoint> pts;
    for (double x : {0.1, 0.2, 0.4, 0.6, 0.8}) {
        pts.push_back({x, x <= 0.4 ? std::sin(x + 1.0) : std::sin(x + 2.5)});
    }
    EXPECT_FALSE(fit_consistent_piecewise(pts, BaseClass::shifted_sine(), 1).has_value());
    EXPECT_TRUE(fit_consistent_piecewise(pts, BaseClass::shifted_sine(), 2).has_value());
    pts.push_back({0.9, 1.5});
    EXPECT_FALSE(fit_consistent_piecewise(pts, BaseClass::shifted_sine(), 6).has_value());
}

TEST(Fit, RejectsDuplicateX) {
    const std::vector<ValuePoint> pts{{0.1, 0}, {0.1, 1}};
    EXPECT_THROW(fit_consistent_piecewise(pts, BaseClass::constants(), 2), std::invalid_argument);
}

TEST(Fit, MatchesExhaustiveSegmentation) {
    Rng rng(31);
    int found = 0, none = 0;
    for (int inst = 0; inst < 100; ++inst) {
        const bool lines = inst % 2 == 1;
        const std::size_t n = 1 + rng.below(10);
        const int k = 1 + static_cast<int>(rng.below(3));
        const int true_k = 1 + static_cast<int>(rng.below(4));
        std::vector<double> cuts(static_cast<std::size_t>(true_k) - 1);
        rng.fill_uniform(cuts);
        std::sort(cuts.begin(), cuts.end());
        std::vector<std::vector<double>> members;
        for (int i = 0; i < true_k; ++i) {
            members.push_back({static_cast<double>(rng.below(2)), lines ? static_cast<double>(rng.below(3)) : 0.0});
        }
        std::vector<ValuePoint> pts(n);
        for (auto& p : pts) {
            p.x = rng.uniform();
        }
        std::sort(pts.begin(), pts.end(), [](auto a, auto b) { return a.x < b.x; });
        for (auto& p : pts) {
            const auto piece = std::lower_bound(cuts.begin(), cuts.end(), p.x) - cuts.begin();
            const auto& c = members[static_cast<std::size_t>(piece)];
            p.y = c[0] + c[1] * p.x;
        }
        const BaseClass h = lines ? BaseClass::polynomials(1) : BaseClass::constants();
        const auto fit = fit_consistent_piecewise(pts, h, k);
        const bool expected = oracles::segmentation_exists(pts, k, lines);
        ASSERT_EQ(fit.has_value(), expected) << "instance " << inst;
        if (fit) {
            ++found;
            EXPECT_LE(fit->piece_count(), static_cast<std::size_t>(k));
            for (const auto& p : pts) {
                EXPECT_TRUE(h.equal((*fit)(p.x), p.y));
            }
        } else {
            ++none;
        }
    }
    // Both outcomes are exercised.
    EXPECT_GT(found, 10);
    EXPECT_GT(none, 10);
}

TEST(LearnValidate, BudgetAndVerdicts) {
    const LearnValidateParams p = make_learn_validate_params(0.2, 10, 1);
    const BaseClass h = BaseClass::constants();
    int accepts = 0;
    for (std::uint64_t t = 0; t < 20; ++t) {
        const auto f = gen_in_class(h, 10, t).as_target();
        TargetOracle o(f, p.budget(), p.budget(), t + 50);
        const TesterReport r = learn_validate_test(o, h, p);
        EXPECT_EQ(r.samples_used, p.train_size + p.validate_size);
        EXPECT_EQ(r.queries_used, p.train_size + p.validate_size);
        EXPECT_EQ(r.verdict == Verdict::Accept, r.statistic <= r.threshold);
        accepts += r.verdict == Verdict::Accept;
    }
    EXPECT_GE(accepts, 14);

    const auto [far, cert] = gen_alternating_far(10, 0.2, 1);
    TargetOracle o(far.as_target(), p.budget(), p.budget(), 3);
    const TesterReport r = learn_validate_test(o, h, p);
    EXPECT_EQ(r.verdict, Verdict::Reject);
    EXPECT_EQ(r.statistic, 1.0);
}

TEST(PolyExact, AcceptsCubicAndRejectsSine) {
    const Target cubic = [](double x) { return 3 * x * x * x - x + 2; };
    for (std::uint64_t t = 0; t < 30; ++t) {
        TargetOracle o(cubic, 9, 9, t);
        const TesterReport r = poly_exact_test(o, 3, 0.25);
        EXPECT_EQ(r.verdict, Verdict::Accept);
        EXPECT_EQ(r.samples_used, 9u);
        EXPECT_EQ(r.queries_used, 9u);
    }
    int rejects = 0;
    for (std::uint64_t t = 0; t < 30; ++t) {
        TargetOracle o(sine_probe(), 7, 7, t);
        rejects += poly_exact_test(o, 1, 0.25).verdict == Verdict::Reject;
    }
    EXPECT_GE(rejects, 20);
}

TEST(ActiveGeneral, QueryAccountingAndCoupling) {
    const ActiveParams p = make_active_params(0.4, 200, 1);
    const BaseClass h = BaseClass::constants();
    for (std::uint64_t t = 0; t < 4; ++t) {
        const auto f = gen_in_class(h, 200, t).as_target();
        TargetOracle o(f, p.s, p.query_budget(), t);
        const TesterReport r = active_test_general(o, h, p);
        EXPECT_EQ(r.samples_used, p.s);
        EXPECT_LE(r.queries_used, p.query_budget());
        if (!r.failure) {
            EXPECT_EQ(r.query_calls, p.m * (p.ell + 1));
            EXPECT_EQ(r.verdict == Verdict::Accept, r.statistic <= r.threshold);
        }
        TargetOracle o2(f, p.s, p.query_budget(), t);
        const TesterReport r2 = active_test_general(o2, h, p, QueryCounting::PerUse);
        EXPECT_EQ(r2.queries_used, p.m * (p.ell + 1));
        EXPECT_EQ(r2.statistic, r.statistic);
    }
}

TEST(ActiveGeneral, QueriesWholePoolWhenQExceedsS) {
    ActiveParams p = make_active_params(0.4, 200, 1);
    p.s = p.m + 300000;
    p.q = p.s + 1;
    TargetOracle o([](double) { return 0.0; }, p.s, p.query_budget(), 5);
    const TesterReport r = active_test_general(o, BaseClass::constants(), p);
    EXPECT_EQ(r.queries_used, p.s);
}

TEST(ConstantTester, ActiveModeUsesExactlyTwoLabelsPerPair) {
    const ConstantParams p = make_constant_params(0.4, 200);
    const auto f = gen_in_class(BaseClass::constants(), 200, 3).as_target();
    TargetOracle o(f, p.s_prime, p.q_active, 8);
    const TesterReport r = constant_test(o, p, LabelMode::Active);
    ASSERT_FALSE(r.failure.has_value());
    EXPECT_EQ(r.queries_used, 2 * p.m_prime);
    EXPECT_EQ(r.samples_used, p.s_prime);
    TargetOracle o2(f, p.s_prime, p.q_passive, 8);
    const TesterReport r2 = constant_test(o2, p, LabelMode::Passive);
    EXPECT_EQ(r2.queries_used, p.s_prime);
    EXPECT_EQ(r2.statistic, r.statistic);
}

TEST(Testers, DeterministicPerSeed) {
    const ConstantParams p = make_constant_params(0.4, 200);
    const auto f = gen_in_class(BaseClass::constants(), 200, 4).as_target();
    TargetOracle a(f, p.s_prime, p.q_active, 21);
    TargetOracle b(f, p.s_prime, p.q_active, 21);
    const TesterReport ra = constant_test(a, p, LabelMode::Active);
    const TesterReport rb = constant_test(b, p, LabelMode::Active);
    EXPECT_EQ(ra.statistic, rb.statistic);
    EXPECT_EQ(ra.verdict, rb.verdict);
    EXPECT_EQ(ra.queries_used, rb.queries_used);
}
