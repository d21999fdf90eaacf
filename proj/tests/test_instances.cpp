#include <gtest/gtest.h>

#include <algorithm>

#include "pwtest/instances.hpp"

using namespace pwtest;

TEST(InClass, SinglePieceAndDistinctNeighbours) {
    const PiecewiseFunction one = gen_in_class(BaseClass::constants(), 1, 3);
    EXPECT_EQ(one.piece_count(), 1u);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const PiecewiseFunction f = gen_in_class(BaseClass::constants(), 50, seed);
        ASSERT_EQ(f.piece_count(), 50u);
        for (std::size_t i = 1; i < f.piece_count(); ++i) {
            ASSERT_NE(f.pieces()[i].params[0], f.pieces()[i - 1].params[0]);
            const double v = f.pieces()[i].params[0];
            EXPECT_TRUE(v == 0 || v == 1 || v == 2 || v == 3);
        }
        EXPECT_TRUE(std::is_sorted(f.breakpoints().begin(), f.breakpoints().end()));
    }
    EXPECT_THROW(gen_in_class(BaseClass::constants(), 0, 1), std::invalid_argument);
}

TEST(InClass, DeterministicPerSeed) {
    const auto a = gen_in_class(BaseClass::polynomials(2), 5, 17);
    const auto b = gen_in_class(BaseClass::polynomials(2), 5, 17);
    EXPECT_TRUE(std::equal(a.breakpoints().begin(), a.breakpoints().end(), b.breakpoints().begin()));
    for (std::size_t i = 0; i < a.piece_count(); ++i) {
        EXPECT_EQ(a.pieces()[i], b.pieces()[i]);
        for (double c : a.pieces()[i].params) {
            EXPECT_GT(c, -1.0);
            EXPECT_LT(c, 1.0);
        }
    }
}

TEST(AlternatingFar, SmallCase) {
    const auto [f, cert] = gen_alternating_far(2, 0.2, 1);
    EXPECT_EQ(f.piece_count(), 16u);
    EXPECT_DOUBLE_EQ(cert.distance, 7.0 / 16.0);
    EXPECT_EQ(cert.method, DistanceMethod::DpExact);
    EXPECT_EQ(cert.k, 2);
}

TEST(AlternatingFar, TerminatesWithinBound) {
    const auto [f, cert] = gen_alternating_far(200, 0.4, 1);
    EXPECT_LE(f.piece_count(), 8u * 200u * 16u);
    EXPECT_GE(cert.distance, 0.4);
    EXPECT_EQ(f.piece_count(), 1600u);
    for (double eps : {0.05, 0.1, 0.2, 0.24}) {
        for (int k : {1, 3, 10}) {
            EXPECT_GE(gen_alternating_far(k, eps, 2).second.distance, eps);
        }
    }
    EXPECT_THROW(gen_alternating_far(3, 0.5, 1), std::domain_error);
    EXPECT_THROW(gen_alternating_far(3, 0.0, 1), std::domain_error);
}

TEST(RandomPartitionFar, SpotValueAndDeterminism) {
    const auto [f, cert] = gen_random_partition_far(2, 128, 0.3, 5);
    EXPECT_EQ(f.piece_count(), 128u);
    EXPECT_GE(cert.distance, 0.3);
    EXPECT_LE(cert.distance, 0.5);
    const auto again = gen_random_partition_far(2, 128, 0.3, 5);
    EXPECT_EQ(again.second.distance, cert.distance);
    EXPECT_TRUE(std::equal(f.values().begin(), f.values().end(), again.first.values().begin()));
    EXPECT_THROW(gen_random_partition_far(4, 31, 0.1, 1), std::domain_error);
    EXPECT_THROW(gen_random_partition_far(2, 16, 0.49, 1, 3), std::runtime_error);
}

TEST(RandomPartitionFar, QuarterDistanceAtSixtyFourK) {
    int ok = 0;
    int total = 0;
    for (int k = 1; k <= 8; ++k) {
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            // eps = 0 accepts the first draw; only the distance is inspected.
            const auto cert = gen_random_partition_far(k, 64 * static_cast<std::size_t>(k), 0.0, seed).second;
            ok += cert.distance >= 0.25;
            ++total;
        }
    }
    EXPECT_GE(static_cast<double>(ok) / total, 0.95);
}

TEST(MakeInstance, GatesCertificates) {
    InstanceSpec spec;
    spec.kind = InstanceKind::RandomPartitionFar;
    spec.k = 200;
    spec.eps = 0.4;
    spec.n_prime = 25600;
    const Instance inst = make_instance(spec);
    ASSERT_TRUE(inst.certificate.has_value());
    EXPECT_GE(inst.certificate->distance, 0.4);
    spec.n_prime = 0; // 64k does not reach 0.4 at k = 200
    EXPECT_THROW(make_instance(spec), std::runtime_error);

    InstanceSpec sine;
    sine.kind = InstanceKind::SineProbe;
    sine.base = "poly1";
    sine.k = 1;
    sine.eps = 0.25;
    sine.grid_size = 512;
    const Instance s = make_instance(sine);
    EXPECT_EQ(s.certificate->method, DistanceMethod::GridApprox);
    EXPECT_EQ(*s.certificate->grid_size, 512u);
    EXPECT_EQ(parse_instance_kind("sine-probe"), InstanceKind::SineProbe);
}
