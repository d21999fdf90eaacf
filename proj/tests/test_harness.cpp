#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pwtest/harness.hpp"
#include "pwtest/serialize.hpp"

using namespace pwtest;

namespace {

RunConfig small_config() {
    RunConfig c;
    c.tester = TesterKind::ConstantActive;
    c.k = 200;
    c.eps = 0.4;
    c.trials = 12;
    c.workers = 3;
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(Harness, CsvHeaderIsStable) {
    EXPECT_EQ(csv_header(), "trial,verdict,statistic,threshold,samples,queries,failure");
    TrialRecord r;
    r.trial = 3;
    r.report.verdict = Verdict::Reject;
    r.report.statistic = 0.1;
    r.report.threshold = 0.25;
    r.report.samples_used = 10;
    r.report.queries_used = 4;
    r.report.failure = FailureEvent::InsufficientPairs;
    EXPECT_EQ(csv_row(r), "3,reject,0.10000000000000001,0.25,10,4,insufficient-pairs");
}

TEST(Harness, ByteIdenticalAcrossRunsAndWorkerCounts) {
    RunConfig c = small_config();
    const std::string a = to_csv(run(c).records);
    c.workers = 1;
    const std::string b = to_csv(run(c).records);
    EXPECT_EQ(a, b);
    c.seed = 43;
    EXPECT_NE(a, to_csv(run(c).records));
}

TEST(Harness, TrialsArePrefixStable) {
    RunConfig c = small_config();
    const auto few = run(c).records;
    c.trials = 20;
    const auto more = run(c).records;
    for (std::size_t t = 0; t < few.size(); ++t) {
        EXPECT_EQ(csv_row(few[t]), csv_row(more[t]));
    }
}

TEST(Harness, SummaryRates) {
    const RunResult r = run(small_config());
    const RunSummary& s = r.summary;
    EXPECT_EQ(s.trials, 12u);
    EXPECT_EQ(s.accepts + s.rejects + s.failures, 12u);
    if (s.accepts + s.rejects > 0) {
        EXPECT_DOUBLE_EQ(s.accept_rate + s.reject_rate, 1.0);
    }
    EXPECT_EQ(s.s, 64160u);
    EXPECT_EQ(s.q, 80u);
    EXPECT_LE(s.max_queries_used, s.q);
}

TEST(Harness, RoutesSmallKToLearnValidate) {
    RunConfig c = small_config();
    c.k = 10;
    c.eps = 0.2;
    const RunPlan p = plan_run(c);
    EXPECT_EQ(p.effective, TesterKind::LearnValidate);
    EXPECT_EQ(p.s, 327u);
    EXPECT_EQ(p.q, 327u);
}

TEST(Harness, QIdenticalAcrossK) {
    RunConfig c = small_config();
    c.tester = TesterKind::ActiveGeneral;
    std::vector<std::size_t> qs;
    for (int k : {200, 800, 3200}) {
        c.k = k;
        qs.push_back(plan_run(c).active->q);
    }
    EXPECT_EQ(qs[0], 1480u);
    EXPECT_EQ(qs[0], qs[1]);
    EXPECT_EQ(qs[1], qs[2]);
}

TEST(Harness, WritesFilesAndHonoursEnvOverride) {
    const auto dir = std::filesystem::temp_directory_path() / "pwtest_harness_test";
    std::filesystem::remove_all(dir);
    RunConfig c = small_config();
    c.output_dir = (dir / "cfg").string();
    c.name = "demo";
    ::setenv("PWTEST_OUTPUT_DIR", (dir / "env").string().c_str(), 1);
    const RunResult r = run(c);
    ::unsetenv("PWTEST_OUTPUT_DIR");
    EXPECT_FALSE(std::filesystem::exists(dir / "cfg"));
    const std::string csv = slurp(dir / "env" / "demo.csv");
    EXPECT_EQ(csv, to_csv(r.records));
    const auto summary = nlohmann::json::parse(slurp(dir / "env" / "demo_summary.json"));
    EXPECT_EQ(summary.at("trials").get<int>(), 12);
    EXPECT_EQ(summary.at("plan").at("m_prime").get<int>(), 40);
    std::filesystem::remove_all(dir);
}

TEST(Config, ParsesAndRejects) {
    const auto j = nlohmann::json::parse(R"({"tester": "active-general", "base": "poly1", "k": 400, "eps": 0.3,
        "c": 2, "trials": 5, "seed": 9, "query_counting": "per-use",
        "instance": {"kind": "random-partition-far", "n_prime": 1000}})");
    const RunConfig c = run_config_from_json(j);
    EXPECT_EQ(c.tester, TesterKind::ActiveGeneral);
    EXPECT_EQ(c.base, "poly1");
    EXPECT_EQ(c.k, 400);
    EXPECT_EQ(c.constants.c, 2.0);
    EXPECT_EQ(c.query_counting, QueryCounting::PerUse);
    EXPECT_EQ(c.instance.kind, InstanceKind::RandomPartitionFar);
    EXPECT_EQ(c.instance.n_prime, 1000u);

    EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"tester": "magic"})")), ConfigError);
    EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"colour": 1})")), ConfigError);
    EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"k": "many"})")), ConfigError);
    EXPECT_THROW(run_config_from_json(nlohmann::json::parse(R"({"c": -1})")), ConfigError);
    RunConfig bad = small_config();
    bad.base = "poly2";
    EXPECT_THROW(plan_run(bad), ConfigError);
    bad.base = "constants";
    bad.eps = 0.7;
    EXPECT_THROW(plan_run(bad), ConfigError);
}

TEST(Serialize, RoundTrips) {
    const BaseClass h = BaseClass::polynomials(1);
    const PiecewiseFunction f = gen_in_class(h, 4, 3);
    const StoredInstance back = instance_from_json(to_json(f, h));
    ASSERT_TRUE(back.piecewise.has_value());
    for (double x : {0.1, 0.35, 0.8}) {
        EXPECT_EQ((*back.piecewise)(x), f(x));
    }
    const auto [step, cert] = gen_alternating_far(2, 0.2, 0);
    const StoredInstance s = instance_from_json(nlohmann::json::parse(to_json(step, cert).dump()));
    ASSERT_TRUE(s.step.has_value());
    ASSERT_TRUE(s.certificate.has_value());
    EXPECT_EQ(s.certificate->distance, cert.distance);
    EXPECT_EQ(s.step->piece_count(), step.piece_count());
    EXPECT_THROW(instance_from_json(nlohmann::json::parse(R"({"type": "blob"})")), std::invalid_argument);
    EXPECT_THROW(instance_from_json(nlohmann::json::parse(R"({"type": "step"})")), std::invalid_argument);
}
