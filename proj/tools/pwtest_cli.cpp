// Command-line front end: test, sweep, ns, dist, params.
// Exit codes: 0 done, 1 run failure, 2 configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "pwtest/distance.hpp"
#include "pwtest/harness.hpp"
#include "pwtest/instances.hpp"
#include "pwtest/kernels.hpp"
#include "pwtest/ns.hpp"
#include "pwtest/oracle.hpp"
#include "pwtest/params.hpp"
#include "pwtest/serialize.hpp"

namespace {

using nlohmann::json;
using namespace pwtest;

// Flags shared by `test` and `sweep`; set values override the config file.
struct RunFlags {
    std::string config_path;
    std::optional<std::string> tester, base, instance, output_dir, name, query_counting;
    std::optional<int> k;
    std::optional<double> eps, c, c_prime, c_dprime, c1, c2;
    std::optional<std::size_t> trials, n_prime;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> workers;

    void attach(CLI::App& app) {
        app.add_option("--config", config_path, "JSON run config");
        app.add_option("--tester", tester,
                       "active-general | constant-active | constant-passive | learn-validate | poly-exact");
        app.add_option("--base", base, "constants | poly<p> | shifted-sine");
        app.add_option("--k", k, "number of pieces");
        app.add_option("--eps", eps, "distance parameter");
        app.add_option("--c", c, "anchor-count constant (default 1)");
        app.add_option("--c-prime", c_prime, "probe-count constant (default 1)");
        app.add_option("--c-dprime", c_dprime, "probe-count log constant (default 1)");
        app.add_option("--c1", c1, "learn-validate training constant (default 1)");
        app.add_option("--c2", c2, "learn-validate validation constant (default 1)");
        app.add_option("--trials", trials, "number of independent trials");
        app.add_option("--seed", seed, "master seed (default 42)");
        app.add_option("--instance", instance, "in-class | alternating-far | random-partition-far | sine-probe");
        app.add_option("--n-prime", n_prime, "random-partition piece count (default 64k)");
        app.add_option("--workers", workers, "concurrent trials (0 = all cores)");
        app.add_option("--out", output_dir, "output directory (PWTEST_OUTPUT_DIR overrides)");
        app.add_option("--name", name, "output file stem");
        app.add_option("--query-counting", query_counting, "distinct | per-use");
    }

    RunConfig resolve() const {
        json j = json::object();
        if (!config_path.empty()) {
            j = run_config_to_json(load_run_config(config_path));
        }
        auto set = [&j](const char* key, const auto& v) {
            if (v) {
                j[key] = *v;
            }
        };
        set("tester", tester);
        set("base", base);
        set("k", k);
        set("eps", eps);
        set("c", c);
        set("c_prime", c_prime);
        set("c_dprime", c_dprime);
        set("c1", c1);
        set("c2", c2);
        set("trials", trials);
        set("seed", seed);
        set("workers", workers);
        set("output_dir", output_dir);
        set("name", name);
        set("query_counting", query_counting);
        if (instance) {
            j["instance"]["kind"] = *instance;
        }
        if (n_prime) {
            j["instance"]["n_prime"] = *n_prime;
        }
        return run_config_from_json(j);
    }

    static json run_config_to_json(const RunConfig& c) {
        return {{"tester", std::string(to_string(c.tester))},
                {"base", c.base},
                {"k", c.k},
                {"eps", c.eps},
                {"c", c.constants.c},
                {"c_prime", c.constants.c_prime},
                {"c_dprime", c.constants.c_dprime},
                {"c1", c.constants.c1},
                {"c2", c.constants.c2},
                {"trials", c.trials},
                {"seed", c.seed},
                {"workers", c.workers},
                {"output_dir", c.output_dir},
                {"name", c.name},
                {"query_counting", c.query_counting == QueryCounting::Distinct ? "distinct" : "per-use"},
                {"instance",
                 {{"kind", std::string(to_string(c.instance.kind))},
                  {"n_prime", c.instance.n_prime},
                  {"frequency", c.instance.frequency},
                  {"amplitude", c.instance.amplitude},
                  {"grid_size", c.instance.grid_size}}}};
    }
};

int cmd_test(const RunFlags& flags) {
    const RunConfig config = flags.resolve();
    const RunResult result = run(config);
    json out = to_json(result.summary);
    out["plan"] = to_json(plan_run(config));
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_sweep(const RunFlags& flags, const std::vector<int>& ks, const std::vector<double>& epss) {
    const RunConfig base = flags.resolve();
    const std::vector<int> k_list = ks.empty() ? std::vector<int>{base.k} : ks;
    const std::vector<double> eps_list = epss.empty() ? std::vector<double>{base.eps} : epss;
    std::cout << "k,eps,tester,effective_tester,s,q,threshold,accept_rate,reject_rate,failure_rate\n";
    for (double eps : eps_list) {
        for (int k : k_list) {
            RunConfig config = base;
            config.k = k;
            config.eps = eps;
            config.name = base.name + "_k" + std::to_string(k) + "_eps" + format_double(eps);
            const RunPlan plan = plan_run(config);
            std::string rates = ",,";
            if (config.trials > 0) {
                const RunSummary s = run(config).summary;
                rates = format_double(s.accept_rate) + "," + format_double(s.reject_rate) + "," +
                        format_double(s.failure_rate);
            }
            std::cout << k << ',' << format_double(eps) << ',' << to_string(plan.requested) << ','
                      << to_string(plan.effective) << ',' << plan.s << ',' << plan.q << ','
                      << format_double(plan.threshold) << ',' << rates << '\n';
        }
    }
    return 0;
}

struct NsFlags {
    std::string base = "constants";
    std::string instance_file;
    int k = 2;
    double delta = 0.01;
    std::size_t anchors = 100000;
    std::size_t probes = 64;
    std::uint64_t seed = 42;
    std::size_t pair_trials = 0;
    double eps = 0.4;
};

int cmd_ns(const NsFlags& f) {
    const auto h = parse_base_class(f.base);
    if (!h) {
        throw ConfigError("unknown base class '" + f.base + "'");
    }
    if (!(f.delta > 0.0 && f.delta < 0.5)) {
        throw ConfigError("delta must lie in (0, 1/2)");
    }
    Target target;
    json instance;
    if (!f.instance_file.empty()) {
        const StoredInstance stored = load_instance(f.instance_file);
        target = stored.target();
        instance = {{"file", f.instance_file}, {"type", stored.type}};
    } else {
        const PiecewiseFunction pf = gen_in_class(*h, f.k, substream_seed(f.seed, 1));
        target = pf.as_target();
        instance = to_json(pf, *h);
    }
    const NsEstimate truth = ns_true_mc(target, *h, f.delta, f.anchors, substream_seed(f.seed, 2), f.probes);
    json out{{"delta", f.delta},
             {"base", h->name()},
             {"instance", instance},
             {"ns_true", {{"value", truth.value}, {"std_error", truth.std_error}, {"anchors", truth.used}}},
             {"in_class_bound", (f.k - 1) * f.delta / 2.0}};
    if (f.pair_trials > 0) {
        const ConstantParams params = constant_params_for_delta(f.eps, f.k, f.delta);
        double sum = 0.0;
        double sum_sq = 0.0;
        std::size_t failures = 0;
        for (std::size_t t = 0; t < f.pair_trials; ++t) {
            TargetOracle oracle(target, params.s_prime, params.q_active, substream_seed(f.seed, 100 + t));
            const PairsEstimate e = ns_hat_pairs(oracle, params, LabelMode::Active, h->equality());
            failures += e.failure ? 1 : 0;
            sum += e.estimate.value;
            sum_sq += e.estimate.value * e.estimate.value;
        }
        const double n = static_cast<double>(f.pair_trials);
        const double mean = sum / n;
        const double var = f.pair_trials > 1 ? (sum_sq - n * mean * mean) / (n - 1.0) : 0.0;
        out["ns_hat_pairs"] = {{"mean", mean},
                               {"std_error", std::sqrt(std::max(var, 0.0) / n)},
                               {"trials", f.pair_trials},
                               {"failures", failures},
                               {"m_prime", params.m_prime},
                               {"n", params.n}};
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_dist(const std::string& path, int k, std::size_t grid, const std::string& base_flag) {
    if (k < 1) {
        throw ConfigError("k must be at least 1");
    }
    const StoredInstance stored = load_instance(path);
    DistanceCertificate cert;
    cert.instance_id = path;
    cert.k = k;
    if (stored.step) {
        cert.distance = dist_step_to_piecewise_const(*stored.step, k);
        cert.method = DistanceMethod::DpExact;
    } else {
        std::optional<BaseClass> h = stored.base;
        if (!base_flag.empty()) {
            h = parse_base_class(base_flag);
        }
        if (!h) {
            throw ConfigError("a base class is needed (--base) for this instance type");
        }
        if (grid < 4 * static_cast<std::size_t>(k)) {
            throw ConfigError("grid must be at least 4k");
        }
        cert.distance = dist_grid_general(stored.target(), *h, k, grid);
        cert.method = DistanceMethod::GridApprox;
        cert.grid_size = grid;
    }
    std::cout << to_json(cert).dump(2) << '\n';
    return 0;
}

int cmd_params(double eps, int k, std::optional<int> d_flag, const std::string& base, const TesterConstants& tc,
               bool theory) {
    const auto h = parse_base_class(base);
    if (!h) {
        throw ConfigError("unknown base class '" + base + "'");
    }
    const int d = d_flag.value_or(h->graph_dimension());
    json out{{"eps", eps}, {"k", k}, {"d", d}, {"isa", std::string(kernels::isa_name(kernels::active_isa()))}};
    try {
        out["delta"] = derive_delta(eps, k);
        if (noise_sensitivity_regime(eps, k)) {
            const ActiveParams a = make_active_params(eps, k, d, tc);
            out["active"] = {{"m", a.m}, {"ell", a.ell}, {"s", a.s}, {"q", a.q}, {"threshold", a.threshold}};
            const ConstantParams c = make_constant_params(eps, k, tc.c);
            out["constant"] = {{"m_prime", c.m_prime}, {"n", c.n},           {"s_prime", c.s_prime},
                               {"q_active", c.q_active}, {"q_passive", c.q_passive}, {"threshold", c.threshold}};
            if (theory) {
                const TheoryBudget b = theory_budget(eps, k, d);
                out["theory"] = {{"c_active", b.c_active}, {"m", b.m},           {"ell", b.ell},
                                 {"s", b.s},               {"q", b.q},           {"c_constant", b.c_constant},
                                 {"m_prime", b.m_prime},   {"s_prime", b.s_prime}};
            }
        } else {
            out["routed_to"] = "learn-validate";
        }
        const LearnValidateParams lv = make_learn_validate_params(eps, k, d, tc);
        out["learn_validate"] = {{"train_size", lv.train_size},
                                 {"validate_size", lv.validate_size},
                                 {"agreement_threshold", lv.agreement_threshold},
                                 {"graph_dimension_bound", lv.graph_dimension_bound}};
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Property testers for k-piecewise functions"};
    app.require_subcommand(1);

    RunFlags test_flags;
    auto* test = app.add_subcommand("test", "run one tester configuration for a number of trials");
    test_flags.attach(*test);

    RunFlags sweep_flags;
    std::vector<int> sweep_ks;
    std::vector<double> sweep_eps;
    auto* sweep = app.add_subcommand("sweep", "grid over k and/or eps; --trials 0 prints budgets only");
    sweep_flags.attach(*sweep);
    sweep->add_option("--ks", sweep_ks, "k values")->delimiter(',');
    sweep->add_option("--eps-list", sweep_eps, "eps values")->delimiter(',');

    NsFlags ns_flags;
    auto* ns = app.add_subcommand("ns", "ground-truth noise sensitivity, optionally against the pair estimator");
    ns->add_option("--base", ns_flags.base);
    ns->add_option("--instance-file", ns_flags.instance_file, "JSON instance (default: random in-class)");
    ns->add_option("--k", ns_flags.k);
    ns->add_option("--delta", ns_flags.delta);
    ns->add_option("--anchors", ns_flags.anchors);
    ns->add_option("--probes", ns_flags.probes, "inner probes per anchor");
    ns->add_option("--seed", ns_flags.seed);
    ns->add_option("--pair-trials", ns_flags.pair_trials, "also average the pair estimator over this many runs");
    ns->add_option("--eps", ns_flags.eps, "eps for the pair estimator's m'");

    std::string dist_path;
    int dist_k = 1;
    std::size_t dist_grid = 4096;
    std::string dist_base;
    auto* dist = app.add_subcommand("dist", "distance of a serialized instance to F_k(H)");
    dist->add_option("--instance", dist_path, "JSON instance file")->required();
    dist->add_option("--k", dist_k);
    dist->add_option("--grid", dist_grid, "grid size for non-step instances");
    dist->add_option("--base", dist_base, "base class for non-step instances");

    double p_eps = 0.4;
    int p_k = 200;
    std::optional<int> p_d;
    std::string p_base = "constants";
    TesterConstants p_tc;
    bool p_theory = false;
    auto* params = app.add_subcommand("params", "print derived budgets");
    params->add_option("--eps", p_eps);
    params->add_option("--k", p_k);
    params->add_option("--d", p_d, "graph dimension (default from --base)");
    params->add_option("--base", p_base);
    params->add_option("--c", p_tc.c, "anchor-count constant (default 1)");
    params->add_option("--c-prime", p_tc.c_prime, "probe-count constant (default 1)");
    params->add_option("--c-dprime", p_tc.c_dprime, "probe-count log constant (default 1)");
    params->add_option("--c1", p_tc.c1, "learn-validate training constant (default 1)");
    params->add_option("--c2", p_tc.c2, "learn-validate validation constant (default 1)");
    params->add_flag("--theory", p_theory, "also print concentration-scale budgets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*test) {
            return cmd_test(test_flags);
        }
        if (*sweep) {
            return cmd_sweep(sweep_flags, sweep_ks, sweep_eps);
        }
        if (*ns) {
            return cmd_ns(ns_flags);
        }
        if (*dist) {
            return cmd_dist(dist_path, dist_k, dist_grid, dist_base);
        }
        return cmd_params(p_eps, p_k, p_d, p_base, p_tc, p_theory);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
