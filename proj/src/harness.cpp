#include "pwtest/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <thread>

#include "pwtest/oracle.hpp"
#include "pwtest/rng.hpp"

namespace pwtest {

using nlohmann::json;

std::string_view to_string(TesterKind t) noexcept {
    switch (t) {
    case TesterKind::ActiveGeneral:
        return "active-general";
    case TesterKind::ConstantActive:
        return "constant-active";
    case TesterKind::LearnValidate:
        return "learn-validate";
    case TesterKind::PolyExact:
        return "poly-exact";
    case TesterKind::ConstantPassive:
        break;
    }
    return "constant-passive";
}

std::optional<TesterKind> parse_tester_kind(std::string_view s) noexcept {
    for (TesterKind t : {TesterKind::ActiveGeneral, TesterKind::ConstantActive, TesterKind::ConstantPassive,
                         TesterKind::LearnValidate, TesterKind::PolyExact}) {
        if (to_string(t) == s) {
            return t;
        }
    }
    return std::nullopt;
}

namespace {

BaseClass base_or_throw(const std::string& name) {
    auto h = parse_base_class(name);
    if (!h) {
        throw ConfigError("unknown base class '" + name + "'");
    }
    return *h;
}

} // namespace

RunPlan plan_run(const RunConfig& config) {
    const BaseClass h = base_or_throw(config.base);
    RunPlan plan;
    plan.requested = config.tester;
    plan.effective = config.tester;
    try {
        const bool ns_tester = config.tester == TesterKind::ActiveGeneral ||
                               config.tester == TesterKind::ConstantActive ||
                               config.tester == TesterKind::ConstantPassive;
        if (ns_tester && !noise_sensitivity_regime(config.eps, config.k)) {
            plan.effective = TesterKind::LearnValidate;
        }
        switch (plan.effective) {
        case TesterKind::ActiveGeneral: {
            plan.active = make_active_params(config.eps, config.k, h.graph_dimension(), config.constants);
            plan.s = plan.active->s;
            plan.q = plan.active->query_budget();
            plan.threshold = plan.active->threshold;
            break;
        }
        case TesterKind::ConstantActive:
        case TesterKind::ConstantPassive: {
            if (h.kind() != BaseKind::Constants) {
                throw ConfigError("the pairing tester needs base 'constants'");
            }
            plan.constant = make_constant_params(config.eps, config.k, config.constants.c);
            plan.s = plan.constant->s_prime;
            plan.q = plan.effective == TesterKind::ConstantActive ? plan.constant->q_active
                                                                  : plan.constant->q_passive;
            plan.threshold = plan.constant->threshold;
            break;
        }
        case TesterKind::LearnValidate: {
            plan.learn_validate =
                make_learn_validate_params(config.eps, config.k, h.graph_dimension(), config.constants);
            plan.s = plan.learn_validate->budget();
            plan.q = plan.s;
            plan.threshold = config.eps / 2.0;
            break;
        }
        case TesterKind::PolyExact: {
            if (h.kind() == BaseKind::ShiftedSine) {
                throw ConfigError("poly-exact needs a polynomial or constant base");
            }
            plan.poly_exact = make_poly_exact_params(h.degree(), config.eps);
            plan.s = plan.poly_exact->s;
            plan.q = plan.s;
            plan.threshold = 0.0;
            break;
        }
        }
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
    return plan;
}

namespace {

TesterReport run_trial(const RunConfig& config, const RunPlan& plan, const BaseClass& h,
                       const Target& target, std::uint64_t oracle_seed) {
    TargetOracle oracle(target, plan.s, plan.q, oracle_seed);
    switch (plan.effective) {
    case TesterKind::ActiveGeneral:
        return active_test_general(oracle, h, *plan.active, config.query_counting);
    case TesterKind::ConstantActive:
        return constant_test(oracle, *plan.constant, LabelMode::Active, h.equality());
    case TesterKind::ConstantPassive:
        return constant_test(oracle, *plan.constant, LabelMode::Passive, h.equality());
    case TesterKind::LearnValidate:
        return learn_validate_test(oracle, h, *plan.learn_validate);
    case TesterKind::PolyExact:
        break;
    }
    return poly_exact_test(oracle, plan.poly_exact->p, plan.poly_exact->eps, h.equality());
}

std::string output_directory(const RunConfig& config) {
    if (const char* env = std::getenv("PWTEST_OUTPUT_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return config.output_dir;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

} // namespace

RunResult run(const RunConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    const RunPlan plan = plan_run(config);
    const BaseClass h = base_or_throw(config.base);

    InstanceSpec spec = config.instance;
    spec.base = config.base;
    spec.k = config.k;
    spec.eps = config.eps;
    // The sine probe has no random content; certify it once.
    std::optional<Instance> shared;
    if (spec.kind == InstanceKind::SineProbe) {
        shared = make_instance(spec);
    }

    RunResult result;
    result.records.resize(config.trials);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&]() {
        for (std::size_t t = next++; t < config.trials; t = next++) {
            try {
                const std::uint64_t trial_seed = substream_seed(config.seed, t);
                Target target;
                if (shared) {
                    target = shared->target;
                } else {
                    InstanceSpec trial_spec = spec;
                    trial_spec.seed = substream_seed(trial_seed, 1);
                    target = make_instance(trial_spec).target;
                }
                TesterReport report = run_trial(config, plan, h, target, substream_seed(trial_seed, 2));
                if (report.samples_used > plan.s || report.queries_used > plan.q) {
                    throw std::logic_error("trial exceeded its declared budget");
                }
                result.records[t] = {t, std::move(report)};
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = config.trials;
            }
        }
    };
    unsigned workers = config.workers ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(config.trials, 1)));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }

    RunSummary& s = result.summary;
    s.tester = std::string(to_string(plan.requested));
    s.effective_tester = std::string(to_string(plan.effective));
    s.trials = config.trials;
    s.threshold = plan.threshold;
    s.s = plan.s;
    s.q = plan.q;
    double total = 0.0;
    for (const TrialRecord& r : result.records) {
        total += r.report.statistic;
        s.max_samples_used = std::max(s.max_samples_used, r.report.samples_used);
        s.max_queries_used = std::max(s.max_queries_used, r.report.queries_used);
        if (r.report.failure) {
            ++s.failures;
        } else if (r.report.verdict == Verdict::Accept) {
            ++s.accepts;
        } else {
            ++s.rejects;
        }
    }
    const std::size_t decided = s.accepts + s.rejects;
    if (decided > 0) {
        s.accept_rate = static_cast<double>(s.accepts) / static_cast<double>(decided);
        s.reject_rate = static_cast<double>(s.rejects) / static_cast<double>(decided);
    }
    if (s.trials > 0) {
        s.failure_rate = static_cast<double>(s.failures) / static_cast<double>(s.trials);
        s.mean_statistic = total / static_cast<double>(s.trials);
    }
    s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    if (const std::string dir = output_directory(config); !dir.empty()) {
        const std::filesystem::path base(dir);
        std::filesystem::create_directories(base);
        write_file(base / (config.name + ".csv"), to_csv(result.records));
        json summary = to_json(s);
        summary["plan"] = to_json(plan);
        write_file(base / (config.name + "_summary.json"), summary.dump(2) + "\n");
    }
    return result;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string_view csv_header() noexcept { return "trial,verdict,statistic,threshold,samples,queries,failure"; }

std::string csv_row(const TrialRecord& r) {
    std::string row = std::to_string(r.trial);
    row += ',';
    row += to_string(r.report.verdict);
    row += ',';
    row += format_double(r.report.statistic);
    row += ',';
    row += format_double(r.report.threshold);
    row += ',';
    row += std::to_string(r.report.samples_used);
    row += ',';
    row += std::to_string(r.report.queries_used);
    row += ',';
    if (r.report.failure) {
        row += to_string(*r.report.failure);
    }
    return row;
}

std::string to_csv(const std::vector<TrialRecord>& records) {
    std::string out(csv_header());
    out += '\n';
    for (const TrialRecord& r : records) {
        out += csv_row(r);
        out += '\n';
    }
    return out;
}

json to_json(const RunSummary& s) {
    return {{"tester", s.tester},
            {"effective_tester", s.effective_tester},
            {"trials", s.trials},
            {"accepts", s.accepts},
            {"rejects", s.rejects},
            {"failures", s.failures},
            {"accept_rate", s.accept_rate},
            {"reject_rate", s.reject_rate},
            {"failure_rate", s.failure_rate},
            {"mean_statistic", s.mean_statistic},
            {"threshold", s.threshold},
            {"s", s.s},
            {"q", s.q},
            {"max_samples_used", s.max_samples_used},
            {"max_queries_used", s.max_queries_used},
            {"wall_seconds", s.wall_seconds}};
}

json to_json(const RunPlan& p) {
    json j{{"tester", std::string(to_string(p.requested))},
           {"effective_tester", std::string(to_string(p.effective))},
           {"s", p.s},
           {"q", p.q},
           {"threshold", p.threshold}};
    if (p.active) {
        j["delta"] = p.active->delta;
        j["m"] = p.active->m;
        j["ell"] = p.active->ell;
        j["q_formula"] = p.active->q;
    }
    if (p.constant) {
        j["delta"] = p.constant->delta;
        j["m_prime"] = p.constant->m_prime;
        j["n"] = p.constant->n;
        j["s_prime"] = p.constant->s_prime;
        j["q_active"] = p.constant->q_active;
        j["q_passive"] = p.constant->q_passive;
    }
    if (p.learn_validate) {
        j["train_size"] = p.learn_validate->train_size;
        j["validate_size"] = p.learn_validate->validate_size;
        j["agreement_threshold"] = p.learn_validate->agreement_threshold;
        j["graph_dimension_bound"] = p.learn_validate->graph_dimension_bound;
    }
    if (p.poly_exact) {
        j["fit_size"] = p.poly_exact->fit_size;
        j["validate_size"] = p.poly_exact->validate_size;
    }
    return j;
}

namespace {

template <class T>
T get_field(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config field '") + key + "' has the wrong type");
    }
}

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) {
        throw ConfigError(where + " must be a JSON object");
    }
    for (const auto& item : j.items()) {
        if (!allowed.contains(item.key())) {
            throw ConfigError("unknown " + where + " field '" + item.key() + "'");
        }
    }
}

} // namespace

RunConfig run_config_from_json(const json& j) {
    check_keys(j,
               {"tester", "base", "k", "eps", "c", "c_prime", "c_dprime", "c1", "c2", "trials", "seed",
                "workers", "output_dir", "name", "query_counting", "instance"},
               "config");
    RunConfig c;
    if (j.contains("tester")) {
        const auto t = parse_tester_kind(get_field<std::string>(j, "tester"));
        if (!t) {
            throw ConfigError("unknown tester '" + j.at("tester").get<std::string>() + "'");
        }
        c.tester = *t;
    }
    if (j.contains("base")) {
        c.base = get_field<std::string>(j, "base");
        base_or_throw(c.base);
    }
    if (j.contains("k")) {
        c.k = get_field<int>(j, "k");
    }
    if (j.contains("eps")) {
        c.eps = get_field<double>(j, "eps");
    }
    for (auto [key, field] : {std::pair{"c", &TesterConstants::c}, std::pair{"c_prime", &TesterConstants::c_prime},
                              std::pair{"c_dprime", &TesterConstants::c_dprime}, std::pair{"c1", &TesterConstants::c1},
                              std::pair{"c2", &TesterConstants::c2}}) {
        if (j.contains(key)) {
            c.constants.*field = get_field<double>(j, key);
            if (!(c.constants.*field > 0.0)) {
                throw ConfigError(std::string("constant '") + key + "' must be positive");
            }
        }
    }
    if (j.contains("trials")) {
        c.trials = get_field<std::size_t>(j, "trials");
    }
    if (j.contains("seed")) {
        c.seed = get_field<std::uint64_t>(j, "seed");
    }
    if (j.contains("workers")) {
        c.workers = get_field<unsigned>(j, "workers");
    }
    if (j.contains("output_dir")) {
        c.output_dir = get_field<std::string>(j, "output_dir");
    }
    if (j.contains("name")) {
        c.name = get_field<std::string>(j, "name");
    }
    if (j.contains("query_counting")) {
        const auto s = get_field<std::string>(j, "query_counting");
        if (s == "distinct") {
            c.query_counting = QueryCounting::Distinct;
        } else if (s == "per-use") {
            c.query_counting = QueryCounting::PerUse;
        } else {
            throw ConfigError("query_counting must be 'distinct' or 'per-use'");
        }
    }
    if (j.contains("instance")) {
        const json& in = j.at("instance");
        check_keys(in, {"kind", "n_prime", "frequency", "amplitude", "grid_size"}, "instance");
        if (in.contains("kind")) {
            const auto kind = parse_instance_kind(get_field<std::string>(in, "kind"));
            if (!kind) {
                throw ConfigError("unknown instance kind");
            }
            c.instance.kind = *kind;
        }
        if (in.contains("n_prime")) {
            c.instance.n_prime = get_field<std::size_t>(in, "n_prime");
        }
        if (in.contains("frequency")) {
            c.instance.frequency = get_field<double>(in, "frequency");
        }
        if (in.contains("amplitude")) {
            c.instance.amplitude = get_field<double>(in, "amplitude");
        }
        if (in.contains("grid_size")) {
            c.instance.grid_size = get_field<std::size_t>(in, "grid_size");
        }
    }
    if (c.k < 1) {
        throw ConfigError("k must be at least 1");
    }
    return c;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return run_config_from_json(j);
}

} // namespace pwtest
