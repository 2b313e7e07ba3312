#include "l1cp/harness.hpp"

#include "l1cp/error.hpp"
#include "l1cp/parallel.hpp"
#include "l1cp/rng.hpp"

#include <json.hpp>

#include <chrono>
#include <iomanip>
#include <sstream>

namespace l1cp {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string test_name(const TestKind& kind) {
    return std::visit(overloaded{[](const ClassicalSpec&) { return std::string("classical"); },
                                 [](const RelevantSpec&) { return std::string("relevant"); },
                                 [](const EnhancedSpec&) { return std::string("enhanced"); }},
                      kind);
}

}  // namespace

void ExperimentPlan::validate() const {
    scenario.validate();
    if (reps < 1) throw ConfigError("need at least one repetition");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    cfg.validate(scenario.n);
    if (const auto* r = std::get_if<RelevantSpec>(&test); r && !(r->delta >= 0.0)) {
        throw ConfigError("delta must be nonnegative");
    }
    if (const auto* e = std::get_if<EnhancedSpec>(&test)) e->enhancement.validate();
}

FunctionalSample experiment_sample(const ExperimentPlan& plan, std::size_t rep) {
    ScenarioSpec spec = plan.scenario;
    spec.seed = derive_seed(plan.scenario.seed, Stream::ScenarioData, rep);
    return assemble(spec);
}

BootstrapConfig experiment_config(const ExperimentPlan& plan, std::size_t rep) {
    BootstrapConfig cfg = plan.cfg;
    cfg.seed = derive_seed(plan.scenario.seed, Stream::ExperimentBootstrap, rep);
    return cfg;
}

ExperimentReport run_experiment(const ExperimentPlan& plan) {
    plan.validate();
    const auto start = std::chrono::steady_clock::now();
    const double d1 = true_l1_difference(plan.scenario);

    ExperimentReport report;
    report.plan = plan;
    report.reps = plan.reps;
    report.outcomes.resize(plan.reps);

    parallel_for(plan.reps, [&](std::size_t r) {
        const FunctionalSample sample = experiment_sample(plan, r);
        const BootstrapConfig cfg = experiment_config(plan, r);
        RepOutcome& out = report.outcomes[r];
        std::visit(overloaded{
                       [&](const ClassicalSpec& c) {
                           BootstrapConfig local = cfg;
                           local.norm = c.norm;
                           const TestResult t = classical_test(sample, plan.alpha, local);
                           out = {t.reject, t.statistic, t.quantile, t.s_hat, t.k_hat, t.block_length, 0.0};
                       },
                       [&](const RelevantSpec& s) {
                           const double delta = s.relative ? s.delta * d1 : s.delta;
                           const RelevantTestResult t = relevant_test(sample, delta, s.procedure, plan.alpha, cfg);
                           out = {t.reject, t.statistic, t.quantile, t.s_hat, t.k_hat, t.block_length, 0.0};
                       },
                       [&](const EnhancedSpec& e) {
                           const EnhancedTestResult t = enhanced_test(sample, plan.alpha, cfg, e.enhancement);
                           out = {t.test.reject,   t.test.statistic,    t.test.quantile, t.test.s_hat,
                                  t.test.k_hat,    t.test.block_length, t.enhancement};
                       }},
                   plan.test);
    });

    for (const RepOutcome& o : report.outcomes) {
        report.rejections += o.reject ? 1 : 0;
        report.mean_s_hat += o.s_hat;
        report.mean_block_length += static_cast<double>(o.block_length);
    }
    const auto reps = static_cast<double>(plan.reps);
    report.rejection_rate = static_cast<double>(report.rejections) / reps;
    report.mean_s_hat /= reps;
    report.mean_block_length /= reps;
    report.runtime_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

ExperimentPlan plan_from_config(const KeyValueConfig& cfg) {
    cfg.require_known({"n", "m", "error_kind", "mean_kind", "kappa", "s_star", "seed", "reps", "alpha", "test",
                       "norm", "replicates", "block_length", "delta", "delta_rel", "procedure", "alpha_n",
                       "eta_replicates"});
    auto wrap = [&](const std::string& key, auto&& fn) {
        try {
            fn();
        } catch (const ConfigError& e) {
            throw ParseError(cfg.source(), cfg.line_of(key), e.what());
        }
    };

    ExperimentPlan plan;
    plan.scenario = scenario_from_config(cfg);
    if (auto v = cfg.get_uint("reps")) plan.reps = *v;
    if (auto v = cfg.get_double("alpha")) plan.alpha = *v;
    if (auto v = cfg.get_uint("replicates")) plan.cfg.replicates = *v;
    if (auto v = cfg.get_string("block_length"); v && *v != "auto") {
        plan.cfg.block_length = cfg.get_uint("block_length");
    }
    wrap("norm", [&] {
        if (auto v = cfg.get_string("norm")) plan.cfg.norm = parse_norm_kind(*v);
    });

    const std::string test = cfg.get_string("test").value_or("classical");
    if (test == "classical") {
        plan.test = ClassicalSpec{plan.cfg.norm};
    } else if (test == "relevant") {
        RelevantSpec r;
        if (cfg.has("delta") && cfg.has("delta_rel")) {
            throw ParseError(cfg.source(), cfg.line_of("delta_rel"), "set either delta or delta_rel, not both");
        }
        if (auto v = cfg.get_double("delta")) r.delta = *v;
        if (auto v = cfg.get_double("delta_rel")) {
            r.delta = *v;
            r.relative = true;
        }
        wrap("procedure", [&] {
            if (auto v = cfg.get_string("procedure")) r.procedure = parse_procedure(*v);
        });
        plan.test = r;
    } else if (test == "enhanced") {
        EnhancedSpec e;
        if (auto v = cfg.get_double("alpha_n")) e.enhancement.alpha_n = *v;
        if (auto v = cfg.get_uint("eta_replicates")) e.enhancement.replicates = *v;
        plan.test = e;
    } else {
        throw ParseError(cfg.source(), cfg.line_of("test"), "unknown test '" + test + "'");
    }
    wrap("reps", [&] { plan.validate(); });
    return plan;
}

std::string to_config(const ExperimentPlan& plan) {
    std::ostringstream out;
    out << to_config(plan.scenario) << std::setprecision(17) << "reps = " << plan.reps << '\n'
        << "alpha = " << plan.alpha << '\n'
        << "replicates = " << plan.cfg.replicates << '\n'
        << "block_length = " << (plan.cfg.block_length ? std::to_string(*plan.cfg.block_length) : "auto") << '\n'
        << "test = " << test_name(plan.test) << '\n';
    std::visit(overloaded{[&](const ClassicalSpec& c) { out << "norm = " << to_string(c.norm) << '\n'; },
                          [&](const RelevantSpec& r) {
                              out << (r.relative ? "delta_rel = " : "delta = ") << r.delta << '\n'
                                  << "procedure = " << to_string(r.procedure) << '\n';
                          },
                          [&](const EnhancedSpec& e) {
                              out << "alpha_n = " << e.enhancement.alpha_n << '\n'
                                  << "eta_replicates = " << e.enhancement.replicates << '\n';
                          }},
               plan.test);
    return out.str();
}

std::string to_json(const ExperimentReport& report, bool include_timing, bool include_outcomes) {
    using nlohmann::ordered_json;
    const ExperimentPlan& plan = report.plan;

    ordered_json scenario;
    scenario["n"] = plan.scenario.n;
    scenario["m"] = plan.scenario.m;
    scenario["error_kind"] = to_string(plan.scenario.error_kind);
    scenario["mean_kind"] = to_string(plan.scenario.mean_kind);
    scenario["kappa"] = plan.scenario.kappa;
    scenario["s_star"] = plan.scenario.s_star;
    scenario["seed"] = plan.scenario.seed;

    ordered_json test;
    test["kind"] = test_name(plan.test);
    std::visit(overloaded{[&](const ClassicalSpec& c) { test["norm"] = std::string(to_string(c.norm)); },
                          [&](const RelevantSpec& r) {
                              test[r.relative ? "delta_rel" : "delta"] = r.delta;
                              test["procedure"] = std::string(to_string(r.procedure));
                          },
                          [&](const EnhancedSpec& e) {
                              test["alpha_n"] = e.enhancement.alpha_n;
                              test["eta_replicates"] = e.enhancement.replicates;
                          }},
               plan.test);

    ordered_json j;
    j["plan"]["scenario"] = scenario;
    j["plan"]["reps"] = plan.reps;
    j["plan"]["alpha"] = plan.alpha;
    j["plan"]["replicates"] = plan.cfg.replicates;
    j["plan"]["block_length"] = plan.cfg.block_length ? ordered_json(*plan.cfg.block_length) : ordered_json("auto");
    j["plan"]["test"] = test;
    j["reps"] = report.reps;
    j["rejections"] = report.rejections;
    j["rejection_rate"] = report.rejection_rate;
    j["mean_s_hat"] = report.mean_s_hat;
    j["mean_block_length"] = report.mean_block_length;
    if (include_timing) j["runtime_seconds"] = report.runtime_seconds;
    if (include_outcomes) {
        ordered_json arr = ordered_json::array();
        for (const RepOutcome& o : report.outcomes) {
            arr.push_back({{"reject", o.reject},
                           {"statistic", o.statistic},
                           {"quantile", o.quantile},
                           {"s_hat", o.s_hat},
                           {"k_hat", o.k_hat},
                           {"block_length", o.block_length},
                           {"enhancement", o.enhancement}});
        }
        j["outcomes"] = std::move(arr);
    }
    return j.dump(2) + "\n";
}

std::string to_text(const ExperimentReport& report) {
    const ExperimentPlan& plan = report.plan;
    std::ostringstream out;
    auto row = [&](const std::string& key, const auto& value) {
        out << std::left << std::setw(18) << key << value << '\n';
    };
    row("scenario", to_string(plan.scenario.error_kind) + " / " + to_string(plan.scenario.mean_kind));
    row("n x m", std::to_string(plan.scenario.n) + " x " + std::to_string(plan.scenario.m));
    row("kappa", plan.scenario.kappa);
    row("test", test_name(plan.test));
    row("alpha", plan.alpha);
    row("reps", report.reps);
    row("replicates", plan.cfg.replicates);
    row("rejections", report.rejections);
    out << std::left << std::setw(18) << "rejection rate" << std::fixed << std::setprecision(3)
        << report.rejection_rate << '\n';
    out << std::left << std::setw(18) << "mean s_hat" << report.mean_s_hat << '\n';
    out << std::left << std::setw(18) << "mean block len" << std::setprecision(2) << report.mean_block_length << '\n';
    out << std::left << std::setw(18) << "runtime [s]" << std::setprecision(2) << report.runtime_seconds << '\n';
    return out.str();
}

}  // namespace l1cp
