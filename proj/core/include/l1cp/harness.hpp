#pragma once

#include "l1cp/bootstrap.hpp"
#include "l1cp/config.hpp"
#include "l1cp/enhancement.hpp"
#include "l1cp/relevant.hpp"
#include "l1cp/scenarios.hpp"

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace l1cp {

struct ClassicalSpec {
    NormKind norm = NormKind::L1;
};

struct RelevantSpec {
    double delta = 0.0;
    /// When true, the threshold is delta * ||mu1 - mu2||_1 of the scenario.
    bool relative = false;
    Procedure procedure = Procedure::P3;
};

struct EnhancedSpec {
    EnhancementConfig enhancement;
};

using TestKind = std::variant<ClassicalSpec, RelevantSpec, EnhancedSpec>;

/// Monte Carlo size/power study. Repetition r draws its data from scenario seed
/// derive_seed(scenario.seed, ScenarioData, r) and its multipliers from
/// derive_seed(scenario.seed, ExperimentBootstrap, r); cfg.seed is ignored.
struct ExperimentPlan {
    ScenarioSpec scenario;
    std::size_t reps = 500;
    double alpha = 0.05;
    BootstrapConfig cfg;
    TestKind test = ClassicalSpec{};

    void validate() const;
};

struct RepOutcome {
    bool reject = false;
    double statistic = 0.0;
    double quantile = 0.0;
    double s_hat = 0.0;
    std::size_t k_hat = 0;
    std::size_t block_length = 1;
    double enhancement = 0.0;  ///< J_n, enhanced tests only
};

struct ExperimentReport {
    ExperimentPlan plan;
    std::size_t reps = 0;
    std::size_t rejections = 0;
    double rejection_rate = 0.0;
    double mean_s_hat = 0.0;
    double mean_block_length = 0.0;
    double runtime_seconds = 0.0;
    std::vector<RepOutcome> outcomes;
};

/// Sample used by repetition r of the plan.
[[nodiscard]] FunctionalSample experiment_sample(const ExperimentPlan& plan, std::size_t rep);
/// Bootstrap config used by repetition r of the plan.
[[nodiscard]] BootstrapConfig experiment_config(const ExperimentPlan& plan, std::size_t rep);

/// Runs every repetition (concurrently when cores are available). The report apart
/// from runtime_seconds is a deterministic function of the plan.
[[nodiscard]] ExperimentReport run_experiment(const ExperimentPlan& plan);

/// Plan from "key = value" text. Keys: the scenario keys plus reps, alpha, test
/// (classical | relevant | enhanced), norm, replicates, block_length (integer or auto),
/// delta, delta_rel, procedure, alpha_n, eta_replicates.
[[nodiscard]] ExperimentPlan plan_from_config(const KeyValueConfig& cfg);
[[nodiscard]] std::string to_config(const ExperimentPlan& plan);

/// Canonical JSON. Timing is omitted unless requested, keeping output byte-identical
/// across runs of the same plan.
[[nodiscard]] std::string to_json(const ExperimentReport& report, bool include_timing = false,
                                  bool include_outcomes = false);
/// Aligned plain-text summary.
[[nodiscard]] std::string to_text(const ExperimentReport& report);

}  // namespace l1cp
