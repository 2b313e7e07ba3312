#pragma once

#include "l1cp/bootstrap.hpp"
#include "l1cp/enhancement.hpp"
#include "l1cp/relevant.hpp"

#include <optional>
#include <string>

namespace l1cp {

struct AnalyzeOptions {
    double alpha = 0.05;
    BootstrapConfig cfg;
    std::optional<double> delta;  ///< run the relevant test at this threshold
    Procedure procedure = Procedure::P3;
    bool delta_scan = false;      ///< report the minimal rejected-up-to threshold
    std::optional<EnhancementConfig> enhancement;
};

struct AnalysisReport {
    std::size_t n = 0;
    std::size_t m = 0;
    AnalyzeOptions options;
    TestResult classical;
    double mean_shift_l1 = 0.0;  ///< ||mu1_hat - mu2_hat||_1 at the L1 change estimate
    std::optional<RelevantTestResult> relevant;
    std::optional<MinimalDelta> minimal_delta;
    std::optional<EnhancedTestResult> enhanced;
};

/// Change-point analysis of one sample: classical test under options.cfg.norm, and
/// optionally a relevant test, the minimal threshold and the enhanced test.
[[nodiscard]] AnalysisReport analyze(const FunctionalSample& sample, const AnalyzeOptions& options);

/// JSON document with keys: n, m, alpha, block_length, change_point {k_hat, s_hat},
/// classical {norm, statistic, quantile, p_value, reject, replicates}, mean_shift_l1,
/// and when requested relevant {...}, minimal_delta {...}, enhanced {...}.
[[nodiscard]] std::string to_json(const AnalysisReport& report);
[[nodiscard]] std::string to_text(const AnalysisReport& report);

/// Tidy CSV "s,l1,l2,sup" of the CUSUM norms at every knot, for plotting.
[[nodiscard]] std::string cusum_norms_csv(const FunctionalSample& sample);
/// Tidy CSV "curve,t,value" with the segment means around the L1 change estimate.
[[nodiscard]] std::string segment_means_csv(const FunctionalSample& sample);

}  // namespace l1cp
