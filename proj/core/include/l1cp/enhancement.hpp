#pragma once

#include "l1cp/bootstrap.hpp"
#include "l1cp/functional.hpp"

#include <cstddef>

namespace l1cp {

struct EnhancementConfig {
    double alpha_n = 0.01;        ///< tolerated size distortion
    std::size_t replicates = 1000;  ///< bootstrap draws for the threshold quantile

    void validate() const;
};

struct EtaThreshold {
    double eta = 0.0;
    /// replicates * alpha_n < 1: the quantile degenerates to the sample maximum.
    bool is_sample_max = false;
};

struct EnhancedTestResult {
    TestResult test;  ///< statistic holds T_n + J_n; quantile is the classical L1 one
    double classical_statistic = 0.0;
    double enhancement = 0.0;  ///< J_n
    double eta = 0.0;
    double sup_at_s_hat = 0.0;  ///< sqrt(n) ||U_n(s_hat, .)||_sup
    bool eta_is_sample_max = false;
};

/// (1 - alpha_n)-quantile of sqrt(n) max_s ||U*(s, .)||_sup over e_cfg.replicates
/// draws on data demeaned at k_hat. Uses a multiplier namespace disjoint from the
/// classical bootstrap, so eta and the classical quantile are independent given the data.
[[nodiscard]] EtaThreshold eta_threshold(const FunctionalSample& sample, std::size_t k_hat,
                                         const BootstrapConfig& cfg, const EnhancementConfig& e_cfg);

/// J_n = sqrt(n) ||U_n(s_hat, .)||_sup if that value is >= eta, else 0.
[[nodiscard]] double enhancement_term(const FunctionalSample& sample, double s_hat, double eta);

/// Rejects when T_n + J_n > q*_{1-rho} with T_n and q* from the classical L1 test.
[[nodiscard]] EnhancedTestResult enhanced_test(const FunctionalSample& sample, double rho,
                                               const BootstrapConfig& cfg, const EnhancementConfig& e_cfg);

}  // namespace l1cp
