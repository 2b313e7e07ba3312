#include "l1cp/enhancement.hpp"

#include "l1cp/error.hpp"
#include "l1cp/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace l1cp {

void EnhancementConfig::validate() const {
    if (!(alpha_n > 0.0 && alpha_n < 1.0)) throw ConfigError("alpha_n must lie in (0, 1)");
    if (replicates < 1) throw ConfigError("need at least one threshold replicate");
}

EtaThreshold eta_threshold(const FunctionalSample& sample, std::size_t k_hat, const BootstrapConfig& cfg,
                           const EnhancementConfig& e_cfg) {
    e_cfg.validate();
    cfg.validate(sample.n());
    const std::size_t n = sample.n();
    if (k_hat > n) throw ConfigError("change index past n");
    const std::size_t k = std::clamp<std::size_t>(k_hat, 1, n - 1);
    const MultiplierBootstrap boot(demean_by_segments(sample, k), resolve_block_length(sample, cfg));

    // The draw is the full sup-norm bootstrap statistic, maximized over s. Evaluating
    // U* only at k_hat ignores that s_hat is itself chosen by a maximization and
    // lets J fire far more often than alpha_n under the null.
    std::vector<double> draws(e_cfg.replicates);
    parallel_for(e_cfg.replicates, [&](std::size_t b) {
        draws[b] = boot.max_statistics(boot.multipliers(cfg.seed, Stream::EtaBootstrap, b)).sup;
    });

    EtaThreshold out;
    out.eta = bootstrap_quantile(draws, 1.0 - e_cfg.alpha_n);
    out.is_sample_max = static_cast<double>(e_cfg.replicates) * e_cfg.alpha_n < 1.0;
    return out;
}

double enhancement_term(const FunctionalSample& sample, double s_hat, double eta) {
    if (!(eta >= 0.0)) throw ConfigError("eta must be nonnegative");
    const Curve row = cusum(sample).at(s_hat);
    const double sup = std::sqrt(static_cast<double>(sample.n())) * norm(row, sample.grid(), NormKind::Sup);
    return sup >= eta ? sup : 0.0;
}

EnhancedTestResult enhanced_test(const FunctionalSample& sample, double rho, const BootstrapConfig& cfg,
                                 const EnhancementConfig& e_cfg) {
    BootstrapConfig l1_cfg = cfg;
    l1_cfg.norm = NormKind::L1;
    // Resolve once so the classical and threshold bootstraps share the block length.
    l1_cfg.block_length = resolve_block_length(sample, cfg);

    EnhancedTestResult out;
    out.test = classical_test(sample, rho, l1_cfg);
    out.classical_statistic = out.test.statistic;

    const EtaThreshold eta = eta_threshold(sample, out.test.k_hat, l1_cfg, e_cfg);
    out.eta = eta.eta;
    out.eta_is_sample_max = eta.is_sample_max;

    const CusumProcess u = cusum(sample);
    out.sup_at_s_hat = std::sqrt(static_cast<double>(sample.n())) *
                       norm(u.row(out.test.k_hat), sample.grid(), NormKind::Sup);
    out.enhancement = out.sup_at_s_hat >= out.eta ? out.sup_at_s_hat : 0.0;

    out.test.statistic = out.classical_statistic + out.enhancement;
    out.test.p_value = bootstrap_p_value(out.test.bootstrap_draws, out.test.statistic);
    out.test.reject = out.test.statistic > out.test.quantile;
    return out;
}

}  // namespace l1cp
