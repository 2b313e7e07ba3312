#include "l1cp/relevant.hpp"

#include "l1cp/error.hpp"
#include "l1cp/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace l1cp {

std::string_view to_string(Procedure p) noexcept {
    switch (p) {
        case Procedure::P1: return "p1";
        case Procedure::P2: return "p2";
        case Procedure::P3: return "p3";
    }
    return "?";
}

Procedure parse_procedure(std::string_view text) {
    if (text == "p1") return Procedure::P1;
    if (text == "p2") return Procedure::P2;
    if (text == "p3") return Procedure::P3;
    throw ConfigError("unknown procedure '" + std::string(text) + "' (expected p1, p2 or p3)");
}

MeanDiffEstimate estimate_mean_diff(const FunctionalSample& sample, std::size_t k_hat) {
    const std::size_t n = sample.n();
    if (k_hat < 1 || k_hat + 1 > n) {
        throw ConfigError("change index " + std::to_string(k_hat) + " outside [1, " + std::to_string(n - 1) + "]");
    }
    const std::size_t m = sample.m();
    MeanDiffEstimate est;
    est.n = n;
    est.k_hat = k_hat;
    est.mu1_hat = segment_mean(sample, 0, k_hat);
    est.mu2_hat = segment_mean(sample, k_hat, n);
    est.d_hat.resize(m);
    for (std::size_t j = 0; j < m; ++j) est.d_hat[j] = est.mu1_hat[j] - est.mu2_hat[j];

    const Curve mean = segment_mean(sample, 0, n);
    est.sigma_hat.assign(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = sample.curve(i);
        for (std::size_t j = 0; j < m; ++j) est.sigma_hat[j] += (x[j] - mean[j]) * (x[j] - mean[j]);
    }
    for (double& s : est.sigma_hat) s = std::sqrt(s / static_cast<double>(n - 1));
    return est;
}

NullSetEstimate estimate_null_set(const MeanDiffEstimate& est, const Grid& grid) {
    if (est.d_hat.size() != grid.size() || est.sigma_hat.size() != grid.size()) {
        throw DimensionError("mean difference estimate does not match grid");
    }
    const double nn = static_cast<double>(est.n);
    const double rate = std::log(nn) / std::sqrt(nn);
    const auto w = grid.weights();
    NullSetEstimate out;
    out.mask.resize(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        out.mask[j] = std::abs(est.d_hat[j]) <= est.sigma_hat[j] * rate;
        if (out.mask[j]) out.measure += w[j];
    }
    out.measure = std::clamp(out.measure, 0.0, 1.0);
    return out;
}

RelevantStatistic relevant_statistic(const FunctionalSample& sample, double delta) {
    if (!(delta >= 0.0)) throw ConfigError("delta must be nonnegative");
    const NormArgmax arg = argmax_norm(cusum(sample), NormKind::L1);
    RelevantStatistic out;
    out.s_hat = arg.s_hat;
    out.k_hat = arg.k_hat;
    out.max_l1 = arg.max_norm;
    out.statistic =
        std::sqrt(static_cast<double>(sample.n())) * (arg.max_norm - arg.s_hat * (1.0 - arg.s_hat) * delta);
    return out;
}

namespace {

double sgn(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

void check_row(std::span<const double> row, const Grid& grid) {
    if (row.size() != grid.size()) throw DimensionError("replicate curve does not match grid");
}

}  // namespace

double boot_p1(std::span<const double> replicate_row, std::size_t n, const MeanDiffEstimate& est,
               const NullSetEstimate& null_set, const Grid& grid) {
    check_row(replicate_row, grid);
    if (est.d_hat.size() != grid.size() || null_set.mask.size() != grid.size()) {
        throw DimensionError("estimate does not match grid");
    }
    const auto w = grid.weights();
    double acc = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double u = replicate_row[j];
        acc += w[j] * (null_set.mask[j] ? std::abs(u) : sgn(est.d_hat[j]) * u);
    }
    return std::sqrt(static_cast<double>(n)) * acc;
}

double boot_p2(std::span<const double> replicate_row, std::size_t n, const MeanDiffEstimate& est,
               const Grid& grid) {
    check_row(replicate_row, grid);
    if (est.d_hat.size() != grid.size()) throw DimensionError("estimate does not match grid");
    const auto w = grid.weights();
    double acc = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) acc += w[j] * sgn(est.d_hat[j]) * replicate_row[j];
    return std::sqrt(static_cast<double>(n)) * acc;
}

double boot_p3(std::span<const double> replicate_row, std::size_t n, const Grid& grid) {
    check_row(replicate_row, grid);
    return std::sqrt(static_cast<double>(n)) * norm(replicate_row, grid, NormKind::L1);
}

double boot_p1(const CusumProcess& replicate, double s_hat, const MeanDiffEstimate& est,
               const NullSetEstimate& null_set) {
    return boot_p1(replicate.at(s_hat), replicate.n(), est, null_set, replicate.grid());
}

double boot_p2(const CusumProcess& replicate, double s_hat, const MeanDiffEstimate& est) {
    return boot_p2(replicate.at(s_hat), replicate.n(), est, replicate.grid());
}

double boot_p3(const CusumProcess& replicate, double s_hat) {
    return boot_p3(replicate.at(s_hat), replicate.n(), replicate.grid());
}

namespace {

struct RelevantDraws {
    RelevantStatistic base;  // computed with delta = 0
    std::size_t block_length = 1;
    std::optional<NullSetEstimate> null_set;
    std::vector<double> draws;
};

RelevantDraws relevant_draws(const FunctionalSample& sample, Procedure procedure, double alpha,
                             const BootstrapConfig& cfg) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    cfg.validate(sample.n());
    const std::size_t n = sample.n();

    RelevantDraws out;
    out.base = relevant_statistic(sample, 0.0);
    const std::size_t k = std::clamp<std::size_t>(out.base.k_hat, 1, n - 1);
    const MeanDiffEstimate est = estimate_mean_diff(sample, k);
    if (procedure == Procedure::P1) out.null_set = estimate_null_set(est, sample.grid());

    out.block_length = resolve_block_length(sample, cfg);
    const MultiplierBootstrap boot(demean_by_segments(sample, k), out.block_length);

    out.draws.resize(cfg.replicates);
    parallel_for(cfg.replicates, [&](std::size_t b) {
        const Curve row = boot.row(boot.multipliers(cfg.seed, Stream::ClassicalBootstrap, b), out.base.k_hat);
        switch (procedure) {
            case Procedure::P1: out.draws[b] = boot_p1(row, n, est, *out.null_set, sample.grid()); break;
            case Procedure::P2: out.draws[b] = boot_p2(row, n, est, sample.grid()); break;
            case Procedure::P3: out.draws[b] = boot_p3(row, n, sample.grid()); break;
        }
    });
    return out;
}

}  // namespace

RelevantTestResult relevant_test(const FunctionalSample& sample, double delta, Procedure procedure, double alpha,
                                 const BootstrapConfig& cfg) {
    if (!(delta >= 0.0)) throw ConfigError("delta must be nonnegative");
    RelevantDraws d = relevant_draws(sample, procedure, alpha, cfg);
    const double s = d.base.s_hat;

    RelevantTestResult r;
    r.procedure = procedure;
    r.delta = delta;
    r.s_hat = s;
    r.k_hat = d.base.k_hat;
    r.block_length = d.block_length;
    r.statistic = std::sqrt(static_cast<double>(sample.n())) * (d.base.max_l1 - s * (1.0 - s) * delta);
    r.quantile = bootstrap_quantile(d.draws, 1.0 - alpha);
    r.p_value = bootstrap_p_value(d.draws, r.statistic);
    r.reject = r.statistic > r.quantile;
    r.null_set = std::move(d.null_set);
    r.bootstrap_draws = std::move(d.draws);
    return r;
}

MinimalDelta minimal_delta(const FunctionalSample& sample, double alpha, Procedure procedure,
                           const BootstrapConfig& cfg) {
    const RelevantDraws d = relevant_draws(sample, procedure, alpha, cfg);
    MinimalDelta out;
    out.s_hat = d.base.s_hat;
    out.quantile = bootstrap_quantile(d.draws, 1.0 - alpha);
    const double spread = out.s_hat * (1.0 - out.s_hat);
    if (spread <= 0.0) {
        out.degenerate = true;
        return out;
    }
    const double excess = d.base.max_l1 - out.quantile / std::sqrt(static_cast<double>(sample.n()));
    out.value = std::max(0.0, excess / spread);
    return out;
}

}  // namespace l1cp
