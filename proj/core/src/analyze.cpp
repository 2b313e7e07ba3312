#include "l1cp/analyze.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>

namespace l1cp {

namespace {

void put_double(std::ostringstream& out, double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, ptr - buf);
}

}  // namespace

AnalysisReport analyze(const FunctionalSample& sample, const AnalyzeOptions& options) {
    AnalysisReport report;
    report.n = sample.n();
    report.m = sample.m();
    report.options = options;

    // Select the block length once so every procedure below uses the same value.
    BootstrapConfig cfg = options.cfg;
    cfg.block_length = resolve_block_length(sample, cfg);
    report.options.cfg.block_length = cfg.block_length;

    report.classical = classical_test(sample, options.alpha, cfg);

    const NormArgmax l1 = argmax_norm(cusum(sample), NormKind::L1);
    const std::size_t k = std::clamp<std::size_t>(l1.k_hat, 1, sample.n() - 1);
    const MeanDiffEstimate est = estimate_mean_diff(sample, k);
    report.mean_shift_l1 = norm(est.d_hat, sample.grid(), NormKind::L1);

    if (options.delta) {
        report.relevant = relevant_test(sample, *options.delta, options.procedure, options.alpha, cfg);
    }
    if (options.delta_scan) {
        report.minimal_delta = minimal_delta(sample, options.alpha, options.procedure, cfg);
        if (report.relevant) report.relevant->delta_hat_alpha = report.minimal_delta->value;
    }
    if (options.enhancement) {
        report.enhanced = enhanced_test(sample, options.alpha, cfg, *options.enhancement);
    }
    return report;
}

std::string to_json(const AnalysisReport& report) {
    using nlohmann::ordered_json;
    const TestResult& c = report.classical;
    ordered_json j;
    j["n"] = report.n;
    j["m"] = report.m;
    j["alpha"] = report.options.alpha;
    j["block_length"] = c.block_length;
    j["change_point"] = {{"k_hat", c.k_hat}, {"s_hat", c.s_hat}};
    j["classical"] = {{"norm", std::string(to_string(c.norm))},
                      {"statistic", c.statistic},
                      {"quantile", c.quantile},
                      {"p_value", c.p_value},
                      {"reject", c.reject},
                      {"replicates", c.bootstrap_draws.size()}};
    j["mean_shift_l1"] = report.mean_shift_l1;
    if (report.relevant) {
        const RelevantTestResult& r = *report.relevant;
        ordered_json rel = {{"procedure", std::string(to_string(r.procedure))},
                            {"delta", r.delta},
                            {"statistic", r.statistic},
                            {"quantile", r.quantile},
                            {"p_value", r.p_value},
                            {"reject", r.reject},
                            {"s_hat", r.s_hat}};
        if (r.null_set) rel["null_set_measure"] = r.null_set->measure;
        j["relevant"] = std::move(rel);
    }
    if (report.minimal_delta) {
        const MinimalDelta& d = *report.minimal_delta;
        j["minimal_delta"] = {{"procedure", std::string(to_string(report.options.procedure))},
                              {"delta_hat", d.value},
                              {"quantile", d.quantile},
                              {"degenerate", d.degenerate}};
    }
    if (report.enhanced) {
        const EnhancedTestResult& e = *report.enhanced;
        j["enhanced"] = {{"alpha_n", report.options.enhancement->alpha_n},
                         {"statistic", e.test.statistic},
                         {"classical_statistic", e.classical_statistic},
                         {"enhancement", e.enhancement},
                         {"eta", e.eta},
                         {"quantile", e.test.quantile},
                         {"p_value", e.test.p_value},
                         {"reject", e.test.reject},
                         {"eta_is_sample_max", e.eta_is_sample_max}};
    }
    return j.dump(2) + "\n";
}

std::string to_text(const AnalysisReport& report) {
    const TestResult& c = report.classical;
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    auto row = [&](const std::string& key) -> std::ostringstream& {
        out << std::left << std::setw(22) << key;
        return out;
    };
    row("curves x grid") << report.n << " x " << report.m << '\n';
    row("block length") << c.block_length << '\n';
    row("change point") << "k = " << c.k_hat << ", s = " << c.s_hat << '\n';
    row("classical (" + std::string(to_string(c.norm)) + ")")
        << "T = " << c.statistic << ", q = " << c.quantile << ", p = " << c.p_value
        << (c.reject ? "  REJECT" : "  keep") << '\n';
    row("mean shift (L1)") << report.mean_shift_l1 << '\n';
    if (report.relevant) {
        const RelevantTestResult& r = *report.relevant;
        row("relevant (" + std::string(to_string(r.procedure)) + ")")
            << "delta = " << r.delta << ", T = " << r.statistic << ", q = " << r.quantile
            << (r.reject ? "  REJECT" : "  keep") << '\n';
    }
    if (report.minimal_delta) {
        row("minimal delta") << report.minimal_delta->value
                             << (report.minimal_delta->degenerate ? "  (degenerate change estimate)" : "") << '\n';
    }
    if (report.enhanced) {
        const EnhancedTestResult& e = *report.enhanced;
        row("enhanced") << "T + J = " << e.test.statistic << " (J = " << e.enhancement << ", eta = " << e.eta
                        << "), q = " << e.test.quantile << (e.test.reject ? "  REJECT" : "  keep") << '\n';
    }
    return out.str();
}

std::string cusum_norms_csv(const FunctionalSample& sample) {
    const CusumProcess u = cusum(sample);
    std::ostringstream out;
    out << "s,l1,l2,sup\n";
    for (std::size_t k = 0; k <= u.n(); ++k) {
        const NormTriple t = norms(u.row(k), u.grid());
        put_double(out, static_cast<double>(k) / static_cast<double>(u.n()));
        for (double v : {t.l1, t.l2, t.sup}) {
            out << ',';
            put_double(out, v);
        }
        out << '\n';
    }
    return out.str();
}

std::string segment_means_csv(const FunctionalSample& sample) {
    const NormArgmax l1 = argmax_norm(cusum(sample), NormKind::L1);
    const std::size_t k = std::clamp<std::size_t>(l1.k_hat, 1, sample.n() - 1);
    const MeanDiffEstimate est = estimate_mean_diff(sample, k);
    std::ostringstream out;
    out << "curve,t,value\n";
    const auto t = sample.grid().points();
    for (const auto& [name, curve] : {std::pair{"mu1", &est.mu1_hat}, std::pair{"mu2", &est.mu2_hat}}) {
        for (std::size_t j = 0; j < t.size(); ++j) {
            out << name << ',';
            put_double(out, t[j]);
            out << ',';
            put_double(out, (*curve)[j]);
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace l1cp
