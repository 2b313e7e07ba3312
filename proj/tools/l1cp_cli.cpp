// l1cp: change-point detection in the mean of functional time series.
//
//   l1cp detect <file>            classical test and change-point estimate
//   l1cp relevant <file>          test of ||mu1 - mu2||_1 <= delta
//   l1cp enhanced <file>          L1 test with the sup-norm enhancement term
//   l1cp simulate --plan <cfg>    Monte Carlo size/power study
//   l1cp bandwidth <file>         data-driven block length
//   l1cp export-scenario --spec   write a synthetic sample as CSV

#include <CLI11.hpp>

#include "l1cp/analyze.hpp"
#include "l1cp/bootstrap.hpp"
#include "l1cp/config.hpp"
#include "l1cp/harness.hpp"
#include "l1cp/io.hpp"
#include "l1cp/scenarios.hpp"

#include <fstream>
#include <iostream>

namespace {

struct CommonFlags {
    std::string file;
    std::string norm = "l1";
    double alpha = 0.05;
    std::size_t block_length = 0;
    std::size_t replicates = 200;
    std::uint64_t seed = 0;
    bool json = false;
    std::string header = "auto";
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_file) {
    if (with_file) cmd->add_option("file", f.file, "CSV file, one curve per row")->required()->check(CLI::ExistingFile);
    cmd->add_option("--norm", f.norm, "Norm for the classical test")->check(CLI::IsMember({"l1", "l2", "sup"}));
    cmd->add_option("--alpha", f.alpha, "Nominal level")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--block-length", f.block_length, "Bootstrap block length (0 = select from data)");
    cmd->add_option("--replicates", f.replicates, "Bootstrap replicates")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", f.seed, "Root seed for the bootstrap multipliers");
    cmd->add_flag("--json", f.json, "Emit JSON instead of a text table");
    cmd->add_option("--header", f.header, "Grid header row: auto, yes or no")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
}

l1cp::HeaderMode header_mode(const std::string& h) {
    if (h == "yes") return l1cp::HeaderMode::Present;
    if (h == "no") return l1cp::HeaderMode::Absent;
    return l1cp::HeaderMode::Auto;
}

l1cp::AnalyzeOptions base_options(const CommonFlags& f) {
    l1cp::AnalyzeOptions opt;
    opt.alpha = f.alpha;
    opt.cfg.norm = l1cp::parse_norm_kind(f.norm);
    opt.cfg.replicates = f.replicates;
    opt.cfg.seed = f.seed;
    if (f.block_length > 0) opt.cfg.block_length = f.block_length;
    return opt;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

void emit(const l1cp::AnalysisReport& report, bool json) {
    std::cout << (json ? l1cp::to_json(report) : l1cp::to_text(report));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Change-point detection in the mean of functional time series"};
    app.require_subcommand(1);

    CommonFlags detect_flags;
    std::string procedure = "p3";
    bool delta_scan = false;
    std::string cusum_csv;
    std::string means_csv;
    auto* detect = app.add_subcommand("detect", "Classical test and change-point estimate");
    add_common(detect, detect_flags, true);
    detect->add_flag("--delta-scan", delta_scan, "Also report the minimal relevant threshold");
    detect->add_option("--procedure", procedure, "Bootstrap procedure for --delta-scan")
        ->check(CLI::IsMember({"p1", "p2", "p3"}));
    detect->add_option("--cusum-csv", cusum_csv, "Write CUSUM norms per knot to this CSV");
    detect->add_option("--means-csv", means_csv, "Write segment mean curves to this CSV");

    CommonFlags relevant_flags;
    double delta = 0.0;
    std::string rel_procedure = "p3";
    bool rel_scan = false;
    auto* relevant = app.add_subcommand("relevant", "Test H0: ||mu1 - mu2||_1 <= delta");
    add_common(relevant, relevant_flags, true);
    relevant->add_option("--delta", delta, "Relevance threshold")->required()->check(CLI::NonNegativeNumber);
    relevant->add_option("--procedure", rel_procedure, "Bootstrap procedure")
        ->check(CLI::IsMember({"p1", "p2", "p3"}));
    relevant->add_flag("--delta-scan", rel_scan, "Also report the minimal relevant threshold");

    CommonFlags enhanced_flags;
    double alpha_n = 0.01;
    std::size_t eta_replicates = 1000;
    auto* enhanced = app.add_subcommand("enhanced", "L1 test with sup-norm power enhancement");
    add_common(enhanced, enhanced_flags, true);
    enhanced->add_option("--alpha-n", alpha_n, "Tolerated size distortion")->check(CLI::Range(0.0, 1.0));
    enhanced->add_option("--eta-replicates", eta_replicates, "Replicates for the threshold")
        ->check(CLI::PositiveNumber);

    std::string plan_path;
    bool sim_json = false;
    bool full_scale = false;
    bool timing = false;
    bool outcomes = false;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo size/power study");
    simulate->add_option("--plan", plan_path, "Experiment plan (key = value)")->required()->check(CLI::ExistingFile);
    simulate->add_flag("--json", sim_json, "Emit JSON");
    simulate->add_flag("--full-scale", full_scale, "Use 1000 repetitions with 200 replicates");
    simulate->add_flag("--timing", timing, "Include runtime in JSON output");
    simulate->add_flag("--outcomes", outcomes, "Include per-repetition outcomes in JSON output");

    std::string bw_file;
    std::string bw_header = "auto";
    bool bw_json = false;
    auto* bandwidth = app.add_subcommand("bandwidth", "Data-driven bootstrap block length");
    bandwidth->add_option("file", bw_file, "CSV file")->required()->check(CLI::ExistingFile);
    bandwidth->add_option("--header", bw_header, "Grid header row: auto, yes or no")
        ->check(CLI::IsMember({"auto", "yes", "no"}));
    bandwidth->add_flag("--json", bw_json, "Emit JSON");

    std::string spec_path;
    std::string out_path;
    auto* export_scenario = app.add_subcommand("export-scenario", "Write a synthetic sample as CSV");
    export_scenario->add_option("--spec", spec_path, "Scenario config (key = value)")
        ->required()
        ->check(CLI::ExistingFile);
    export_scenario->add_option("--out", out_path, "Output path (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (detect->parsed()) {
            const auto sample = l1cp::ingest_curves(detect_flags.file, header_mode(detect_flags.header));
            auto opt = base_options(detect_flags);
            opt.delta_scan = delta_scan;
            opt.procedure = l1cp::parse_procedure(procedure);
            emit(l1cp::analyze(sample, opt), detect_flags.json);
            if (!cusum_csv.empty()) write_text(cusum_csv, l1cp::cusum_norms_csv(sample));
            if (!means_csv.empty()) write_text(means_csv, l1cp::segment_means_csv(sample));
        } else if (relevant->parsed()) {
            const auto sample = l1cp::ingest_curves(relevant_flags.file, header_mode(relevant_flags.header));
            auto opt = base_options(relevant_flags);
            opt.delta = delta;
            opt.procedure = l1cp::parse_procedure(rel_procedure);
            opt.delta_scan = rel_scan;
            emit(l1cp::analyze(sample, opt), relevant_flags.json);
        } else if (enhanced->parsed()) {
            const auto sample = l1cp::ingest_curves(enhanced_flags.file, header_mode(enhanced_flags.header));
            auto opt = base_options(enhanced_flags);
            opt.cfg.norm = l1cp::NormKind::L1;
            opt.enhancement = l1cp::EnhancementConfig{alpha_n, eta_replicates};
            emit(l1cp::analyze(sample, opt), enhanced_flags.json);
        } else if (simulate->parsed()) {
            auto plan = l1cp::plan_from_config(l1cp::KeyValueConfig::parse_file(plan_path));
            if (full_scale) {
                plan.reps = 1000;
                plan.cfg.replicates = 200;
            }
            const auto report = l1cp::run_experiment(plan);
            std::cout << (sim_json ? l1cp::to_json(report, timing, outcomes) : l1cp::to_text(report));
        } else if (bandwidth->parsed()) {
            const auto sample = l1cp::ingest_curves(bw_file, header_mode(bw_header));
            const std::size_t l = l1cp::select_block_length(sample);
            if (bw_json) {
                std::cout << "{\n  \"n\": " << sample.n() << ",\n  \"block_length\": " << l << "\n}\n";
            } else {
                std::cout << l << '\n';
            }
        } else if (export_scenario->parsed()) {
            const auto cfg = l1cp::KeyValueConfig::parse_file(spec_path);
            cfg.require_known({"n", "m", "error_kind", "mean_kind", "kappa", "s_star", "seed"});
            const auto sample = l1cp::assemble(l1cp::scenario_from_config(cfg));
            if (out_path.empty()) {
                l1cp::write_curves(std::cout, sample);
            } else {
                std::ofstream out(out_path);
                if (!out) throw std::runtime_error("cannot write " + out_path);
                l1cp::write_curves(out, sample);
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "l1cp: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
