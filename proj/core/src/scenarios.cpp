#include "l1cp/scenarios.hpp"

#include "l1cp/basis.hpp"
#include "l1cp/error.hpp"
#include "l1cp/rng.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace l1cp {

namespace {

constexpr std::size_t kFourierSize = 21;

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace

void ScenarioSpec::validate() const {
    if (n < 2) throw ConfigError("scenario needs n >= 2");
    if (m < 2) throw ConfigError("scenario needs m >= 2");
    if (!(s_star > 0.0 && s_star < 1.0)) throw ConfigError("s_star must lie in (0, 1)");
    if (!std::isfinite(kappa)) throw ConfigError("kappa must be finite");
    if (mean_kind.shape == MeanKind::Shape::PhiC && !(mean_kind.c >= 0.0)) {
        throw ConfigError("phi sparsity parameter must be nonnegative");
    }
}

std::string to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::LightIID: return "light_iid";
        case ErrorKind::HeavyIID: return "heavy_iid";
        case ErrorKind::LightFAR: return "light_far";
        case ErrorKind::HeavyFAR: return "heavy_far";
        case ErrorKind::Noiseless: return "noiseless";
    }
    return "?";
}

std::string to_string(const MeanKind& kind) {
    switch (kind.shape) {
        case MeanKind::Shape::Null: return "null";
        case MeanKind::Shape::Const: return "const";
        case MeanKind::Shape::Bump: return "bump";
        case MeanKind::Shape::Bumps: return "bumps";
        case MeanKind::Shape::Spike: return "spike";
        case MeanKind::Shape::PhiC: return "phi:" + format_double(kind.c);
    }
    return "?";
}

ErrorKind parse_error_kind(std::string_view text) {
    if (text == "light_iid") return ErrorKind::LightIID;
    if (text == "heavy_iid") return ErrorKind::HeavyIID;
    if (text == "light_far") return ErrorKind::LightFAR;
    if (text == "heavy_far") return ErrorKind::HeavyFAR;
    if (text == "noiseless") return ErrorKind::Noiseless;
    throw ConfigError("unknown error kind '" + std::string(text) + "'");
}

MeanKind parse_mean_kind(std::string_view text) {
    using S = MeanKind::Shape;
    if (text == "null") return {S::Null, 0.0};
    if (text == "const") return {S::Const, 0.0};
    if (text == "bump") return {S::Bump, 0.0};
    if (text == "bumps") return {S::Bumps, 0.0};
    if (text == "spike") return {S::Spike, 0.0};
    if (text.starts_with("phi:")) {
        const auto body = text.substr(4);
        double c = 0.0;
        const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), c);
        if (ec == std::errc() && ptr == body.data() + body.size() && c >= 0.0) return {S::PhiC, c};
    }
    throw ConfigError("unknown mean kind '" + std::string(text) + "'");
}

Curve gen_mean(const MeanKind& kind, double kappa, const Grid& grid) {
    using std::numbers::pi;
    Curve mu(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double t = grid.points()[j];
        double v = 0.0;
        switch (kind.shape) {
            case MeanKind::Shape::Null: v = 0.0; break;
            case MeanKind::Shape::Const: v = 1.0; break;
            case MeanKind::Shape::Bump: v = std::sin(pi * t); break;
            case MeanKind::Shape::Bumps: v = std::sin(4.0 * pi * t); break;
            case MeanKind::Shape::Spike: v = 2.0 * std::exp(-100.0 * (t - 0.5) * (t - 0.5)); break;
            case MeanKind::Shape::PhiC: v = std::exp(-kind.c * (t - 0.5) * (t - 0.5)); break;
        }
        mu[j] = kappa * v;
    }
    return mu;
}

FunctionalSample gen_errors_light_iid(std::size_t n, const Grid& grid, std::uint64_t seed) {
    auto engine = make_engine(seed, Stream::ScenarioData, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto t = grid.points();
    Matrix out(n, grid.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto r = out.row(i);
        for (std::size_t j = 1; j < r.size(); ++j) {
            r[j] = r[j - 1] + std::sqrt(t[j] - t[j - 1]) * normal(engine);
        }
    }
    return FunctionalSample(std::move(out), grid);
}

FunctionalSample gen_errors_heavy_iid(std::size_t n, const Grid& grid, std::uint64_t seed) {
    auto engine = make_engine(seed, Stream::ScenarioData, 0);
    std::student_t_distribution<double> student(3.0);
    const BSplineBasis basis(10, 4);
    Matrix coef(n, basis.size());
    for (double& c : coef.data()) c = student(engine);
    return FunctionalSample(expand(basis.evaluate(grid), coef), grid);
}

Matrix far_operator(std::uint64_t seed) {
    auto engine = make_engine(seed, Stream::FarOperator, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix psi(kFourierSize, kFourierSize);
    double frob = 0.0;
    for (std::size_t i = 0; i < kFourierSize; ++i) {
        for (std::size_t j = 0; j < kFourierSize; ++j) {
            const double sd = 1.0 / std::sqrt(static_cast<double>((i + 1) * (j + 1)));
            psi(i, j) = sd * normal(engine);
            frob += psi(i, j) * psi(i, j);
        }
    }
    const double scale = (1.0 / std::numbers::sqrt2) / std::sqrt(frob);
    for (double& v : psi.data()) v *= scale;
    return psi;
}

FunctionalSample gen_errors_far1(std::size_t n, const Grid& grid, std::uint64_t seed, Tails tails,
                                 const FarOptions& options) {
    const Matrix psi = options.op ? *options.op : far_operator(seed);
    if (psi.rows() != kFourierSize || psi.cols() != kFourierSize) {
        throw DimensionError("FAR operator must be 21 x 21");
    }
    auto engine = make_engine(seed, Stream::ScenarioData, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::student_t_distribution<double> student(3.0);
    auto innovation = [&](std::size_t k) {
        const double draw = tails == Tails::Light ? normal(engine) : student(engine);
        return draw / static_cast<double>(k + 1);
    };

    Matrix coef(n, kFourierSize);
    std::vector<double> state(kFourierSize, 0.0);
    std::vector<double> next(kFourierSize);
    for (std::size_t step = 0; step < options.burn_in + n; ++step) {
        for (std::size_t a = 0; a < kFourierSize; ++a) {
            double acc = innovation(a);
            for (std::size_t b = 0; b < kFourierSize; ++b) acc += psi(a, b) * state[b];
            next[a] = acc;
        }
        state.swap(next);
        if (step >= options.burn_in) {
            auto r = coef.row(step - options.burn_in);
            std::copy(state.begin(), state.end(), r.begin());
        }
    }
    return FunctionalSample(expand(FourierBasis(kFourierSize).evaluate(grid), coef), grid);
}

FunctionalSample gen_errors(ErrorKind kind, std::size_t n, const Grid& grid, std::uint64_t seed) {
    switch (kind) {
        case ErrorKind::LightIID: return gen_errors_light_iid(n, grid, seed);
        case ErrorKind::HeavyIID: return gen_errors_heavy_iid(n, grid, seed);
        case ErrorKind::LightFAR: return gen_errors_far1(n, grid, seed, Tails::Light);
        case ErrorKind::HeavyFAR: return gen_errors_far1(n, grid, seed, Tails::Heavy);
        case ErrorKind::Noiseless: return FunctionalSample(Matrix(n, grid.size(), 0.0), grid);
    }
    throw ConfigError("unknown error kind");
}

std::size_t change_index(const ScenarioSpec& spec) {
    return static_cast<std::size_t>(std::floor(static_cast<double>(spec.n) * spec.s_star));
}

FunctionalSample assemble(const ScenarioSpec& spec) {
    spec.validate();
    const Grid grid = Grid::uniform(spec.m);
    Matrix x = gen_errors(spec.error_kind, spec.n, grid, spec.seed).values();
    const Curve mu2 = gen_mean(spec.mean_kind, spec.kappa, grid);
    for (std::size_t i = change_index(spec); i < spec.n; ++i) {
        auto r = x.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] += mu2[j];
    }
    return FunctionalSample(std::move(x), grid);
}

double true_l1_difference(const ScenarioSpec& spec) {
    const Grid grid = Grid::uniform(spec.m);
    return norm(gen_mean(spec.mean_kind, spec.kappa, grid), grid, NormKind::L1);
}

std::string to_config(const ScenarioSpec& spec) {
    std::ostringstream out;
    out << "n = " << spec.n << '\n'
        << "m = " << spec.m << '\n'
        << "error_kind = " << to_string(spec.error_kind) << '\n'
        << "mean_kind = " << to_string(spec.mean_kind) << '\n'
        << "kappa = " << format_double(spec.kappa) << '\n'
        << "s_star = " << format_double(spec.s_star) << '\n'
        << "seed = " << spec.seed << '\n';
    return out.str();
}

ScenarioSpec scenario_from_config(const KeyValueConfig& cfg) {
    ScenarioSpec spec;
    if (auto v = cfg.get_uint("n")) spec.n = *v;
    if (auto v = cfg.get_uint("m")) spec.m = *v;
    if (auto v = cfg.get_double("kappa")) spec.kappa = *v;
    if (auto v = cfg.get_double("s_star")) spec.s_star = *v;
    if (auto v = cfg.get_uint("seed")) spec.seed = *v;
    try {
        if (auto v = cfg.get_string("error_kind")) spec.error_kind = parse_error_kind(*v);
    } catch (const ConfigError& e) {
        throw ParseError(cfg.source(), cfg.line_of("error_kind"), e.what());
    }
    try {
        if (auto v = cfg.get_string("mean_kind")) spec.mean_kind = parse_mean_kind(*v);
    } catch (const ConfigError& e) {
        throw ParseError(cfg.source(), cfg.line_of("mean_kind"), e.what());
    }
    spec.validate();
    return spec;
}

}  // namespace l1cp
