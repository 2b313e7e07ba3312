#include "l1cp/bootstrap.hpp"

#include "l1cp/error.hpp"
#include "l1cp/parallel.hpp"
#include "l1cp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace l1cp {

void BootstrapConfig::validate(std::size_t n) const {
    if (block_length && (*block_length < 1 || *block_length + 1 > n)) {
        throw ConfigError("block length " + std::to_string(*block_length) + " outside [1, " +
                          std::to_string(n - 1) + "]");
    }
    if (replicates < 1) throw ConfigError("need at least one bootstrap replicate");
}

FunctionalSample demean_by_segments(const FunctionalSample& sample, std::size_t k_hat) {
    const std::size_t n = sample.n();
    if (k_hat < 1 || k_hat + 1 > n) {
        throw ConfigError("change index " + std::to_string(k_hat) + " outside [1, " + std::to_string(n - 1) + "]");
    }
    const Curve mu1 = segment_mean(sample, 0, k_hat);
    const Curve mu2 = segment_mean(sample, k_hat, n);

    Matrix y = sample.values();
    for (std::size_t i = k_hat; i < n; ++i) {
        auto r = y.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) r[j] -= mu2[j] - mu1[j];
    }
    return FunctionalSample(std::move(y), sample.grid());
}

MultiplierBootstrap::MultiplierBootstrap(const FunctionalSample& demeaned, std::size_t block_length)
    : n_(demeaned.n()), l_(block_length), grid_(demeaned.grid()) {
    if (l_ < 1 || l_ + 1 > n_) {
        throw ConfigError("block length " + std::to_string(l_) + " outside [1, " + std::to_string(n_ - 1) + "]");
    }
    const std::size_t m = demeaned.m();

    // prefix(k) = sum of the first k curves
    Matrix prefix(n_ + 1, m, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        const auto x = demeaned.curve(i);
        const auto prev = prefix.row(i);
        auto cur = prefix.row(i + 1);
        for (std::size_t j = 0; j < m; ++j) cur[j] = prev[j] + x[j];
    }

    const double share = static_cast<double>(l_) / static_cast<double>(n_);
    const auto total = prefix.row(n_);
    blocks_ = Matrix(n_ - l_, m);
    for (std::size_t i = 0; i + l_ < n_; ++i) {
        const auto hi = prefix.row(i + l_);
        const auto lo = prefix.row(i);
        auto c = blocks_.row(i);
        for (std::size_t j = 0; j < m; ++j) c[j] = (hi[j] - lo[j]) - share * total[j];
    }
}

namespace {

void accumulate(std::span<double> acc, double weight, std::span<const double> block) {
    for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += weight * block[j];
}

}  // namespace

CusumProcess MultiplierBootstrap::replicate(std::span<const double> multipliers) const {
    const std::size_t used = n_ - l_;
    if (multipliers.size() < used) throw DimensionError("too few bootstrap multipliers");
    const std::size_t m = grid_.size();
    const double scale = 1.0 / (static_cast<double>(n_) * std::sqrt(static_cast<double>(l_)));

    Matrix s(n_ + 1, m, 0.0);
    for (std::size_t k = 1; k <= n_; ++k) {
        auto cur = s.row(k);
        const auto prev = s.row(k - 1);
        std::copy(prev.begin(), prev.end(), cur.begin());
        if (k <= used) accumulate(cur, scale * multipliers[k - 1], blocks_.row(k - 1));
    }
    const std::vector<double> end(s.row(n_).begin(), s.row(n_).end());
    for (std::size_t k = 0; k <= n_; ++k) {
        const double frac = static_cast<double>(k) / static_cast<double>(n_);
        auto r = s.row(k);
        for (std::size_t j = 0; j < m; ++j) r[j] -= frac * end[j];
    }
    return CusumProcess(std::move(s), grid_);
}

NormTriple MultiplierBootstrap::max_statistics(std::span<const double> multipliers) const {
    const std::size_t used = n_ - l_;
    if (multipliers.size() < used) throw DimensionError("too few bootstrap multipliers");
    const std::size_t m = grid_.size();
    const double scale = 1.0 / (static_cast<double>(n_) * std::sqrt(static_cast<double>(l_)));

    std::vector<double> end(m, 0.0);
    for (std::size_t i = 0; i < used; ++i) accumulate(end, scale * multipliers[i], blocks_.row(i));

    std::vector<double> partial(m, 0.0);
    std::vector<double> u(m, 0.0);
    NormTriple best;
    // U*(0) = U*(1) = 0, so only interior knots matter.
    for (std::size_t k = 1; k < n_; ++k) {
        if (k <= used) accumulate(partial, scale * multipliers[k - 1], blocks_.row(k - 1));
        const double frac = static_cast<double>(k) / static_cast<double>(n_);
        for (std::size_t j = 0; j < m; ++j) u[j] = partial[j] - frac * end[j];
        const NormTriple v = norms(u, grid_);
        best.l1 = std::max(best.l1, v.l1);
        best.l2 = std::max(best.l2, v.l2);
        best.sup = std::max(best.sup, v.sup);
    }
    const double root_n = std::sqrt(static_cast<double>(n_));
    best.l1 *= root_n;
    best.l2 *= root_n;
    best.sup *= root_n;
    return best;
}

Curve MultiplierBootstrap::row(std::span<const double> multipliers, std::size_t k) const {
    const std::size_t used = n_ - l_;
    if (multipliers.size() < used) throw DimensionError("too few bootstrap multipliers");
    if (k > n_) throw DimensionError("knot index past n");
    const std::size_t m = grid_.size();
    const double scale = 1.0 / (static_cast<double>(n_) * std::sqrt(static_cast<double>(l_)));

    std::vector<double> partial(m, 0.0);
    std::vector<double> end(m, 0.0);
    const std::size_t upto = std::min(k, used);
    for (std::size_t i = 0; i < used; ++i) {
        accumulate(end, scale * multipliers[i], blocks_.row(i));
        if (i + 1 == upto) partial = end;
    }
    const double frac = static_cast<double>(k) / static_cast<double>(n_);
    Curve out(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = partial[j] - frac * end[j];
    return out;
}

std::vector<double> MultiplierBootstrap::multipliers(std::uint64_t seed, Stream stream, std::size_t b) const {
    auto engine = make_engine(seed, stream, b);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> nu(n_ - l_);
    for (double& v : nu) v = normal(engine);
    return nu;
}

CusumProcess bootstrap_cusum_replicate(const FunctionalSample& y, std::size_t block_length,
                                       std::span<const double> multipliers) {
    return MultiplierBootstrap(y, block_length).replicate(multipliers);
}

double bootstrap_quantile(std::span<const double> draws, double level) {
    if (draws.empty()) throw ConfigError("no bootstrap draws");
    std::vector<double> sorted(draws.begin(), draws.end());
    const auto b = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(level * b - 1e-9));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank - 1), sorted.end());
    return sorted[rank - 1];
}

double bootstrap_p_value(std::span<const double> draws, double statistic) {
    const auto exceed = std::count_if(draws.begin(), draws.end(), [&](double d) { return d >= statistic; });
    return (1.0 + static_cast<double>(exceed)) / (static_cast<double>(draws.size()) + 1.0);
}

std::size_t resolve_block_length(const FunctionalSample& sample, const BootstrapConfig& cfg) {
    const std::size_t l = cfg.block_length ? *cfg.block_length : select_block_length(sample);
    return std::clamp<std::size_t>(l, 1, sample.n() - 1);
}

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
}

TestResult finish(double statistic, const NormArgmax& arg, std::size_t l, NormKind kind, double alpha,
                  std::vector<double> draws) {
    TestResult r;
    r.statistic = statistic;
    r.s_hat = arg.s_hat;
    r.k_hat = arg.k_hat;
    r.block_length = l;
    r.norm = kind;
    r.quantile = bootstrap_quantile(draws, 1.0 - alpha);
    r.p_value = bootstrap_p_value(draws, statistic);
    r.reject = statistic > r.quantile;
    r.bootstrap_draws = std::move(draws);
    return r;
}

}  // namespace

std::array<TestResult, 3> classical_test_all_norms(const FunctionalSample& sample, double alpha,
                                                   const BootstrapConfig& cfg) {
    check_alpha(alpha);
    cfg.validate(sample.n());
    const CusumProcess u = cusum(sample);
    const std::array kinds{NormKind::L1, NormKind::L2, NormKind::Sup};

    // The segment demeaning uses the L1 change estimate for all three norms.
    std::array<NormArgmax, 3> args;
    for (std::size_t q = 0; q < 3; ++q) args[q] = argmax_norm(u, kinds[q]);
    const std::size_t k = std::clamp<std::size_t>(args[0].k_hat, 1, sample.n() - 1);
    const std::size_t l = resolve_block_length(sample, cfg);
    const MultiplierBootstrap boot(demean_by_segments(sample, k), l);

    std::array<std::vector<double>, 3> draws;
    for (auto& d : draws) d.resize(cfg.replicates);
    parallel_for(cfg.replicates, [&](std::size_t b) {
        const NormTriple t = boot.max_statistics(boot.multipliers(cfg.seed, Stream::ClassicalBootstrap, b));
        draws[0][b] = t.l1;
        draws[1][b] = t.l2;
        draws[2][b] = t.sup;
    });

    std::array<TestResult, 3> out;
    for (std::size_t q = 0; q < 3; ++q) {
        out[q] = finish(args[q].statistic, args[q], l, kinds[q], alpha, std::move(draws[q]));
    }
    return out;
}

TestResult classical_test(const FunctionalSample& sample, double alpha, const BootstrapConfig& cfg) {
    check_alpha(alpha);
    cfg.validate(sample.n());
    const NormArgmax arg = argmax_norm(cusum(sample), cfg.norm);
    const std::size_t k = std::clamp<std::size_t>(arg.k_hat, 1, sample.n() - 1);
    const std::size_t l = resolve_block_length(sample, cfg);
    const MultiplierBootstrap boot(demean_by_segments(sample, k), l);

    std::vector<double> draws(cfg.replicates);
    parallel_for(cfg.replicates, [&](std::size_t b) {
        draws[b] = boot.max_statistics(boot.multipliers(cfg.seed, Stream::ClassicalBootstrap, b)).get(cfg.norm);
    });
    return finish(arg.statistic, arg, l, cfg.norm, alpha, std::move(draws));
}

}  // namespace l1cp
