#include <catch2/catch_amalgamated.hpp>

#include "l1cp/bootstrap.hpp"
#include "l1cp/error.hpp"
#include "l1cp/rng.hpp"
#include "l1cp/scenarios.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace l1cp;
using l1cp::testing::sample_from;
using l1cp::testing::two_level;
using l1cp::testing::white_noise;
using Catch::Approx;

namespace {

// S*(k/n) straight from the definition, 1-based block starts i = 1..min(k, n - l).
double partial_sum_oracle(const FunctionalSample& y, std::size_t l, std::span<const double> nu, std::size_t k,
                          std::size_t j) {
    const std::size_t n = y.n();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += y.curve(i)[j];
    double s = 0.0;
    for (std::size_t i = 1; i <= std::min(k, n - l); ++i) {
        double block = 0.0;
        for (std::size_t q = 0; q < l; ++q) block += y.curve(i - 1 + q)[j];
        s += nu[i - 1] * (block - static_cast<double>(l) / n * total);
    }
    return s / (static_cast<double>(n) * std::sqrt(static_cast<double>(l)));
}

}  // namespace

TEST_CASE("demeaning removes a noiseless shift exactly", "[demean]") {
    const FunctionalSample y = demean_by_segments(two_level(20, 5, 8, 2.5), 8);
    for (double v : y.values().data()) REQUIRE(v == Approx(0.0).margin(1e-15));
}

TEST_CASE("demeaned segments share their mean", "[demean]") {
    const FunctionalSample x = white_noise(31, 6, 5);
    for (std::size_t k : {1, 7, 15, 30}) {
        const FunctionalSample y = demean_by_segments(x, k);
        const Curve a = segment_mean(y, 0, k);
        const Curve b = segment_mean(y, k, 31);
        for (std::size_t j = 0; j < 6; ++j) REQUIRE(std::abs(a[j] - b[j]) < 1e-12);
        // Observations up to k are untouched.
        for (std::size_t i = 0; i < k; ++i) REQUIRE(y.curve(i)[0] == x.curve(i)[0]);
    }
}

TEST_CASE("demeaning two curves", "[demean]") {
    const auto x = sample_from(2, Grid::uniform(3), [](std::size_t i, double t) { return i == 0 ? t : 5.0 - t; });
    const FunctionalSample y = demean_by_segments(x, 1);
    for (std::size_t j = 0; j < 3; ++j) REQUIRE(y.curve(1)[j] == Approx(x.curve(0)[j]));
    REQUIRE_THROWS_AS(demean_by_segments(x, 0), ConfigError);
    REQUIRE_THROWS_AS(demean_by_segments(x, 2), ConfigError);
}

TEST_CASE("bootstrap replicate matches the block-sum definition", "[bootstrap]") {
    const FunctionalSample y = white_noise(17, 4, 11);
    std::mt19937_64 g(1);
    std::normal_distribution<double> z;
    std::vector<double> nu(17);
    for (double& v : nu) v = z(g);
    for (std::size_t l : {1, 3, 6}) {
        const CusumProcess u = bootstrap_cusum_replicate(y, l, nu);
        for (std::size_t j = 0; j < 4; ++j) {
            const double s1 = partial_sum_oracle(y, l, nu, 17, j);
            for (std::size_t k = 0; k <= 17; ++k) {
                const double expected = partial_sum_oracle(y, l, nu, k, j) - static_cast<double>(k) / 17 * s1;
                REQUIRE(u.row(k)[j] == Approx(expected).margin(1e-13));
            }
        }
    }
}

TEST_CASE("bootstrap replicate is held constant after n - l", "[bootstrap]") {
    const FunctionalSample y = white_noise(12, 3, 2);
    std::vector<double> nu(12, 1.0);
    const MultiplierBootstrap boot(y, 4);
    const CusumProcess u = boot.replicate(nu);
    // U* = S* - s S*(1) and S* is flat on [8/12, 1], so U* is linear there and vanishes at 1.
    for (std::size_t j = 0; j < 3; ++j) {
        const double s1 = u.row(8)[j] / (1.0 - 8.0 / 12.0);
        for (std::size_t k = 8; k <= 12; ++k) REQUIRE(u.row(k)[j] == Approx((1.0 - k / 12.0) * s1).margin(1e-14));
    }
}

TEST_CASE("zero multipliers give a zero replicate", "[bootstrap]") {
    const std::vector<double> nu(10, 0.0);
    const CusumProcess u = bootstrap_cusum_replicate(white_noise(10, 3, 1), 2, nu);
    for (double v : u.values().data()) REQUIRE(v == 0.0);
}

TEST_CASE("constant data give a zero replicate for any multipliers", "[bootstrap]") {
    const auto y = sample_from(15, Grid::uniform(4), [](std::size_t, double t) { return 1.0 + t; });
    std::vector<double> nu(15);
    std::iota(nu.begin(), nu.end(), -7.0);
    const CusumProcess u = bootstrap_cusum_replicate(y, 3, nu);
    for (double v : u.values().data()) REQUIRE(std::abs(v) < 1e-14);
}

TEST_CASE("single-multiplier hand computation", "[bootstrap]") {
    // n = 4, l = 1, nu = (1, 0, 0, 0), Y_1 = c, others 0: S*(k/4) = (1/4)(c - c/4) = 3c/16 for k >= 1.
    const double c = 2.0;
    const auto y = sample_from(4, Grid::uniform(2), [=](std::size_t i, double) { return i == 0 ? c : 0.0; });
    const std::vector<double> nu{1.0, 0.0, 0.0, 0.0};
    const CusumProcess u = bootstrap_cusum_replicate(y, 1, nu);
    const double s = 3.0 * c / 16.0;
    for (std::size_t k = 1; k <= 4; ++k) REQUIRE(u.row(k)[0] == Approx(s - k / 4.0 * s));
}

TEST_CASE("replicate needs enough multipliers and a valid block length", "[bootstrap]") {
    const FunctionalSample y = white_noise(10, 3, 1);
    const std::vector<double> few(5, 1.0);
    REQUIRE_THROWS_AS(bootstrap_cusum_replicate(y, 2, few), DimensionError);
    REQUIRE_THROWS_AS(MultiplierBootstrap(y, 10), ConfigError);
    REQUIRE_THROWS_AS(MultiplierBootstrap(y, 0), ConfigError);
}

TEST_CASE("max statistics agree with the replicate process", "[bootstrap]") {
    const FunctionalSample y = white_noise(25, 9, 3);
    const MultiplierBootstrap boot(y, 3);
    const auto nu = boot.multipliers(7, Stream::ClassicalBootstrap, 0);
    const NormTriple t = boot.max_statistics(nu);
    const CusumProcess u = boot.replicate(nu);
    REQUIRE(t.l1 == Approx(argmax_norm(u, NormKind::L1).statistic));
    REQUIRE(t.l2 == Approx(argmax_norm(u, NormKind::L2).statistic));
    REQUIRE(t.sup == Approx(argmax_norm(u, NormKind::Sup).statistic));
    const Curve r = boot.row(nu, 11);
    for (std::size_t j = 0; j < 9; ++j) REQUIRE(r[j] == Approx(u.row(11)[j]));
}

TEST_CASE("bootstrap quantile uses the ceil((1 - alpha) B)-th order statistic", "[quantile]") {
    std::vector<double> draws(200);
    std::iota(draws.begin(), draws.end(), 1.0);
    std::reverse(draws.begin(), draws.end());
    REQUIRE(bootstrap_quantile(draws, 0.95) == 190.0);
    REQUIRE(bootstrap_quantile(draws, 0.999) == 200.0);
    REQUIRE(bootstrap_quantile(draws, 0.0) == 1.0);
    const std::vector<double> five{5, 1, 4, 2, 3};
    REQUIRE(bootstrap_quantile(five, 0.5) == 3.0);
    REQUIRE_THROWS_AS(bootstrap_quantile(std::vector<double>{}, 0.5), ConfigError);
}

TEST_CASE("bootstrap p-value counts ties and adds one", "[quantile]") {
    const std::vector<double> draws{1, 2, 3, 4};
    REQUIRE(bootstrap_p_value(draws, 3.0) == Approx(3.0 / 5.0));
    REQUIRE(bootstrap_p_value(draws, 10.0) == Approx(1.0 / 5.0));
    REQUIRE(bootstrap_p_value(draws, 0.0) == 1.0);
}

TEST_CASE("config validation", "[config]") {
    BootstrapConfig cfg;
    cfg.block_length = 10;
    REQUIRE_THROWS_AS(cfg.validate(10), ConfigError);
    cfg.block_length = 0;
    REQUIRE_THROWS_AS(cfg.validate(10), ConfigError);
    cfg.block_length = 9;
    REQUIRE_NOTHROW(cfg.validate(10));
    cfg.replicates = 0;
    REQUIRE_THROWS_AS(cfg.validate(10), ConfigError);

    const FunctionalSample x = white_noise(10, 3, 1);
    REQUIRE_THROWS_AS(classical_test(x, 0.0, BootstrapConfig{}), ConfigError);
    REQUIRE_THROWS_AS(classical_test(x, 1.0, BootstrapConfig{}), ConfigError);
}

TEST_CASE("classical test fields are consistent", "[classical]") {
    BootstrapConfig cfg;
    cfg.seed = 3;
    cfg.replicates = 99;
    const TestResult r = classical_test(white_noise(60, 21, 8), 0.1, cfg);
    REQUIRE(r.bootstrap_draws.size() == 99);
    REQUIRE(r.reject == (r.statistic > r.quantile));
    REQUIRE(r.quantile == bootstrap_quantile(r.bootstrap_draws, 0.9));
    REQUIRE(r.p_value == bootstrap_p_value(r.bootstrap_draws, r.statistic));
    REQUIRE(r.s_hat == Approx(r.k_hat / 60.0));
    REQUIRE(r.block_length >= 1);
}

TEST_CASE("classical test is bit-identical for identical seeds", "[classical][property]") {
    const FunctionalSample x = white_noise(50, 11, 2);
    BootstrapConfig cfg;
    cfg.seed = 12345;
    for (NormKind k : {NormKind::L1, NormKind::L2, NormKind::Sup}) {
        cfg.norm = k;
        const TestResult a = classical_test(x, 0.05, cfg);
        const TestResult b = classical_test(x, 0.05, cfg);
        REQUIRE(a.bootstrap_draws == b.bootstrap_draws);
        REQUIRE(a.statistic == b.statistic);
        REQUIRE(a.quantile == b.quantile);
    }
    cfg.seed = 12346;
    REQUIRE(classical_test(x, 0.05, cfg).bootstrap_draws != classical_test(x, 0.05, BootstrapConfig{}).bootstrap_draws);
}

TEST_CASE("shared replicates are ordered across norms", "[classical][property]") {
    BootstrapConfig cfg;
    cfg.seed = 77;
    cfg.replicates = 300;
    const auto r = classical_test_all_norms(white_noise(40, 31, 6), 0.05, cfg);
    for (std::size_t b = 0; b < 300; ++b) {
        REQUIRE(r[0].bootstrap_draws[b] <= r[1].bootstrap_draws[b]);
        REQUIRE(r[1].bootstrap_draws[b] <= r[2].bootstrap_draws[b]);
    }
    REQUIRE(r[0].quantile <= r[1].quantile);
    REQUIRE(r[1].quantile <= r[2].quantile);
    REQUIRE(r[0].statistic <= r[1].statistic);
    REQUIRE(r[1].statistic <= r[2].statistic);
}

TEST_CASE("a large noiseless shift is rejected with few replicates", "[classical]") {
    BootstrapConfig cfg;
    cfg.replicates = 20;
    for (NormKind k : {NormKind::L1, NormKind::L2, NormKind::Sup}) {
        cfg.norm = k;
        const TestResult r = classical_test(two_level(100, 21, 50, 5.0), 0.05, cfg);
        REQUIRE(r.reject);
        REQUIRE(r.k_hat == 50);
    }
}

TEST_CASE("null p-values are close to uniform", "[classical][property]") {
    std::vector<double> p;
    for (std::uint64_t r = 0; r < 500; ++r) {
        BootstrapConfig cfg;
        cfg.seed = derive_seed(99, Stream::ExperimentBootstrap, r);
        cfg.block_length = 1;
        p.push_back(classical_test(gen_errors_light_iid(100, Grid::uniform(51), r), 0.05, cfg).p_value);
    }
    std::sort(p.begin(), p.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double lo = static_cast<double>(i) / p.size();
        const double hi = static_cast<double>(i + 1) / p.size();
        ks = std::max({ks, std::abs(p[i] - lo), std::abs(p[i] - hi)});
    }
    REQUIRE(ks <= 0.1);
}

TEST_CASE("block length of a constant sample is one", "[block-length]") {
    const auto x = sample_from(30, Grid::uniform(5), [](std::size_t, double t) { return t; });
    REQUIRE(select_block_length(x) == 1);
}

TEST_CASE("block length is small on iid data", "[block-length]") {
    std::vector<double> ls;
    for (std::uint64_t s = 0; s < 100; ++s) {
        ls.push_back(static_cast<double>(select_block_length(gen_errors_light_iid(100, Grid::uniform(101), s))));
    }
    REQUIRE(l1cp::testing::median(ls) <= 3.0);
}

TEST_CASE("block length grows with serial dependence", "[block-length]") {
    // AR(1) with phi = 0.5: the QS plug-in bandwidth is 1.3221 (16 n)^{1/5} ~ 5.8 at n = 100.
    std::vector<double> ls;
    for (std::uint64_t s = 0; s < 101; ++s) {
        std::mt19937_64 g(s);
        std::normal_distribution<double> z;
        double a = 0.0;
        for (int burn = 0; burn < 50; ++burn) a = 0.5 * a + z(g);
        ls.push_back(static_cast<double>(select_block_length(sample_from(100, Grid::uniform(5), [&](std::size_t, double t) {
            if (t == 0.0) a = 0.5 * a + z(g);
            return a;
        }))));
    }
    const double med = l1cp::testing::median(ls);
    REQUIRE(med >= 4.0);
    REQUIRE(med <= 8.0);
}

TEST_CASE("block length respects the upper clamp and the override", "[block-length]") {
    // A random walk is as dependent as it gets.
    std::mt19937_64 g(3);
    std::normal_distribution<double> z;
    double a = 0.0;
    const auto x = sample_from(100, Grid::uniform(3), [&](std::size_t, double t) {
        if (t == 0.0) a += z(g);
        return a;
    });
    const std::size_t upper = 4 * static_cast<std::size_t>(std::ceil(std::pow(100.0, 2.0 / 7.0)));
    REQUIRE(select_block_length(x) <= upper);
    BootstrapConfig cfg;
    cfg.block_length = 3;
    REQUIRE(resolve_block_length(x, cfg) == 3);
}
