#pragma once

#include "l1cp/functional.hpp"
#include "l1cp/matrix.hpp"
#include "l1cp/rng.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace l1cp {

struct BootstrapConfig {
    /// Block length l. Empty means "select from the data" (see select_block_length).
    std::optional<std::size_t> block_length;
    std::size_t replicates = 200;
    std::uint64_t seed = 0;
    NormKind norm = NormKind::L1;

    /// Throws ConfigError unless 1 <= l <= n - 1 (when set) and replicates >= 1.
    void validate(std::size_t n) const;
};

struct TestResult {
    double statistic = 0.0;
    double quantile = 0.0;
    double p_value = 1.0;
    bool reject = false;
    double s_hat = 0.0;
    std::size_t k_hat = 0;
    std::size_t block_length = 1;
    NormKind norm = NormKind::L1;
    std::vector<double> bootstrap_draws;
};

/// Subtracts the estimated jump from every observation after k_hat.
///
/// With mu1 the mean of X_1..X_k and mu2 the mean of X_{k+1}..X_n, returns
/// Y_i = X_i for i <= k and Y_i = X_i - (mu2 - mu1) for i > k (1-based). Both
/// segment means of the result equal mu1. Throws ConfigError unless 1 <= k_hat <= n-1.
[[nodiscard]] FunctionalSample demean_by_segments(const FunctionalSample& sample, std::size_t k_hat);

/// Dependent multiplier block bootstrap for the CUSUM process.
///
/// Precomputes the centred block sums
///   C_i = sum_{j=0}^{l-1} Y_{i+j} - (l/n) sum_{j=1}^n Y_j,   i = 1..n-l,
/// after which each replicate is
///   S*(k/n) = (1/(n sqrt l)) sum_{i <= min(k, n-l)} nu_i C_i,
///   U*(k/n) = S*(k/n) - (k/n) S*(1),
/// with S* held constant on [(n-l)/n, 1]. Only the first n - l multipliers are used.
class MultiplierBootstrap {
public:
    /// Throws ConfigError unless 1 <= block_length <= n - 1.
    MultiplierBootstrap(const FunctionalSample& demeaned, std::size_t block_length);

    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] std::size_t block_length() const noexcept { return l_; }
    [[nodiscard]] const Grid& grid() const noexcept { return grid_; }

    /// Full replicate U*. multipliers must hold at least n - l values.
    [[nodiscard]] CusumProcess replicate(std::span<const double> multipliers) const;
    /// sqrt(n) * max_k ||U*(k/n)|| for all three norms from one multiplier draw.
    [[nodiscard]] NormTriple max_statistics(std::span<const double> multipliers) const;
    /// U*(k/n) for a single knot k.
    [[nodiscard]] Curve row(std::span<const double> multipliers, std::size_t k) const;

    /// Standard normal multipliers for replicate b of the given substream family.
    [[nodiscard]] std::vector<double> multipliers(std::uint64_t seed, Stream stream, std::size_t b) const;

private:
    std::size_t n_;
    std::size_t l_;
    Grid grid_;
    Matrix blocks_;  // (n - l) x m, row i-1 holds C_i
};

/// Replicate U* from explicit multipliers (n values; entries past n - l are unused).
[[nodiscard]] CusumProcess bootstrap_cusum_replicate(const FunctionalSample& y, std::size_t block_length,
                                                     std::span<const double> multipliers);

/// ceil(level * B)-th smallest draw (1-based, clamped to [1, B]).
[[nodiscard]] double bootstrap_quantile(std::span<const double> draws, double level);
/// (1 + #{draws >= statistic}) / (B + 1).
[[nodiscard]] double bootstrap_p_value(std::span<const double> draws, double statistic);

/// Block length from a quadratic-spectral plug-in rule on a scalar projection of the
/// curves. Deterministic in the sample; returns 1 for constant samples.
[[nodiscard]] std::size_t select_block_length(const FunctionalSample& sample);

/// Block length from cfg if set, otherwise selected from the sample; clamped to n - 1.
[[nodiscard]] std::size_t resolve_block_length(const FunctionalSample& sample, const BootstrapConfig& cfg);

/// Classical test of equal means: rejects when sqrt(n) max_s ||U_n(s)|| exceeds the
/// bootstrap quantile. Throws ConfigError for alpha outside (0,1) or an invalid cfg.
[[nodiscard]] TestResult classical_test(const FunctionalSample& sample, double alpha, const BootstrapConfig& cfg);

/// Classical test under L1, L2 and sup norms sharing one set of multipliers.
/// cfg.norm is ignored; results are indexed L1, L2, Sup.
[[nodiscard]] std::array<TestResult, 3> classical_test_all_norms(const FunctionalSample& sample, double alpha,
                                                                 const BootstrapConfig& cfg);

}  // namespace l1cp
