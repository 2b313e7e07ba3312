#pragma once

#include "l1cp/bootstrap.hpp"
#include "l1cp/functional.hpp"

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace l1cp {

/// Segment means around k_hat, their difference and the pointwise sample spread.
struct MeanDiffEstimate {
    Curve mu1_hat;
    Curve mu2_hat;
    Curve d_hat;      ///< mu1_hat - mu2_hat
    Curve sigma_hat;  ///< column standard deviation over all n curves (n - 1 divisor)
    std::size_t n = 0;
    std::size_t k_hat = 0;
};

/// Grid points where the estimated mean difference is indistinguishable from zero.
struct NullSetEstimate {
    std::vector<bool> mask;
    double measure = 0.0;  ///< quadrature weight of the masked points
};

enum class Procedure { P1, P2, P3 };

[[nodiscard]] std::string_view to_string(Procedure p) noexcept;
/// Accepts "p1", "p2", "p3". Throws ConfigError otherwise.
[[nodiscard]] Procedure parse_procedure(std::string_view text);

struct RelevantStatistic {
    double statistic = 0.0;  ///< sqrt(n) (max_s ||U_n(s)||_1 - s_hat (1 - s_hat) delta)
    double s_hat = 0.0;
    std::size_t k_hat = 0;
    double max_l1 = 0.0;     ///< max_s ||U_n(s)||_1
};

struct RelevantTestResult {
    double statistic = 0.0;
    double quantile = 0.0;
    double p_value = 1.0;
    bool reject = false;
    Procedure procedure = Procedure::P3;
    double delta = 0.0;
    double s_hat = 0.0;
    std::size_t k_hat = 0;
    std::size_t block_length = 1;
    std::optional<double> delta_hat_alpha;
    std::optional<NullSetEstimate> null_set;  ///< P1 only
    std::vector<double> bootstrap_draws;
};

struct MinimalDelta {
    double value = 0.0;
    double quantile = 0.0;
    double s_hat = 0.0;
    bool degenerate = false;  ///< s_hat in {0, 1}; value forced to 0
};

/// Throws ConfigError unless 1 <= k_hat <= n - 1.
[[nodiscard]] MeanDiffEstimate estimate_mean_diff(const FunctionalSample& sample, std::size_t k_hat);

/// mask_j = |d_hat(t_j)| <= sigma_hat(t_j) log(n) / sqrt(n).
[[nodiscard]] NullSetEstimate estimate_null_set(const MeanDiffEstimate& est, const Grid& grid);

/// Throws ConfigError for negative delta.
[[nodiscard]] RelevantStatistic relevant_statistic(const FunctionalSample& sample, double delta);

// Bootstrap functionals evaluated on the replicate curve U*(s_hat, .). Each is
// scaled by sqrt(n) so draws and statistic share a scale. For every replicate
// boot_p3 >= boot_p1 >= boot_p2.

/// sqrt(n) (int_{N^c} sgn(d_hat) U* dt + int_N |U*| dt).
[[nodiscard]] double boot_p1(std::span<const double> replicate_row, std::size_t n, const MeanDiffEstimate& est,
                             const NullSetEstimate& null_set, const Grid& grid);
/// sqrt(n) int sgn(d_hat) U* dt.
[[nodiscard]] double boot_p2(std::span<const double> replicate_row, std::size_t n, const MeanDiffEstimate& est,
                             const Grid& grid);
/// sqrt(n) ||U*||_1.
[[nodiscard]] double boot_p3(std::span<const double> replicate_row, std::size_t n, const Grid& grid);

[[nodiscard]] double boot_p1(const CusumProcess& replicate, double s_hat, const MeanDiffEstimate& est,
                             const NullSetEstimate& null_set);
[[nodiscard]] double boot_p2(const CusumProcess& replicate, double s_hat, const MeanDiffEstimate& est);
[[nodiscard]] double boot_p3(const CusumProcess& replicate, double s_hat);

/// Test of H0(delta): ||mu1 - mu2||_1 <= delta. Always uses the L1 norm;
/// cfg.norm is ignored.
[[nodiscard]] RelevantTestResult relevant_test(const FunctionalSample& sample, double delta, Procedure procedure,
                                               double alpha, const BootstrapConfig& cfg);

/// Smallest delta at which relevant_test stops rejecting, obtained by inverting
/// the statistic, which is affine in delta with slope -sqrt(n) s_hat (1 - s_hat):
///   delta_hat = max(0, (max_s ||U_n(s)||_1 - q / sqrt(n)) / (s_hat (1 - s_hat))).
[[nodiscard]] MinimalDelta minimal_delta(const FunctionalSample& sample, double alpha, Procedure procedure,
                                         const BootstrapConfig& cfg);

}  // namespace l1cp
