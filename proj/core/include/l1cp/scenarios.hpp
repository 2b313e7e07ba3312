#pragma once

#include "l1cp/config.hpp"
#include "l1cp/functional.hpp"
#include "l1cp/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace l1cp {

enum class ErrorKind {
    LightIID,   ///< Brownian motion paths
    HeavyIID,   ///< cubic B-spline curves with t(3) coefficients
    LightFAR,   ///< FAR(1) with Gaussian Fourier innovations
    HeavyFAR,   ///< FAR(1) with t(3) Fourier innovations
    Noiseless,  ///< zero errors
};

enum class Tails { Light, Heavy };

/// Shape of the post-change mean mu2 (before scaling by kappa).
struct MeanKind {
    enum class Shape { Null, Const, Bump, Bumps, Spike, PhiC };
    Shape shape = Shape::Null;
    double c = 0.0;  ///< sparsity parameter, PhiC only

    friend bool operator==(const MeanKind&, const MeanKind&) = default;
};

struct ScenarioSpec {
    std::size_t n = 100;
    std::size_t m = 101;
    ErrorKind error_kind = ErrorKind::LightIID;
    MeanKind mean_kind;
    double kappa = 0.0;
    double s_star = 0.5;
    std::uint64_t seed = 0;

    /// Throws ConfigError unless n >= 2, m >= 2 and 0 < s_star < 1.
    void validate() const;
    friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

[[nodiscard]] std::string to_string(ErrorKind kind);
[[nodiscard]] std::string to_string(const MeanKind& kind);
/// light_iid, heavy_iid, light_far, heavy_far, noiseless
[[nodiscard]] ErrorKind parse_error_kind(std::string_view text);
/// null, const, bump, bumps, spike, phi:<c>
[[nodiscard]] MeanKind parse_mean_kind(std::string_view text);

/// kappa * {0, 1, sin(pi t), sin(4 pi t), 2 exp(-100 (t - 1/2)^2), exp(-c (t - 1/2)^2)}.
[[nodiscard]] Curve gen_mean(const MeanKind& kind, double kappa, const Grid& grid);

/// Standard Brownian motion paths: cumulative N(0, dt) increments, path(0) = 0.
[[nodiscard]] FunctionalSample gen_errors_light_iid(std::size_t n, const Grid& grid, std::uint64_t seed);
/// sum_{k=1}^{10} f_k t_ik over the cubic B-spline basis with raw t(3) coefficients.
[[nodiscard]] FunctionalSample gen_errors_heavy_iid(std::size_t n, const Grid& grid, std::uint64_t seed);

struct FarOptions {
    /// Replaces the random operator (21 x 21, acting on Fourier coefficients).
    std::optional<Matrix> op;
    std::size_t burn_in = 100;
};

/// Random FAR(1) operator: entries N(0, 1/(ij)), rescaled to Frobenius norm 1/sqrt(2).
[[nodiscard]] Matrix far_operator(std::uint64_t seed);

/// FAR(1) errors a_i = Psi a_{i-1} + z_i in the 21-dimensional Fourier coefficient
/// space with z_ik = N_ik / k (light) or T_ik / k (heavy), expanded on the grid.
[[nodiscard]] FunctionalSample gen_errors_far1(std::size_t n, const Grid& grid, std::uint64_t seed, Tails tails,
                                     const FarOptions& options = {});

/// Error curves for any ErrorKind.
[[nodiscard]] FunctionalSample gen_errors(ErrorKind kind, std::size_t n, const Grid& grid, std::uint64_t seed);

/// X_i = eps_i for i <= floor(n s*), X_i = mu2 + eps_i afterwards, on a uniform grid of m points.
[[nodiscard]] FunctionalSample assemble(const ScenarioSpec& spec);

/// Index k* = floor(n s*) of the last pre-change observation.
[[nodiscard]] std::size_t change_index(const ScenarioSpec& spec);
/// ||mu1 - mu2||_1 on the scenario grid.
[[nodiscard]] double true_l1_difference(const ScenarioSpec& spec);

// Plain-text "key = value" form. Keys: n, m, error_kind, mean_kind, kappa, s_star, seed.
[[nodiscard]] std::string to_config(const ScenarioSpec& spec);
/// Reads the scenario keys from cfg; other keys are left for the caller.
/// Missing keys keep their ScenarioSpec defaults.
[[nodiscard]] ScenarioSpec scenario_from_config(const KeyValueConfig& cfg);

}  // namespace l1cp
