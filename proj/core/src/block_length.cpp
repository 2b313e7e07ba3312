#include "l1cp/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace l1cp {

namespace {

// Projects every curve onto the sample mean curve, falling back to the first
// grid coordinate when the mean curve vanishes.
std::vector<double> scalar_projection(const FunctionalSample& sample) {
    const std::size_t n = sample.n();
    const std::size_t m = sample.m();
    const auto w = sample.grid().weights();
    const Curve mean = segment_mean(sample, 0, n);

    double mean_norm = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < m; ++j) mean_norm += w[j] * mean[j] * mean[j];
    for (double v : sample.values().data()) scale = std::max(scale, std::abs(v));
    mean_norm = std::sqrt(mean_norm);

    std::vector<double> y(n, 0.0);
    if (mean_norm > 1e-12 * std::max(scale, 1e-300)) {
        for (std::size_t i = 0; i < n; ++i) {
            const auto x = sample.curve(i);
            double dot = 0.0;
            for (std::size_t j = 0; j < m; ++j) dot += w[j] * x[j] * mean[j];
            y[i] = dot / mean_norm;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) y[i] = sample.curve(i)[0];
    }
    return y;
}

// Lag-1 autocorrelation, kept away from the unit root.
double lag_one_autocorrelation(std::span<const double> y) {
    const std::size_t n = y.size();
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    double c0 = 0.0;
    double c1 = 0.0;
    double sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sumsq += y[i] * y[i];
        c0 += (y[i] - mean) * (y[i] - mean);
        if (i > 0) c1 += (y[i] - mean) * (y[i - 1] - mean);
    }
    // Rounding noise on a constant series carries no dependence information.
    if (!(c0 > 1e-20 * sumsq) || !std::isfinite(c0)) return std::nan("");
    return std::clamp(c1 / c0, -0.97, 0.97);
}

}  // namespace

std::size_t select_block_length(const FunctionalSample& sample) {
    const std::size_t n = sample.n();
    const auto upper = std::min<std::size_t>(
        n - 1, 4 * static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), 2.0 / 7.0))));

    const double rho = lag_one_autocorrelation(scalar_projection(sample));
    if (std::isnan(rho)) return 1;

    // Quadratic-spectral kernel with an AR(1) plug-in for the spectral curvature:
    // bandwidth = 1.3221 (alpha(2) n)^{1/5}, alpha(2) = 4 rho^2 / (1 - rho)^4.
    const double alpha2 = 4.0 * rho * rho / std::pow(1.0 - rho, 4.0);
    const double bandwidth = 1.3221 * std::pow(alpha2 * static_cast<double>(n), 0.2);
    const auto l = static_cast<std::size_t>(std::llround(bandwidth));
    return std::clamp<std::size_t>(l, 1, std::max<std::size_t>(upper, 1));
}

}  // namespace l1cp
