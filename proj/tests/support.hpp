#pragma once

#include "l1cp/functional.hpp"
#include "l1cp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace l1cp::testing {

/// Curves f(i, t) for i = 0..n-1 on the given grid.
inline FunctionalSample sample_from(std::size_t n, const Grid& grid,
                                    const std::function<double(std::size_t, double)>& f) {
    Matrix v(n, grid.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) v(i, j) = f(i, grid.points()[j]);
    }
    return FunctionalSample(std::move(v), grid);
}

/// Zero for the first k curves, then the constant curve `after`.
inline FunctionalSample two_level(std::size_t n, std::size_t m, std::size_t k, double after) {
    return sample_from(n, Grid::uniform(m), [=](std::size_t i, double) { return i < k ? 0.0 : after; });
}

/// Independent N(0, sd^2) values at every grid point.
inline FunctionalSample white_noise(std::size_t n, std::size_t m, std::uint64_t seed, double sd = 1.0) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> z(0.0, sd);
    return sample_from(n, Grid::uniform(m), [&](std::size_t, double) { return z(g); });
}

/// Direct evaluation of U_n(k/n) at one grid column, without partial-sum reuse.
inline double cusum_oracle(const FunctionalSample& x, std::size_t k, std::size_t j) {
    const double n = static_cast<double>(x.n());
    double head = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < x.n(); ++i) {
        total += x.curve(i)[j];
        if (i < k) head += x.curve(i)[j];
    }
    return (head - static_cast<double>(k) / n * total) / n;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t h = v.size() / 2;
    return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace l1cp::testing
