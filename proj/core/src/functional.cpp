#include "l1cp/functional.hpp"

#include "l1cp/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace l1cp {

std::string_view to_string(NormKind kind) noexcept {
    switch (kind) {
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::Sup: return "sup";
    }
    return "?";
}

NormKind parse_norm_kind(std::string_view text) {
    if (text == "l1") return NormKind::L1;
    if (text == "l2") return NormKind::L2;
    if (text == "sup") return NormKind::Sup;
    throw ConfigError("unknown norm '" + std::string(text) + "' (expected l1, l2 or sup)");
}

Grid Grid::uniform(std::size_t m) {
    if (m < 2) throw DimensionError("grid needs at least 2 points");
    std::vector<double> points(m);
    std::vector<double> weights(m, 1.0 / static_cast<double>(m - 1));
    for (std::size_t j = 0; j < m; ++j) {
        points[j] = static_cast<double>(j) / static_cast<double>(m - 1);
    }
    points.back() = 1.0;
    weights.front() *= 0.5;
    weights.back() *= 0.5;
    return Grid(std::move(points), std::move(weights), true);
}

Grid Grid::from_points(std::vector<double> points) {
    const std::size_t m = points.size();
    if (m < 2) throw DimensionError("grid needs at least 2 points");
    if (points.front() != 0.0 || points.back() != 1.0) {
        throw DimensionError("grid must start at 0 and end at 1");
    }
    for (std::size_t j = 1; j < m; ++j) {
        if (!(points[j] > points[j - 1])) throw DimensionError("grid points must be strictly increasing");
    }
    if (Grid u = uniform(m); std::equal(points.begin(), points.end(), u.points_.begin())) return u;
    std::vector<double> weights(m, 0.0);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        const double half = 0.5 * (points[j + 1] - points[j]);
        weights[j] += half;
        weights[j + 1] += half;
    }
    return Grid(std::move(points), std::move(weights), false);
}

double NormTriple::get(NormKind kind) const noexcept {
    switch (kind) {
        case NormKind::L1: return l1;
        case NormKind::L2: return l2;
        case NormKind::Sup: return sup;
    }
    return l1;
}

NormTriple norms(std::span<const double> curve, const Grid& grid) {
    if (curve.size() != grid.size()) {
        throw DimensionError("curve has " + std::to_string(curve.size()) + " values but grid has " +
                             std::to_string(grid.size()) + " points");
    }
    const auto w = grid.weights();
    NormTriple out;
    double sq = 0.0;
    for (std::size_t j = 0; j < curve.size(); ++j) {
        const double a = std::abs(curve[j]);
        out.l1 += w[j] * a;
        sq += w[j] * a * a;
        out.sup = std::max(out.sup, a);
    }
    out.l2 = std::sqrt(sq);
    return out;
}

double norm(std::span<const double> curve, const Grid& grid, NormKind kind) {
    return norms(curve, grid).get(kind);
}

FunctionalSample::FunctionalSample(Matrix values, Grid grid)
    : values_(std::move(values)), grid_(std::move(grid)) {
    if (values_.cols() != grid_.size()) {
        throw DimensionError("sample has " + std::to_string(values_.cols()) + " columns but grid has " +
                             std::to_string(grid_.size()) + " points");
    }
    if (values_.rows() < 2) throw DimensionError("need at least 2 curves");
    for (double v : values_.data()) {
        if (!std::isfinite(v)) throw DimensionError("sample contains a non-finite value");
    }
}

CusumProcess::CusumProcess(Matrix u, Grid grid) : u_(std::move(u)), grid_(std::move(grid)) {
    if (u_.cols() != grid_.size()) throw DimensionError("CUSUM width does not match grid");
    if (u_.rows() < 2) throw DimensionError("CUSUM process needs at least 2 rows");
}

Curve CusumProcess::at(double s) const {
    const std::size_t nn = n();
    s = std::clamp(s, 0.0, 1.0);
    const double pos = s * static_cast<double>(nn);
    const auto lo = std::min(static_cast<std::size_t>(std::floor(pos)), nn);
    const double frac = pos - static_cast<double>(lo);
    Curve out(row(lo).begin(), row(lo).end());
    if (frac > 0.0 && lo < nn) {
        const auto hi = row(lo + 1);
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += frac * (hi[j] - out[j]);
    }
    return out;
}

CusumProcess cusum(const FunctionalSample& sample) {
    const std::size_t n = sample.n();
    const std::size_t m = sample.m();
    const double inv_n = 1.0 / static_cast<double>(n);

    std::vector<double> total(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto x = sample.curve(i);
        for (std::size_t j = 0; j < m; ++j) total[j] += x[j];
    }

    Matrix u(n + 1, m, 0.0);
    std::vector<double> partial(m, 0.0);
    for (std::size_t k = 1; k < n; ++k) {
        const auto x = sample.curve(k - 1);
        const double frac = static_cast<double>(k) * inv_n;
        auto r = u.row(k);
        for (std::size_t j = 0; j < m; ++j) {
            partial[j] += x[j];
            r[j] = inv_n * (partial[j] - frac * total[j]);
        }
    }
    // Row n is exactly zero: S_n(1) - 1 * S_n(1).
    return CusumProcess(std::move(u), sample.grid());
}

NormArgmax argmax_norm(const CusumProcess& process, NormKind kind) {
    const std::size_t n = process.n();
    NormArgmax best;
    for (std::size_t k = 0; k <= n; ++k) {
        const double v = norm(process.row(k), process.grid(), kind);
        if (v > best.max_norm) {
            best.max_norm = v;
            best.k_hat = k;
        }
    }
    best.s_hat = static_cast<double>(best.k_hat) / static_cast<double>(n);
    best.statistic = std::sqrt(static_cast<double>(n)) * best.max_norm;
    return best;
}

Curve segment_mean(const FunctionalSample& sample, std::size_t begin, std::size_t end) {
    if (begin >= end || end > sample.n()) throw DimensionError("empty or out-of-range segment");
    Curve mean(sample.m(), 0.0);
    for (std::size_t i = begin; i < end; ++i) {
        const auto x = sample.curve(i);
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += x[j];
    }
    const double inv = 1.0 / static_cast<double>(end - begin);
    for (double& v : mean) v *= inv;
    return mean;
}

}  // namespace l1cp
