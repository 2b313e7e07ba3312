#pragma once

#include "l1cp/matrix.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace l1cp {

/// Values of one curve at the points of a Grid.
using Curve = std::vector<double>;

enum class NormKind { L1, L2, Sup };

[[nodiscard]] std::string_view to_string(NormKind kind) noexcept;
/// Accepts "l1", "l2", "sup" (case-sensitive). Throws ConfigError otherwise.
[[nodiscard]] NormKind parse_norm_kind(std::string_view text);

/// Ordered evaluation points on [0,1] with trapezoid quadrature weights.
///
/// Invariants: first point 0, last point 1, strictly increasing, at least two
/// points; weights are nonnegative and sum to one.
class Grid {
public:
    /// Uniform grid of m points with weights 1/(2(m-1)) at the ends and 1/(m-1) inside.
    [[nodiscard]] static Grid uniform(std::size_t m);
    /// Arbitrary grid; weights are the trapezoid rule for the given spacing.
    [[nodiscard]] static Grid from_points(std::vector<double> points);

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] std::span<const double> points() const noexcept { return points_; }
    [[nodiscard]] std::span<const double> weights() const noexcept { return weights_; }
    [[nodiscard]] bool is_uniform() const noexcept { return uniform_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    Grid(std::vector<double> points, std::vector<double> weights, bool uniform)
        : points_(std::move(points)), weights_(std::move(weights)), uniform_(uniform) {}

    std::vector<double> points_;
    std::vector<double> weights_;
    bool uniform_ = false;
};

/// L1, L2 and sup norm of one curve, computed in a single pass.
struct NormTriple {
    double l1 = 0.0;
    double l2 = 0.0;
    double sup = 0.0;

    [[nodiscard]] double get(NormKind kind) const noexcept;
};

/// Discretized norm: L1 = sum w|c|, L2 = sqrt(sum w c^2), Sup = max |c|.
/// Throws DimensionError when the curve length differs from the grid size.
[[nodiscard]] double norm(std::span<const double> curve, const Grid& grid, NormKind kind);
[[nodiscard]] NormTriple norms(std::span<const double> curve, const Grid& grid);

/// n curves observed on a common grid, stored in temporal order.
class FunctionalSample {
public:
    /// Throws DimensionError if values.cols() != grid.size(), n < 2, or any entry is non-finite.
    FunctionalSample(Matrix values, Grid grid);

    [[nodiscard]] std::size_t n() const noexcept { return values_.rows(); }
    [[nodiscard]] std::size_t m() const noexcept { return values_.cols(); }
    [[nodiscard]] std::span<const double> curve(std::size_t i) const noexcept { return values_.row(i); }
    [[nodiscard]] const Matrix& values() const noexcept { return values_; }
    [[nodiscard]] const Grid& grid() const noexcept { return grid_; }

    friend bool operator==(const FunctionalSample&, const FunctionalSample&) = default;

private:
    Matrix values_;
    Grid grid_;
};

/// CUSUM field U_n(k/n, t_j) for k = 0..n. Row 0 and row n are zero.
class CusumProcess {
public:
    CusumProcess(Matrix u, Grid grid);

    /// Number of observations n (the process has n + 1 rows).
    [[nodiscard]] std::size_t n() const noexcept { return u_.rows() - 1; }
    [[nodiscard]] std::span<const double> row(std::size_t k) const noexcept { return u_.row(k); }
    [[nodiscard]] const Matrix& values() const noexcept { return u_; }
    [[nodiscard]] const Grid& grid() const noexcept { return grid_; }

    /// U_n(s) for arbitrary s in [0,1], linear between knots k/n.
    [[nodiscard]] Curve at(double s) const;

private:
    Matrix u_;
    Grid grid_;
};

/// U_n(k/n) = (1/n)(sum_{i<=k} X_i - (k/n) sum_{i<=n} X_i) at every knot.
[[nodiscard]] CusumProcess cusum(const FunctionalSample& sample);

struct NormArgmax {
    double s_hat = 0.0;
    std::size_t k_hat = 0;
    double statistic = 0.0;  ///< sqrt(n) * max_k ||U_n(k/n)||
    double max_norm = 0.0;   ///< max_k ||U_n(k/n)|| without the sqrt(n) factor
};

/// Location and size of the largest CUSUM norm.
///
/// Each U_n(., t) is piecewise linear in s and every norm is convex, so along a
/// segment between two knots the norm is bounded by its endpoint values. The
/// maximum over s in [0,1] is therefore attained at a knot and the search runs
/// over k = 0..n only. Ties resolve to the smallest k.
[[nodiscard]] NormArgmax argmax_norm(const CusumProcess& process, NormKind kind);

/// Pointwise mean of curves [begin, end).
[[nodiscard]] Curve segment_mean(const FunctionalSample& sample, std::size_t begin, std::size_t end);

}  // namespace l1cp
