#include "l1cp/basis.hpp"

#include "l1cp/error.hpp"

#include <cmath>
#include <numbers>

namespace l1cp {

BSplineBasis::BSplineBasis(std::size_t nbasis, std::size_t order) : nbasis_(nbasis), order_(order) {
    if (order_ < 1 || nbasis_ < order_) throw ConfigError("B-spline basis needs nbasis >= order >= 1");
    const std::size_t interior = nbasis_ - order_;
    knots_.assign(order_, 0.0);
    for (std::size_t k = 1; k <= interior; ++k) {
        knots_.push_back(static_cast<double>(k) / static_cast<double>(interior + 1));
    }
    knots_.insert(knots_.end(), order_, 1.0);
}

std::vector<double> BSplineBasis::evaluate(double t) const {
    // Cox-de Boor recursion. The right end is assigned to the last nonempty span.
    const std::size_t spans = knots_.size() - 1;
    std::vector<double> b(spans, 0.0);
    std::size_t active = order_ - 1;
    while (active + 1 < nbasis_ && t >= knots_[active + 1]) ++active;
    b[active] = 1.0;

    for (std::size_t p = 1; p < order_; ++p) {
        for (std::size_t i = 0; i + p < spans; ++i) {
            double value = 0.0;
            const double left = knots_[i + p] - knots_[i];
            const double right = knots_[i + p + 1] - knots_[i + 1];
            if (left > 0.0) value += (t - knots_[i]) / left * b[i];
            if (right > 0.0) value += (knots_[i + p + 1] - t) / right * b[i + 1];
            b[i] = value;
        }
    }
    b.resize(nbasis_);
    return b;
}

Matrix BSplineBasis::evaluate(const Grid& grid) const {
    Matrix out(grid.size(), nbasis_);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto v = evaluate(grid.points()[j]);
        std::copy(v.begin(), v.end(), out.row(j).begin());
    }
    return out;
}

FourierBasis::FourierBasis(std::size_t nbasis) : nbasis_(nbasis) {
    if (nbasis_ < 1) throw ConfigError("Fourier basis needs at least one function");
}

std::vector<double> FourierBasis::evaluate(double t) const {
    std::vector<double> v(nbasis_);
    v[0] = 1.0;
    for (std::size_t idx = 1; idx < nbasis_; ++idx) {
        const auto k = static_cast<double>((idx + 1) / 2);
        const double arg = 2.0 * std::numbers::pi * k * t;
        v[idx] = std::numbers::sqrt2 * (idx % 2 == 1 ? std::sin(arg) : std::cos(arg));
    }
    return v;
}

Matrix FourierBasis::evaluate(const Grid& grid) const {
    Matrix out(grid.size(), nbasis_);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const auto v = evaluate(grid.points()[j]);
        std::copy(v.begin(), v.end(), out.row(j).begin());
    }
    return out;
}

Matrix expand(const Matrix& design, const Matrix& coefficients) {
    if (design.cols() != coefficients.cols()) throw DimensionError("basis size does not match coefficients");
    Matrix out(coefficients.rows(), design.rows());
    for (std::size_t i = 0; i < coefficients.rows(); ++i) {
        const auto c = coefficients.row(i);
        auto r = out.row(i);
        for (std::size_t j = 0; j < design.rows(); ++j) {
            const auto d = design.row(j);
            double acc = 0.0;
            for (std::size_t k = 0; k < c.size(); ++k) acc += d[k] * c[k];
            r[j] = acc;
        }
    }
    return out;
}

}  // namespace l1cp
