#pragma once

#include "l1cp/functional.hpp"
#include "l1cp/matrix.hpp"

#include <cstddef>
#include <vector>

namespace l1cp {

/// B-spline basis on [0,1] with equispaced interior knots and clamped ends,
/// laid out like fda's create.bspline.basis(c(0,1), nbasis, norder).
class BSplineBasis {
public:
    explicit BSplineBasis(std::size_t nbasis = 10, std::size_t order = 4);

    [[nodiscard]] std::size_t size() const noexcept { return nbasis_; }
    [[nodiscard]] std::size_t order() const noexcept { return order_; }
    [[nodiscard]] const std::vector<double>& knots() const noexcept { return knots_; }

    /// Values of all basis functions at t in [0,1].
    [[nodiscard]] std::vector<double> evaluate(double t) const;
    /// m x nbasis design matrix on the grid.
    [[nodiscard]] Matrix evaluate(const Grid& grid) const;

private:
    std::size_t nbasis_;
    std::size_t order_;
    std::vector<double> knots_;
};

/// Orthonormal Fourier basis on [0,1]: v_1 = 1, v_{2k} = sqrt2 sin(2 pi k t),
/// v_{2k+1} = sqrt2 cos(2 pi k t).
class FourierBasis {
public:
    explicit FourierBasis(std::size_t nbasis = 21);

    [[nodiscard]] std::size_t size() const noexcept { return nbasis_; }
    [[nodiscard]] std::vector<double> evaluate(double t) const;
    [[nodiscard]] Matrix evaluate(const Grid& grid) const;

private:
    std::size_t nbasis_;
};

/// Curves from basis coefficients: row i of the result is design * coefficients.row(i).
[[nodiscard]] Matrix expand(const Matrix& design, const Matrix& coefficients);

}  // namespace l1cp
