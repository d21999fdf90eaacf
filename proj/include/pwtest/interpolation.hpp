#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pwtest/value.hpp"

namespace pwtest {

/// Interpolating polynomial in Newton divided-difference form.
class NewtonPolynomial {
public:
    /// The unique polynomial of degree < points.size() through `points`, or
    /// nullopt if two points share an x coordinate (or points is empty).
    static std::optional<NewtonPolynomial> through(std::span<const ValuePoint> points);

    double operator()(double x) const noexcept;

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }

    /// Ascending monomial coefficients a_0..a_degree.
    std::vector<double> monomial() const;

private:
    std::vector<double> nodes_;
    std::vector<double> coeffs_;
};

/// Horner evaluation of ascending monomial coefficients.
double eval_monomial(std::span<const double> coeffs, double x) noexcept;

} // namespace pwtest
