#include "pwtest/interpolation.hpp"

namespace pwtest {

std::optional<NewtonPolynomial> NewtonPolynomial::through(std::span<const ValuePoint> points) {
    if (points.empty()) {
        return std::nullopt;
    }
    NewtonPolynomial p;
    const std::size_t n = points.size();
    p.nodes_.resize(n);
    p.coeffs_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        p.nodes_[i] = points[i].x;
        p.coeffs_[i] = points[i].y;
    }
    // In-place divided-difference table; coeffs_[i] ends as f[x_0..x_i].
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            const double dx = p.nodes_[i] - p.nodes_[i - level];
            if (dx == 0.0) {
                return std::nullopt;
            }
            p.coeffs_[i] = (p.coeffs_[i] - p.coeffs_[i - 1]) / dx;
        }
    }
    return p;
}

double NewtonPolynomial::operator()(double x) const noexcept {
    double acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        acc = acc * (x - nodes_[i]) + coeffs_[i];
    }
    return acc;
}

std::vector<double> NewtonPolynomial::monomial() const {
    // Expand the nested form from the innermost factor outwards.
    std::vector<double> out{coeffs_.back()};
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        std::vector<double> next(out.size() + 1, 0.0);
        for (std::size_t j = 0; j < out.size(); ++j) {
            next[j + 1] += out[j];
            next[j] -= nodes_[i] * out[j];
        }
        next[0] += coeffs_[i];
        out = std::move(next);
    }
    return out;
}

double eval_monomial(std::span<const double> coeffs, double x) noexcept {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = acc * x + coeffs[i];
    }
    return acc;
}

} // namespace pwtest
