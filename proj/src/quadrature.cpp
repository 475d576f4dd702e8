#include "idelta/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace idelta {

GaussLegendre::GaussLegendre(std::size_t order) : nodes_(order), weights_(order)
{
    if (order == 0) {
        throw std::invalid_argument("Gauss-Legendre order must be positive");
    }
    const std::size_t n = order;
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes_[i] = -x;
        nodes_[n - 1 - i] = x;
        weights_[i] = w;
        weights_[n - 1 - i] = w;
    }
}

const GaussLegendre& gauss_legendre_16()
{
    static const GaussLegendre rule(16);
    return rule;
}

std::vector<double> graded_breaks(double b, int levels)
{
    std::vector<double> breaks;
    breaks.reserve(static_cast<std::size_t>(levels) + 2);
    breaks.push_back(0.0);
    for (int k = levels; k >= 0; --k) {
        breaks.push_back(std::ldexp(b, -k));
    }
    return breaks;
}

} // namespace idelta
