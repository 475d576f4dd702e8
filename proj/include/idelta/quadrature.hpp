#pragma once

#include <cstddef>
#include <vector>

namespace idelta {

/// Gauss-Legendre rule on [-1, 1]; nodes by Newton iteration on P_n.
class GaussLegendre {
public:
    explicit GaussLegendre(std::size_t order);

    std::size_t order() const noexcept { return nodes_.size(); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    /// Integral of f over [a, b].
    template <class F>
    auto integrate(F&& f, double a, double b) const -> decltype(f(a))
    {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        decltype(f(a)) sum{};
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            sum += weights_[i] * f(mid + half * nodes_[i]);
        }
        return sum * half;
    }

    /// Composite rule over consecutive breakpoints.
    template <class F>
    auto integrate_panels(F&& f, const std::vector<double>& breaks) const -> decltype(f(0.0))
    {
        decltype(f(0.0)) sum{};
        for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
            sum += integrate(f, breaks[p], breaks[p + 1]);
        }
        return sum;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

/// The shared 16-point rule.
const GaussLegendre& gauss_legendre_16();

/// Breakpoints 0, b 2^{-levels}, ..., b/4, b/2, b: panels shrinking
/// geometrically toward 0.
std::vector<double> graded_breaks(double b, int levels);

} // namespace idelta
