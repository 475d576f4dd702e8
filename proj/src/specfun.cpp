#include "idelta/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace idelta {

namespace {

constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;

// log(DBL_MAX); exp() of anything larger overflows.
constexpr double max_exp_arg = 709.782712893384;

// Weideman's rational approximation, "Computation of the complex error
// function", SIAM J. Numer. Anal. 31 (1994). N terms, L = sqrt(N / sqrt 2).
constexpr int weideman_terms = 40;

struct WeidemanTable {
    double scale;
    std::array<double, weideman_terms> coeff; // p(Z) = sum_n coeff[n] Z^n
};

WeidemanTable build_weideman()
{
    WeidemanTable table{};
    const int n_terms = weideman_terms;
    const int m = 2 * n_terms;
    const double scale = std::sqrt(n_terms / std::numbers::sqrt2);
    table.scale = scale;

    // f(t) = e^{-t^2}(L^2 + t^2) sampled at t_k = L tan(k pi / 2M), |k| < M.
    std::array<double, 2 * 2 * weideman_terms> samples{};
    for (int k = -m + 1; k <= m - 1; ++k) {
        const double t = scale * std::tan(0.5 * k * std::numbers::pi / m);
        samples[static_cast<std::size_t>(k + m)] = std::exp(-t * t) * (scale * scale + t * t);
    }
    for (int n = 1; n <= n_terms; ++n) {
        double sum = 0.0;
        for (int k = -m + 1; k <= m - 1; ++k) {
            sum += samples[static_cast<std::size_t>(k + m)] * std::cos(std::numbers::pi * n * k / m);
        }
        table.coeff[static_cast<std::size_t>(n - 1)] = sum / (2.0 * m);
    }
    return table;
}

const WeidemanTable& weideman()
{
    static const WeidemanTable table = build_weideman();
    return table;
}

cplx w_rational(cplx z)
{
    const WeidemanTable& tab = weideman();
    const cplx iz(-z.imag(), z.real());
    const cplx denom = tab.scale - iz;
    const cplx big_z = (tab.scale + iz) / denom;
    cplx p = tab.coeff.back();
    for (int n = weideman_terms - 2; n >= 0; --n) {
        p = p * big_z + tab.coeff[static_cast<std::size_t>(n)];
    }
    return 2.0 * p / (denom * denom) + inv_sqrt_pi / denom;
}

// Laplace continued fraction
//   w(z) = (i/sqrt pi) / (z - (1/2)/(z - 1/(z - (3/2)/(z - ...)))),
// evaluated bottom-up from a fixed depth.
cplx continued_fraction_tail(cplx z)
{
    const double r2 = std::norm(z);
    const int depth = 12 + static_cast<int>(2000.0 / r2);
    cplx tail(0.0, 0.0);
    for (int n = depth; n >= 1; --n) {
        tail = (0.5 * n) / (z - tail);
    }
    return tail;
}

cplx w_continued_fraction(cplx z)
{
    return cplx(0.0, inv_sqrt_pi) / (z - continued_fraction_tail(z));
}

cplx w_upper(cplx z)
{
    if (std::norm(z) >= 64.0) {
        return w_continued_fraction(z);
    }
    return w_rational(z);
}

// e^{-z^2}, flagging overflow when Re(-z^2) leaves the double range.
cplx exp_minus_square(cplx z, SpecStatus& status)
{
    const double x = z.real();
    const double y = z.imag();
    const double re = (y - x) * (y + x);
    if (re > max_exp_arg) {
        status.overflow = true;
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    return std::exp(re) * cplx(std::cos(-2.0 * x * y), std::sin(-2.0 * x * y));
}

// Real form of the same fraction: erfcx(x) = 1 / (sqrt(pi) (x + tail)).
double real_fraction_tail(double x)
{
    const int depth = 8 + static_cast<int>(1200.0 / (x * x));
    double tail = 0.0;
    for (int n = depth; n >= 1; --n) {
        tail = (0.5 * n) / (x + tail);
    }
    return tail;
}

double erfcx_positive(double x)
{
    if (x < 5.0) {
        return std::exp(x * x) * std::erfc(x);
    }
    return inv_sqrt_pi / (x + real_fraction_tail(x));
}

} // namespace

double erfcx(double x, SpecStatus& status)
{
    if (x >= 0.0) {
        return erfcx_positive(x);
    }
    const double x2 = x * x;
    if (x2 > max_exp_arg) {
        status.overflow = true;
        return std::numeric_limits<double>::infinity();
    }
    return 2.0 * std::exp(x2) - erfcx_positive(-x);
}

double erfcx(double x)
{
    SpecStatus ignored;
    return erfcx(x, ignored);
}

cplx faddeeva_w(cplx z, SpecStatus& status)
{
    if (z.imag() >= 0.0) {
        return w_upper(z);
    }
    const cplx e = exp_minus_square(z, status);
    if (status.overflow) {
        return e;
    }
    return 2.0 * e - w_upper(-z);
}

cplx faddeeva_w(cplx z)
{
    SpecStatus ignored;
    return faddeeva_w(z, ignored);
}

cplx erfc_complex(cplx z, SpecStatus& status)
{
    if (z.real() < 0.0) {
        // w(iz) grows like e^{z^2} in the left half-plane; reflect instead.
        const cplx r = erfc_complex(-z, status);
        return status.overflow ? r : 2.0 - r;
    }
    const cplx iz(-z.imag(), z.real());
    const cplx w = faddeeva_w(iz, status);
    if (status.overflow) {
        return w;
    }
    const cplx e = exp_minus_square(z, status);
    if (status.overflow) {
        return e;
    }
    return e * w;
}

cplx erfc_complex(cplx z)
{
    SpecStatus ignored;
    return erfc_complex(z, ignored);
}

cplx erfcx_remainder(cplx z)
{
    if (z.real() >= 0.0 && std::norm(z) >= 64.0) {
        // erfcx(z) = w(iz) = 1 / (sqrt(pi) (z + i T)) with T the fraction tail at iz.
        const cplx it = cplx(0.0, 1.0) * continued_fraction_tail(cplx(-z.imag(), z.real()));
        return -inv_sqrt_pi * it / (z * (z + it));
    }
    return erfcx_complex(z) - inv_sqrt_pi / z;
}

double erfcx_remainder(double x)
{
    if (x >= 5.0) {
        const double tail = real_fraction_tail(x);
        return -inv_sqrt_pi * tail / (x * (x + tail));
    }
    return erfcx(x) - inv_sqrt_pi / x;
}

cplx sqrt_principal(cplx z)
{
    if (z.imag() == 0.0 && z.real() < 0.0) {
        return {0.0, std::sqrt(-z.real())};
    }
    return std::sqrt(z);
}

} // namespace idelta
