#include "idelta/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "idelta/error.hpp"
#include "idelta/propagators.hpp"
#include "idelta/quadrature.hpp"
#include "idelta/specfun.hpp"

namespace idelta {

namespace {

constexpr double pi = std::numbers::pi;
const double inv_sqrt_pi = 1.0 / std::sqrt(pi);
constexpr cplx I{0.0, 1.0};

void require_positive(double t, const char* what)
{
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError(what);
    }
}

// Unit-integral Gaussian profile folded onto y >= 0.
cplx folded_profile(cplx y, double x0, double a)
{
    const double norm = 1.0 / (std::sqrt(2.0 * pi) * a);
    const cplx dm = y - x0;
    const cplx dp = y + x0;
    return norm * (std::exp(-dm * dm / (2.0 * a * a)) + std::exp(-dp * dp / (2.0 * a * a)));
}

// Source position may be complex (rotated quadrature paths); Re z >= 0 on
// every path used here, so erfcx never takes the reflected branch.
cplx boundary_value_at(cplx tau, cplx c, cplx x0)
{
    const cplx root = sqrt_principal(tau);
    const cplx gauss = x0 == 0.0 ? cplx(1.0, 0.0) : std::exp(-x0 * x0 / (4.0 * tau));
    if (c == 0.0) {
        return 0.5 * gauss * inv_sqrt_pi / root;
    }
    const cplx z = c * root + x0 / (2.0 * root);
    if (z.real() >= 0.0 && std::norm(z) >= 64.0) {
        // 1/sqrt(pi tau) - c/(sqrt(pi) z) = x0 / (2 sqrt(pi) tau z) exactly.
        const cplx bracket = x0 * inv_sqrt_pi / (2.0 * tau * z) - c * erfcx_remainder(z);
        return 0.5 * gauss * bracket;
    }
    return 0.5 * gauss * (inv_sqrt_pi / root - c * erfcx_complex(z));
}

} // namespace

TransplantParams transplant(const QuantumParams& q)
{
    const auto c = map_quantum_to_diffusion(q);
    return {c.diffusion(), c.killing(), q.source()};
}

TransplantParams transplant(const DiffusionParams& d)
{
    return {cplx(1.0, 0.0), cplx(d.killing() / d.diffusion(), 0.0), d.source()};
}

KernelSpec transplant_kernel(const TransplantParams& p)
{
    return {p.killing / (2.0 * sqrt_principal(pi * p.diffusion))};
}

cplx boundary_value(cplx tau, cplx kappa_over_2d, double x0)
{
    return boundary_value_at(tau, kappa_over_2d, cplx(std::abs(x0), 0.0));
}

cplx boundary_amplitude_analytic(double t, const TransplantParams& p)
{
    require_positive(t, "boundary amplitude needs t > 0");
    return boundary_value(p.diffusion * t, p.killing / (2.0 * p.diffusion), p.source);
}

double boundary_density_diffusion(double tau, const DiffusionParams& d)
{
    require_positive(tau, "boundary density needs tau > 0");
    const double c = d.killing() / (2.0 * d.diffusion());
    const double x0 = std::abs(d.source());
    const double root = std::sqrt(tau);
    const double gauss = std::exp(-x0 * x0 / (4.0 * tau));
    if (c == 0.0) {
        return 0.5 * gauss * inv_sqrt_pi / root;
    }
    const double z = c * root + x0 / (2.0 * root);
    if (z >= 5.0) {
        return 0.5 * gauss * (x0 * inv_sqrt_pi / (2.0 * tau * z) - c * erfcx_remainder(z));
    }
    return 0.5 * gauss * (inv_sqrt_pi / root - c * erfcx(z));
}

cplx laplace_boundary_density(cplx s, const DiffusionParams& d)
{
    if (!(s.real() > 0.0)) {
        throw DomainError("Laplace variable needs Re s > 0");
    }
    const cplx root = sqrt_principal(s);
    return std::exp(-std::abs(d.source()) * root) / (2.0 * root + d.killing() / d.diffusion());
}

cplx boundary_amplitude_quantum(double t, const QuantumParams& q)
{
    if (!q.point_source()) {
        throw InvalidParameter("boundary_amplitude_quantum needs point-source data (a == 0)");
    }
    return boundary_amplitude_analytic(t, transplant(q));
}

cplx boundary_amplitude_quantum_gaussian(double t, const QuantumParams& q, int quadrature_nodes,
                                         int max_nodes)
{
    if (q.point_source()) {
        throw InvalidParameter("Gaussian amplitude needs a > 0");
    }
    require_positive(t, "Gaussian amplitude needs t > 0");
    if (quadrature_nodes < 16) {
        throw InvalidParameter("quadrature needs at least 16 nodes");
    }
    const TransplantParams p = transplant(q);
    const double a = q.packet_width();
    const double x0 = std::abs(q.source());
    const cplx tau = p.diffusion * t;
    const cplx c = p.killing / (2.0 * p.diffusion);

    // Combined quadratic exponent -A y^2 + (x0/a^2) y; rotate y onto arg -arg(A)/2.
    const cplx quad = 1.0 / (2.0 * a * a) + 1.0 / (4.0 * tau);
    const double theta = -0.5 * std::arg(quad);
    const cplx dir = std::polar(1.0, theta);
    const double alpha = std::abs(quad);
    const double beta = (x0 / (a * a)) * std::cos(theta);
    const double peak = std::max(0.0, beta / (2.0 * alpha));
    const double rho_max = peak + std::sqrt(90.0 / alpha);

    const auto integrand = [&](double rho) {
        const cplx y = rho * dir;
        return boundary_value_at(tau, c, y) * folded_profile(y, x0, a);
    };
    const auto& gl = gauss_legendre_16();
    const auto estimate = [&](int nodes) {
        const int panels = std::max(1, nodes / 16);
        std::vector<double> breaks(static_cast<std::size_t>(panels) + 1);
        for (int i = 0; i <= panels; ++i) {
            breaks[static_cast<std::size_t>(i)] = rho_max * i / panels;
        }
        return dir * gl.integrate_panels(integrand, breaks);
    };

    const int limit = max_nodes == 0 ? 2 * quadrature_nodes : max_nodes;
    int nodes = quadrature_nodes;
    cplx current = estimate(nodes);
    while (2 * nodes <= limit) {
        nodes *= 2;
        const cplx next = estimate(nodes);
        if (std::abs(next - current) <= 1e-8 * std::abs(next) + 1e-300) {
            return next;
        }
        current = next;
    }
    throw NonConvergence("Gaussian superposition did not reach 1e-8 within the node budget");
}

AsymptoticCoefficients transplant_asymptotics(const TransplantParams& p)
{
    if (p.killing == 0.0) {
        throw DomainError("no t^{-3/2} law without killing");
    }
    const cplx d = p.diffusion;
    const cplx k = p.killing;
    const double x0 = std::abs(p.source);
    const cplx tau_coef = (k * x0 + 2.0 * d) * d / (2.0 * k * k * std::sqrt(pi));
    return {tau_coef / (d * sqrt_principal(d)), -1.5};
}

AsymptoticCoefficients diffusion_asymptotics(const DiffusionParams& d)
{
    if (d.killing() == 0.0) {
        throw DomainError("no t^{-3/2} law without killing");
    }
    const double dd = d.diffusion();
    const double k = d.killing();
    const double x0 = std::abs(d.source());
    return {cplx((k * x0 + 2.0 * dd) * dd / (2.0 * k * k * std::sqrt(pi)), 0.0), -1.5};
}

double asymptotic_boundary_density(double tau, const DiffusionParams& d)
{
    require_positive(tau, "asymptote needs tau > 0");
    return diffusion_asymptotics(d).leading_amplitude.real() * std::pow(tau, -1.5);
}

GaussianAsymptoticTerms asymptotic_phi_gaussian_terms(double t, const QuantumParams& q)
{
    if (q.point_source()) {
        throw InvalidParameter("Gaussian asymptote needs a > 0");
    }
    require_positive(t, "asymptote needs t > 0");
    const double hbar = q.hbar();
    const double m = q.mass();
    const double k = q.coupling();
    const double a = q.packet_width();
    const double x0 = q.source();
    if (!(hbar * t > 10.0 * m * a * a)) {
        throw OutOfRegime("asymptote needs hbar t > 10 m a^2");
    }
    const cplx den = cplx(hbar * t, -m * a * a);
    const cplx root = sqrt_principal(den);
    const cplx first = cplx(1.0, -1.0) * std::sqrt(m) / (2.0 * root * std::sqrt(pi)) *
                       std::exp(0.5 * I * x0 * x0 * m / den);
    const cplx fourth_root_minus_one = std::polar(1.0, pi / 4.0);
    const cplx numer = 4.0 * x0 * x0 * hbar * hbar * hbar + I * k * k * t * m * a * a -
                       k * k * t * t * hbar;
    const cplx second = -(1.0 / 16.0) * fourth_root_minus_one / hbar * std::sqrt(2.0) / root * k *
                        std::sqrt(m) / std::sqrt(pi) *
                        std::exp(0.125 * I * m * numer / (den * hbar * hbar * hbar));
    return {first, second};
}

cplx asymptotic_phi_gaussian(double t, const QuantumParams& q)
{
    const auto terms = asymptotic_phi_gaussian_terms(t, q);
    return terms.free_term + terms.oscillatory_term;
}

ScatteringResult stationary_scattering(double wavenumber, const QuantumParams& q)
{
    if (!(wavenumber > 0.0) || !std::isfinite(wavenumber)) {
        throw InvalidParameter("scattering needs a positive wavenumber");
    }
    const double u = q.mass() * q.coupling() / (2.0 * q.hbar() * q.hbar() * wavenumber);
    return {cplx(-u / (1.0 + u), 0.0), cplx(1.0 / (1.0 + u), 0.0),
            2.0 * u / ((1.0 + u) * (1.0 + u))};
}

cplx closed_form_history(double t, double t_split, const TransplantParams& p)
{
    if (t_split <= 0.0) {
        return {};
    }
    if (!(t >= t_split)) {
        throw InvalidParameter("history needs t >= t_split");
    }
    const cplx lambda = transplant_kernel(p).coefficient;
    const cplx d = p.diffusion;
    const cplx c = p.killing / (2.0 * d);
    const double x0 = std::abs(p.source);
    const auto& gl = gauss_legendre_16();
    // lag = t - s, passed separately so it keeps full relative accuracy near s = t_split.
    const auto memory = [&](cplx s, cplx lag) {
        return lambda / sqrt_principal(lag) * boundary_value(d * s, c, x0);
    };
    const double gap = t - t_split;

    if (x0 > 0.0) {
        const cplx beta = 4.0 * d / (x0 * x0);
        const auto integrand = [&](double v) {
            const cplx bu = beta * (v * v);
            const cplx s = 1.0 / (1.0 / t_split + bu);
            const cplx lag = s * (gap / t_split + t * bu);
            return memory(s, lag) * beta * s * s * (2.0 * v);
        };
        return gl.integrate_panels(integrand, graded_breaks(8.0, 24));
    }
    // s = t_split cos^2 v: both endpoint singularities cancel against ds.
    const auto integrand = [&](double v) {
        const double cv = std::cos(v);
        const double sv = std::sin(v);
        const double s = t_split * cv * cv;
        return memory(cplx(s, 0.0), cplx(gap + t_split * sv * sv, 0.0)) * (2.0 * t_split * cv * sv);
    };
    return gl.integrate_panels(integrand, graded_breaks(0.5 * pi, 24));
}

VolterraProblem spliced_problem(const TransplantParams& p, const TimeGrid& grid, SeriesKind kind)
{
    const double t0 = grid.t_start();
    const bool singular = p.source == 0.0 || p.diffusion.imag() != 0.0;
    if (t0 == 0.0 && singular) {
        throw InvalidProblem("point-source forcing is singular at t = 0; start the grid later");
    }
    auto forcing = [p, t0](double t) {
        if (t == 0.0) {
            // Only reached for real diffusion with x0 != 0, where the heat kernel tends to 0.
            return cplx{};
        }
        const cplx free = heat_kernel(0.0, p.source, p.diffusion * t);
        return free - closed_form_history(t, t0, p);
    };
    return {forcing, transplant_kernel(p), grid, singular, kind};
}

VolterraProblem spliced_problem(const QuantumParams& q, const TimeGrid& grid)
{
    if (!q.point_source()) {
        throw InvalidParameter("spliced problem needs point-source data; use gaussian_problem");
    }
    return spliced_problem(transplant(q), grid, SeriesKind::quantum_amplitude);
}

VolterraProblem spliced_problem(const DiffusionParams& d, const TimeGrid& grid)
{
    return spliced_problem(transplant(d), grid, SeriesKind::diffusion_density);
}

VolterraProblem gaussian_problem(const QuantumParams& q, const TimeGrid& grid)
{
    if (q.point_source()) {
        throw InvalidParameter("gaussian_problem needs a > 0");
    }
    if (grid.t_start() != 0.0) {
        throw InvalidProblem("Gaussian boundary equation runs from t = 0");
    }
    auto forcing = [q](double t) { return forcing_gaussian(t, q); };
    return {forcing, kernel_quantum(q), grid, false, SeriesKind::quantum_amplitude};
}

double resolved_splice_time(const QuantumParams& q, double step)
{
    if (!(step > 0.0)) {
        throw InvalidParameter("step must be positive");
    }
    const double x0 = q.source();
    const double phase_limited = std::sqrt(q.mass() * x0 * x0 * step / (0.4 * q.hbar()));
    return std::max(phase_limited, 10.0 * step);
}

} // namespace idelta
