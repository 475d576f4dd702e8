#include "doctest.h"

#include <cmath>
#include <numbers>

#include "idelta/error.hpp"
#include "idelta/propagators.hpp"
#include "idelta/quadrature.hpp"
#include "idelta/specfun.hpp"

using namespace idelta;

namespace {

const double pi = std::numbers::pi;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

std::vector<double> uniform_breaks(double lo, double hi, int panels)
{
    std::vector<double> b(panels + 1);
    for (int i = 0; i <= panels; ++i) {
        b[i] = lo + (hi - lo) * i / panels;
    }
    return b;
}

} // namespace

TEST_CASE("heat kernel values")
{
    CHECK(heat_kernel(0, 0, 1.0).real() == doctest::Approx(0.2820947918).epsilon(1e-10));
    CHECK(heat_kernel(1, 0, 1.0).real() == doctest::Approx(0.5 / std::sqrt(pi) * std::exp(-0.25)).epsilon(1e-15));
    CHECK(heat_kernel(1, 0, 1.0).real() == doctest::Approx(0.2196956).epsilon(1e-6));
    CHECK(heat_kernel(0.3, -1.2, 0.7) == heat_kernel(-1.2, 0.3, 0.7));
    CHECK_THROWS_AS(heat_kernel(0, 0, 0.0), DomainError);
    CHECK_THROWS_AS(heat_kernel(0, 0, cplx(-1.0, 1.0)), DomainError);
    CHECK_NOTHROW(heat_kernel(0, 0, cplx(0.0, 1.0)));
}

TEST_CASE("heat kernel has unit mass and the semigroup property")
{
    const auto& gl = gauss_legendre_16();
    const double mass = gl.integrate_panels([](double x) { return heat_kernel(x, 0.0, 1.0).real(); },
                                            uniform_breaks(-40.0, 40.0, 200));
    CHECK(std::abs(mass - 1.0) <= 1e-10);

    const double t1 = 0.4;
    const double t2 = 1.1;
    const double x = 0.7;
    const double y = -0.5;
    const double conv = gl.integrate_panels(
        [&](double z) { return (heat_kernel(x, z, t1) * heat_kernel(z, y, t2)).real(); },
        uniform_breaks(-30.0, 30.0, 200));
    CHECK(std::abs(conv - heat_kernel(x, y, t1 + t2).real()) <= 1e-8);
}

TEST_CASE("free Schrodinger propagator")
{
    const QuantumParams q(1.0, 1.0, 1.0, 0.0);
    const cplx diag = schrodinger_propagator(0.0, 0.0, 1.0, q);
    CHECK(rel(diag, cplx(1.0, -1.0) / (2.0 * std::sqrt(pi))) < 1e-14);
    CHECK(std::abs(schrodinger_propagator(3.0, -1.0, 2.0, q)) == doctest::Approx(1.0 / std::sqrt(4.0 * pi)).epsilon(1e-14));
    CHECK(rel(schrodinger_propagator(1.0, 0.0, 1.0, q), heat_kernel(1.0, 0.0, cplx(0.0, 0.5))) <= 1e-14);
    CHECK_THROWS_AS(schrodinger_propagator(0.0, 0.0, 0.0, q), DomainError);

    // Literal form sqrt(m / 2 pi hbar i t) exp(-m (x-y)^2 / 2 hbar i t).
    const QuantumParams p(0.8, 1.7, 1.0, 0.0);
    const double t = 0.9;
    const double dx = 1.3;
    const cplx literal = std::sqrt(cplx(p.mass() / (2.0 * pi * p.hbar() * t), 0.0) / cplx(0.0, 1.0)) *
                         std::exp(-p.mass() * dx * dx / (2.0 * p.hbar() * cplx(0.0, 1.0) * t));
    CHECK(rel(schrodinger_propagator(dx, 0.0, t, p), literal) < 1e-14);
}

TEST_CASE("point-source forcing")
{
    const QuantumParams q(1.0, 1.0, 1.0, 0.0);
    CHECK(rel(forcing_delta(1.0, q), cplx(1.0, -1.0) / (2.0 * std::sqrt(pi))) < 1e-14);
    const QuantumParams shifted = q.with_source(1.0);
    const cplx expected = std::sqrt(1.0 / (2.0 * pi * cplx(0.0, 1.0))) * std::exp(cplx(0.0, 0.5));
    CHECK(rel(forcing_delta(1.0, shifted), expected) < 1e-14);
    for (double t : {0.01, 0.3, 7.0}) {
        CHECK(std::abs(forcing_delta(t, shifted)) == doctest::Approx(std::sqrt(1.0 / (2.0 * pi * t))).epsilon(1e-14));
    }
    CHECK_THROWS_AS(forcing_delta(0.0, q), DomainError);
    CHECK_THROWS_AS(forcing_delta(1.0, q.with_width(0.5)), InvalidParameter);
}

TEST_CASE("Gaussian forcing")
{
    const QuantumParams q(1.0, 1.0, 1.0, 1.0, 0.5);
    // Displayed closed form (1-i) sqrt(m) / (2 sqrt(-i m a^2 + hbar t) sqrt(pi)) exp(i x0^2 m / 2(-i m a^2 + hbar t)).
    const double t = 1.0;
    const cplx den(t, -0.25);
    const cplx displayed = cplx(1.0, -1.0) / (2.0 * std::sqrt(den) * std::sqrt(pi)) * std::exp(cplx(0.0, 0.5) / den);
    CHECK(rel(forcing_gaussian(t, q), displayed) < 1e-14);

    // Independent quadrature of int G(0, y, t) psi(y, 0) dy; the Gaussian tames the oscillation at t = 1.
    const auto& gl = gauss_legendre_16();
    const cplx quad = gl.integrate_panels(
        [&](double y) {
            return schrodinger_propagator(0.0, y, t, q) * std::exp(-(y - 1.0) * (y - 1.0) / 0.5) /
                   (std::sqrt(2.0 * pi) * 0.5);
        },
        uniform_breaks(-9.0, 11.0, 400));
    CHECK(rel(forcing_gaussian(t, q), quad) < 1e-10);

    const QuantumParams narrow = q.with_width(1e-8);
    CHECK(rel(forcing_gaussian(1.0, narrow), forcing_delta(1.0, q.with_width(0.0))) < 1e-6);

    // Finite at t = 0: the initial profile sampled at the origin.
    const QuantumParams centred(1.0, 1.0, 1.0, 0.0, 1.0);
    CHECK(std::abs(forcing_gaussian(0.0, centred)) == doctest::Approx(1.0 / std::sqrt(2.0 * pi)).epsilon(1e-14));
    CHECK(std::abs(forcing_gaussian(1e-9, centred) - forcing_gaussian(0.0, centred)) < 1e-8);

    CHECK_THROWS_AS(forcing_gaussian(1.0, q.with_width(0.0)), InvalidParameter);
    CHECK_THROWS_AS(forcing_gaussian(-1.0, q), DomainError);
}

TEST_CASE("Gaussian forcing converges to the point-source forcing as a shrinks")
{
    const QuantumParams point(1.0, 1.0, 1.0, 1.0);
    double previous = INFINITY;
    for (double a : {1e-2, 1e-4, 1e-6}) {
        double worst = 0.0;
        for (double t = 0.2; t <= 5.0; t += 0.2) {
            worst = std::max(worst, rel(forcing_gaussian(t, point.with_width(a)), forcing_delta(t, point)));
        }
        CAPTURE(a);
        CHECK(worst < previous);
        previous = worst;
    }
    CHECK(previous < 1e-10);
}

TEST_CASE("memory kernels")
{
    const QuantumParams q(1.0, 1.0, 1.0, 0.0);
    const cplx lambda = kernel_quantum(q).coefficient;
    // kappa_c G(0, 0, t) sqrt(t) with kappa_c = k / 2 hbar.
    CHECK(rel(lambda, 0.5 * schrodinger_propagator(0.0, 0.0, 1.0, q)) < 1e-15);
    CHECK(lambda.real() == doctest::Approx(0.1410474).epsilon(1e-6));
    CHECK(lambda.imag() == doctest::Approx(-0.1410474).epsilon(1e-6));
    CHECK(kernel_quantum(q.with_coupling(0.0)).coefficient == cplx(0.0, 0.0));
    CHECK(kernel_quantum(q.with_coupling(2.0)).coefficient == 2.0 * lambda);

    CHECK(kernel_diffusion(DiffusionParams(1.0, 1.0, 0.0)).coefficient.real() == doctest::Approx(0.2820948).epsilon(1e-7));
    CHECK(kernel_diffusion(DiffusionParams(1.0, 0.0, 0.0)).coefficient == cplx(0.0, 0.0));
    CHECK(kernel_diffusion(DiffusionParams(4.0, 2.0, 0.0)).coefficient.real() ==
          doctest::Approx(1.0 / (4.0 * std::sqrt(pi))).epsilon(1e-15));
    CHECK(kernel_diffusion(DiffusionParams(1.0, 1.0, 0.0))(4.0).real() ==
          doctest::Approx(0.5 / (2.0 * std::sqrt(pi))).epsilon(1e-15));
}

TEST_CASE("quantum kernel is the diffusion kernel carried to the t variable")
{
    const QuantumParams q(0.9, 1.6, 1.3, 0.0);
    const auto c = map_quantum_to_diffusion(q);
    const cplx tau_units = kernel_diffusion(c.diffusion(), c.killing()).coefficient;
    CHECK(rel(kernel_quantum(q).coefficient, tau_units * sqrt_principal(c.diffusion())) < 1e-14);
}
