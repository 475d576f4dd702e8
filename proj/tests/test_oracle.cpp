#include "doctest.h"

#include <cmath>

#include "idelta/closedform.hpp"
#include "idelta/error.hpp"
#include "idelta/oracle.hpp"

using namespace idelta;

TEST_CASE("spatial grid")
{
    const SpatialGrid g(10.0, 101);
    CHECK(g.spacing() == doctest::Approx(0.2));
    CHECK(g.center() == 50);
    CHECK(g.x(g.center()) == 0.0);
    CHECK(g.x(0) == -10.0);
    CHECK(g.x(100) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK_THROWS_AS(SpatialGrid(10.0, 100), InvalidParameter);
    CHECK_THROWS_AS(SpatialGrid(10.0, 3), InvalidParameter);
    CHECK_THROWS_AS(SpatialGrid(0.0, 101), InvalidParameter);
}

TEST_CASE("conservation without absorption")
{
    const SpatialGrid sg(20.0, 2001);
    const TimeGrid tg = make_time_grid_span(0.0, 1.0, 1e-3);
    const OracleRun d = evolve_diffusion(DiffusionParams(1.0, 0.0, 1.0), sg, tg, 0.2);
    for (double s : d.survival.values) {
        REQUIRE(std::abs(s - 1.0) <= 1e-8);
    }
    const OracleRun q = evolve_schrodinger(QuantumParams(1.0, 1.0, 0.0, 1.0, 0.5), sg, tg);
    for (double s : q.survival.values) {
        REQUIRE(std::abs(s - 1.0) <= 1e-10);
    }
}

TEST_CASE("discrete absorption bookkeeping is exact")
{
    const SpatialGrid sg(20.0, 2001);
    const TimeGrid tg = make_time_grid_span(0.0, 1.0, 1e-3);
    const double h = tg.step();

    const QuantumParams q(1.0, 1.0, 1.0, 1.0, 0.5);
    // Switching on the absorber radiates a slowly decaying tail toward the walls.
    OracleOptions loose;
    loose.leakage_tolerance = 1e-5;
    const OracleRun run = evolve_schrodinger(q, sg, tg, loose);
    const auto& s = run.survival.values;
    const auto& c = run.center.values;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double predicted = (q.coupling() / q.hbar()) * h * std::norm(0.5 * (c[i] + c[i + 1]));
        REQUIRE(std::abs((s[i] - s[i + 1]) - predicted) <= 1e-12 * s[0]);
    }

    // Diffusion: the wall flux is the only other loss, and it is negligible here.
    const DiffusionParams d(1.0, 1.0, 1.0);
    const OracleRun dr = evolve_diffusion(d, sg, tg, 0.1);
    for (std::size_t i = 0; i + 1 < tg.size(); ++i) {
        const double predicted =
            d.killing() * h * 0.5 * (dr.center.values[i].real() + dr.center.values[i + 1].real());
        REQUIRE(std::abs((dr.survival.values[i] - dr.survival.values[i + 1]) - predicted) <= 1e-12);
    }
}

TEST_CASE("stronger killing lowers survival everywhere")
{
    const SpatialGrid sg(20.0, 2001);
    const TimeGrid tg = make_time_grid_span(0.0, 2.0, 1e-3);
    const OracleRun weak = evolve_diffusion(DiffusionParams(1.0, 1.0, 1.0), sg, tg, 0.1);
    const OracleRun strong = evolve_diffusion(DiffusionParams(1.0, 2.0, 1.0), sg, tg, 0.1);
    for (std::size_t i = 1; i < tg.size(); ++i) {
        REQUIRE(strong.survival.values[i] <= weak.survival.values[i]);
        if (tg.time(i) >= 0.1) {
            REQUIRE(strong.survival.values[i] < weak.survival.values[i]);
        }
    }
}

TEST_CASE("grid density at the origin follows the closed form")
{
    const DiffusionParams d(1.0, 1.0, 1.0);
    const SpatialGrid sg(20.0, 4001);
    const TimeGrid tg = make_time_grid_span(0.0, 2.0, 1e-3);
    const OracleRun run = evolve_diffusion(d, sg, tg, 0.02);
    for (std::size_t i = 200; i < tg.size(); i += 100) {
        const double ref = boundary_density_diffusion(tg.time(i), d);
        CAPTURE(tg.time(i));
        REQUIRE(std::abs(run.center.values[i].real() - ref) <= 0.01 * ref);
    }
}

TEST_CASE("trajectory sampling")
{
    const SpatialGrid sg(20.0, 401);
    const TimeGrid tg = make_time_grid(0.0, 1e-2, 11);
    const DiffusionParams d(1.0, 1.0, 1.0);
    const OracleRun last = evolve_diffusion(d, sg, tg, 0.3);
    REQUIRE(last.trajectory.size() == 1);
    CHECK(last.trajectory.front().time == tg.t_end());

    OracleOptions opts;
    opts.trajectory_stride = 3;
    const OracleRun run = evolve_diffusion(d, sg, tg, 0.3, opts);
    REQUIRE(run.trajectory.size() == 5);
    CHECK(run.trajectory[1].time == doctest::Approx(0.03));
    CHECK(run.trajectory.back().time == tg.t_end());
    CHECK(run.trajectory.back().field == last.trajectory.back().field);
}

TEST_CASE("oracle guards")
{
    const DiffusionParams d(1.0, 1.0, 1.0);
    const TimeGrid tg = make_time_grid_span(0.0, 5.0, 1e-2);
    CHECK_THROWS_AS(evolve_diffusion(d, SpatialGrid(3.0, 301), tg, 0.1), BoundaryLeakage);
    CHECK_THROWS_AS(evolve_diffusion(d, SpatialGrid(20.0, 4001), make_time_grid(0.0, 0.5, 4), 0.02),
                    NonphysicalNegativity);
    CHECK_THROWS_AS(evolve_diffusion(d, SpatialGrid(20.0, 401), tg, 0.0), InvalidParameter);
    CHECK_THROWS_AS(evolve_diffusion(DiffusionParams(1.0, 1.0, 50.0),
                                     SpatialGrid(20.0, 401), tg, 0.01),
                    InvalidParameter);
    CHECK_THROWS_AS(evolve_schrodinger(QuantumParams(1.0, 1.0, 1.0, 1.0), SpatialGrid(20.0, 401), tg),
                    InvalidParameter);

    OracleOptions opts;
    opts.check_step_resolution = true;
    opts.leakage_tolerance = 1e-5;
    const QuantumParams q(1.0, 1.0, 1.0, 1.0, 0.5);
    CHECK_THROWS_AS(evolve_schrodinger(q, SpatialGrid(20.0, 2001), make_time_grid(0.0, 0.4, 6), opts),
                    StepResolution);
    CHECK_NOTHROW(evolve_schrodinger(q, SpatialGrid(20.0, 2001), make_time_grid(0.0, 1e-3, 500), opts));
}
