#include "idelta/volterra.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "idelta/error.hpp"

namespace idelta {

AbelWeights::AbelWeights(std::size_t count) : left_(count + 1, 0.0), right_(count + 1, 0.0)
{
    // Over [j, j+1] with lag m = i - j and a = sqrt(m), b = sqrt(m - 1):
    //   int (m-u)^{-1/2} du     = 2(a - b)
    //   int u (m-u)^{-1/2} du   = (2/3)(a - b)^2 (2a + b)
    // with a - b = 1/(a + b) to avoid cancellation at large m.
    for (std::size_t m = 1; m <= count; ++m) {
        const double a = std::sqrt(static_cast<double>(m));
        const double b = std::sqrt(static_cast<double>(m - 1));
        const double diff = 1.0 / (a + b);
        right_[m] = (2.0 / 3.0) * diff * diff * (2.0 * a + b);
        left_[m] = diff * (4.0 / 3.0 - (2.0 / 3.0) * a * diff);
    }
}

AmplitudeSeries solve_abel_volterra(std::span<const cplx> forcing, const KernelSpec& kernel,
                                    const TimeGrid& grid, SeriesKind kind)
{
    const std::size_t n = grid.size();
    if (forcing.size() != n) {
        throw InvalidProblem("forcing sample count does not match the time grid");
    }
    for (const cplx& f : forcing) {
        if (!std::isfinite(f.real()) || !std::isfinite(f.imag())) {
            throw InvalidProblem("forcing is not finite on the grid");
        }
    }

    const AbelWeights unit(n);
    const double root_h = std::sqrt(grid.step());
    const cplx lambda = kernel.coefficient * root_h;

    // Combined weight of interior node j at lag m = i - j: right end of
    // interval j-1 (lag m+1) plus left end of interval j (lag m).
    std::vector<double> interior(n, 0.0);
    for (std::size_t m = 1; m + 1 <= n; ++m) {
        interior[m] = unit.left(m) + unit.right(m + 1);
    }

    const cplx diagonal = 1.0 + lambda * unit.right(1);
    if (std::abs(diagonal) < 64.0 * std::numeric_limits<double>::epsilon()) {
        std::ostringstream msg;
        msg << "singular Volterra step: 1 + lambda w_ii = 0 for h = " << grid.step()
            << ", lambda = " << kernel.coefficient;
        throw SingularStep(msg.str());
    }

    std::vector<double> re(n), im(n);
    std::vector<cplx> phi(n);
    phi[0] = forcing[0];
    re[0] = phi[0].real();
    im[0] = phi[0].imag();
    for (std::size_t i = 1; i < n; ++i) {
        double sr = unit.left(i) * re[0];
        double si = unit.left(i) * im[0];
        const double* w = interior.data() + i;
        for (std::size_t j = 1; j < i; ++j) {
            sr += w[-static_cast<std::ptrdiff_t>(j)] * re[j];
            si += w[-static_cast<std::ptrdiff_t>(j)] * im[j];
        }
        phi[i] = (forcing[i] - lambda * cplx(sr, si)) / diagonal;
        re[i] = phi[i].real();
        im[i] = phi[i].imag();
    }
    return {grid, std::move(phi), kind};
}

AmplitudeSeries solve_abel_volterra(const VolterraProblem& problem)
{
    const TimeGrid& grid = problem.grid;
    if (problem.singular_forcing && grid.t_start() <= 0.0) {
        throw InvalidProblem("singular forcing needs t_start > 0; splice the closed form on (0, t_start]");
    }
    if (!problem.forcing) {
        throw InvalidProblem("Volterra problem has no forcing");
    }
    std::vector<cplx> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        f[i] = problem.forcing(grid.time(i));
    }
    if (grid.t_start() == 0.0 && (!std::isfinite(f[0].real()) || !std::isfinite(f[0].imag()))) {
        throw InvalidProblem("forcing is singular at t = 0; start the grid at t_start > 0");
    }
    return solve_abel_volterra(f, problem.kernel, grid, problem.kind);
}

double estimate_convergence_order(const VolterraProblem& problem,
                                  const std::function<cplx(double)>& exact, int refinements)
{
    if (refinements < 2) {
        throw InvalidParameter("convergence order needs at least two refinements");
    }
    const cplx target = exact(problem.grid.t_end());
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(target), 1e-300);

    std::vector<double> log_h, log_err;
    for (int level = 0; level < refinements; ++level) {
        VolterraProblem p = problem;
        p.grid = problem.grid.refined(static_cast<unsigned>(level));
        const AmplitudeSeries s = solve_abel_volterra(p);
        const double err = std::abs(s.values.back() - target);
        if (!(err > floor)) {
            throw DegenerateFit("Volterra error is at the rounding floor; no convergence order to fit");
        }
        log_h.push_back(std::log(p.grid.step()));
        log_err.push_back(std::log(err));
    }

    const double n = static_cast<double>(log_h.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < log_h.size(); ++i) {
        mx += log_h[i];
        my += log_err[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < log_h.size(); ++i) {
        sxy += (log_h[i] - mx) * (log_err[i] - my);
        sxx += (log_h[i] - mx) * (log_h[i] - mx);
    }
    return sxy / sxx;
}

double estimate_convergence_order(const VolterraProblem& problem, const AmplitudeSeries& reference,
                                  int refinements)
{
    if (reference.grid.t_end() != problem.grid.t_end()) {
        throw InvalidParameter("reference series must end at the problem's final time");
    }
    const cplx last = reference.values.back();
    return estimate_convergence_order(problem, [last](double) { return last; }, refinements);
}

} // namespace idelta
