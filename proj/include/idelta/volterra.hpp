#pragma once

#include <functional>
#include <span>
#include <vector>

#include "idelta/model.hpp"
#include "idelta/propagators.hpp"

namespace idelta {

/// phi(t) = forcing(t) - int_{t_start}^{t} K(t - s) phi(s) ds on grid.
///
/// The memory integral starts at grid.t_start(). A solution that began
/// earlier must fold its history over [0, t_start] into the forcing; see
/// spliced_problem() in closedform.hpp.
struct VolterraProblem {
    std::function<cplx(double)> forcing;
    KernelSpec kernel;
    TimeGrid grid;
    /// forcing ~ t^{-1/2} at the origin (point-source data); then t_start must be > 0.
    bool singular_forcing = false;
    SeriesKind kind = SeriesKind::quantum_amplitude;
};

/// Product-trapezoid weights for int_0^{t_i} (t_i - s)^{-1/2} phi(s) ds on a
/// unit-step grid, with phi interpolated linearly on each subinterval and the
/// kernel moments integrated exactly. Multiply by sqrt(h) for step h.
class AbelWeights {
public:
    explicit AbelWeights(std::size_t count);

    /// Weight of the interval's left node, lag m = i - j >= 1.
    double left(std::size_t m) const { return left_[m]; }
    /// Weight of the interval's right node, lag m >= 1.
    double right(std::size_t m) const { return right_[m]; }

private:
    std::vector<double> left_;
    std::vector<double> right_;
};

/// Forward substitution of the lower-triangular product-trapezoid system,
/// O(N^2). The history sum is accumulated in a fixed order so repeated runs
/// are bit-identical.
AmplitudeSeries solve_abel_volterra(const VolterraProblem& problem);

AmplitudeSeries solve_abel_volterra(std::span<const cplx> forcing, const KernelSpec& kernel,
                                    const TimeGrid& grid,
                                    SeriesKind kind = SeriesKind::quantum_amplitude);

/// Observed order of accuracy at the final time. Solves the problem on
/// `refinements` successively halved grids and fits log(error) against log(h)
/// by least squares, with the error measured against reference.values.back().
double estimate_convergence_order(const VolterraProblem& problem, const AmplitudeSeries& reference,
                                  int refinements);

/// Same, with the exact solution supplied as a function of t.
double estimate_convergence_order(const VolterraProblem& problem,
                                  const std::function<cplx(double)>& exact, int refinements);

} // namespace idelta
