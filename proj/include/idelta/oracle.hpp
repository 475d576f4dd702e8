#pragma once

#include <cstddef>
#include <vector>

#include "idelta/model.hpp"

namespace idelta {

/// Nodes x_j = -L + j dx, j = 0 .. M-1, dx = 2L / (M-1); M odd so x = 0 is
/// the center node (M-1)/2.
class SpatialGrid {
public:
    SpatialGrid(double half_width, std::size_t nodes);

    double half_width() const noexcept { return half_width_; }
    std::size_t size() const noexcept { return nodes_; }
    double spacing() const noexcept { return spacing_; }
    std::size_t center() const noexcept { return (nodes_ - 1) / 2; }
    double x(std::size_t j) const noexcept
    {
        return -half_width_ + static_cast<double>(j) * spacing_;
    }

private:
    double half_width_;
    std::size_t nodes_;
    double spacing_;
};

struct GridState {
    SpatialGrid grid;
    std::vector<cplx> field;
    double time;
};

struct OracleOptions {
    /// Keep every stride-th state (plus the last); 0 keeps only the final state.
    std::size_t trajectory_stride = 0;
    /// Rerun at half the time step and require |field(0, t)| to agree within 10%.
    bool check_step_resolution = false;
    /// Largest wall-adjacent density allowed, relative to the peak density.
    double leakage_tolerance = 1e-8;
};

struct OracleRun {
    std::vector<GridState> trajectory;
    SurvivalCurve survival;
    /// Field at x = 0 on the time grid.
    AmplitudeSeries center;
};

/// Crank-Nicolson for p_t = D p_xx - kappa delta(x) p in t, with delta(x) as
/// weight 1/dx on the center node, Dirichlet walls and a discretely
/// normalized Gaussian of standard deviation initial_width at x0.
/// S = dx sum p. BoundaryLeakage if the density next to a wall (p, or |psi|^2
/// for the wavefunction) exceeds 1e-8 of its maximum; NonphysicalNegativity if
/// any value of p drops below -1e-10.
OracleRun evolve_diffusion(const DiffusionParams& d, const SpatialGrid& sg, const TimeGrid& tg,
                           double initial_width, const OracleOptions& options = {});

/// Crank-Nicolson for i hbar psi_t = -(hbar^2 / 2m) psi_xx - (i k / 2) delta(x) psi
/// from the Gaussian of q (a > 0), discretely normalized to dx sum |psi|^2 = 1.
/// S = dx sum |psi|^2.
OracleRun evolve_schrodinger(const QuantumParams& q, const SpatialGrid& sg, const TimeGrid& tg,
                             const OracleOptions& options = {});

} // namespace idelta
