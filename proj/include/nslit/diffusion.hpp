#pragma once

#include <cstddef>
#include <vector>

#include "nslit/model.hpp"

namespace nslit {

/// Sub-steps of an output interval aim for this stability number.
inline constexpr double kTargetStability = 0.4;
/// Forward Euler with the three-point Laplacian is stable up to here.
inline constexpr double kMaxStability = 0.5;

/// Lattice state of the explicit solver.
struct DiffusionState {
  std::vector<double> density;  // P per cell
  std::size_t t_index = 0;      // steps taken
  double time = 0.0;
  double dt = 0.0;              // step used by the next call to step()
  double dx = 1.0;
  double diffusivity = 0.0;     // D_t of the last executed step
  double stability = 0.0;       // r = D_t dt / dx^2 of the last executed step

  double mass() const;
};

/// Time-dependent diffusivity u0^2 t of a ballistically spreading channel.
double ballistic_diffusivity(const SlitSpec& slit, const PhysicalParams& params, double t);

/// Largest dt for which a step starting at `time` keeps r <= 0.5.
double max_stable_dt(const SlitSpec& slit, const PhysicalParams& params, double time, double dx);

/// One forward-Euler update with D evaluated at the end of the step and
/// mirrored (zero-flux) ghost cells. Throws StabilityViolation if r > 0.5.
DiffusionState step(const DiffusionState& state, const PhysicalParams& params,
                    const SlitSpec& slit);

/// Grid of the same width and resolution centered at x = 0; the solver
/// runs there, in the frame moving with the channel centroid.
GridSpec comoving_grid(const GridSpec& grid);

struct DiffusionHistory {
  GridSpec grid;           // co-moving grid
  Field2D density;         // rows are grid times
  std::size_t steps = 0;   // executed sub-steps
  double max_stability = 0.0;
  double max_mass_drift = 0.0;  // max |sum P dx - 1| over all steps
};

/// Evolves the slit's initial Gaussian (centered, renormalized to unit
/// lattice mass) to every grid time. Each output interval is split into
/// max(1, ceil(r / 0.4)) sub-steps.
DiffusionHistory run_diffusion(const SlitSpec& slit, const PhysicalParams& params,
                               const GridSpec& grid);

/// Resamples the co-moving history at lab coordinates, reading
/// x - X - v t by linear interpolation. Points outside the solver grid read 0.
Field2D shifted_history(const DiffusionHistory& history, const SlitSpec& slit,
                        const GridSpec& grid);

}  // namespace nslit
