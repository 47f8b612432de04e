#include "nslit/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nslit/error.hpp"

namespace nslit {

double DiffusionState::mass() const {
  return std::accumulate(density.begin(), density.end(), 0.0) * dx;
}

double ballistic_diffusivity(const SlitSpec& slit, const PhysicalParams& params, double t) {
  const double u0 = params.diffusivity / slit.sigma0;
  return u0 * u0 * t;
}

double max_stable_dt(const SlitSpec& slit, const PhysicalParams& params, double time, double dx) {
  // u0^2 (t + dt) dt / dx^2 = 1/2
  const double u0 = params.diffusivity / slit.sigma0;
  const double c = kMaxStability * dx * dx / (u0 * u0);
  return 0.5 * (std::sqrt(time * time + 4.0 * c) - time);
}

DiffusionState step(const DiffusionState& state, const PhysicalParams& params,
                    const SlitSpec& slit) {
  const double t_next = state.time + state.dt;
  const double d = ballistic_diffusivity(slit, params, t_next);
  const double r = d * state.dt / (state.dx * state.dx);
  if (r > kMaxStability) {
    std::ostringstream msg;
    msg << "r=" << r << " at step " << state.t_index + 1 << "; max dt="
        << max_stable_dt(slit, params, state.time, state.dx);
    throw Error(ErrorCode::StabilityViolation, msg.str());
  }
  const std::vector<double>& p = state.density;
  const std::size_t n = p.size();
  DiffusionState next = state;
  next.t_index = state.t_index + 1;
  next.time = t_next;
  next.diffusivity = d;
  next.stability = r;
  if (n < 2) return next;
  next.density[0] = p[0] + r * (p[1] - p[0]);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    next.density[k] = p[k] + r * (p[k + 1] - 2.0 * p[k] + p[k - 1]);
  }
  next.density[n - 1] = p[n - 1] + r * (p[n - 2] - p[n - 1]);
  return next;
}

GridSpec comoving_grid(const GridSpec& grid) {
  GridSpec g = grid;
  const double half = 0.5 * (grid.x_max - grid.x_min);
  g.x_min = -half;
  g.x_max = half;
  return g;
}

DiffusionHistory run_diffusion(const SlitSpec& slit, const PhysicalParams& params,
                               const GridSpec& grid) {
  constexpr std::size_t kMaxSubsteps = 100'000'000;
  DiffusionHistory h;
  h.grid = comoving_grid(grid);
  h.density = Field2D(grid.time_samples(), grid.nx);

  DiffusionState s;
  s.dx = h.grid.dx();
  s.density.resize(grid.nx);
  const double s0 = slit.sigma0;
  for (std::size_t k = 0; k < grid.nx; ++k) {
    const double x = h.grid.x_at(k);
    s.density[k] = std::exp(-x * x / (2.0 * s0 * s0));
  }
  const double m0 = s.mass();
  for (double& v : s.density) v /= m0;
  std::copy(s.density.begin(), s.density.end(), h.density.row(0).begin());

  for (std::size_t n = 0; n < grid.nt; ++n) {
    const double t0 = grid.t_at(n);
    const double t1 = grid.t_at(n + 1);
    const double interval = t1 - t0;
    const double r_end = ballistic_diffusivity(slit, params, t1) * interval / (s.dx * s.dx);
    const double want = std::ceil(r_end / kTargetStability);
    if (!(want < static_cast<double>(kMaxSubsteps))) {
      throw Error(ErrorCode::StabilityViolation,
                  "sub-step underflow in interval " + std::to_string(n));
    }
    const std::size_t sub = std::max<std::size_t>(1, static_cast<std::size_t>(want));
    s.dt = interval / static_cast<double>(sub);
    s.time = t0;
    for (std::size_t j = 0; j < sub; ++j) {
      s = step(s, params, slit);
      ++h.steps;
      h.max_stability = std::max(h.max_stability, s.stability);
      h.max_mass_drift = std::max(h.max_mass_drift, std::abs(s.mass() - 1.0));
    }
    std::copy(s.density.begin(), s.density.end(), h.density.row(n + 1).begin());
  }
  return h;
}

Field2D shifted_history(const DiffusionHistory& history, const SlitSpec& slit,
                        const GridSpec& grid) {
  const GridSpec& src = history.grid;
  Field2D out(grid.time_samples(), grid.nx);
  const double dx = src.dx();
  const double last = static_cast<double>(src.nx - 1);
  for (std::size_t r = 0; r < out.rows; ++r) {
    const double t = grid.t_at(r);
    const auto row = history.density.row(r);
    for (std::size_t k = 0; k < grid.nx; ++k) {
      const double xi = grid.x_at(k) - slit.center - slit.velocity_x * t;
      const double pos = (xi - src.x_min) / dx;
      if (pos < 0.0 || pos > last) continue;
      const std::size_t i = std::min(static_cast<std::size_t>(pos), src.nx - 2);
      const double f = pos - static_cast<double>(i);
      out(r, k) = (1.0 - f) * row[i] + f * row[i + 1];
    }
  }
  return out;
}

}  // namespace nslit
