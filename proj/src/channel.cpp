#include "nslit/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nslit/error.hpp"

namespace nslit {

Channel::Channel(const SlitSpec& slit, const PhysicalParams& params)
    : slit_(slit), params_(params) {
  if (!(slit.sigma0 > 0.0)) throw Error(ErrorCode::NonPositiveSigma, "sigma0 must be > 0");
  u0_ = params_.diffusivity / slit_.sigma0;
}

void Channel::require_time(double t) const {
  if (t < 0.0) throw Error(ErrorCode::NegativeTime, "time must be >= 0");
}

double Channel::sigma(double t) const {
  require_time(t);
  return std::sqrt(slit_.sigma0 * slit_.sigma0 + u0_ * u0_ * t * t);
}

double Channel::sigma_rate(double t) const { return u0_ * u0_ * t / sigma(t); }

double Channel::density(double x, double t) const {
  const double s = sigma(t);
  const double xi = displacement(x, t);
  const double p = std::exp(-xi * xi / (2.0 * s * s)) / (std::sqrt(2.0 * std::numbers::pi) * s);
  return std::max(p, kDensityFloor);
}

double Channel::amplitude(double x, double t) const { return std::sqrt(density(x, t)); }

double Channel::log_density_gradient(double x, double t) const {
  const double s = sigma(t);
  return -displacement(x, t) / (s * s);
}

double Channel::amplitude_gradient(double x, double t) const {
  return 0.5 * amplitude(x, t) * log_density_gradient(x, t);
}

double Channel::amplitude_laplacian(double x, double t) const {
  const double s2 = sigma(t) * sigma(t);
  const double xi = displacement(x, t);
  return amplitude(x, t) * (xi * xi / (4.0 * s2 * s2) - 1.0 / (2.0 * s2));
}

double Channel::osmotic_velocity(double x, double t) const {
  const double s = sigma(t);
  return displacement(x, t) * params_.diffusivity / (s * s);
}

double Channel::total_velocity(double x, double t) const {
  const double s = sigma(t);
  return slit_.velocity_x + displacement(x, t) * u0_ * u0_ * t / (s * s);
}

double Channel::action(double x, double t) const {
  const double scaled = displacement(x, t) / sigma(t);  // == xi(0) / sigma0
  const double m = params_.mass;
  return m * slit_.velocity_x * (x - slit_.center) + 0.5 * m * u0_ * u0_ * scaled * scaled * t -
         params_.energy * t + params_.hbar * slit_.phase_offset;
}

double Channel::action_gradient(double x, double t) const {
  return params_.mass * total_velocity(x, t);
}

double Channel::action_laplacian(double t) const {
  const double s = sigma(t);
  return params_.mass * u0_ * u0_ * t / (s * s);
}

double Channel::phase_space_density(double x, double p, double t) const {
  require_time(t);
  const double m = params_.mass;
  const double s0 = slit_.sigma0;
  const double q = x - p * t / m;
  const double norm = 1.0 / (2.0 * std::numbers::pi * s0 * m * u0_);
  return norm * std::exp(-q * q / (2.0 * s0 * s0)) * std::exp(-p * p / (2.0 * m * m * u0_ * u0_));
}

double sigma_at(const SlitSpec& slit, const PhysicalParams& params, double t) {
  return Channel(slit, params).sigma(t);
}

double density_at(const SlitSpec& slit, const PhysicalParams& params, double x, double t) {
  return Channel(slit, params).density(x, t);
}

double osmotic_velocity(const SlitSpec& slit, const PhysicalParams& params, double x, double t) {
  return Channel(slit, params).osmotic_velocity(x, t);
}

double total_velocity(const SlitSpec& slit, const PhysicalParams& params, double x, double t) {
  return Channel(slit, params).total_velocity(x, t);
}

double phase_action(const SlitSpec& slit, const PhysicalParams& params, double x, double t) {
  return Channel(slit, params).action(x, t);
}

double phase_space_density(const SlitSpec& slit, const PhysicalParams& params, double x, double p,
                           double t) {
  return Channel(slit, params).phase_space_density(x, p, t);
}

ChannelField sample_channel(const Channel& channel, const GridSpec& grid) {
  const std::size_t rows = grid.time_samples();
  ChannelField f{channel.slit(),
                 std::vector<double>(rows),
                 Field2D(rows, grid.nx),
                 Field2D(rows, grid.nx, true),
                 Field2D(rows, grid.nx),
                 Field2D(rows, grid.nx, true),
                 Field2D(rows, grid.nx, true),
                 Field2D(rows, grid.nx, true)};
  for (std::size_t n = 0; n < rows; ++n) {
    const double t = grid.t_at(n);
    f.sigma_t[n] = channel.sigma(t);
    for (std::size_t k = 0; k < grid.nx; ++k) {
      const double x = grid.x_at(k);
      f.density(n, k) = channel.density(x, t);
      f.amplitude(n, k) = std::sqrt(f.density(n, k));
      f.action(n, k) = channel.action(x, t);
      f.osmotic(n, k) = channel.osmotic_velocity(x, t);
      f.velocity(n, k) = channel.total_velocity(x, t);
      f.displacement(n, k) = channel.displacement(x, t);
    }
  }
  return f;
}

}  // namespace nslit
