#pragma once

#include <vector>

#include "nslit/model.hpp"

namespace nslit {

/// Smallest density a channel reports; keeps R = sqrt(P) and ratios finite
/// deep in the Gaussian tails.
inline constexpr double kDensityFloor = 1e-300;

/// Closed-form fields of one freely dispersing Gaussian channel.
///
/// The channel centroid moves as X + v t while its width follows the
/// ballistic dispersion law sigma(t)^2 = sigma0^2 + u0^2 t^2 with u0 = D/sigma0.
/// All spatial derivatives are analytic; nothing here differences a sampled
/// field. The amplitude weight is not applied by any member: the channel
/// carries unit mass, and superposition scales by the weight.
class Channel {
 public:
  Channel(const SlitSpec& slit, const PhysicalParams& params);

  const SlitSpec& slit() const { return slit_; }
  const PhysicalParams& params() const { return params_; }

  /// Initial osmotic speed u0 = D / sigma0.
  double u0() const { return u0_; }

  double sigma(double t) const;
  /// d sigma / dt = u0^2 t / sigma.
  double sigma_rate(double t) const;
  double centroid(double t) const { return slit_.center + slit_.velocity_x * t; }
  /// Displacement from the moving centroid, xi = x - X - v t.
  double displacement(double x, double t) const { return (x - slit_.center) - slit_.velocity_x * t; }

  double density(double x, double t) const;
  double amplitude(double x, double t) const;
  /// grad P / P = -xi / sigma^2.
  double log_density_gradient(double x, double t) const;
  /// grad R and laplacian R, both exact for the Gaussian.
  double amplitude_gradient(double x, double t) const;
  double amplitude_laplacian(double x, double t) const;

  /// u = -D grad P / P = xi D / sigma^2.
  double osmotic_velocity(double x, double t) const;
  /// v_tot = v + xi u0^2 t / sigma^2.
  double total_velocity(double x, double t) const;

  /// S = m v (x - X) + (m u0^2 / 2) (xi / sigma)^2 t - E t + hbar * phase_offset.
  double action(double x, double t) const;
  /// grad S = m v_tot.
  double action_gradient(double x, double t) const;
  /// laplacian S = m u0^2 t / sigma^2 (independent of x).
  double action_laplacian(double t) const;

  /// Liouville phase-space distribution in the channel's rest frame (the
  /// caller passes x relative to the centroid).
  double phase_space_density(double x, double p, double t) const;

 private:
  void require_time(double t) const;

  SlitSpec slit_;
  PhysicalParams params_;
  double u0_;
};

double sigma_at(const SlitSpec& slit, const PhysicalParams& params, double t);
double density_at(const SlitSpec& slit, const PhysicalParams& params, double x, double t);
double osmotic_velocity(const SlitSpec& slit, const PhysicalParams& params, double x, double t);
double total_velocity(const SlitSpec& slit, const PhysicalParams& params, double x, double t);
double phase_action(const SlitSpec& slit, const PhysicalParams& params, double x, double t);
double phase_space_density(const SlitSpec& slit, const PhysicalParams& params, double x, double p,
                           double t);

/// One channel's fields sampled on a grid.
struct ChannelField {
  SlitSpec slit;
  std::vector<double> sigma_t;  // one entry per grid time
  Field2D amplitude;
  Field2D action;
  Field2D density;
  Field2D osmotic;
  Field2D velocity;
  Field2D displacement;
};

ChannelField sample_channel(const Channel& channel, const GridSpec& grid);

}  // namespace nslit
