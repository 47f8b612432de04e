#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nslit/channel.hpp"
#include "nslit/model.hpp"

namespace nslit {

/// Below this fraction of the local peak bound the average velocity J/P is
/// treated as undefined.
inline constexpr double kVanishingFraction = 1e-12;

/// Density, current and entangling current at one space-time point.
struct SuperposedPoint {
  double density = 0.0;
  double current = 0.0;
  double entangling = 0.0;
};

/// The two evaluations of one pair's entangling current: from amplitude
/// gradients and from heat-flow gradients Q_i = kT ln P_i.
struct EntanglingForms {
  double amplitude_form = 0.0;
  double heat_flow_form = 0.0;
};

/// n-slit superposition of Gaussian channels.
///
/// Every pair (i, j) contributes an interference term with relative phase
/// phi_ij = (S_i - S_j) / hbar. The current pairs each channel's total
/// velocity through a cos phi_ij term and the difference of the "-" branch
/// diffusive velocities (+D grad P_i / P_i) through a sin phi_ij term; the
/// latter is the entangling current. Densities and currents are divided by
/// the total mass at t = 0, computed in closed form.
class Superposition {
 public:
  /// Throws EmptyChannels or MismatchedParams.
  explicit Superposition(std::vector<Channel> channels);

  static Superposition from_scenario(const ScenarioConfig& cfg);

  const std::vector<Channel>& channels() const { return channels_; }
  std::size_t size() const { return channels_.size(); }
  const PhysicalParams& params() const { return channels_.front().params(); }

  /// Integral of the unnormalized density at t = 0.
  double normalization() const { return norm_; }

  double pairwise_phase(std::size_t i, std::size_t j, double x, double t) const;

  /// Unnormalized (raw) and normalized fields.
  SuperposedPoint raw(double x, double t) const;
  SuperposedPoint evaluate(double x, double t) const;

  double raw_density(double x, double t) const { return raw(x, t).density; }
  double total_density(double x, double t) const { return evaluate(x, t).density; }
  double total_current(double x, double t) const { return evaluate(x, t).current; }
  double entangling_current(double x, double t) const { return evaluate(x, t).entangling; }

  /// Pair term of the (normalized) entangling current, in both forms.
  EntanglingForms entangling_forms(std::size_t i, std::size_t j, double x, double t) const;

  /// Upper bound on the normalized density at time t (all channels in phase
  /// at their peaks).
  double peak_bound(double t) const;
  /// epsilon_P(t) = kVanishingFraction * peak_bound(t).
  double density_floor(double t) const { return kVanishingFraction * peak_bound(t); }

  /// J / P. Throws VanishingDensity where P <= epsilon_P.
  double average_velocity(double x, double t) const;
  std::optional<double> try_average_velocity(double x, double t) const;

 private:
  std::vector<Channel> channels_;
  double norm_ = 1.0;
};

double pairwise_phase(const Channel& a, const Channel& b, double x, double t);

/// Closed-form relative phase of the symmetric double slit: channel 1 at +X
/// moving with +v, channel 2 at -X moving with -v, equal sigma0:
/// phi_12 = 2 m v x / hbar - (X + v t) x u0^2 t / (D sigma^2).
double symmetric_pair_phase(const PhysicalParams& params, double half_separation, double velocity,
                            double sigma0, double x, double t);

/// Symmetric double-slit pair (+X with +v, -X with -v).
std::vector<SlitSpec> symmetric_double_slit(double half_separation, double velocity,
                                            double sigma0, double weight = 1.0);

struct SuperposedField {
  Field2D density;
  Field2D current;
  Field2D entangling;
  Field2D velocity;                   // 0 where the density vanishes
  std::vector<std::uint8_t> resolved;  // 1 where the velocity is defined
  std::vector<double> floor;          // epsilon_P per grid time
  std::vector<Field2D> phases;        // phi_ij for i < j, pairs in lexicographic order
};

SuperposedField sample(const Superposition& sup, const GridSpec& grid, bool with_phases = false);

/// Superposes per-channel densities sampled elsewhere (e.g. the lattice
/// solver) using the analytic relative phases; returns the normalized density.
Field2D superpose_densities(const Superposition& sup, std::span<const Field2D> channel_densities,
                            const GridSpec& grid);

}  // namespace nslit
