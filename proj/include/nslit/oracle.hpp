#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "nslit/channel.hpp"
#include "nslit/model.hpp"

namespace nslit {

/// Psi and its first two spatial derivatives at one point.
struct WavePoint {
  std::complex<double> psi;
  std::complex<double> gradient;
  std::complex<double> laplacian;
};

struct QuantumPotential {
  double from_density = 0.0;    // (hbar^2/4m)[1/2 (P'/P)^2 - P''/P]
  double from_amplitude = 0.0;  // -(hbar^2/2m) R''/R
};

/// Quantum-mechanical reference built from the Madelung wavefunctions
/// Psi_i = w_i R_i exp(i S_i / hbar) of the channels.
///
/// Nothing here reuses the pairwise cos/sin bookkeeping of Superposition:
/// densities, currents and potentials are computed from complex Psi and its
/// analytic derivatives, and the normalization from complex Gaussian
/// overlap integrals.
class WaveFunction {
 public:
  explicit WaveFunction(std::vector<Channel> channels);
  static WaveFunction from_scenario(const ScenarioConfig& cfg);

  const std::vector<Channel>& channels() const { return channels_; }
  const PhysicalParams& params() const { return channels_.front().params(); }
  double normalization() const { return norm_; }

  /// Unnormalized Psi with derivatives.
  WavePoint evaluate(double x, double t) const;

  /// |Psi|^2, normalized.
  double density(double x, double t) const;
  /// (1/m) Re{Psi* (-i hbar d/dx) Psi}, normalized.
  double current(double x, double t) const;

  /// Both standard forms. Throws VanishingDensity where the density is not
  /// above the floor.
  QuantumPotential quantum_potential(double x, double t) const;
  /// Heat-flow form with Q = kT ln P: (hbar^2/4m)[-1/2 (Q'/hbar w)^2 - Q''/hbar w].
  double thermo_potential(double x, double t) const;

  /// Q_i = kT ln(P_i / P_i,peak) of channel i, and its gradient.
  double heat_flow(std::size_t channel, double x, double t) const;
  double heat_flow_gradient(std::size_t channel, double x, double t) const;
  /// u_i reconstructed as grad Q_i / (2 omega m).
  double heat_flow_velocity(std::size_t channel, double x, double t) const;

  /// Floor below which the potential is undefined.
  double density_floor(double t) const;

 private:
  std::vector<Channel> channels_;
  double norm_ = 1.0;
};

/// One-channel quantum potential with hand-derived Gaussian derivatives.
double gaussian_quantum_potential(const Channel& channel, double x, double t);

struct WaveField {
  Field2D psi_re;
  Field2D psi_im;
  Field2D density;
  Field2D current;
  Field2D potential;                // form A; 0 where the density vanishes
  std::vector<Field2D> heat_flow;   // Q_i per channel
};

WaveField sample(const WaveFunction& wave, const GridSpec& grid, bool with_heat_flow = false);

/// Which slit of the pair is opened second; sets the sign of the shift.
enum class Side { Right, Left };

/// Split of the half-separation X = X_n + delta_X such that the phase
/// contribution of X_n is exactly 2 pi n.
struct ModularDecomposition {
  long long n = 0;
  double x_n = 0.0;
  double delta_x = 0.0;
  double phase = 0.0;            // phi_12 of the full X
  double remainder_phase = 0.0;  // phi_12 of delta_X
  double delta_p_mod = 0.0;      // momentum shift of the remainder (Side::Right)
  bool degenerate = false;       // x == 0 or t == 0: phi_12 vanishes identically
};

/// Relative phase of the zero-velocity symmetric double slit at (x, t):
/// phi_12 = -X x u0^2 t / (D sigma^2).
double modular_phase(double half_separation, double x, const SlitSpec& slit,
                     const PhysicalParams& params, double t);

ModularDecomposition modular_decompose(double half_separation, double x, const SlitSpec& slit,
                                       const PhysicalParams& params, double t);

struct MomentumShiftForms {
  double from_dispersion = 0.0;  // +-m dX D^2 t / (sigma^2 sigma0^2)
  double from_rate = 0.0;        // +-m dX sigma_dot / sigma
};

MomentumShiftForms momentum_shift_forms(double delta_x, const SlitSpec& slit,
                                        const PhysicalParams& params, double t,
                                        Side side = Side::Right);

/// Delta p_mod, dispersion form.
double momentum_shift(double delta_x, const SlitSpec& slit, const PhysicalParams& params,
                      double t, Side side = Side::Right);

}  // namespace nslit
