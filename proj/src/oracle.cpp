#include "nslit/oracle.hpp"

#include <cmath>
#include <numbers>

#include "nslit/error.hpp"

namespace nslit {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

// Psi_i(x, 0) = exp(a x^2 + b x + c) with complex coefficients.
struct GaussianExponent {
  cplx a, b, c;
};

GaussianExponent initial_exponent(const Channel& ch) {
  const SlitSpec& s = ch.slit();
  const PhysicalParams& p = ch.params();
  const double s2 = s.sigma0 * s.sigma0;
  const double k = p.mass * s.velocity_x / p.hbar;
  GaussianExponent e;
  e.a = -0.25 / s2;
  e.b = cplx(0.5 * s.center / s2, k);
  e.c = cplx(-0.25 * s.center * s.center / s2 + std::log(s.weight) -
                 0.25 * std::log(2.0 * std::numbers::pi * s2),
             -k * s.center + s.phase_offset);
  return e;
}

// Integral over the line of exp(a x^2 + b x + c), Re a < 0.
cplx gaussian_integral(cplx a, cplx b, cplx c) {
  return std::sqrt(std::numbers::pi / -a) * std::exp(c - b * b / (4.0 * a));
}

}  // namespace

WaveFunction::WaveFunction(std::vector<Channel> channels) : channels_(std::move(channels)) {
  if (channels_.empty()) throw Error(ErrorCode::EmptyChannels, "wavefunction needs >= 1 channel");
  for (const Channel& c : channels_) {
    if (!(c.params() == channels_.front().params())) {
      throw Error(ErrorCode::MismatchedParams, "channels must share physical parameters");
    }
  }
  cplx total = 0.0;
  for (const Channel& ci : channels_) {
    if (ci.slit().weight == 0.0) continue;
    const GaussianExponent ei = initial_exponent(ci);
    for (const Channel& cj : channels_) {
      if (cj.slit().weight == 0.0) continue;
      const GaussianExponent ej = initial_exponent(cj);
      total += gaussian_integral(std::conj(ei.a) + ej.a, std::conj(ei.b) + ej.b,
                                 std::conj(ei.c) + ej.c);
    }
  }
  norm_ = total.real();
}

WaveFunction WaveFunction::from_scenario(const ScenarioConfig& cfg) {
  std::vector<Channel> channels;
  for (const SlitSpec& s : cfg.slits) channels.emplace_back(s, cfg.params);
  return WaveFunction(std::move(channels));
}

WavePoint WaveFunction::evaluate(double x, double t) const {
  const double hbar = params().hbar;
  WavePoint w{};
  for (const Channel& c : channels_) {
    const double weight = c.slit().weight;
    if (weight == 0.0) continue;
    const double r = c.amplitude(x, t);
    const double r1 = c.amplitude_gradient(x, t);
    const double r2 = c.amplitude_laplacian(x, t);
    const double k1 = c.action_gradient(x, t) / hbar;
    const double k2 = c.action_laplacian(t) / hbar;
    const cplx phase = weight * std::polar(1.0, c.action(x, t) / hbar);
    w.psi += r * phase;
    w.gradient += cplx(r1, r * k1) * phase;
    w.laplacian += (cplx(r2 - r * k1 * k1, 2.0 * r1 * k1 + r * k2)) * phase;
  }
  return w;
}

double WaveFunction::density(double x, double t) const {
  return std::norm(evaluate(x, t).psi) / norm_;
}

double WaveFunction::current(double x, double t) const {
  const WavePoint w = evaluate(x, t);
  const PhysicalParams& p = params();
  return (std::conj(w.psi) * (-kI * p.hbar) * w.gradient).real() / (p.mass * norm_);
}

double WaveFunction::density_floor(double t) const {
  double amp = 0.0;
  for (const Channel& c : channels_) {
    const double s = c.sigma(t);
    amp += c.slit().weight * std::pow(2.0 * std::numbers::pi * s * s, -0.25);
  }
  return 1e-12 * amp * amp / norm_;
}

QuantumPotential WaveFunction::quantum_potential(double x, double t) const {
  const WavePoint w = evaluate(x, t);
  const double p = std::norm(w.psi);
  if (!(p / norm_ > density_floor(t))) {
    throw Error(ErrorCode::VanishingDensity, "quantum potential undefined where P vanishes");
  }
  const PhysicalParams& prm = params();
  const double c = prm.hbar * prm.hbar / prm.mass;

  const double p1 = 2.0 * (std::conj(w.psi) * w.gradient).real();
  const double p2 = 2.0 * (std::conj(w.psi) * w.laplacian).real() + 2.0 * std::norm(w.gradient);
  QuantumPotential q;
  q.from_density = 0.25 * c * (0.5 * (p1 / p) * (p1 / p) - p2 / p);

  // psi'/psi = R'/R + i theta', psi''/psi = R''/R - theta'^2 + i(...), so
  // R''/R = Re(psi''/psi) + Im(psi'/psi)^2.
  const cplx l1 = w.gradient / w.psi;
  const cplx l2 = w.laplacian / w.psi;
  q.from_amplitude = -0.5 * c * (l2.real() + l1.imag() * l1.imag());
  return q;
}

double WaveFunction::thermo_potential(double x, double t) const {
  const WavePoint w = evaluate(x, t);
  const double p = std::norm(w.psi);
  if (!(p / norm_ > density_floor(t))) {
    throw Error(ErrorCode::VanishingDensity, "quantum potential undefined where P vanishes");
  }
  const PhysicalParams& prm = params();
  const double p1 = 2.0 * (std::conj(w.psi) * w.gradient).real();
  const double p2 = 2.0 * (std::conj(w.psi) * w.laplacian).real() + 2.0 * std::norm(w.gradient);
  // Q = kT ln P.
  const double q1 = prm.kT * p1 / p;
  const double q2 = prm.kT * (p2 / p - (p1 / p) * (p1 / p));
  const double hw = prm.hbar * prm.omega;
  return 0.25 * prm.hbar * prm.hbar / prm.mass * (-0.5 * (q1 / hw) * (q1 / hw) - q2 / hw);
}

double WaveFunction::heat_flow(std::size_t channel, double x, double t) const {
  const Channel& c = channels_.at(channel);
  const double s = c.sigma(t);
  const double xi = c.displacement(x, t);
  return -params().kT * xi * xi / (2.0 * s * s);
}

double WaveFunction::heat_flow_gradient(std::size_t channel, double x, double t) const {
  const Channel& c = channels_.at(channel);
  const double s = c.sigma(t);
  return -params().kT * c.displacement(x, t) / (s * s);
}

double WaveFunction::heat_flow_velocity(std::size_t channel, double x, double t) const {
  return heat_flow_gradient(channel, x, t) / (2.0 * params().omega * params().mass);
}

double gaussian_quantum_potential(const Channel& channel, double x, double t) {
  const PhysicalParams& p = channel.params();
  const double s2 = channel.sigma(t) * channel.sigma(t);
  const double xi = channel.displacement(x, t);
  return -p.hbar * p.hbar / (2.0 * p.mass) * (xi * xi / (4.0 * s2 * s2) - 1.0 / (2.0 * s2));
}

WaveField sample(const WaveFunction& wave, const GridSpec& grid, bool with_heat_flow) {
  const std::size_t rows = grid.time_samples();
  WaveField f{Field2D(rows, grid.nx, true), Field2D(rows, grid.nx, true), Field2D(rows, grid.nx),
              Field2D(rows, grid.nx, true), Field2D(rows, grid.nx, true), {}};
  if (with_heat_flow) f.heat_flow.assign(wave.channels().size(), Field2D(rows, grid.nx, true));
  const PhysicalParams& p = wave.params();
  const double norm = wave.normalization();
  for (std::size_t r = 0; r < rows; ++r) {
    const double t = grid.t_at(r);
    const double floor = wave.density_floor(t);
    for (std::size_t k = 0; k < grid.nx; ++k) {
      const double x = grid.x_at(k);
      const WavePoint w = wave.evaluate(x, t);
      f.psi_re(r, k) = w.psi.real();
      f.psi_im(r, k) = w.psi.imag();
      f.density(r, k) = std::norm(w.psi) / norm;
      f.current(r, k) = (std::conj(w.psi) * (-kI * p.hbar) * w.gradient).real() / (p.mass * norm);
      if (f.density(r, k) > floor) f.potential(r, k) = wave.quantum_potential(x, t).from_density;
      for (std::size_t i = 0; i < f.heat_flow.size(); ++i) {
        f.heat_flow[i](r, k) = wave.heat_flow(i, x, t);
      }
    }
  }
  return f;
}

double modular_phase(double half_separation, double x, const SlitSpec& slit,
                     const PhysicalParams& params, double t) {
  const Channel c(slit, params);
  const double s = c.sigma(t);
  return -half_separation * x * (1.0 / params.diffusivity) * (c.u0() * c.u0() * t / (s * s));
}

ModularDecomposition modular_decompose(double half_separation, double x, const SlitSpec& slit,
                                       const PhysicalParams& params, double t) {
  ModularDecomposition d;
  if (x == 0.0 || t == 0.0) {
    d.degenerate = true;
    d.delta_x = half_separation;
    d.delta_p_mod = momentum_shift(half_separation, slit, params, t);
    return d;
  }
  const double per_length = modular_phase(1.0, x, slit, params, t);
  d.phase = half_separation * per_length;
  const double turns = d.phase / (2.0 * std::numbers::pi);
  const double nearest = std::round(turns);
  const bool on_multiple = std::abs(turns - nearest) <= 1e-12 * std::max(1.0, std::abs(turns));
  d.n = static_cast<long long>(on_multiple ? nearest : std::trunc(turns));
  d.x_n = on_multiple ? half_separation : 2.0 * std::numbers::pi * static_cast<double>(d.n) / per_length;
  d.delta_x = half_separation - d.x_n;
  d.remainder_phase = d.delta_x * per_length;
  d.delta_p_mod = momentum_shift(d.delta_x, slit, params, t);
  return d;
}

MomentumShiftForms momentum_shift_forms(double delta_x, const SlitSpec& slit,
                                        const PhysicalParams& params, double t, Side side) {
  const Channel c(slit, params);
  const double sign = side == Side::Right ? 1.0 : -1.0;
  const double s = c.sigma(t);
  const double d = params.diffusivity;
  const double s0 = slit.sigma0;
  MomentumShiftForms f;
  f.from_dispersion = sign * params.mass * delta_x * d * d * t / (s * s * s0 * s0);
  f.from_rate = sign * params.mass * delta_x * c.sigma_rate(t) / s;
  return f;
}

double momentum_shift(double delta_x, const SlitSpec& slit, const PhysicalParams& params,
                      double t, Side side) {
  return momentum_shift_forms(delta_x, slit, params, t, side).from_dispersion;
}

}  // namespace nslit
