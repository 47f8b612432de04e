#include "nslit/superpose.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nslit/error.hpp"

namespace nslit {

namespace {

// Per-channel quantities at one point, weight already applied to the
// amplitude.
struct ChannelTerms {
  double amp = 0.0;        // w R
  double velocity = 0.0;   // v_tot
  double diffusive = 0.0;  // +D grad P / P, the "-" branch velocity
  double action = 0.0;     // S
};

void fill_terms(const std::vector<Channel>& channels, double x, double t,
                std::vector<ChannelTerms>& out) {
  out.resize(channels.size());
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const Channel& c = channels[i];
    out[i].amp = c.slit().weight * c.amplitude(x, t);
    out[i].velocity = c.total_velocity(x, t);
    out[i].diffusive = -c.osmotic_velocity(x, t);
    out[i].action = c.action(x, t);
  }
}

SuperposedPoint combine(const std::vector<ChannelTerms>& terms, double hbar) {
  SuperposedPoint p;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double pi = terms[i].amp * terms[i].amp;
    p.density += pi;
    p.current += pi * terms[i].velocity;
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      const double rr = terms[i].amp * terms[j].amp;
      if (rr == 0.0) continue;
      const double phi = (terms[i].action - terms[j].action) / hbar;
      const double c = std::cos(phi);
      const double s = std::sin(phi);
      p.density += 2.0 * rr * c;
      const double ent = rr * (terms[i].diffusive - terms[j].diffusive) * s;
      p.current += rr * (terms[i].velocity + terms[j].velocity) * c + ent;
      p.entangling += ent;
    }
  }
  return p;
}

// Integral over the line of R_i R_j cos(phi_ij) at t = 0. There
// phi_ij = k x + c is linear in x and R_i R_j is a Gaussian, so the integral
// is a Gaussian characteristic function.
double overlap_at_start(const Channel& a, const Channel& b) {
  const PhysicalParams& p = a.params();
  const SlitSpec& si = a.slit();
  const SlitSpec& sj = b.slit();
  const double vi = si.velocity_x;
  const double vj = sj.velocity_x;
  const double k = p.mass * (vi - vj) / p.hbar;
  const double c = (-p.mass * vi * si.center + p.mass * vj * sj.center) / p.hbar +
                   si.phase_offset - sj.phase_offset;
  const double s2i = si.sigma0 * si.sigma0;
  const double s2j = sj.sigma0 * sj.sigma0;
  const double a_coef = 0.25 / s2i + 0.25 / s2j;
  const double mean = (si.center / s2i + sj.center / s2j) / (4.0 * a_coef);
  const double gap = si.center - sj.center;
  const double envelope = std::exp(-gap * gap / (4.0 * (s2i + s2j)) - k * k / (4.0 * a_coef));
  const double prefactor =
      std::sqrt(std::numbers::pi / a_coef) / std::sqrt(2.0 * std::numbers::pi * si.sigma0 * sj.sigma0);
  return prefactor * envelope * std::cos(k * mean + c);
}

}  // namespace

Superposition::Superposition(std::vector<Channel> channels) : channels_(std::move(channels)) {
  if (channels_.empty()) throw Error(ErrorCode::EmptyChannels, "superposition needs >= 1 channel");
  for (const Channel& c : channels_) {
    if (!(c.params() == channels_.front().params())) {
      throw Error(ErrorCode::MismatchedParams, "channels must share physical parameters");
    }
  }
  norm_ = 0.0;
  for (std::size_t i = 0; i < channels_.size(); ++i) {
    const double wi = channels_[i].slit().weight;
    norm_ += wi * wi;
    for (std::size_t j = i + 1; j < channels_.size(); ++j) {
      norm_ += 2.0 * wi * channels_[j].slit().weight * overlap_at_start(channels_[i], channels_[j]);
    }
  }
}

Superposition Superposition::from_scenario(const ScenarioConfig& cfg) {
  std::vector<Channel> channels;
  channels.reserve(cfg.slits.size());
  for (const SlitSpec& s : cfg.slits) channels.emplace_back(s, cfg.params);
  return Superposition(std::move(channels));
}

double pairwise_phase(const Channel& a, const Channel& b, double x, double t) {
  if (!(a.params() == b.params())) {
    throw Error(ErrorCode::MismatchedParams, "channels must share physical parameters");
  }
  return (a.action(x, t) - b.action(x, t)) / a.params().hbar;
}

double Superposition::pairwise_phase(std::size_t i, std::size_t j, double x, double t) const {
  return nslit::pairwise_phase(channels_.at(i), channels_.at(j), x, t);
}

SuperposedPoint Superposition::raw(double x, double t) const {
  thread_local std::vector<ChannelTerms> terms;
  fill_terms(channels_, x, t, terms);
  return combine(terms, params().hbar);
}

SuperposedPoint Superposition::evaluate(double x, double t) const {
  if (!(norm_ > 0.0)) {
    throw Error(ErrorCode::VanishingDensity, "superposition has zero total mass");
  }
  SuperposedPoint p = raw(x, t);
  p.density /= norm_;
  p.current /= norm_;
  p.entangling /= norm_;
  return p;
}

EntanglingForms Superposition::entangling_forms(std::size_t i, std::size_t j, double x,
                                                double t) const {
  const Channel& a = channels_.at(i);
  const Channel& b = channels_.at(j);
  const PhysicalParams& p = params();
  const double wij = a.slit().weight * b.slit().weight / norm_;
  const double s = std::sin(pairwise_phase(i, j, x, t));

  EntanglingForms f;
  f.amplitude_form = wij * (p.hbar / p.mass) *
                     (b.amplitude(x, t) * a.amplitude_gradient(x, t) -
                      a.amplitude(x, t) * b.amplitude_gradient(x, t)) *
                     s;
  // grad Q_i = kT grad P_i / P_i.
  const double grad_q = p.kT * (a.log_density_gradient(x, t) - b.log_density_gradient(x, t));
  f.heat_flow_form = wij * std::sqrt(a.density(x, t) * b.density(x, t)) * grad_q /
                     (2.0 * p.omega * p.mass) * s;
  return f;
}

double Superposition::peak_bound(double t) const {
  double amp = 0.0;
  for (const Channel& c : channels_) {
    const double s = c.sigma(t);
    amp += c.slit().weight / std::sqrt(std::sqrt(2.0 * std::numbers::pi * s * s));
  }
  return amp * amp / norm_;
}

std::optional<double> Superposition::try_average_velocity(double x, double t) const {
  const SuperposedPoint p = evaluate(x, t);
  if (!(p.density > density_floor(t))) return std::nullopt;
  return p.current / p.density;
}

double Superposition::average_velocity(double x, double t) const {
  if (auto v = try_average_velocity(x, t)) return *v;
  throw Error(ErrorCode::VanishingDensity,
              "density below epsilon_P at x=" + std::to_string(x) + ", t=" + std::to_string(t));
}

double symmetric_pair_phase(const PhysicalParams& params, double half_separation, double velocity,
                            double sigma0, double x, double t) {
  const double d = params.diffusivity;
  const double u0 = d / sigma0;
  const double s2 = sigma0 * sigma0 + u0 * u0 * t * t;
  return 2.0 * params.mass * velocity * x / params.hbar -
         (half_separation + velocity * t) * x * (1.0 / d) * (u0 * u0 * t / s2);
}

std::vector<SlitSpec> symmetric_double_slit(double half_separation, double velocity,
                                            double sigma0, double weight) {
  SlitSpec right{half_separation, sigma0, weight, 0.0, velocity};
  SlitSpec left{-half_separation, sigma0, weight, 0.0, -velocity};
  return {right, left};
}

SuperposedField sample(const Superposition& sup, const GridSpec& grid, bool with_phases) {
  const std::size_t rows = grid.time_samples();
  const std::size_t n = sup.size();
  SuperposedField f;
  f.density = Field2D(rows, grid.nx);
  f.current = Field2D(rows, grid.nx, true);
  f.entangling = Field2D(rows, grid.nx, true);
  f.velocity = Field2D(rows, grid.nx, true);
  f.resolved.assign(rows * grid.nx, 0);
  f.floor.resize(rows);
  if (with_phases) f.phases.assign(n * (n - 1) / 2, Field2D(rows, grid.nx, true));

  std::vector<ChannelTerms> terms;
  for (std::size_t r = 0; r < rows; ++r) {
    const double t = grid.t_at(r);
    f.floor[r] = sup.density_floor(t);
    for (std::size_t k = 0; k < grid.nx; ++k) {
      const double x = grid.x_at(k);
      fill_terms(sup.channels(), x, t, terms);
      SuperposedPoint p = combine(terms, sup.params().hbar);
      const double norm = sup.normalization();
      f.density(r, k) = p.density / norm;
      f.current(r, k) = p.current / norm;
      f.entangling(r, k) = p.entangling / norm;
      if (f.density(r, k) > f.floor[r]) {
        f.velocity(r, k) = p.current / p.density;
        f.resolved[r * grid.nx + k] = 1;
      }
      if (with_phases) {
        std::size_t pair = 0;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i + 1; j < n; ++j, ++pair) {
            f.phases[pair](r, k) = (terms[i].action - terms[j].action) / sup.params().hbar;
          }
        }
      }
    }
  }
  return f;
}

Field2D superpose_densities(const Superposition& sup, std::span<const Field2D> channel_densities,
                            const GridSpec& grid) {
  if (channel_densities.size() != sup.size()) {
    throw Error(ErrorCode::EmptyChannels, "need one density field per channel");
  }
  const std::size_t rows = grid.time_samples();
  Field2D out(rows, grid.nx);
  const auto& ch = sup.channels();
  for (std::size_t r = 0; r < rows; ++r) {
    const double t = grid.t_at(r);
    for (std::size_t k = 0; k < grid.nx; ++k) {
      const double x = grid.x_at(k);
      double total = 0.0;
      for (std::size_t i = 0; i < ch.size(); ++i) {
        const double wi = ch[i].slit().weight;
        const double pi = std::max(channel_densities[i](r, k), 0.0);
        total += wi * wi * pi;
        for (std::size_t j = i + 1; j < ch.size(); ++j) {
          const double wj = ch[j].slit().weight;
          const double pj = std::max(channel_densities[j](r, k), 0.0);
          total += 2.0 * wi * wj * std::sqrt(pi * pj) * std::cos(pairwise_phase(ch[i], ch[j], x, t));
        }
      }
      out(r, k) = total / sup.normalization();
    }
  }
  return out;
}

}  // namespace nslit
