#include "nslit/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nslit/channel.hpp"
#include "nslit/error.hpp"

namespace nslit {

PhysicalParams derive_params(double hbar, double mass, double omega) {
  if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0)) {
    std::ostringstream msg;
    msg << "hbar, mass and omega must be > 0 (got hbar=" << hbar << ", mass=" << mass
        << ", omega=" << omega << ")";
    throw Error(ErrorCode::NonPositiveInput, msg.str());
  }
  PhysicalParams p;
  p.hbar = hbar;
  p.mass = mass;
  p.omega = omega;
  p.diffusivity = hbar / (2.0 * mass);
  p.energy = hbar * omega;
  p.kT = hbar * omega;
  return p;
}

std::string_view product_name(Product p) {
  switch (p) {
    case Product::Density: return "density";
    case Product::Current: return "current";
    case Product::Entangling: return "entangling";
    case Product::Trajectories: return "trajectories";
    case Product::OracleDiff: return "oracle-diff";
  }
  return "";
}

std::optional<Product> product_from_name(std::string_view name) {
  for (Product p : {Product::Density, Product::Current, Product::Entangling,
                    Product::Trajectories, Product::OracleDiff}) {
    if (product_name(p) == name) return p;
  }
  return std::nullopt;
}

ScenarioConfig validate_scenario(ScenarioConfig cfg) {
  cfg.params = derive_params(cfg.params.hbar, cfg.params.mass, cfg.params.omega);

  if (cfg.slits.empty()) throw Error(ErrorCode::EmptySlits, "scenario has no slits");
  bool any_weight = false;
  for (std::size_t i = 0; i < cfg.slits.size(); ++i) {
    const SlitSpec& s = cfg.slits[i];
    if (!(s.sigma0 > 0.0)) {
      throw Error(ErrorCode::NonPositiveSigma,
                  "slit " + std::to_string(i) + ": sigma0 must be > 0");
    }
    if (!(s.weight >= 0.0)) {
      throw Error(ErrorCode::NegativeWeight,
                  "slit " + std::to_string(i) + ": weight must be >= 0");
    }
    any_weight = any_weight || s.weight > 0.0;
  }
  if (!any_weight) throw Error(ErrorCode::EmptySlits, "every slit has weight 0");

  const GridSpec& g = cfg.grid;
  if (g.nx < 3 || g.nt < 1 || !(g.x_min < g.x_max) || !(g.t_max > 0.0)) {
    std::ostringstream msg;
    msg << "grid needs x_min < x_max, nx >= 3, nt >= 1, t_max > 0 (got [" << g.x_min << ", "
        << g.x_max << "], nx=" << g.nx << ", nt=" << g.nt << ", t_max=" << g.t_max << ")";
    throw Error(ErrorCode::BadGrid, msg.str());
  }

  // Centroids move linearly and sigma grows monotonically, so the extreme
  // extents occur at t = 0 or t = t_max.
  for (std::size_t i = 0; i < cfg.slits.size(); ++i) {
    const SlitSpec& s = cfg.slits[i];
    for (double t : {0.0, g.t_max}) {
      const double c = s.center + s.velocity_x * t;
      const double reach = kDomainSigmas * sigma_at(s, cfg.params, t);
      if (c - reach < g.x_min || c + reach > g.x_max) {
        std::ostringstream msg;
        msg << "slit " << i << " at t=" << t << " needs [" << c - reach << ", " << c + reach
            << "] inside the domain [" << g.x_min << ", " << g.x_max << "]";
        throw Error(ErrorCode::DomainTooSmall, msg.str());
      }
    }
  }
  return cfg;
}

}  // namespace nslit
