#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nslit {

/// Shared physical constants. Natural units by default: hbar = 2, mass = 1,
/// so that D = 1 and u0 = 1/sigma0.
struct PhysicalParams {
  double hbar = 2.0;
  double mass = 1.0;
  double omega = 1.0;
  double diffusivity = 1.0;  // D = hbar / (2 mass)
  double energy = 2.0;       // E = hbar omega
  double kT = 2.0;           // kT = hbar omega

  bool operator==(const PhysicalParams&) const = default;
};

/// Builds a parameter set with every derived field filled in.
/// Throws NonPositiveInput unless all three inputs are > 0.
PhysicalParams derive_params(double hbar, double mass, double omega);

/// One Gaussian channel ("soft-edged" slit) in the transverse direction.
struct SlitSpec {
  double center = 0.0;        // X_i at t = 0
  double sigma0 = 1.0;        // initial standard deviation
  double weight = 1.0;        // amplitude weight w_i
  double phase_offset = 0.0;  // additive phase (radians)
  double velocity_x = 0.0;    // transverse centroid velocity

  bool operator==(const SlitSpec&) const = default;
};

/// Regular space-time lattice. Positions are nodes x_0 = x_min ..
/// x_{nx-1} = x_max; times are t_n = n * dt for n = 0..nt, so a field sampled
/// on the grid has nt + 1 rows.
struct GridSpec {
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t nx = 201;
  double t_max = 1.0;
  std::size_t nt = 100;

  double dx() const { return (x_max - x_min) / static_cast<double>(nx - 1); }
  double dt() const { return t_max / static_cast<double>(nt); }
  std::size_t time_samples() const { return nt + 1; }

  // Nodes are laid out symmetrically about the domain midpoint so that a
  // domain symmetric about 0 has bitwise mirror-symmetric coordinates.
  double x_at(std::size_t k) const {
    const double mid = 0.5 * (x_min + x_max);
    return mid + (static_cast<double>(k) - 0.5 * static_cast<double>(nx - 1)) * dx();
  }
  double t_at(std::size_t n) const {
    return t_max * static_cast<double>(n) / static_cast<double>(nt);
  }

  bool operator==(const GridSpec&) const = default;
};

enum class Product { Density, Current, Entangling, Trajectories, OracleDiff };

std::string_view product_name(Product p);
std::optional<Product> product_from_name(std::string_view name);

struct ScenarioConfig {
  std::string name = "scenario";
  PhysicalParams params;
  std::vector<SlitSpec> slits;
  GridSpec grid;
  std::set<Product> outputs;
  std::size_t trajectory_seeds = 10;
  bool fdm_check = false;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Checks every invariant the other modules rely on and returns the scenario
/// with its derived parameters recomputed. Errors: NonPositiveInput,
/// NonPositiveSigma, NegativeWeight, EmptySlits, BadGrid, DomainTooSmall.
ScenarioConfig validate_scenario(ScenarioConfig cfg);

/// Required half-width around a centroid, in units of the channel's sigma.
inline constexpr double kDomainSigmas = 6.0;

/// Dense row-major field over (time, x). Rows are grid times.
struct Field2D {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool is_signed = false;
  std::vector<double> values;

  Field2D() = default;
  Field2D(std::size_t rows_, std::size_t cols_, bool signed_field = false)
      : rows(rows_), cols(cols_), is_signed(signed_field), values(rows_ * cols_, 0.0) {}

  double& operator()(std::size_t row, std::size_t col) { return values[row * cols + col]; }
  double operator()(std::size_t row, std::size_t col) const { return values[row * cols + col]; }

  std::span<double> row(std::size_t r) { return {values.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const { return {values.data() + r * cols, cols}; }
};

}  // namespace nslit
