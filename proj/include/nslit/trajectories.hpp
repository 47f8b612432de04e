#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nslit/model.hpp"
#include "nslit/superpose.hpp"

namespace nslit {

struct Seed {
  double x0 = 0.0;
  std::size_t slit = 0;  // index into the scenario's slits; SIZE_MAX if not tied to a slit
};

/// Per slit, `count` seeds at the quantiles k/(count+1) of its initial
/// Gaussian. Zero-weight slits get none.
std::vector<Seed> seed_positions(const std::vector<SlitSpec>& slits, std::size_t count);

/// Average velocity J/P sampled on a grid, interpolated bilinearly in (x, t).
class VelocityField {
 public:
  VelocityField(const Superposition& sup, const GridSpec& grid);
  VelocityField(GridSpec grid, Field2D velocity, Field2D density, std::vector<double> floor);

  const GridSpec& grid() const { return grid_; }
  const Field2D& velocity() const { return velocity_; }
  const Field2D& density() const { return density_; }

  struct Sample {
    double velocity = 0.0;
    double density = 0.0;
    bool resolved = true;  // interpolated density above the floor
  };
  /// Evaluates inside time cell `row` (0 <= row < nt) at fraction `frac` of it.
  Sample at(double x, std::size_t row, double frac) const;

 private:
  GridSpec grid_;
  Field2D velocity_;
  Field2D density_;
  std::vector<double> floor_;
};

struct Path {
  Seed seed;
  std::vector<double> x;           // one entry per reached grid time
  std::vector<std::uint8_t> held;  // 1 where the step into this sample was held
  bool left_domain = false;        // truncated when it left [x_min, x_max]

  bool complete(const GridSpec& grid) const { return x.size() == grid.time_samples(); }
};

/// Classical RK4 through the velocity field with `substeps` steps per grid
/// interval. Where the interpolated density is at or below the floor the
/// position is held and flagged.
Path integrate(const Seed& seed, const VelocityField& field, std::size_t substeps = 4);

/// Throws LeftDomain if the path was truncated.
void require_inside(const Path& path);

struct TrajectorySet {
  std::vector<Path> paths;
  GridSpec grid;
  double step = 0.0;        // integrator step
  std::string scenario_hash;  // SHA-256 of the serialized scenario, if known
};

TrajectorySet trace(const std::vector<Seed>& seeds, const VelocityField& field,
                    std::size_t substeps = 4);
/// Builds the field, seeds every slit and integrates.
TrajectorySet trace_scenario(const ScenarioConfig& cfg);

struct Crossing {
  std::size_t first = 0;   // path indices, first has the smaller seed
  std::size_t second = 0;
  std::size_t time_index = 0;
  double t = 0.0;
};

/// Every time index at which a pair of paths changes its x-order (first
/// reversal relative to the seed order, and every later swap).
std::vector<Crossing> crossing_check(const TrajectorySet& set);

/// Number of paths that end up strictly on the other side of `axis` from
/// where they were seeded, at any grid time.
std::size_t axis_crossings(const TrajectorySet& set, double axis = 0.0);

struct Confinement {
  std::size_t interior_paths = 0;
  std::size_t confined = 0;
  double fraction = 0.0;
  double spacing = 0.0;
};

/// For gratings of >= 4 uniformly spaced slits: the share of trajectories
/// seeded in interior slits that stay within center +- d/2 for the whole run.
/// Throws NotAGrating otherwise.
Confinement cell_confinement(const TrajectorySet& set, const ScenarioConfig& cfg);

struct KinkReport {
  std::size_t time_index = 0;
  double t = 0.0;
  double x = 0.0;
  double acceleration = 0.0;          // max |d vbar / dt| along the path
  double entangling_percentile = 0.0;  // rank of |J_e| there among all grid cells, in [0, 1]
};

/// Time of sharpest velocity change along a path and how large |J_e| is
/// there compared to the whole field.
KinkReport kink_report(const Path& path, const VelocityField& field, const Field2D& entangling);

/// Seeds at the quantiles k/(count+1) of the total density at t = 0.
std::vector<Seed> density_quantile_seeds(const Superposition& sup, const GridSpec& grid,
                                         std::size_t count);

/// Kolmogorov-Smirnov distance between path positions at grid time `row`
/// and the distribution of P_tot(., t) on the grid.
double transport_ks(const TrajectorySet& set, const Superposition& sup, std::size_t row);

}  // namespace nslit
