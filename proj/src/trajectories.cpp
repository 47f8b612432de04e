#include "nslit/trajectories.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <limits>

#include "nslit/config.hpp"
#include "nslit/error.hpp"

namespace nslit {

std::vector<Seed> seed_positions(const std::vector<SlitSpec>& slits, std::size_t count) {
  std::vector<Seed> seeds;
  for (std::size_t i = 0; i < slits.size(); ++i) {
    const SlitSpec& s = slits[i];
    if (s.weight == 0.0) continue;
    const boost::math::normal dist(s.center, s.sigma0);
    for (std::size_t k = 1; k <= count; ++k) {
      const double q = static_cast<double>(k) / static_cast<double>(count + 1);
      // the median is exact; boost returns it to within an ulp
      const double x = 2 * k == count + 1 ? s.center : boost::math::quantile(dist, q);
      seeds.push_back({x, i});
    }
  }
  return seeds;
}

VelocityField::VelocityField(const Superposition& sup, const GridSpec& grid) : grid_(grid) {
  SuperposedField f = sample(sup, grid);
  velocity_ = std::move(f.velocity);
  density_ = std::move(f.density);
  floor_ = std::move(f.floor);
}

VelocityField::VelocityField(GridSpec grid, Field2D velocity, Field2D density,
                             std::vector<double> floor)
    : grid_(grid), velocity_(std::move(velocity)), density_(std::move(density)),
      floor_(std::move(floor)) {}

VelocityField::Sample VelocityField::at(double x, std::size_t row, double frac) const {
  const double pos = (x - grid_.x_min) / grid_.dx();
  const std::size_t k = std::min(static_cast<std::size_t>(std::max(pos, 0.0)), grid_.nx - 2);
  const double fx = pos - static_cast<double>(k);
  const std::size_t r1 = std::min(row + 1, grid_.nt);
  auto lerp2 = [&](const Field2D& f) {
    const double a = (1.0 - fx) * f(row, k) + fx * f(row, k + 1);
    const double b = (1.0 - fx) * f(r1, k) + fx * f(r1, k + 1);
    return (1.0 - frac) * a + frac * b;
  };
  Sample s;
  s.velocity = lerp2(velocity_);
  s.density = lerp2(density_);
  const double floor = (1.0 - frac) * floor_[row] + frac * floor_[r1];
  s.resolved = s.density > floor;
  return s;
}

Path integrate(const Seed& seed, const VelocityField& field, std::size_t substeps) {
  const GridSpec& g = field.grid();
  Path path;
  path.seed = seed;
  path.x.reserve(g.time_samples());
  path.held.reserve(g.time_samples());
  path.x.push_back(seed.x0);
  path.held.push_back(0);
  if (seed.x0 < g.x_min || seed.x0 > g.x_max) {
    path.left_domain = true;
    return path;
  }
  const std::size_t m = std::max<std::size_t>(substeps, 1);
  const double h = g.dt() / static_cast<double>(m);
  const double dfrac = 1.0 / static_cast<double>(m);
  double x = seed.x0;
  for (std::size_t row = 0; row < g.nt; ++row) {
    bool held = false;
    for (std::size_t j = 0; j < m && !path.left_domain; ++j) {
      const double f0 = static_cast<double>(j) * dfrac;
      const VelocityField::Sample s0 = field.at(x, row, f0);
      if (!s0.resolved) {
        held = true;
        continue;
      }
      auto vel = [&](double xs, double fr) {
        if (xs < g.x_min || xs > g.x_max) return 0.0;
        return field.at(xs, row, fr).velocity;
      };
      const double k1 = s0.velocity;
      const double k2 = vel(x + 0.5 * h * k1, f0 + 0.5 * dfrac);
      const double k3 = vel(x + 0.5 * h * k2, f0 + 0.5 * dfrac);
      const double k4 = vel(x + h * k3, f0 + dfrac);
      x += h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
      if (x < g.x_min || x > g.x_max) path.left_domain = true;
    }
    if (path.left_domain) break;
    path.x.push_back(x);
    path.held.push_back(held ? 1 : 0);
  }
  return path;
}

void require_inside(const Path& path) {
  if (path.left_domain) {
    throw Error(ErrorCode::LeftDomain, "trajectory seeded at x=" + std::to_string(path.seed.x0) +
                                           " left the domain after sample " +
                                           std::to_string(path.x.size() - 1));
  }
}

TrajectorySet trace(const std::vector<Seed>& seeds, const VelocityField& field,
                    std::size_t substeps) {
  TrajectorySet set;
  set.grid = field.grid();
  set.step = field.grid().dt() / static_cast<double>(std::max<std::size_t>(substeps, 1));
  set.paths.reserve(seeds.size());
  for (const Seed& s : seeds) set.paths.push_back(integrate(s, field, substeps));
  return set;
}

TrajectorySet trace_scenario(const ScenarioConfig& cfg) {
  const Superposition sup = Superposition::from_scenario(cfg);
  const VelocityField field(sup, cfg.grid);
  TrajectorySet set = trace(seed_positions(cfg.slits, cfg.trajectory_seeds), field);
  set.scenario_hash = scenario_hash(cfg);
  return set;
}

namespace {

int order(double a, double b) { return a < b ? -1 : (a > b ? 1 : 0); }

}  // namespace

std::vector<Crossing> crossing_check(const TrajectorySet& set) {
  const std::vector<Path>& p = set.paths;
  std::vector<std::size_t> idx(p.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return p[a].seed.x0 < p[b].seed.x0; });

  std::size_t samples = 0;
  for (const Path& q : p) samples = std::max(samples, q.x.size());

  // state[a][b] for pairs in seed order: last strict order seen
  const std::size_t n = idx.size();
  std::vector<int> state(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      state[a * n + b] = order(p[idx[a]].seed.x0, p[idx[b]].seed.x0);
    }
  }

  std::vector<Crossing> out;
  for (std::size_t r = 1; r < samples; ++r) {
    // Fast path: if every adjacent pair of still-running paths is in seed
    // order and no pair has been reversed before, nothing can have swapped.
    bool clean = true;
    double prev = -std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n && clean; ++a) {
      const Path& q = p[idx[a]];
      if (r >= q.x.size()) {
        clean = false;
        break;
      }
      if (q.x[r] < prev) clean = false;
      prev = q.x[r];
    }
    if (clean) {
      for (int s : state) {
        if (s > 0) {
          clean = false;
          break;
        }
      }
    }
    if (clean) continue;
    for (std::size_t a = 0; a < n; ++a) {
      const Path& qa = p[idx[a]];
      if (r >= qa.x.size()) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        const Path& qb = p[idx[b]];
        if (r >= qb.x.size()) continue;
        const int now = order(qa.x[r], qb.x[r]);
        int& last = state[a * n + b];
        if (now != 0 && last != 0 && now != last) {
          out.push_back({idx[a], idx[b], r, set.grid.t_at(r)});
        }
        if (now != 0) last = now;
      }
    }
  }
  return out;
}

std::size_t axis_crossings(const TrajectorySet& set, double axis) {
  std::size_t count = 0;
  for (const Path& q : set.paths) {
    const int side = order(q.seed.x0, axis);
    if (side == 0) continue;
    for (double x : q.x) {
      if (order(x, axis) == -side) {
        ++count;
        break;
      }
    }
  }
  return count;
}

Confinement cell_confinement(const TrajectorySet& set, const ScenarioConfig& cfg) {
  const std::vector<SlitSpec>& s = cfg.slits;
  if (s.size() < 4) {
    throw Error(ErrorCode::NotAGrating, "cell confinement needs >= 4 slits, got " +
                                            std::to_string(s.size()));
  }
  std::vector<std::size_t> order_idx(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) order_idx[i] = i;
  std::sort(order_idx.begin(), order_idx.end(),
            [&](std::size_t a, std::size_t b) { return s[a].center < s[b].center; });
  const double d = s[order_idx[1]].center - s[order_idx[0]].center;
  for (std::size_t i = 1; i < order_idx.size(); ++i) {
    const double gap = s[order_idx[i]].center - s[order_idx[i - 1]].center;
    if (!(d > 0.0) || std::abs(gap - d) > 1e-9 * d) {
      throw Error(ErrorCode::NotAGrating, "slit spacing is not uniform");
    }
  }
  std::vector<std::uint8_t> interior(s.size(), 0);
  for (std::size_t i = 1; i + 1 < order_idx.size(); ++i) interior[order_idx[i]] = 1;

  Confinement c;
  c.spacing = d;
  for (const Path& q : set.paths) {
    if (q.seed.slit >= s.size() || !interior[q.seed.slit]) continue;
    ++c.interior_paths;
    const SlitSpec& slit = s[q.seed.slit];
    bool inside = !q.left_domain && q.complete(set.grid);
    for (std::size_t r = 0; r < q.x.size() && inside; ++r) {
      const double center = slit.center + slit.velocity_x * set.grid.t_at(r);
      inside = std::abs(q.x[r] - center) <= 0.5 * d;
    }
    if (inside) ++c.confined;
  }
  c.fraction = c.interior_paths == 0
                   ? 0.0
                   : static_cast<double>(c.confined) / static_cast<double>(c.interior_paths);
  return c;
}

KinkReport kink_report(const Path& path, const VelocityField& field, const Field2D& entangling) {
  const GridSpec& g = field.grid();
  KinkReport rep;
  if (path.x.size() < 3) return rep;
  std::vector<double> v(path.x.size());
  for (std::size_t r = 0; r < v.size(); ++r) {
    const std::size_t row = std::min(r, g.nt - 1);
    v[r] = field.at(path.x[r], row, r == g.nt ? 1.0 : 0.0).velocity;
  }
  const double dt = g.dt();
  for (std::size_t r = 1; r + 1 < v.size(); ++r) {
    const double a = std::abs(v[r + 1] - v[r - 1]) / (2.0 * dt);
    if (a > rep.acceleration) {
      rep.acceleration = a;
      rep.time_index = r;
    }
  }
  rep.t = g.t_at(rep.time_index);
  rep.x = path.x[rep.time_index];
  const double pos = (rep.x - g.x_min) / g.dx();
  const std::size_t k = std::min(static_cast<std::size_t>(std::lround(std::max(pos, 0.0))), g.nx - 1);
  const double here = std::abs(entangling(rep.time_index, k));
  std::size_t below = 0;
  for (double e : entangling.values) {
    if (std::abs(e) < here) ++below;
  }
  rep.entangling_percentile =
      static_cast<double>(below) / static_cast<double>(entangling.values.size());
  return rep;
}

namespace {

// Cumulative distribution of P_tot(., t) from trapezoids on a refined grid.
struct Cdf {
  std::vector<double> x;
  std::vector<double> f;

  double operator()(double at) const {
    if (at <= x.front()) return 0.0;
    if (at >= x.back()) return 1.0;
    const auto it = std::upper_bound(x.begin(), x.end(), at);
    const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
    const double w = (at - x[i]) / (x[i + 1] - x[i]);
    return (1.0 - w) * f[i] + w * f[i + 1];
  }

  double inverse(double q) const {
    const auto it = std::lower_bound(f.begin(), f.end(), q);
    if (it == f.begin()) return x.front();
    if (it == f.end()) return x.back();
    const std::size_t i = static_cast<std::size_t>(it - f.begin());
    const double span = f[i] - f[i - 1];
    const double w = span > 0.0 ? (q - f[i - 1]) / span : 0.0;
    return x[i - 1] + w * (x[i] - x[i - 1]);
  }
};

Cdf density_cdf(const Superposition& sup, const GridSpec& grid, double t) {
  constexpr std::size_t kRefine = 16;
  const std::size_t n = (grid.nx - 1) * kRefine + 1;
  Cdf c;
  c.x.resize(n);
  c.f.resize(n);
  const double h = (grid.x_max - grid.x_min) / static_cast<double>(n - 1);
  double prev = 0.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    c.x[i] = grid.x_min + h * static_cast<double>(i);
    const double p = std::max(sup.total_density(c.x[i], t), 0.0);
    if (i > 0) acc += 0.5 * h * (p + prev);
    c.f[i] = acc;
    prev = p;
  }
  for (double& v : c.f) v /= acc;
  return c;
}

}  // namespace

std::vector<Seed> density_quantile_seeds(const Superposition& sup, const GridSpec& grid,
                                         std::size_t count) {
  const Cdf c = density_cdf(sup, grid, 0.0);
  std::vector<Seed> seeds;
  seeds.reserve(count);
  for (std::size_t k = 1; k <= count; ++k) {
    const double q = static_cast<double>(k) / static_cast<double>(count + 1);
    seeds.push_back({c.inverse(q), std::numeric_limits<std::size_t>::max()});
  }
  return seeds;
}

double transport_ks(const TrajectorySet& set, const Superposition& sup, std::size_t row) {
  std::vector<double> xs;
  for (const Path& q : set.paths) {
    if (row < q.x.size()) xs.push_back(q.x[row]);
  }
  if (xs.empty()) return 1.0;
  std::sort(xs.begin(), xs.end());
  const Cdf c = density_cdf(sup, set.grid, set.grid.t_at(row));
  const double n = static_cast<double>(xs.size());
  double ks = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = c(xs[i]);
    ks = std::max({ks, std::abs(f - static_cast<double>(i) / n),
                   std::abs(f - static_cast<double>(i + 1) / n)});
  }
  return ks;
}

}  // namespace nslit
