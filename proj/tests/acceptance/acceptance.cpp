// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Run from ctest; NSLIT_CLI points at the command-line binary.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nslit/channel.hpp"
#include "nslit/diffusion.hpp"
#include "nslit/error.hpp"
#include "nslit/gallery.hpp"
#include "nslit/oracle.hpp"
#include "nslit/run.hpp"
#include "nslit/superpose.hpp"
#include "nslit/trajectories.hpp"
#include "support.hpp"

using namespace nslit;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s %2d %-26s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

const ScenarioConfig& scenario(const std::string& name) {
  static const std::vector<ScenarioConfig> all = gallery_scenarios();
  for (const auto& c : all) {
    if (c.name == name) return c;
  }
  throw std::runtime_error("no scenario " + name);
}

// Lattice sum of a row; the grids are fine enough for the trapezoid rule.
double row_mass(const Field2D& f, std::size_t r, double dx) {
  double m = 0.0;
  for (std::size_t k = 0; k < f.cols; ++k) m += f(r, k);
  return (m - 0.5 * (f(r, 0) + f(r, f.cols - 1))) * dx;
}

void dispersion_law() {
  const PhysicalParams p;  // D = 1
  const SlitSpec slit{0.0, 1.0};
  const Channel ch(slit, p);
  // output times 0, 0.5, 1, 1.5, 2
  auto linf = [&](std::size_t nx, double* worst_var) {
    const GridSpec g{-20.0, 20.0, nx, 2.0, 4};
    const DiffusionHistory h = run_diffusion(slit, p, g);
    double err = 0.0;
    for (std::size_t r = 0; r < h.grid.time_samples(); ++r) {
      const double t = h.grid.t_at(r);
      double var = 0.0;
      for (std::size_t k = 0; k < nx; ++k) {
        const double x = h.grid.x_at(k);
        var += x * x * h.density(r, k) * h.grid.dx();
        err = std::max(err, std::abs(h.density(r, k) - ch.density(x, t)) / ch.density(0.0, t));
      }
      const double sigma = ch.sigma(t);
      if (worst_var && r % 2 == 0 && r > 0) {
        *worst_var = std::max(*worst_var, std::abs(var - sigma * sigma) / (sigma * sigma));
      }
    }
    return err;
  };
  double var_err = 0.0;
  const double fine = linf(801, &var_err);
  const double coarse = linf(401, nullptr);
  const double ratio = coarse / fine;
  report(1, "dispersion-law", var_err < 1e-2 && fine < 1e-3 && ratio >= 3.5,
         fmt("variance rel %.2e (<1e-2), Linf/peak %.2e (<1e-3), halving-dx ratio %.2f (>=3.5)",
             var_err, fine, ratio));
}

void quantum_equivalence() {
  double worst_p = 0.0, worst_j = 0.0;
  for (const ScenarioConfig& c : gallery_scenarios()) {
    const OracleComparison o = compare_with_oracle(c, 1e-12);
    worst_p = std::max(worst_p, o.density.max_rel);
    worst_j = std::max(worst_j, o.current.max_rel);
  }
  report(2, "quantum-equivalence", worst_p < 1e-9 && worst_j < 1e-9,
         fmt("9 scenarios, max rel P %.2e, J %.2e (<1e-9)", worst_p, worst_j));
}

void interference_anchors() {
  const PhysicalParams p;
  const GridSpec g{-20.0, 20.0, 401, 3.0, 6};
  // On the axis of a symmetric pair the phase difference is 0; adding a pi
  // offset to one slit makes it pi there.
  const auto bright = symmetric_double_slit(3.0, 0.0, 0.7);
  auto dark = bright;
  dark[1].phase_offset = std::numbers::pi;
  const Superposition sb = Superposition::from_scenario({"b", p, bright, g, {}});
  const Superposition sd = Superposition::from_scenario({"d", p, dark, g, {}});
  const std::size_t axis = (g.nx - 1) / 2;
  double worst_bright = 0.0, worst_dark = 0.0;
  int points = 0;
  for (std::size_t r = 0; r < g.time_samples(); ++r) {
    const double t = g.t_at(r);
    const double x = g.x_at(axis);
    const double phi_b = sb.pairwise_phase(0, 1, x, t);
    const double phi_d = sd.pairwise_phase(0, 1, x, t);
    if (std::abs(phi_b) > 1e-12 || std::abs(std::remainder(phi_d - std::numbers::pi, 2 * std::numbers::pi)) > 1e-12) {
      continue;
    }
    const double single = Channel(bright[0], p).density(x, t);
    worst_bright = std::max(worst_bright, support::rel(sb.raw_density(x, t), 4.0 * single));
    // peak of the unnormalized pair density is bounded by (R1 + R2)^2
    const double peak = 4.0 * Channel(bright[0], p).density(bright[0].center, t);
    worst_dark = std::max(worst_dark, std::abs(sd.raw_density(x, t)) / peak);
    ++points;
  }
  report(3, "interference-anchors", points >= 5 && worst_bright < 1e-12 && worst_dark < 1e-10,
         fmt("%.0f axis points: |P/4P1 - 1| %.1e, dark P/peak %.1e (<1e-10)", points,
             worst_bright, worst_dark));
}

void no_crossing() {
  std::size_t crossings = 0, axis = 0, incomplete = 0, paths = 0;
  for (const char* name : {"fig1_double_slit", "fig2_wide_dispersion"}) {
    const ScenarioConfig& c = scenario(name);
    const Superposition sup = Superposition::from_scenario(c);
    const VelocityField field(sup, c.grid);
    const TrajectorySet set = trace(seed_positions(c.slits, 20), field);
    crossings += crossing_check(set).size();
    axis += axis_crossings(set, 0.0);
    for (const Path& path : set.paths) incomplete += !path.complete(c.grid);
    paths += set.paths.size();
  }
  report(4, "no-crossing", crossings == 0 && axis == 0 && incomplete == 0 && paths == 80,
         fmt("%.0f paths, %.0f order reversals, %.0f axis crossings, %.0f truncated",
             static_cast<double>(paths), static_cast<double>(crossings),
             static_cast<double>(axis), static_cast<double>(incomplete)));
}

void free_particle_law() {
  const PhysicalParams p;
  const SlitSpec slit{0.0, 1.0};
  const Channel ch(slit, p);
  const double t_end = 2.0 * slit.sigma0 * slit.sigma0 / p.diffusivity;
  const GridSpec g{-15.0, 15.0, 601, t_end, 400};
  const Superposition sup({ch});
  const VelocityField field(sup, g);
  double worst_law = 0.0, worst_halving = 0.0;
  for (double x0 : {-2.0, -0.6, 0.3, 1.0, 2.5}) {
    const Path a = integrate({x0, 0}, field, 4);
    const Path b = integrate({x0, 0}, field, 8);
    if (!a.complete(g) || !b.complete(g)) {
      worst_law = INFINITY;
      continue;
    }
    for (std::size_t r = 0; r < g.time_samples(); ++r) {
      worst_law = std::max(worst_law, std::abs(a.x[r] - x0 * ch.sigma(g.t_at(r)) / slit.sigma0));
      worst_halving = std::max(worst_halving, std::abs(a.x[r] - b.x[r]));
    }
  }
  report(5, "free-particle-law", worst_law < 1e-4 && worst_halving < 1e-6,
         fmt("max |x - x0 sigma/sigma0| %.2e (<1e-4), step halving %.2e (<1e-6)", worst_law,
             worst_halving));
}

void entangling_reversal() {
  const ScenarioConfig& c = scenario("fig1_double_slit");
  const Superposition sup = Superposition::from_scenario(c);
  // the channels meet head-on at t* = X / |v|
  const double overlap = c.slits[0].center / std::abs(c.slits[0].velocity_x);
  const double before = overlap - 0.5, after = overlap + 0.5;
  int flipped = 0, probes = 0;
  std::string detail;
  for (double x : {0.7, 2.3, 3.9}) {
    const double a = sup.entangling_current(x, before);
    const double b = sup.entangling_current(x, after);
    ++probes;
    if (a != 0.0 && b != 0.0 && std::signbit(a) != std::signbit(b)) ++flipped;
    detail += fmt("x=%.1f: %+.2e -> %+.2e; ", x, a, b);
  }
  report(6, "entangling-sign-reversal", flipped == probes,
         fmt("t %.1f -> %.1f, ", before, after) + detail);
}

void parity_flip() {
  const ScenarioConfig& sym = scenario("fig2_wide_dispersion");
  const ScenarioConfig& shifted = scenario("fig3_phase_shift");
  const SuperposedField a = sample(Superposition::from_scenario(sym), sym.grid);
  const SuperposedField b = sample(Superposition::from_scenario(shifted), shifted.grid);
  const double even_a = support::even_part_fraction(a.entangling);
  const double even_b = support::even_part_fraction(b.entangling);
  auto axis_is_max = [](const SuperposedField& f) {
    const std::size_t r = f.density.rows - 1;
    const auto row = f.density.row(r);
    const double top = *std::max_element(row.begin(), row.end());
    return row[(row.size() - 1) / 2] == top;
  };
  const bool max_a = axis_is_max(a), max_b = axis_is_max(b);
  report(7, "phase-shift-parity-flip", even_a < 0.1 && even_b > 0.5 && max_a && !max_b,
         fmt("even fraction %.3f -> %.3f; axis is screen max: ", even_a, even_b) +
             (max_a ? "yes" : "no") + " -> " + (max_b ? "yes" : "no"));
}

void potential_identities() {
  std::mt19937_64 rng(20100601);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const PhysicalParams p;
  double worst = 0.0;
  std::size_t n = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const double X = 0.5 + 3.0 * u(rng);
    auto slits = symmetric_double_slit(X, -1.0 + 2.0 * u(rng), 0.3 + 0.9 * u(rng));
    slits[1].weight = 0.3 + u(rng);
    slits[1].phase_offset = 2.0 * std::numbers::pi * u(rng);
    std::vector<Channel> ch;
    for (const SlitSpec& s : slits) ch.emplace_back(s, p);
    const WaveFunction w(std::move(ch));
    for (int i = 0; i < 250; ++i) {
      const double t = 3.0 * u(rng);
      const double x = -2.0 * X + 4.0 * X * u(rng);
      if (!(w.density(x, t) > 1e6 * w.density_floor(t))) continue;
      const QuantumPotential q = w.quantum_potential(x, t);
      const double th = w.thermo_potential(x, t);
      for (auto [a, b] : {std::pair{q.from_density, q.from_amplitude}, std::pair{q.from_density, th},
                          std::pair{q.from_amplitude, th}}) {
        worst = std::max(worst, std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}));
      }
      ++n;
    }
  }
  report(8, "potential-identities", n >= 10000 && worst < 1e-9,
         fmt("%.0f points, max pairwise rel %.2e (<1e-9)", static_cast<double>(n), worst));
}

void modular_momentum() {
  const PhysicalParams p;
  double worst_forms = 0.0, worst_invariance = 0.0;
  int checked = 0;
  for (double s0 : {0.4, 1.0, 1.7}) {
    const SlitSpec slit{0.0, s0};
    auto sigma = [&](double t) { return sigma_at(slit, p, t); };
    for (double t : {0.3, 1.0, 2.5}) {
      for (double dx : {0.05, 0.8, 2.0}) {
        const MomentumShiftForms f = momentum_shift_forms(dx, slit, p, t);
        const double rate = support::central_diff(sigma, t, 1e-5);
        worst_forms = std::max(worst_forms, support::rel(f.from_dispersion, p.mass * dx * rate / sigma(t)));
      }
      for (double x : {0.9, 3.0, -2.2}) {
        const double per_length = modular_phase(1.0, x, slit, p, t);
        const double half = 0.37;
        const ModularDecomposition base = modular_decompose(half, x, slit, p, t);
        for (long long n = 1; n <= 5; ++n) {
          // a geometry whose phase is an extra 2 pi n, same sign as the base phase
          const double x_n = 2.0 * std::numbers::pi * static_cast<double>(n) / std::abs(per_length);
          const ModularDecomposition d = modular_decompose(half + x_n, x, slit, p, t);
          worst_invariance = std::max(worst_invariance,
                                      std::abs(d.delta_p_mod - base.delta_p_mod) /
                                          std::max(std::abs(base.delta_p_mod), 1e-300));
          ++checked;
        }
      }
    }
  }
  report(9, "modular-momentum", worst_forms < 1e-6 && worst_invariance < 1e-12,
         fmt("forms rel %.2e (<1e-6), invariance over %.0f shifts %.2e (<1e-12)", worst_forms,
             checked, worst_invariance));
}

void talbot_confinement() {
  const ScenarioConfig& c = scenario("fig4b_talbot_detail");
  const TrajectorySet set = trace_scenario(c);
  const Confinement conf = cell_confinement(set, c);
  report(10, "talbot-confinement", conf.fraction >= 0.95,
         fmt("%.0f/%.0f interior paths within +-d/2 (%.3f, >=0.95)",
             static_cast<double>(conf.confined), static_cast<double>(conf.interior_paths),
             conf.fraction));
}

void conservation() {
  double fdm_drift = 0.0, mass_drift = 0.0, min_p = INFINITY;
  for (const ScenarioConfig& c : gallery_scenarios()) {
    const SuperposedField f = sample(Superposition::from_scenario(c), c.grid);
    const double m0 = row_mass(f.density, 0, c.grid.dx());
    for (std::size_t r = 0; r < f.density.rows; ++r) {
      mass_drift = std::max(mass_drift, std::abs(row_mass(f.density, r, c.grid.dx()) - m0) / m0);
    }
    min_p = std::min(min_p, *std::min_element(f.density.values.begin(), f.density.values.end()));
    for (const SlitSpec& s : c.slits) {
      const DiffusionHistory h = run_diffusion(s, c.params, c.grid);
      fdm_drift = std::max(fdm_drift, h.max_mass_drift);
      min_p = std::min(min_p, *std::min_element(h.density.values.begin(), h.density.values.end()));
    }
  }
  report(11, "conservation", fdm_drift < 1e-12 && mass_drift < 1e-6 && min_p >= 0.0,
         fmt("lattice mass drift %.1e (<1e-12), superposed mass drift %.1e (<1e-6), min P %.1e",
             fdm_drift, mass_drift, min_p));
}

std::vector<char> bytes_of(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void determinism() {
  const fs::path root = fs::temp_directory_path() / "nslit_acceptance_gallery";
  fs::remove_all(root);
  bool ran = true;
  for (const char* run : {"a", "b"}) {
    const std::string cmd = std::string(NSLIT_CLI) + " gallery --out " + (root / run).string() +
                            " > " + (root.string() + "_" + run + ".log") + " 2>&1";
    const int status = std::system(cmd.c_str());
    ran = ran && WIFEXITED(status) && WEXITSTATUS(status) == 0;
  }
  std::size_t files = 0, differing = 0;
  if (ran) {
    for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
      if (!e.is_regular_file()) continue;
      const fs::path other = root / "b" / fs::relative(e.path(), root / "a");
      ++files;
      if (!fs::exists(other) || bytes_of(e.path()) != bytes_of(other)) ++differing;
    }
    std::size_t files_b = 0;
    for (const auto& e : fs::recursive_directory_iterator(root / "b")) files_b += e.is_regular_file();
    if (files_b != files) ++differing;
  }
  report(12, "determinism", ran && files > 0 && differing == 0,
         fmt("%.0f files, %.0f differ", static_cast<double>(files), static_cast<double>(differing)));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> checks{
      dispersion_law,       quantum_equivalence, interference_anchors, no_crossing,
      free_particle_law,    entangling_reversal, parity_flip,          potential_identities,
      modular_momentum,     talbot_confinement,  conservation,         determinism};
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    try {
      checks[i]();
    } catch (const std::exception& e) {
      report(static_cast<int>(i + 1), "exception", false, e.what());
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d failed, %.1f s\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
