#include "nslit/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nslit/channel.hpp"
#include "nslit/config.hpp"
#include "nslit/diffusion.hpp"
#include "nslit/error.hpp"
#include "nslit/io.hpp"
#include "nslit/oracle.hpp"
#include "nslit/trajectories.hpp"

namespace nslit {

namespace fs = std::filesystem;

namespace {

void accumulate(Deviation& d, double rel) {
  d.max_rel = std::max(d.max_rel, rel);
  d.mean_rel += rel;
  ++d.points;
}

void finish(Deviation& d) {
  if (d.points > 0) d.mean_rel /= static_cast<double>(d.points);
}

double speed_scale(const ScenarioConfig& cfg) {
  double c = 0.0;
  for (const SlitSpec& s : cfg.slits) {
    c = std::max(c, std::abs(s.velocity_x) + cfg.params.diffusivity / s.sigma0);
  }
  return c;
}

}  // namespace

OracleComparison compare_with_oracle(const ScenarioConfig& cfg, double fraction) {
  const Superposition sup = Superposition::from_scenario(cfg);
  const WaveFunction wave = WaveFunction::from_scenario(cfg);
  const GridSpec& g = cfg.grid;
  const SuperposedField classical = sample(sup, g);
  const WaveField quantum = sample(wave, g);
  const double peak = *std::max_element(classical.density.values.begin(),
                                        classical.density.values.end());
  const double c = speed_scale(cfg);
  OracleComparison out;
  for (std::size_t i = 0; i < classical.density.values.size(); ++i) {
    const double p = classical.density.values[i];
    if (!(p > fraction * peak)) continue;
    const double q = quantum.density.values[i];
    accumulate(out.density, std::abs(p - q) / std::abs(q));
    const double jc = classical.current.values[i];
    const double jq = quantum.current.values[i];
    accumulate(out.current, std::abs(jc - jq) / std::max(std::abs(jq), p * c));
  }
  finish(out.density);
  finish(out.current);
  return out;
}

FdmComparison compare_with_lattice(const ScenarioConfig& cfg) {
  const Superposition sup = Superposition::from_scenario(cfg);
  const GridSpec& g = cfg.grid;
  FdmComparison out;
  std::vector<Field2D> lattice;
  for (const Channel& ch : sup.channels()) {
    const DiffusionHistory h = run_diffusion(ch.slit(), cfg.params, g);
    out.max_mass_drift = std::max(out.max_mass_drift, h.max_mass_drift);
    out.max_stability = std::max(out.max_stability, h.max_stability);
    Field2D shifted = shifted_history(h, ch.slit(), g);
    double peak = 0.0;
    double err = 0.0;
    for (std::size_t r = 0; r < shifted.rows; ++r) {
      const double t = g.t_at(r);
      for (std::size_t k = 0; k < shifted.cols; ++k) {
        const double exact = ch.density(g.x_at(k), t);
        peak = std::max(peak, exact);
        err = std::max(err, std::abs(shifted(r, k) - exact));
      }
    }
    out.channel_linf.push_back(err / peak);
    lattice.push_back(std::move(shifted));
  }
  const Field2D combined = superpose_densities(sup, lattice, g);
  const SuperposedField exact = sample(sup, g);
  double peak = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i < combined.values.size(); ++i) {
    peak = std::max(peak, exact.density.values[i]);
    err = std::max(err, std::abs(combined.values[i] - exact.density.values[i]));
  }
  out.superposed_linf = err / peak;
  return out;
}

namespace {

class Emitter {
 public:
  Emitter(const fs::path& dir, RunManifest& m) : dir_(dir), m_(m) {}

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void record(const std::string& name) {
    const std::string p = path(name);
    std::error_code ec;
    const auto size = fs::file_size(p, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot stat " + p);
    m_.files.push_back({name, sha256_file(p), size});
  }

  void text(const std::string& name, const std::string& content) {
    std::ofstream out(path(name), std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path(name));
    out << content;
    out.close();
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + path(name));
    record(name);
  }

  void grid(const std::string& stem, const Field2D& f, const GridSpec& g, Palette palette) {
    write_grid(f, g, path(stem + ".csv"));
    record(stem + ".csv");
    render_heatmap(f, g, palette, path(stem + ".ppm"));
    record(stem + ".ppm");
  }

 private:
  fs::path dir_;
  RunManifest& m_;
};

std::string trajectories_csv(const TrajectorySet& set) {
  std::string out = "# scenario_sha256=" + set.scenario_hash + " step=" + format_double(set.step) +
                    "\npath,slit,x0,t,x,held\n";
  for (std::size_t i = 0; i < set.paths.size(); ++i) {
    const Path& p = set.paths[i];
    const std::string head = std::to_string(i) + "," + std::to_string(p.seed.slit) + "," +
                             format_double(p.seed.x0) + ",";
    for (std::size_t r = 0; r < p.x.size(); ++r) {
      out += head + format_double(set.grid.t_at(r)) + "," + format_double(p.x[r]) + "," +
             (p.held[r] ? "1" : "0") + "\n";
    }
  }
  return out;
}

}  // namespace

RunManifest run_scenario(const ScenarioConfig& input, const std::string& out_dir) {
  using clock = std::chrono::steady_clock;
  const ScenarioConfig cfg = validate_scenario(input);
  RunManifest m;
  m.scenario = cfg.name;
  m.config = cfg;

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw Error(ErrorCode::IoError, "cannot create output directory " + out_dir);
  }
  Emitter emit(out_dir, m);
  auto stage = [&](const std::string& name, auto&& body) {
    const auto t0 = clock::now();
    body();
    m.timings.emplace_back(name, std::chrono::duration<double>(clock::now() - t0).count());
  };

  emit.text("scenario.cfg", serialize_config(cfg));

  const Superposition sup = Superposition::from_scenario(cfg);
  const bool want_fields = cfg.outputs.contains(Product::Density) ||
                           cfg.outputs.contains(Product::Current) ||
                           cfg.outputs.contains(Product::Entangling);
  if (want_fields) {
    stage("superpose", [&] {
      const SuperposedField f = sample(sup, cfg.grid);
      if (cfg.outputs.contains(Product::Density)) {
        emit.grid("density", f.density, cfg.grid, Palette::Intensity);
      }
      if (cfg.outputs.contains(Product::Current)) {
        emit.grid("current", f.current, cfg.grid, Palette::Diverging);
      }
      if (cfg.outputs.contains(Product::Entangling)) {
        emit.grid("entangling", f.entangling, cfg.grid, Palette::Diverging);
      }
    });
  }
  if (cfg.outputs.contains(Product::Trajectories)) {
    stage("trajectories", [&] {
      const TrajectorySet set = trace_scenario(cfg);
      emit.text("trajectories.csv", trajectories_csv(set));
    });
  }
  if (cfg.outputs.contains(Product::OracleDiff)) {
    stage("oracle", [&] {
      const OracleComparison c = compare_with_oracle(cfg);
      std::string s = "quantity,max_rel,mean_rel,points\n";
      for (const auto& [name, d] : {std::pair{"density", c.density}, std::pair{"current", c.current}}) {
        s += std::string(name) + "," + format_double(d.max_rel) + "," + format_double(d.mean_rel) +
             "," + std::to_string(d.points) + "\n";
      }
      emit.text("oracle_diff.csv", s);
    });
  }
  if (cfg.fdm_check) {
    stage("fdm", [&] {
      const FdmComparison c = compare_with_lattice(cfg);
      std::string s = "field,linf_over_peak\n";
      for (std::size_t i = 0; i < c.channel_linf.size(); ++i) {
        s += "channel_" + std::to_string(i) + "," + format_double(c.channel_linf[i]) + "\n";
      }
      s += "superposed," + format_double(c.superposed_linf) + "\n";
      s += "# max_mass_drift=" + format_double(c.max_mass_drift) +
           " max_stability=" + format_double(c.max_stability) + "\n";
      emit.text("fdm_check.csv", s);
    });
  }

  std::ofstream out(emit.path("manifest.txt"), std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write manifest in " + out_dir);
  out << format_manifest(m);
  if (!out) throw Error(ErrorCode::IoError, "write failed: manifest.txt");
  return m;
}

std::string format_manifest(const RunManifest& m) {
  std::ostringstream s;
  s << "scenario " << m.scenario << "\n";
  s << "config_sha256 " << scenario_hash(m.config) << "\n";
  for (const EmittedFile& f : m.files) s << f.sha256 << "  " << f.bytes << "  " << f.name << "\n";
  return s.str();
}

}  // namespace nslit
