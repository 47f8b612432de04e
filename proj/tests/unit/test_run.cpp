#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sys/wait.h>
#include <sstream>

#include "doctest.h"
#include "nslit/config.hpp"
#include "nslit/error.hpp"
#include "nslit/gallery.hpp"
#include "nslit/io.hpp"
#include "nslit/run.hpp"

using namespace nslit;
namespace fs = std::filesystem;

namespace {

fs::path fresh(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "nslit_run_tests" / name;
  fs::remove_all(dir);
  return dir;
}

ScenarioConfig small(const std::string& name) {
  for (ScenarioConfig c : gallery_scenarios()) {
    if (c.name == name) {
      c.grid.nx = 201;
      c.grid.nt = 40;
      return c;
    }
  }
  FAIL("missing");
  return {};
}

std::set<std::string> names(const RunManifest& m) {
  std::set<std::string> out;
  for (const auto& f : m.files) out.insert(f.name);
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(NSLIT_CLI) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("gallery has one scenario per figure") {
  const auto all = gallery_scenarios();
  REQUIRE(all.size() == 9);
  CHECK(all[0].name == "fig1_double_slit");
  CHECK(all[0].slits[0].velocity_x < 0.0);  // right slit moves left: converging
  CHECK(all[2].slits[1].phase_offset == doctest::Approx(1.5707963267948966));
  CHECK(all[4].slits.size() == 4);
  CHECK(all[5].slits.size() == 9);
  CHECK(all[5].slits.front().weight == 1.0);
  CHECK(all[5].slits.back().weight == doctest::Approx(0.2));
  CHECK(all[7].slits.size() == 7);
  CHECK(all[7].slits.front().weight == 10.0 * all[7].slits[3].weight);
  CHECK(all[8].slits[3].weight == 10.0 * all[8].slits[0].weight);
  for (const SlitSpec& s : all[6].slits) {
    CHECK(s.weight >= 0.1);
    CHECK(s.weight <= 1.0);
  }
}

TEST_CASE("double slit run emits the documented files") {
  const fs::path dir = fresh("fig1");
  const RunManifest m = run_scenario(small("fig1_double_slit"), dir.string());
  const std::set<std::string> want{"scenario.cfg",   "density.csv",      "density.ppm",
                                   "entangling.csv", "entangling.ppm",   "trajectories.csv"};
  CHECK(names(m) == want);
  for (const auto& f : m.files) CHECK(f.sha256 == sha256_file((dir / f.name).string()));
  const std::string manifest = slurp(dir / "manifest.txt");
  CHECK(manifest.starts_with("scenario fig1_double_slit\nconfig_sha256 "));
  for (const auto& f : m.files) CHECK(manifest.find(f.sha256 + "  ") != std::string::npos);
  CHECK(m.timings.size() == 2);
  // the resolved config is emitted and reloads identically
  CHECK(load_config((dir / "scenario.cfg").string()) == m.config);
}

TEST_CASE("every requested product maps to a file") {
  ScenarioConfig c = small("fig4a_three_slit");
  c.outputs = {Product::OracleDiff};
  const fs::path dir = fresh("oracle");
  RunManifest m = run_scenario(c, dir.string());
  CHECK(names(m) == std::set<std::string>{"scenario.cfg", "oracle_diff.csv"});
  const std::string diff = slurp(dir / "oracle_diff.csv");
  CHECK(diff.starts_with("quantity,max_rel,mean_rel,points\ndensity,"));
  CHECK(diff.find("\ncurrent,") != std::string::npos);

  c.outputs = {Product::Density, Product::Current, Product::Entangling, Product::Trajectories,
               Product::OracleDiff};
  c.fdm_check = true;
  m = run_scenario(c, fresh("all").string());
  CHECK(names(m).size() == 10);
  CHECK(names(m).contains("current.ppm"));
  CHECK(names(m).contains("fdm_check.csv"));
}

TEST_CASE("runs are deterministic") {
  const ScenarioConfig c = small("fig3_phase_shift");
  const RunManifest a = run_scenario(c, fresh("det_a").string());
  const RunManifest b = run_scenario(c, fresh("det_b").string());
  REQUIRE(a.files.size() == b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) CHECK(a.files[i].sha256 == b.files[i].sha256);
  CHECK(format_manifest(a) == format_manifest(b));
}

TEST_CASE("oracle and lattice comparisons") {
  const OracleComparison o = compare_with_oracle(small("fig2_wide_dispersion"));
  CHECK(o.density.points > 0);
  CHECK(o.density.max_rel < 1e-9);
  CHECK(o.current.max_rel < 1e-9);
  ScenarioConfig c = small("fig2_wide_dispersion");
  c.grid.nx = 801;
  const FdmComparison f = compare_with_lattice(c);
  CHECK(f.channel_linf.size() == 2);
  CHECK(f.max_mass_drift < 1e-12);
  CHECK(f.max_stability <= 0.5);
  CHECK(f.superposed_linf < 1e-2);
}

TEST_CASE("unwritable output directory") {
  CHECK_THROWS_AS(run_scenario(small("fig2_wide_dispersion"), "/proc/nslit/out"), Error);
}

TEST_CASE("command line") {
  const fs::path dir = fresh("cli");
  fs::create_directories(dir);
  const fs::path log = dir / "log.txt";
  const std::string cfg = std::string(NSLIT_SOURCE_DIR) + "/configs/fig2_wide_dispersion.cfg";

  CHECK(run_cli("validate --config " + cfg, log) == 0);
  CHECK(slurp(log).starts_with("ok fig2_wide_dispersion"));

  CHECK(run_cli("validate --config " + std::string(NSLIT_SOURCE_DIR) + "/tests/data/bad_sigma.cfg",
                log) == 1);
  CHECK(slurp(log).starts_with("error: NonPositiveSigma line 10:"));

  CHECK(run_cli("validate --config /nonexistent.cfg", log) == 1);
  CHECK(slurp(log).starts_with("error: IoError"));

  CHECK(run_cli("simulate --config " + cfg + " --out " + (dir / "sim").string() +
                    " --outputs density,current --nx 101 --nt 20",
                log) == 0);
  const GridTable t = read_grid((dir / "sim" / "current.csv").string());
  CHECK(t.xs.size() == 101);
  CHECK(t.times.size() == 21);
  CHECK_FALSE(fs::exists(dir / "sim" / "trajectories.csv"));

  CHECK(run_cli("simulate --config " + cfg + " --out " + (dir / "bad").string() +
                    " --outputs density,heat",
                log) == 1);
  CHECK(slurp(log).starts_with("error: UnknownKey"));
  CHECK(run_cli("simulate --config " + cfg + " --out " + (dir / "bad").string() + " --nx 2", log) == 1);
  CHECK(slurp(log).starts_with("error: BadGrid"));
  CHECK(run_cli("frobnicate", log) != 0);
  CHECK(slurp(log).starts_with("error: "));
}
