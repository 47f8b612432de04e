// nslit: run n-slit scenarios from the command line.
//
//   nslit simulate --config FILE --out DIR [--outputs a,b] [--nx N] [--nt N]
//   nslit validate --config FILE
//   nslit gallery --out DIR
//
// Failures print one line `error: <Code>[ line L[:C]]: <message>` to stderr
// and exit with status 1 (2 for usage errors).

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nslit/config.hpp"
#include "nslit/error.hpp"
#include "nslit/gallery.hpp"
#include "nslit/run.hpp"

namespace {

std::set<nslit::Product> parse_products(const std::string& list) {
  std::set<nslit::Product> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto p = nslit::product_from_name(item);
    if (!p) throw nslit::Error(nslit::ErrorCode::UnknownKey, "unknown product '" + item + "'");
    out.insert(*p);
  }
  return out;
}

void print_manifest(const nslit::RunManifest& m, const std::string& dir) {
  std::cout << m.scenario << ": " << m.files.size() << " files in " << dir << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"n-slit interference from classical ballistic diffusion"};
  app.require_subcommand(1);

  std::string config_path, out_dir, outputs;
  std::size_t nx = 0, nt = 0;

  auto* simulate = app.add_subcommand("simulate", "run one scenario");
  simulate->add_option("--config", config_path, "scenario file")->required();
  simulate->add_option("--out", out_dir, "output directory")->required();
  simulate->add_option("--outputs", outputs,
                       "comma list of density,current,entangling,trajectories,oracle-diff");
  simulate->add_option("--nx", nx, "override grid.nx");
  simulate->add_option("--nt", nt, "override grid.nt");

  auto* validate = app.add_subcommand("validate", "parse and check a scenario");
  validate->add_option("--config", config_path, "scenario file")->required();

  auto* gallery = app.add_subcommand("gallery", "run every shipped scenario");
  gallery->add_option("--out", out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: Usage: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*validate) {
      const nslit::ScenarioConfig cfg = nslit::load_config(config_path);
      std::cout << "ok " << cfg.name << " slits=" << cfg.slits.size() << " nx=" << cfg.grid.nx
                << " nt=" << cfg.grid.nt << "\n";
    } else if (*simulate) {
      nslit::ScenarioConfig cfg = nslit::load_config(config_path);
      if (!outputs.empty()) cfg.outputs = parse_products(outputs);
      if (nx != 0) cfg.grid.nx = nx;
      if (nt != 0) cfg.grid.nt = nt;
      cfg = nslit::validate_scenario(cfg);
      print_manifest(nslit::run_scenario(cfg, out_dir), out_dir);
    } else if (*gallery) {
      std::string index;
      for (const nslit::ScenarioConfig& cfg : nslit::gallery_scenarios()) {
        const std::string dir = (std::filesystem::path(out_dir) / cfg.name).string();
        const nslit::RunManifest m = nslit::run_scenario(cfg, dir);
        print_manifest(m, dir);
        for (const auto& f : m.files) index += f.sha256 + "  " + cfg.name + "/" + f.name + "\n";
      }
      const std::string path = (std::filesystem::path(out_dir) / "manifest.txt").string();
      std::FILE* f = std::fopen(path.c_str(), "wb");
      if (!f || std::fwrite(index.data(), 1, index.size(), f) != index.size()) {
        if (f) std::fclose(f);
        throw nslit::Error(nslit::ErrorCode::IoError, "cannot write " + path);
      }
      std::fclose(f);
    }
  } catch (const nslit::Error& e) {
    std::cerr << e.describe() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
