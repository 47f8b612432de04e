#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nslit/model.hpp"
#include "nslit/superpose.hpp"

namespace nslit {

struct EmittedFile {
  std::string name;  // relative to the output directory
  std::string sha256;
  std::uintmax_t bytes = 0;
};

struct RunManifest {
  std::string scenario;
  ScenarioConfig config;
  std::vector<EmittedFile> files;
  std::vector<std::pair<std::string, double>> timings;  // stage, seconds
};

struct Deviation {
  double max_rel = 0.0;
  double mean_rel = 0.0;
  std::size_t points = 0;
};

struct OracleComparison {
  Deviation density;
  Deviation current;
};

/// Compares the superposed density and current against the wavefunction
/// reference at every grid point whose density exceeds `fraction` of the
/// grid maximum. The current deviation is scaled by max(|J_ref|, P c) with
/// c the fastest channel speed scale |v| + u0, so zero crossings of J do not
/// divide by zero.
OracleComparison compare_with_oracle(const ScenarioConfig& cfg, double fraction = 1e-12);

struct FdmComparison {
  std::vector<double> channel_linf;  // max |P_fdm - P| / peak per channel
  double superposed_linf = 0.0;      // same for the superposed density
  double max_mass_drift = 0.0;
  double max_stability = 0.0;
};

FdmComparison compare_with_lattice(const ScenarioConfig& cfg);

/// Computes every requested product and writes it to out_dir (created if
/// missing), followed by manifest.txt. Throws IoError on filesystem trouble.
RunManifest run_scenario(const ScenarioConfig& cfg, const std::string& out_dir);

/// manifest.txt content: scenario, config hash, then `<sha256>  <bytes>  <file>`.
std::string format_manifest(const RunManifest& m);

}  // namespace nslit
