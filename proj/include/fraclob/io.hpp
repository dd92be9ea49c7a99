#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace fraclob {

// Shortest round-trip decimal representation (%.17g trimmed via %g17).
std::string format_g17(double v);

// One CSV from equal-length columns. Floats are written with format_g17 so
// identical doubles always produce identical bytes.
std::string csv_from_columns(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& columns);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Git-style content hash: sha1 over "blob <len>\0" + content, hex encoded.
std::string sha1_hex(const std::string& content);

// ---------------------------------------------------------------------------
// Run configuration
// ---------------------------------------------------------------------------

// Flat key=value configuration covering the model parameters and the run
// controls. Unknown keys are rejected; every field has a default.
struct RunConfig {
  // lattice and model
  double L = 200;
  long M = 400;
  double x_min = 1200;
  double D_alpha = 0.5;
  double nu = 0.5;
  double r = 0.5;
  double p0 = 1300;
  double kappa = 1.0;
  double mu = 0.1;
  double alpha = 0.8;
  double sigma = 1.0;
  double rho = 0.9;
  double beta = 1.0;
  double eps = 0.01;
  long m0 = 0;
  // sampling
  double delta_tau = 1.0;
  long gamma1 = 0;          // > 0 overrides delta_tau = gamma1 * dt
  long trade_events = 1000;
  std::string scheme = "uniform";       // uniform | nonuniform
  std::string interp = "linear";        // linear | spline
  long frames = 0;
  double zeta = 1.5;
  long threads = 1;
  std::vector<std::uint64_t> seeds = {1};
  std::string out_dir = "out";
};

RunConfig parse_config_text(const std::string& text);
std::string canonical_config(const RunConfig& cfg);  // sorted keys, one per line
void validate_config(const RunConfig& cfg);          // throws on bad values

// JSON manifest naming every input that determines the outputs: the
// canonical config, its hash, and the explicit seed list.
std::string manifest_json(const RunConfig& cfg,
                          const std::vector<std::string>& outputs);

}  // namespace fraclob
