#include "fraclob/io.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fraclob {

std::string format_g17(double v) {
  // %.17g always round-trips; among all precisions that still parse back to
  // the same bits, keep the shortest text (lowest precision on ties) so
  // e.g. 800 prints as "800" rather than "8e+02".
  char best[40];
  std::snprintf(best, sizeof(best), "%.17g", v);
  for (int prec = 1; prec < 17; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
    double back = 0;
    std::sscanf(probe, "%lf", &back);
    if (back == v && std::strlen(probe) < std::strlen(best))
      std::memcpy(best, probe, std::strlen(probe) + 1);
  }
  return best;
}

std::string csv_from_columns(const std::vector<std::string>& header,
                             const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size())
    throw std::invalid_argument("csv: header/column count mismatch");
  std::size_t rows = columns.empty() ? 0 : columns[0].size();
  for (const auto& c : columns)
    if (c.size() != rows)
      throw std::invalid_argument("csv: columns must have equal length");
  std::string out;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) out += ',';
    out += header[j];
  }
  out += '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (j) out += ',';
      out += format_g17(columns[j][i]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string sha1_hex(const std::string& content) {
  const std::string blob =
      "blob " + std::to_string(content.size()) + '\0' + content;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr) != 1)
    throw std::runtime_error("sha1 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out(2 * len, '0');
  for (unsigned int i = 0; i < len; ++i) {
    out[2 * i] = hex[digest[i] >> 4];
    out[2 * i + 1] = hex[digest[i] & 0xf];
  }
  return out;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": " + v);
  }
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return n;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": " + v);
  }
}

std::vector<std::uint64_t> parse_seeds(const std::string& v) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(v);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    std::size_t pos = 0;
    out.push_back(std::stoull(tok, &pos));
    if (pos != tok.size())
      throw std::invalid_argument("config: bad seed: " + tok);
  }
  if (out.empty()) throw std::invalid_argument("config: seeds is empty");
  return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "L") cfg.L = parse_double(key, val);
    else if (key == "M") cfg.M = parse_long(key, val);
    else if (key == "x_min") cfg.x_min = parse_double(key, val);
    else if (key == "D") cfg.D_alpha = parse_double(key, val);
    else if (key == "nu") cfg.nu = parse_double(key, val);
    else if (key == "r") cfg.r = parse_double(key, val);
    else if (key == "p0") cfg.p0 = parse_double(key, val);
    else if (key == "kappa") cfg.kappa = parse_double(key, val);
    else if (key == "mu") cfg.mu = parse_double(key, val);
    else if (key == "alpha") cfg.alpha = parse_double(key, val);
    else if (key == "sigma") cfg.sigma = parse_double(key, val);
    else if (key == "rho") cfg.rho = parse_double(key, val);
    else if (key == "beta") cfg.beta = parse_double(key, val);
    else if (key == "eps") cfg.eps = parse_double(key, val);
    else if (key == "m0") cfg.m0 = parse_long(key, val);
    else if (key == "delta_tau") cfg.delta_tau = parse_double(key, val);
    else if (key == "gamma1") cfg.gamma1 = parse_long(key, val);
    else if (key == "trade_events") cfg.trade_events = parse_long(key, val);
    else if (key == "scheme") cfg.scheme = val;
    else if (key == "interp") cfg.interp = val;
    else if (key == "frames") cfg.frames = parse_long(key, val);
    else if (key == "zeta") cfg.zeta = parse_double(key, val);
    else if (key == "threads") cfg.threads = parse_long(key, val);
    else if (key == "seeds") cfg.seeds = parse_seeds(val);
    else if (key == "out_dir") cfg.out_dir = val;
    else
      throw std::invalid_argument("config: unknown key: " + key);
  }
  validate_config(cfg);
  return cfg;
}

std::string canonical_config(const RunConfig& cfg) {
  std::map<std::string, std::string> kv;
  kv["L"] = format_g17(cfg.L);
  kv["M"] = std::to_string(cfg.M);
  kv["x_min"] = format_g17(cfg.x_min);
  kv["D"] = format_g17(cfg.D_alpha);
  kv["nu"] = format_g17(cfg.nu);
  kv["r"] = format_g17(cfg.r);
  kv["p0"] = format_g17(cfg.p0);
  kv["kappa"] = format_g17(cfg.kappa);
  kv["mu"] = format_g17(cfg.mu);
  kv["alpha"] = format_g17(cfg.alpha);
  kv["sigma"] = format_g17(cfg.sigma);
  kv["rho"] = format_g17(cfg.rho);
  kv["beta"] = format_g17(cfg.beta);
  kv["eps"] = format_g17(cfg.eps);
  kv["m0"] = std::to_string(cfg.m0);
  kv["delta_tau"] = format_g17(cfg.delta_tau);
  kv["gamma1"] = std::to_string(cfg.gamma1);
  kv["trade_events"] = std::to_string(cfg.trade_events);
  kv["scheme"] = cfg.scheme;
  kv["interp"] = cfg.interp;
  kv["frames"] = std::to_string(cfg.frames);
  kv["zeta"] = format_g17(cfg.zeta);
  kv["threads"] = std::to_string(cfg.threads);
  std::string seeds;
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i) {
    if (i) seeds += ',';
    seeds += std::to_string(cfg.seeds[i]);
  }
  kv["seeds"] = seeds;
  kv["out_dir"] = cfg.out_dir;
  std::string out;
  for (const auto& [k, v] : kv) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

void validate_config(const RunConfig& cfg) {
  auto fail = [](const std::string& msg) {
    throw std::invalid_argument("config: " + msg);
  };
  if (!(cfg.L > 0)) fail("L must be positive");
  if (cfg.M < 4) fail("M must be at least 4");
  if (!(cfg.D_alpha > 0)) fail("D must be positive");
  if (!(cfg.nu >= 0)) fail("nu must be non-negative");
  if (!(cfg.r > 0 && cfg.r < 1)) fail("r must lie in (0, 1)");
  if (!(cfg.p0 > cfg.x_min && cfg.p0 < cfg.x_min + cfg.L))
    fail("p0 must lie inside the lattice");
  if (!(cfg.kappa >= 0)) fail("kappa must be non-negative");
  if (!(cfg.mu > 0)) fail("mu must be positive");
  if (!(cfg.alpha > 0 && cfg.alpha <= 1)) fail("alpha must lie in (0, 1]");
  if (!(cfg.sigma >= 0)) fail("sigma must be non-negative");
  if (!(cfg.rho >= 0 && cfg.rho < 1)) fail("rho must lie in [0, 1)");
  if (!(cfg.beta >= 0)) fail("beta must be non-negative");
  if (!(cfg.eps > 0 && cfg.eps < 1)) fail("eps must lie in (0, 1)");
  if (cfg.m0 < 0) fail("m0 must be non-negative");
  if (!(cfg.delta_tau > 0)) fail("delta_tau must be positive");
  if (cfg.gamma1 < 0) fail("gamma1 must be non-negative");
  if (cfg.trade_events < 1) fail("trade_events must be positive");
  if (cfg.scheme != "uniform" && cfg.scheme != "nonuniform")
    fail("scheme must be uniform or nonuniform");
  if (cfg.interp != "linear" && cfg.interp != "spline")
    fail("interp must be linear or spline");
  if (cfg.frames < 0) fail("frames must be non-negative");
  if (!(cfg.zeta >= -1)) fail("zeta must be >= -1");
  if (cfg.threads < 1) fail("threads must be positive");
  if (cfg.seeds.empty()) fail("seeds must not be empty");
  if (cfg.out_dir.empty()) fail("out_dir must not be empty");
}

std::string manifest_json(const RunConfig& cfg,
                          const std::vector<std::string>& outputs) {
  const std::string canon = canonical_config(cfg);
  nlohmann::json j;
  j["config"] = nlohmann::json::object();
  std::stringstream ss(canon);
  std::string line;
  while (std::getline(ss, line)) {
    const std::size_t eq = line.find('=');
    j["config"][line.substr(0, eq)] = line.substr(eq + 1);
  }
  j["config_sha1"] = sha1_hex(canon);
  j["seeds"] = cfg.seeds;
  j["outputs"] = nlohmann::json::array();
  for (const auto& o : outputs) j["outputs"].push_back(o);
  return j.dump(2) + "\n";
}

}  // namespace fraclob
