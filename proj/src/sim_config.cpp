#include "cfmimo/sim_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace cfmimo {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw std::invalid_argument("not a boolean: " + v);
}

}  // namespace

int SimConfig::frame_symbols() const { return codeword_len / 2; }

const char* ap_mode_name(ApMode m) {
  return m == ApMode::AllAps ? "all" : "sel";
}

std::vector<double> parse_snr_grid(const std::string& text) {
  std::vector<double> grid;
  const auto range = split(text, ':');
  if (range.size() == 3) {  // start:step:stop, inclusive
    const double start = std::stod(range[0]);
    const double step = std::stod(range[1]);
    const double stop = std::stod(range[2]);
    if (step == 0.0) throw std::invalid_argument("zero SNR step");
    for (double v = start; (step > 0) ? v <= stop + 1e-9 : v >= stop - 1e-9; v += step)
      grid.push_back(v);
    return grid;
  }
  for (const auto& tok : split(text, ','))
    if (!tok.empty()) grid.push_back(std::stod(tok));
  return grid;
}

void apply_config_line(SimConfig& cfg, const std::string& key,
                       const std::string& value) {
  if (key == "area_side_m") cfg.geometry.area_side_m = std::stod(value);
  else if (key == "num_aps") cfg.geometry.num_aps = std::stoi(value);
  else if (key == "antennas_per_ap") cfg.geometry.antennas_per_ap = std::stoi(value);
  else if (key == "num_ues") cfg.geometry.num_ues = std::stoi(value);
  else if (key == "ap_height_m") cfg.geometry.ap_height_m = std::stod(value);
  else if (key == "shadow_sigma_db") cfg.pathloss.shadow_sigma_db = std::stod(value);
  else if (key == "corr_coeff") cfg.corr_coeff = std::stod(value);
  else if (key == "tau_p") cfg.tau_p = std::stoi(value);
  else if (key == "tau_c") cfg.tau_c = std::stoi(value);
  else if (key == "tau_u") cfg.tau_u = std::stoi(value);
  else if (key == "pilot_power_w") cfg.pilot_power_w = std::stod(value);
  else if (key == "data_power_w") cfg.data_power_w = std::stod(value);
  else if (key == "codeword_len") cfg.codeword_len = std::stoi(value);
  else if (key == "parity_bits") cfg.parity_bits = std::stoi(value);
  else if (key == "ldpc_file") cfg.ldpc_file = value;
  else if (key == "detectors") {
    cfg.detectors.clear();
    for (const auto& name : split(value, ',')) {
      const auto kind = detector_from_name(name);
      if (!kind) throw std::invalid_argument("unknown detector: " + name);
      cfg.detectors.push_back(*kind);
    }
  } else if (key == "ap_modes") {
    cfg.ap_modes.clear();
    for (const auto& name : split(value, ',')) {
      if (name == "all") cfg.ap_modes.push_back(ApMode::AllAps);
      else if (name == "sel") cfg.ap_modes.push_back(ApMode::ApsSel);
      else throw std::invalid_argument("unknown ap mode: " + name);
    }
  }
  else if (key == "beta_th_db") cfg.beta_th_db = std::stod(value);
  else if (key == "d_th") cfg.sac.d_th = std::stod(value);
  else if (key == "list_size") cfg.sac.list_size = std::stoi(value);
  else if (key == "snr_db") cfg.snr_db = parse_snr_grid(value);
  else if (key == "trials") cfg.trials = std::stoi(value);
  else if (key == "trial_offset") cfg.trial_offset = std::stoi(value);
  else if (key == "seed") cfg.seed = std::stoull(value);
  else if (key == "idd_iters") cfg.idd_iters = std::stoi(value);
  else if (key == "inner_iters") cfg.inner_iters = std::stoi(value);
  else if (key == "snr_norm") {
    if (value == "instant") cfg.snr_norm = SnrNorm::Instant;
    else if (value == "average") cfg.snr_norm = SnrNorm::Average;
    else throw std::invalid_argument("snr_norm must be instant or average");
  }
  else if (key == "fixed_geometry") cfg.fixed_geometry = parse_bool(value);
  else if (key == "perfect_csi") cfg.perfect_csi = parse_bool(value);
  else if (key == "kappa_include_mui") cfg.kappa_include_mui = parse_bool(value);
  else if (key == "threads") cfg.threads = std::stoi(value);
  else throw std::invalid_argument("unknown config key: " + key);
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  SimConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    try {
      apply_config_line(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

void SimConfig::validate() const {
  if (geometry.area_side_m <= 0) throw std::invalid_argument("area_side_m must be positive");
  if (geometry.num_aps < 1) throw std::invalid_argument("need at least one AP");
  if (geometry.num_ues < 1) throw std::invalid_argument("need at least one UE");
  if (geometry.antennas_per_ap < 1) throw std::invalid_argument("need at least one antenna per AP");
  if (tau_p < 1) throw std::invalid_argument("tau_p must be >= 1");
  if (tau_p + tau_u > tau_c)
    throw std::invalid_argument("pilot plus data span exceeds the coherence block");
  if (codeword_len % 2 != 0)
    throw std::invalid_argument("codeword length must be a multiple of the bits per symbol");
  if (parity_bits < 1 || parity_bits >= codeword_len)
    throw std::invalid_argument("parity bits must lie in (0, codeword length)");
  if (frame_symbols() > tau_u)
    throw std::invalid_argument("codeword does not fit the data span tau_u");
  if (pilot_power_w <= 0 || data_power_w <= 0)
    throw std::invalid_argument("transmit powers must be positive");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (idd_iters < 1 || inner_iters < 1)
    throw std::invalid_argument("iteration counts must be >= 1");
  if (detectors.empty() || ap_modes.empty())
    throw std::invalid_argument("need at least one detector and AP mode");
  if (sac.list_size < 1 || sac.list_size > 4)
    throw std::invalid_argument("list_size must be in [1, 4] for QPSK");
  if (sac.d_th < 0) throw std::invalid_argument("d_th must be nonnegative");
  if (geometry.num_aps * geometry.antennas_per_ap < geometry.num_ues)
    std::cerr << "warning: fewer antennas (" << geometry.num_aps * geometry.antennas_per_ap
              << ") than UEs (" << geometry.num_ues << "); detection is underdetermined\n";
}

}  // namespace cfmimo
