#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfmimo/geometry_channel.hpp"
#include "cfmimo/idd.hpp"

namespace cfmimo {

enum class SnrNorm { Instant, Average };

/// Full experiment description. Defaults give the standard desk-scale
/// scenario: 32 single-antenna APs, 8 UEs on a 1 km square, orthogonal
/// pilots, rate-1/2 (256,128) LDPC over QPSK.
struct SimConfig {
  GeometryConfig geometry;
  PathlossModel pathloss;
  double corr_coeff = 0.0;  // exponential antenna correlation, 0 = none

  int tau_p = 10;
  int tau_c = 200;
  int tau_u = 190;
  double pilot_power_w = 0.1;
  double data_power_w = 1.0;

  int codeword_len = 256;
  int parity_bits = 128;
  std::string ldpc_file;  // empty = built-in default code

  std::vector<DetectorKind> detectors{DetectorKind::SoftIc};
  std::vector<ApMode> ap_modes{ApMode::AllAps};
  double beta_th_db = -60.0;
  SacConfig sac{0.38, 4};

  std::vector<double> snr_db;
  int trials = 1000;
  int trial_offset = 0;
  std::uint64_t seed = 1;
  int idd_iters = 3;
  int inner_iters = 10;

  SnrNorm snr_norm = SnrNorm::Instant;
  bool fixed_geometry = false;
  bool perfect_csi = false;
  bool kappa_include_mui = false;
  int threads = 0;  // 0 = OpenMP default

  int frame_symbols() const;  // codeword_len / bits-per-symbol (QPSK: 2)
  int message_bits() const { return codeword_len - parity_bits; }

  /// Enforces structural invariants (pilot+data fit the coherence block,
  /// codeword fits the data span, positive dimensions); warns to stderr when
  /// the antenna count is below the UE count.
  void validate() const;
};

const char* ap_mode_name(ApMode m);

/// Flat key = value configuration file ('#' comments). Unknown keys are an
/// error. Lists are comma separated; SNR grids also accept start:step:stop.
SimConfig load_config_file(const std::string& path);
void apply_config_line(SimConfig& cfg, const std::string& key,
                       const std::string& value);

std::vector<double> parse_snr_grid(const std::string& text);

}  // namespace cfmimo
