#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cfmimo/sim_config.hpp"

namespace cfmimo {

/// One aggregated measurement row of the Monte-Carlo sweep.
struct BerRecord {
  double snr_db = 0.0;
  std::string detector;
  std::string ap_mode;
  int idd_iter = 1;
  std::uint64_t trials = 0;
  std::uint64_t bits_total = 0;
  std::uint64_t bit_errors = 0;
  double ber = 0.0;
  std::uint64_t seed_base = 0;

  bool operator==(const BerRecord&) const = default;
};

/// Noise power from the network-wide SNR definition
///   snr = tr(G diag(rho) G^H) / (sigma2 * N * L * K),
/// evaluated on the drawn channel. Throws on a zero channel.
double snr_to_noise(const MatC& g, const VecR& rho, double snr_linear);

/// Same normalization against the expected channel trace
/// sum_{k,l} rho_k * N * beta_{kl} (used by SnrNorm::Average).
double snr_to_noise_average(const LargeScaleCoefficients& ls, const VecR& rho,
                            double snr_linear, int antennas_per_ap);

/// Message-bit error counts of one coherence block, per outer iteration.
struct TrialCounts {
  std::vector<std::uint64_t> bit_errors;  // index = iteration - 1
  std::uint64_t bits = 0;                 // message bits counted per iteration
};

/// Runs one full coherence block end to end: geometry, channel, pilots,
/// estimation, AP selection, coded transmission and the IDD exchange.
/// Deterministic in (cfg.seed, trial_index); the detector and AP mode do not
/// influence any random draw, so runs with different detectors pair exactly.
TrialCounts run_trial(const SimConfig& cfg, const LdpcCode& code,
                      DetectorKind detector, ApMode mode, double snr_db,
                      int trial_index);

std::vector<BerRecord> sweep(const SimConfig& cfg, const LdpcCode& code);

/// Single-threaded reference sweep; must produce output identical to sweep().
std::vector<BerRecord> sweep_serial(const SimConfig& cfg, const LdpcCode& code);

void write_csv(std::ostream& os, const std::vector<BerRecord>& records);
void write_csv_file(const std::string& path,
                    const std::vector<BerRecord>& records);
std::vector<BerRecord> read_csv(std::istream& is);
std::vector<BerRecord> read_csv_file(const std::string& path);

/// gnuplot commands drawing BER-vs-SNR curves (log y) from the CSV, one
/// series per (detector, ap_mode, idd_iter) combination present.
void write_plot_script(const std::string& path, const std::string& csv_path,
                       const std::vector<BerRecord>& records);

}  // namespace cfmimo
