// Command-line front end: single-point runs, SNR sweeps, debug dumps and a
// built-in property checker.
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cfmimo/harness.hpp"
#include "cfmimo/rng.hpp"

namespace {

using namespace cfmimo;

struct CliOverrides {
  std::string config_path;
  std::string out_path;
  std::string plot_path;
  std::string detector;
  std::string ap_mode;
  std::string snr_list;
  std::string ldpc_file;
  double beta_th_db = std::nan("");
  double d_th = std::nan("");
  int list_size = -1;
  int idd_iters = -1;
  int inner_iters = -1;
  int trials = -1;
  int threads = -1;
  long long seed = -1;
  std::string dump_geometry, dump_beta, dump_mask, dump_estimates;
};

void add_common_options(CLI::App* cmd, CliOverrides& ov) {
  cmd->add_option("--config", ov.config_path, "configuration file (key = value lines)");
  cmd->add_option("--detector", ov.detector, "detector override: mmse|softic|list");
  cmd->add_option("--ap-mode", ov.ap_mode, "AP mode override: all|sel");
  cmd->add_option("--beta-th-db", ov.beta_th_db, "serving threshold for non-master APs [dB]");
  cmd->add_option("--d-th", ov.d_th, "shadow-area reliability radius");
  cmd->add_option("--list-size", ov.list_size, "candidate list size");
  cmd->add_option("--idd-iters", ov.idd_iters, "outer detection/decoding iterations");
  cmd->add_option("--inner-iters", ov.inner_iters, "decoder iterations per pass");
  cmd->add_option("--snr-db", ov.snr_list, "SNR grid: comma list or start:step:stop");
  cmd->add_option("--trials", ov.trials, "Monte-Carlo trials per point");
  cmd->add_option("--seed", ov.seed, "base seed");
  cmd->add_option("--threads", ov.threads, "worker threads (0 = all)");
  cmd->add_option("--ldpc-file", ov.ldpc_file, "alist file overriding the built-in code");
  cmd->add_option("--dump-geometry", ov.dump_geometry, "write trial-0 AP/UE positions to CSV");
  cmd->add_option("--dump-beta", ov.dump_beta, "write trial-0 channel gains (rows = APs) to CSV");
  cmd->add_option("--dump-mask", ov.dump_mask, "write trial-0 serving mask to CSV");
  cmd->add_option("--dump-estimates", ov.dump_estimates, "write trial-0 channel estimates to CSV");
}

SimConfig make_config(const CliOverrides& ov) {
  SimConfig cfg;
  if (!ov.config_path.empty()) cfg = load_config_file(ov.config_path);
  if (!ov.detector.empty()) apply_config_line(cfg, "detectors", ov.detector);
  if (!ov.ap_mode.empty()) apply_config_line(cfg, "ap_modes", ov.ap_mode);
  if (!std::isnan(ov.beta_th_db)) cfg.beta_th_db = ov.beta_th_db;
  if (!std::isnan(ov.d_th)) cfg.sac.d_th = ov.d_th;
  if (ov.list_size >= 0) cfg.sac.list_size = ov.list_size;
  if (ov.idd_iters >= 0) cfg.idd_iters = ov.idd_iters;
  if (ov.inner_iters >= 0) cfg.inner_iters = ov.inner_iters;
  if (!ov.snr_list.empty()) cfg.snr_db = parse_snr_grid(ov.snr_list);
  if (ov.trials >= 0) cfg.trials = ov.trials;
  if (ov.seed >= 0) cfg.seed = static_cast<std::uint64_t>(ov.seed);
  if (ov.threads >= 0) cfg.threads = ov.threads;
  if (!ov.ldpc_file.empty()) cfg.ldpc_file = ov.ldpc_file;
  if (cfg.snr_db.empty()) cfg.snr_db = parse_snr_grid("-14:2:0");
  return cfg;
}

const LdpcCode& select_code(const SimConfig& cfg, LdpcCode& storage) {
  if (cfg.ldpc_file.empty()) return default_code();
  storage = load_alist_file(cfg.ldpc_file);
  return storage;
}

void write_debug_dumps(const SimConfig& cfg, const CliOverrides& ov) {
  if (ov.dump_geometry.empty() && ov.dump_beta.empty() && ov.dump_mask.empty() &&
      ov.dump_estimates.empty())
    return;

  const std::uint64_t seed = derive_seed(cfg.seed, 0x747269616cULL, cfg.trial_offset);
  const NetworkGeometry geo = place_network(
      cfg.fixed_geometry ? derive_seed(cfg.seed, 0x66697867ULL) : seed, cfg.geometry);
  const LargeScaleCoefficients ls = make_large_scale(
      geo, cfg.fixed_geometry ? derive_seed(cfg.seed, 0x66697867ULL) : seed, cfg.pathloss);

  if (!ov.dump_geometry.empty()) {
    std::ofstream f(ov.dump_geometry);
    f << "kind,index,x_m,y_m\n";
    for (int l = 0; l < geo.num_aps; ++l)
      f << "ap," << l << ',' << geo.ap_xy(l, 0) << ',' << geo.ap_xy(l, 1) << '\n';
    for (int k = 0; k < geo.num_ues; ++k)
      f << "ue," << k << ',' << geo.ue_xy(k, 0) << ',' << geo.ue_xy(k, 1) << '\n';
  }
  if (!ov.dump_beta.empty()) {
    std::ofstream f(ov.dump_beta);
    for (int l = 0; l < ls.beta.rows(); ++l) {
      for (int k = 0; k < ls.beta.cols(); ++k)
        f << ls.beta(l, k) << (k + 1 < ls.beta.cols() ? ',' : '\n');
    }
  }
  if (!ov.dump_mask.empty()) {
    const SelectionMask mask = build_selection(
        ls, SelectionPolicy{cfg.ap_modes.front(), cfg.beta_th_db},
        cfg.geometry.antennas_per_ap);
    std::ofstream f(ov.dump_mask);
    for (int l = 0; l < mask.num_aps(); ++l)
      for (int k = 0; k < mask.num_ues(); ++k)
        f << (mask.is_serving(l, k) ? 1 : 0) << (k + 1 < mask.num_ues() ? ',' : '\n');
  }
  if (!ov.dump_estimates.empty()) {
    const SpatialCorrelation corr =
        make_spatial_correlation(ls, cfg.geometry.antennas_per_ap, cfg.corr_coeff);
    const ChannelRealization chan = draw_channel(corr, seed);
    const VecR rho = VecR::Constant(cfg.geometry.num_ues, cfg.data_power_w);
    const double snr_linear = std::pow(10.0, cfg.snr_db.front() / 10.0);
    const double sigma2 = snr_to_noise(chan.g, rho, snr_linear);
    const PilotBook book =
        assign_pilots(cfg.geometry.num_ues, cfg.tau_p, cfg.pilot_power_w, seed);
    const ChannelEstimate est =
        mmse_estimate(receive_pilots(chan, corr, book, sigma2, seed), corr, book);
    std::ofstream f(ov.dump_estimates);
    for (int i = 0; i < est.g_hat.rows(); ++i) {
      for (int k = 0; k < est.g_hat.cols(); ++k) {
        f << est.g_hat(i, k).real() << (est.g_hat(i, k).imag() < 0 ? "" : "+")
          << est.g_hat(i, k).imag() << 'i' << (k + 1 < est.g_hat.cols() ? ',' : '\n');
      }
    }
  }
}

// ---------------------------------------------------------------------------
// validate: quick self-contained property checks

int g_failures = 0;

void report(bool ok, const std::string& name) {
  std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << '\n';
  if (!ok) ++g_failures;
}

ChannelEstimate random_estimate(Rng& rng, int num_aps, int n, int num_ues,
                                double err_scale) {
  ChannelEstimate est;
  est.num_aps = num_aps;
  est.antennas_per_ap = n;
  est.g_hat.resize(num_aps * n, num_ues);
  for (int i = 0; i < est.g_hat.rows(); ++i)
    for (int k = 0; k < num_ues; ++k) est.g_hat(i, k) = rng.cnormal();
  est.err_cov.resize(static_cast<std::size_t>(num_ues) * num_aps);
  for (auto& c : est.err_cov) {
    MatC a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rng.cnormal();
    c = err_scale * (a * a.adjoint());
  }
  return est;
}

SelectionMask random_mask(Rng& rng, int num_aps, int n, int num_ues) {
  SelectionMask mask;
  mask.antennas_per_ap = n;
  mask.serve.assign(num_aps, std::vector<bool>(num_ues, false));
  for (int k = 0; k < num_ues; ++k) {
    mask.serve[rng.uniform_int(num_aps)][k] = true;  // ensure one server
    for (int l = 0; l < num_aps; ++l)
      if (rng.uniform() < 0.6) mask.serve[l][k] = true;
  }
  return mask;
}

void validate_filters() {
  Rng rng(2024);
  double worst_lin = 0.0, worst_pic = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int num_aps = 4, n = 2, num_ues = 3;
    const ChannelEstimate est = random_estimate(rng, num_aps, n, num_ues, 0.05);
    const SelectionMask mask = random_mask(rng, num_aps, n, num_ues);
    const VecR rho = VecR::Constant(num_ues, 1.0);
    const double sigma2 = 0.2;

    for (int k = 0; k < num_ues; ++k) {
      const VecC a = mmse_soft_ic_filter(k, est, mask, no_prior_profile(rho), sigma2);
      const VecC b = linear_mmse_filter(k, est, mask, rho, sigma2);
      worst_lin = std::max(worst_lin, (a - b).norm());
    }

    VecC syms(num_ues);
    const Constellation cons = make_qpsk();
    for (int k = 0; k < num_ues; ++k)
      syms[k] = cons.points[rng.uniform_int(4)];
    VecC y = est.g_hat * syms;
    for (int i = 0; i < y.size(); ++i) y[i] += std::sqrt(sigma2) * rng.cnormal();

    for (int k = 0; k < num_ues; ++k) {
      InterferenceProfile prof;
      prof.rho = rho;
      prof.delta = VecR::Zero(num_ues);
      prof.cov_weight.resize(num_ues);
      for (int m = 0; m < num_ues; ++m) prof.cov_weight[m] = std::norm(syms[m]);
      const VecC w = mmse_soft_ic_filter(k, est, mask, prof, sigma2);
      VecC sbar = syms;
      const Cx via_soft = soft_ic_detect(k, y, w, est, mask, sbar);
      const Cx via_pic = perfect_ic_detect(k, y, est, mask, syms, rho, sigma2);
      worst_pic = std::max(worst_pic, std::abs(via_soft - via_pic));
    }
  }
  report(worst_lin < 1e-10, "soft-IC filter with flat priors matches the direct linear MMSE form");
  report(worst_pic < 1e-10, "soft-IC with exact symbol knowledge matches the genie canceler");
}

void validate_ldpc() {
  const LdpcCode& code = default_code();
  bool gh = true;
  for (const auto& row : code.generator) gh = gh && code.parity_ok(row);
  report(gh, "generator rows satisfy every parity check");

  const std::vector<std::uint8_t> zero_msg(code.k(), 0);
  const auto zero_cw = encode(zero_msg, code);
  report(std::count(zero_cw.begin(), zero_cw.end(), 1) == 0 && code.parity_ok(zero_cw),
         "all-zero message encodes to the all-zero codeword");

  const double lhs = box_plus(2.0, 3.0);
  const double rhs = std::log((1 + std::exp(5.0)) / (std::exp(2.0) + std::exp(3.0)));
  report(std::fabs(lhs - rhs) < 1e-12, "box-plus matches the exact log-domain identity");

  Rng rng(99);
  bool awgn_ok = true;
  for (int f = 0; f < 50; ++f) {
    std::vector<double> llr(code.n);
    for (auto& v : llr) v = 8.0 + 4.0 * rng.normal();
    const DecodeResult dec = decode(llr, code, 10);
    awgn_ok = awgn_ok && dec.converged &&
              std::count(dec.bits.begin(), dec.bits.end(), 1) == 0;
  }
  report(awgn_ok, "decoder clears 50 noisy all-zero frames");
}

void validate_demapper() {
  const Constellation cons = make_qpsk();
  Rng rng(7);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    EffectiveAwgn eff;
    eff.omega = rng.cnormal();
    eff.kappa2 = 0.1 + rng.uniform();
    const Cx u = rng.cnormal();
    double prior[2] = {4.0 * rng.normal(), 4.0 * rng.normal()};
    double out[2];
    extrinsic_llr(u, eff, prior, cons, out);

    // brute-force marginalization in the linear domain
    for (int l = 0; l < 2; ++l) {
      double num = 0.0, den = 0.0;
      const VecR p = priors_from_llr(prior, cons);
      for (int s = 0; s < 4; ++s) {
        const double lik =
            std::exp(-std::norm(u - eff.omega * cons.points[s]) / eff.kappa2);
        (cons.labels[s][l] == 0 ? num : den) += lik * p[s];
      }
      const double ref = std::log(num / den) - prior[l];
      worst = std::max(worst, std::fabs(out[l] - ref));
    }
  }
  report(worst < 1e-9, "detector extrinsic LLRs match brute-force marginalization");
}

void validate_sweep_determinism() {
  SimConfig cfg;
  cfg.geometry.num_aps = 8;
  cfg.geometry.num_ues = 4;
  cfg.trials = 6;
  cfg.snr_db = {-6.0};
  cfg.idd_iters = 2;
  cfg.detectors = {DetectorKind::SoftIc};
  const LdpcCode& code = default_code();
  const auto a = sweep(cfg, code);
  const auto b = sweep_serial(cfg, code);
  report(a == b, "parallel sweep matches the serial reference");
}

int run_validate() {
  validate_filters();
  validate_ldpc();
  validate_demapper();
  validate_sweep_determinism();
  if (g_failures == 0) {
    std::cout << "all checks passed\n";
    return 0;
  }
  std::cout << g_failures << " check(s) failed\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uplink cell-free massive MIMO link-level simulator"};
  app.require_subcommand(1);

  CliOverrides ov;
  CLI::App* run_cmd = app.add_subcommand("run", "simulate a single SNR point");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "simulate a full SNR grid");
  CLI::App* validate_cmd = app.add_subcommand("validate", "run built-in property checks");
  add_common_options(run_cmd, ov);
  add_common_options(sweep_cmd, ov);
  run_cmd->add_option("--out", ov.out_path, "output CSV path")->required();
  sweep_cmd->add_option("--out", ov.out_path, "output CSV path")->required();
  sweep_cmd->add_option("--plot-script", ov.plot_path, "also write a gnuplot script");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate_cmd->parsed()) return run_validate();

    SimConfig cfg = make_config(ov);
    if (run_cmd->parsed() && cfg.snr_db.size() != 1)
      throw std::runtime_error("run expects exactly one SNR point (use --snr-db or sweep)");
    cfg.validate();

    LdpcCode storage;
    const LdpcCode& code = select_code(cfg, storage);

    write_debug_dumps(cfg, ov);

    const std::vector<BerRecord> records = sweep(cfg, code);
    write_csv_file(ov.out_path, records);
    std::cout << "wrote " << records.size() << " records to " << ov.out_path << '\n';
    if (sweep_cmd->parsed() && !ov.plot_path.empty()) {
      write_plot_script(ov.plot_path, ov.out_path, records);
      std::cout << "wrote plot script " << ov.plot_path << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
