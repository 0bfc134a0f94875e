#include "cfmimo/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cfmimo/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cfmimo {

namespace {

constexpr std::uint64_t kTrialTag = 0x747269616cULL;
constexpr std::uint64_t kFixedGeomTag = 0x66697867ULL;
constexpr std::uint64_t kMessageTag = 0x6d736773ULL;
constexpr std::uint64_t kDataNoiseTag = 0x646e6f69ULL;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double snr_to_noise(const MatC& g, const VecR& rho, double snr_linear) {
  if (snr_linear <= 0.0) throw std::invalid_argument("SNR must be positive");
  double trace = 0.0;
  for (int k = 0; k < g.cols(); ++k) trace += rho[k] * g.col(k).squaredNorm();
  if (trace <= 0.0) throw std::runtime_error("zero channel");
  return trace / (snr_linear * static_cast<double>(g.rows()) * g.cols());
}

double snr_to_noise_average(const LargeScaleCoefficients& ls, const VecR& rho,
                            double snr_linear, int antennas_per_ap) {
  if (snr_linear <= 0.0) throw std::invalid_argument("SNR must be positive");
  double trace = 0.0;
  for (int k = 0; k < ls.beta.cols(); ++k)
    for (int l = 0; l < ls.beta.rows(); ++l)
      trace += rho[k] * antennas_per_ap * ls.beta(l, k);
  if (trace <= 0.0) throw std::runtime_error("zero channel");
  const double nl = static_cast<double>(ls.beta.rows()) * antennas_per_ap;
  return trace / (snr_linear * nl * ls.beta.cols());
}

TrialCounts run_trial(const SimConfig& cfg, const LdpcCode& code,
                      DetectorKind detector, ApMode mode, double snr_db,
                      int trial_index) {
  const int num_ues = cfg.geometry.num_ues;
  const int slots = cfg.frame_symbols();
  const Constellation cons = make_qpsk();
  const int mc = cons.bits_per_symbol();

  // every random draw keys off (seed, trial) only, never the detector or AP
  // mode, so runs across detectors/modes pair trial for trial
  const std::uint64_t trial_seed =
      derive_seed(cfg.seed, kTrialTag, static_cast<std::uint64_t>(cfg.trial_offset) + trial_index);
  const std::uint64_t geom_seed =
      cfg.fixed_geometry ? derive_seed(cfg.seed, kFixedGeomTag) : trial_seed;

  const NetworkGeometry geo = place_network(geom_seed, cfg.geometry);
  const LargeScaleCoefficients ls = make_large_scale(geo, geom_seed, cfg.pathloss);
  const SpatialCorrelation corr =
      make_spatial_correlation(ls, cfg.geometry.antennas_per_ap, cfg.corr_coeff);
  const ChannelRealization chan = draw_channel(corr, trial_seed);

  const VecR rho = VecR::Constant(num_ues, cfg.data_power_w);
  const double snr_linear = std::pow(10.0, snr_db / 10.0);
  const double sigma2 =
      cfg.snr_norm == SnrNorm::Instant
          ? snr_to_noise(chan.g, rho, snr_linear)
          : snr_to_noise_average(ls, rho, snr_linear, cfg.geometry.antennas_per_ap);

  ChannelEstimate est;
  if (cfg.perfect_csi) {
    est.num_aps = cfg.geometry.num_aps;
    est.antennas_per_ap = cfg.geometry.antennas_per_ap;
    est.g_hat = chan.g;
    est.err_cov.assign(static_cast<std::size_t>(num_ues) * est.num_aps,
                       MatC::Zero(est.antennas_per_ap, est.antennas_per_ap));
  } else {
    const PilotBook book =
        assign_pilots(num_ues, cfg.tau_p, cfg.pilot_power_w, trial_seed);
    const PilotObservation obs =
        receive_pilots(chan, corr, book, sigma2, trial_seed);
    est = mmse_estimate(obs, corr, book);
  }

  const SelectionMask mask =
      build_selection(ls, SelectionPolicy{mode, cfg.beta_th_db},
                      cfg.geometry.antennas_per_ap);

  // one codeword per UE per coherence block; remaining data uses stay idle
  std::vector<std::vector<std::uint8_t>> msgs(num_ues), codewords(num_ues);
  MatC unit_syms(num_ues, slots);
  Rng msg_rng(derive_seed(trial_seed, kMessageTag));
  for (int k = 0; k < num_ues; ++k) {
    msgs[k].resize(code.k());
    for (auto& b : msgs[k]) b = static_cast<std::uint8_t>(msg_rng.next_u64() & 1);
    codewords[k] = encode(msgs[k], code);
    for (int t = 0; t < slots; ++t)
      unit_syms(k, t) = cons.map_bits(codewords[k].data() + t * mc);
  }

  MatC y(chan.g.rows(), slots);
  Rng noise_rng(derive_seed(trial_seed, kDataNoiseTag));
  const double noise_scale = std::sqrt(sigma2);
  for (int t = 0; t < slots; ++t) {
    VecC x(num_ues);
    for (int k = 0; k < num_ues; ++k)
      x[k] = std::sqrt(rho[k]) * unit_syms(k, t);
    y.col(t) = chan.g * x;
    for (int i = 0; i < y.rows(); ++i) y(i, t) += noise_scale * noise_rng.cnormal();
  }

  FrameInput frame;
  frame.y = &y;
  frame.est = &est;
  frame.mask = &mask;
  frame.rho = rho;
  frame.sigma2 = sigma2;
  frame.cons = &cons;
  frame.code = &code;
  frame.true_unit_syms = &unit_syms;

  IddOptions opts;
  opts.kind = detector;
  opts.outer_iters = cfg.idd_iters;
  opts.inner_iters = cfg.inner_iters;
  opts.sac = cfg.sac;
  opts.kappa_include_mui = cfg.kappa_include_mui;

  const IddResult idd = idd_loop(frame, opts);

  TrialCounts counts;
  counts.bits = static_cast<std::uint64_t>(num_ues) * code.k();
  counts.bit_errors.assign(cfg.idd_iters, 0);
  for (int it = 0; it < cfg.idd_iters; ++it) {
    const auto& snap = idd.iterations[it];
    for (int k = 0; k < num_ues; ++k)
      for (int i = 0; i < code.k(); ++i)
        counts.bit_errors[it] += snap.msg_bits[k][i] != msgs[k][i];
  }
  return counts;
}

namespace {

std::vector<BerRecord> sweep_impl(const SimConfig& cfg, const LdpcCode& code,
                                  bool parallel) {
  cfg.validate();
  std::vector<BerRecord> records;

  for (const DetectorKind det : cfg.detectors) {
    for (const ApMode mode : cfg.ap_modes) {
      for (const double snr_db : cfg.snr_db) {
        std::vector<TrialCounts> per_trial(cfg.trials);
        if (parallel) {
#ifdef _OPENMP
          const int nt = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
          for (int t = 0; t < cfg.trials; ++t)
            per_trial[t] = run_trial(cfg, code, det, mode, snr_db, t);
#else
          for (int t = 0; t < cfg.trials; ++t)
            per_trial[t] = run_trial(cfg, code, det, mode, snr_db, t);
#endif
        } else {
          for (int t = 0; t < cfg.trials; ++t)
            per_trial[t] = run_trial(cfg, code, det, mode, snr_db, t);
        }

        // fixed-order merge keeps the aggregate independent of scheduling
        std::vector<std::uint64_t> errors(cfg.idd_iters, 0);
        std::uint64_t bits = 0;
        for (const auto& tc : per_trial) {
          bits += tc.bits;
          for (int it = 0; it < cfg.idd_iters; ++it)
            errors[it] += tc.bit_errors[it];
        }
        for (int it = 0; it < cfg.idd_iters; ++it) {
          BerRecord rec;
          rec.snr_db = snr_db;
          rec.detector = detector_name(det);
          rec.ap_mode = ap_mode_name(mode);
          rec.idd_iter = it + 1;
          rec.trials = cfg.trials;
          rec.bits_total = bits;
          rec.bit_errors = errors[it];
          rec.ber = bits ? static_cast<double>(errors[it]) / bits : 0.0;
          rec.seed_base = cfg.seed;
          records.push_back(std::move(rec));
        }
      }
    }
  }
  return records;
}

}  // namespace

std::vector<BerRecord> sweep(const SimConfig& cfg, const LdpcCode& code) {
  return sweep_impl(cfg, code, true);
}

std::vector<BerRecord> sweep_serial(const SimConfig& cfg, const LdpcCode& code) {
  return sweep_impl(cfg, code, false);
}

void write_csv(std::ostream& os, const std::vector<BerRecord>& records) {
  os << "snr_db,detector,ap_mode,idd_iter,trials,bits_total,bit_errors,ber,seed_base\n";
  for (const auto& r : records) {
    os << format_double(r.snr_db) << ',' << r.detector << ',' << r.ap_mode << ','
       << r.idd_iter << ',' << r.trials << ',' << r.bits_total << ','
       << r.bit_errors << ',' << format_double(r.ber) << ',' << r.seed_base << '\n';
  }
}

void write_csv_file(const std::string& path,
                    const std::vector<BerRecord>& records) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write CSV: " + path);
  write_csv(f, records);
}

std::vector<BerRecord> read_csv(std::istream& is) {
  std::string header;
  if (!std::getline(is, header))
    throw std::runtime_error("empty CSV");
  if (header != "snr_db,detector,ap_mode,idd_iter,trials,bits_total,bit_errors,ber,seed_base")
    throw std::runtime_error("unexpected CSV header: " + header);
  std::vector<BerRecord> records;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string f[9];
    for (int i = 0; i < 9; ++i)
      if (!std::getline(ss, f[i], ','))
        throw std::runtime_error("short CSV row: " + line);
    BerRecord r;
    r.snr_db = std::stod(f[0]);
    r.detector = f[1];
    r.ap_mode = f[2];
    r.idd_iter = std::stoi(f[3]);
    r.trials = std::stoull(f[4]);
    r.bits_total = std::stoull(f[5]);
    r.bit_errors = std::stoull(f[6]);
    r.ber = std::stod(f[7]);
    r.seed_base = std::stoull(f[8]);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<BerRecord> read_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open CSV: " + path);
  return read_csv(f);
}

void write_plot_script(const std::string& path, const std::string& csv_path,
                       const std::vector<BerRecord>& records) {
  std::vector<std::tuple<std::string, std::string, int>> series;
  for (const auto& r : records) {
    const auto key = std::make_tuple(r.detector, r.ap_mode, r.idd_iter);
    if (std::find(series.begin(), series.end(), key) == series.end())
      series.push_back(key);
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write plot script: " + path);
  f << "# gnuplot script: BER versus SNR, one curve per detector/mode/iteration\n"
       "set datafile separator ','\n"
       "set datafile columnheaders\n"
       "set logscale y\n"
       "set xlabel 'snr_db'\n"
       "set ylabel 'ber'\n"
       "set grid\n"
       "set key outside\n"
       "plot \\\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& [det, mode, iter] = series[i];
    f << "  '" << csv_path << "' using (strcol('detector') eq '" << det
      << "' && strcol('ap_mode') eq '" << mode
      << "' && column('idd_iter') == " << iter
      << " ? column('snr_db') : NaN):(column('ber')) with linespoints title '"
      << det << "/" << mode << "/iter" << iter << "'";
    f << (i + 1 < series.size() ? ", \\\n" : "\n");
  }
}

}  // namespace cfmimo
