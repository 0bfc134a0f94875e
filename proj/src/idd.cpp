#include "cfmimo/idd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfmimo {

const char* detector_name(DetectorKind k) {
  switch (k) {
    case DetectorKind::Mmse: return "mmse";
    case DetectorKind::SoftIc: return "softic";
    case DetectorKind::List: return "list";
    case DetectorKind::Genie: return "genie";
  }
  return "?";
}

std::optional<DetectorKind> detector_from_name(const std::string& name) {
  if (name == "mmse") return DetectorKind::Mmse;
  if (name == "softic") return DetectorKind::SoftIc;
  if (name == "list") return DetectorKind::List;
  if (name == "genie") return DetectorKind::Genie;
  return std::nullopt;
}

EffectiveAwgn effective_channel(int ue, const VecC& w,
                                const ChannelEstimate& est,
                                const SelectionMask& mask, const VecR& rho,
                                double sigma2,
                                const EffectiveAwgnOptions& opts) {
  const int n = est.antennas_per_ap;
  EffectiveAwgn eff;
  eff.omega = std::sqrt(rho[ue]) * w.dot(est.g_hat.col(ue));

  // w vanishes outside the serving antennas, so the quadratic form reduces
  // to sums over the serving AP blocks of the block-diagonal covariances.
  double kappa2 = sigma2 * w.squaredNorm();
  for (int l = 0; l < est.num_aps; ++l) {
    if (!mask.is_serving(l, ue)) continue;
    const VecC wl = w.segment(l * n, n);
    MatC acc = MatC::Zero(n, n);
    for (int m = 0; m < rho.size(); ++m)
      acc += rho[m] * est.err_cov_block(m, l);
    kappa2 += std::real(Cx(wl.dot(acc * wl)));
  }
  if (opts.include_residual_mui) {
    for (int m = 0; m < rho.size(); ++m) {
      if (m == ue) continue;
      kappa2 += opts.delta_pow[m] * std::norm(w.dot(est.g_hat.col(m)));
    }
  }
  if (!(kappa2 > 0.0))
    throw std::runtime_error("non-positive effective noise variance");
  eff.kappa2 = kappa2;
  return eff;
}

namespace {

// log(1 / (1 + exp(-x))), stable for any x
double log_sigmoid(double x) {
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

double log_sum_exp(const double* vals, const int* idx, int count) {
  double mx = vals[idx[0]];
  for (int i = 1; i < count; ++i) mx = std::max(mx, vals[idx[i]]);
  double acc = 0.0;
  for (int i = 0; i < count; ++i) acc += std::exp(vals[idx[i]] - mx);
  return mx + std::log(acc);
}

}  // namespace

void extrinsic_llr(Cx u, const EffectiveAwgn& eff, const double* prior_llr,
                   const Constellation& cons, double* out) {
  const int mc = cons.bits_per_symbol();
  const int sz = cons.size();

  // log f(u|s) + log P(s) per hypothesis, computed fully in the log domain
  std::vector<double> metric(sz);
  for (int s = 0; s < sz; ++s) {
    double v = -std::norm(u - eff.omega * cons.points[s]) / eff.kappa2;
    if (prior_llr) {
      for (int l = 0; l < mc; ++l) {
        const double lam = std::clamp(prior_llr[l], -kLlrClip, kLlrClip);
        v += log_sigmoid((1.0 - 2.0 * cons.labels[s][l]) * lam);
      }
    }
    metric[s] = v;
  }

  std::vector<int> plus, minus;
  for (int l = 0; l < mc; ++l) {
    plus.clear();
    minus.clear();
    for (int s = 0; s < sz; ++s)
      (cons.labels[s][l] == 0 ? plus : minus).push_back(s);
    double post = log_sum_exp(metric.data(), plus.data(), static_cast<int>(plus.size())) -
                  log_sum_exp(metric.data(), minus.data(), static_cast<int>(minus.size()));
    if (prior_llr) post -= std::clamp(prior_llr[l], -kLlrClip, kLlrClip);
    out[l] = post;
  }
}

namespace {

struct SlotStats {
  Cx mean;
  double var;
};

}  // namespace

IddResult idd_loop(const FrameInput& frame, const IddOptions& opts) {
  const ChannelEstimate& est = *frame.est;
  const SelectionMask& mask = *frame.mask;
  const Constellation& cons = *frame.cons;
  const LdpcCode& code = *frame.code;
  const MatC& y = *frame.y;

  const int num_ues = static_cast<int>(est.g_hat.cols());
  const int slots = static_cast<int>(y.cols());
  const int mc = cons.bits_per_symbol();
  if (slots * mc != code.n)
    throw std::invalid_argument("frame length does not match the code length");
  if (opts.outer_iters < 1) throw std::invalid_argument("outer_iters must be >= 1");
  if (opts.kind == DetectorKind::Genie && frame.true_unit_syms == nullptr)
    throw std::invalid_argument("genie detection needs the true symbols");

  const bool uses_feedback =
      opts.kind == DetectorKind::SoftIc || opts.kind == DetectorKind::List;

  // decoder extrinsic fed back as symbol priors; zero on the first pass
  std::vector<std::vector<double>> prior(num_ues, std::vector<double>(code.n, 0.0));
  bool have_prior = false;

  std::vector<int> order;
  if (opts.kind == DetectorKind::List) order = detection_order(est, mask);

  IddResult res;
  res.iterations.reserve(opts.outer_iters);

  std::vector<std::vector<SlotStats>> stats(
      num_ues, std::vector<SlotStats>(slots, {Cx(0, 0), cons.energy}));
  std::vector<VecC> filters(num_ues);
  MatC u_all(num_ues, slots);

  for (int iter = 1; iter <= opts.outer_iters; ++iter) {
    // per-slot symbol statistics from the fed-back LLRs
    if (opts.kind == DetectorKind::Genie) {
      for (int k = 0; k < num_ues; ++k)
        for (int t = 0; t < slots; ++t)
          stats[k][t] = {(*frame.true_unit_syms)(k, t), 0.0};
    } else if (uses_feedback && have_prior) {
      for (int k = 0; k < num_ues; ++k)
        for (int t = 0; t < slots; ++t) {
          const SoftSymbolStats s =
              soft_stats_from_llr(prior[k].data() + t * mc, cons);
          stats[k][t] = {s.mean, s.var};
        }
    }

    // one filter per UE per pass: the interference profile uses the
    // block-averaged symbol statistics, the cancellation the per-slot means
    InterferenceProfile prof;
    prof.rho = frame.rho;
    prof.delta.resize(num_ues);
    prof.cov_weight.resize(num_ues);
    for (int k = 0; k < num_ues; ++k) {
      double var_acc = 0.0, energy_acc = 0.0;
      for (int t = 0; t < slots; ++t) {
        var_acc += stats[k][t].var;
        energy_acc += std::norm(stats[k][t].mean) + stats[k][t].var;
      }
      prof.delta[k] = frame.rho[k] * var_acc / slots;
      prof.cov_weight[k] = frame.rho[k] * energy_acc / slots;
    }
    if (opts.kind == DetectorKind::Mmse) prof = no_prior_profile(frame.rho);

    // plain MMSE and genie profiles never change after the first pass
    const bool rebuild = iter == 1 || uses_feedback;
    if (rebuild)
      for (int k = 0; k < num_ues; ++k)
        filters[k] = mmse_soft_ic_filter(k, est, mask, prof, frame.sigma2);

    // detection statistics
    if (opts.kind == DetectorKind::List) {
      VecC y_t(y.rows());
      VecC sbar_pow(num_ues);
      for (int t = 0; t < slots; ++t) {
        y_t = y.col(t);
        for (int m = 0; m < num_ues; ++m)
          sbar_pow[m] = std::sqrt(frame.rho[m]) * stats[m][t].mean;
        const SicTrajectory traj = list_detect(y_t, filters, est, mask, cons,
                                               frame.rho, order, opts.sac, sbar_pow);
        u_all.col(t) = traj.u;
      }
    } else {
      VecC sbar_pow(num_ues);
      for (int t = 0; t < slots; ++t) {
        for (int m = 0; m < num_ues; ++m)
          sbar_pow[m] = std::sqrt(frame.rho[m]) * stats[m][t].mean;
        const VecC y_t = y.col(t);
        for (int k = 0; k < num_ues; ++k)
          u_all(k, t) = soft_ic_detect(k, y_t, filters[k], est, mask, sbar_pow);
      }
    }

    // demap, decode, feed back
    IddIterationSnapshot snap;
    snap.msg_bits.resize(num_ues);
    snap.parity_ok.resize(num_ues);
    bool all_ok = true;
    EffectiveAwgnOptions eff_opts;
    eff_opts.include_residual_mui = opts.kappa_include_mui;
    if (opts.kappa_include_mui) eff_opts.delta_pow = prof.delta;

    for (int k = 0; k < num_ues; ++k) {
      const EffectiveAwgn eff =
          effective_channel(k, filters[k], est, mask, frame.rho, frame.sigma2, eff_opts);
      std::vector<double> det_llr(code.n);
      const bool with_prior = uses_feedback && have_prior;
      for (int t = 0; t < slots; ++t)
        extrinsic_llr(u_all(k, t), eff,
                      with_prior ? prior[k].data() + t * mc : nullptr, cons,
                      det_llr.data() + t * mc);
      for (double& v : det_llr) v = std::clamp(v, -kLlrClip, kLlrClip);

      const DecodeResult dec = decode(det_llr, code, opts.inner_iters);
      snap.msg_bits[k] = message_bits(dec.bits, code);
      snap.parity_ok[k] = dec.converged;
      all_ok = all_ok && dec.converged;

      if (uses_feedback && iter < opts.outer_iters)
        for (int i = 0; i < code.n; ++i)
          prior[k][i] = dec.posterior[i] - det_llr[i];
    }
    have_prior = true;
    res.iterations.push_back(std::move(snap));

    if (all_ok) {
      if (res.early_exit_iter < 0) res.early_exit_iter = iter;
      while (static_cast<int>(res.iterations.size()) < opts.outer_iters)
        res.iterations.push_back(res.iterations.back());
      break;
    }
  }
  return res;
}

}  // namespace cfmimo
