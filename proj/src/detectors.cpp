#include "cfmimo/detectors.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>

namespace cfmimo {

namespace {

std::atomic<std::uint64_t> g_filter_builds{0};

// sum_m weight[m] * C_{m,l} for one AP block
MatC weighted_err_cov_block(const ChannelEstimate& est, int ap,
                            const VecR& weight) {
  const int n = est.antennas_per_ap;
  MatC acc = MatC::Zero(n, n);
  for (int m = 0; m < weight.size(); ++m)
    acc += weight[m] * est.err_cov_block(m, ap);
  return acc;
}

// Dense N*L x N*L masked covariance D (sigma2 I + sum_m weight_m C_m) D.
// Used by the direct (unreduced) filter routes.
MatC masked_noise_cov_dense(const ChannelEstimate& est,
                            const SelectionMask& mask, int ue,
                            const VecR& weight, double sigma2) {
  const int n = est.antennas_per_ap;
  const int nl = n * est.num_aps;
  MatC cov = MatC::Zero(nl, nl);
  for (int l = 0; l < est.num_aps; ++l) {
    if (!mask.is_serving(l, ue)) continue;
    cov.block(l * n, l * n, n, n) =
        weighted_err_cov_block(est, l, weight) + sigma2 * MatC::Identity(n, n);
  }
  return cov;
}

}  // namespace

InterferenceProfile no_prior_profile(const VecR& rho) {
  return InterferenceProfile{rho, rho, rho};
}

VecC mmse_soft_ic_filter(int ue, const ChannelEstimate& est,
                         const SelectionMask& mask,
                         const InterferenceProfile& prof, double sigma2) {
  g_filter_builds.fetch_add(1, std::memory_order_relaxed);

  const int n = est.antennas_per_ap;
  const int nl = n * est.num_aps;
  const std::vector<int> idx = mask.serving_antennas(ue);
  const int s = static_cast<int>(idx.size());
  if (s == 0) throw std::runtime_error("UE has no serving antennas");
  const int num_ues = static_cast<int>(est.g_hat.cols());

  // gather the masked channel estimates onto the serving block
  MatC g_sub(s, num_ues);
  for (int i = 0; i < s; ++i) g_sub.row(i) = est.g_hat.row(idx[i]);

  MatC b = MatC::Zero(s, s);
  b += prof.rho[ue] * (g_sub.col(ue) * g_sub.col(ue).adjoint());
  for (int m = 0; m < num_ues; ++m) {
    if (m == ue) continue;
    if (prof.delta[m] != 0.0)
      b += prof.delta[m] * (g_sub.col(m) * g_sub.col(m).adjoint());
  }
  // block-diagonal error covariance + noise, restricted to serving APs
  int off = 0;
  for (int l = 0; l < est.num_aps; ++l) {
    if (!mask.is_serving(l, ue)) continue;
    b.block(off, off, n, n) += weighted_err_cov_block(est, l, prof.cov_weight) +
                               sigma2 * MatC::Identity(n, n);
    off += n;
  }

  Eigen::LLT<MatC> llt(b);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("soft-IC filter matrix is not positive definite");
  const VecC w_sub = prof.rho[ue] * llt.solve(g_sub.col(ue));

  VecC w = VecC::Zero(nl);
  for (int i = 0; i < s; ++i) w[idx[i]] = w_sub[i];
  return w;
}

Cx soft_ic_detect(int ue, const VecC& y, const VecC& w,
                  const ChannelEstimate& est, const SelectionMask& mask,
                  const VecC& sbar_pow) {
  // w is zero outside the serving antennas, so w^H x == w^H D x
  Cx out = w.dot(y);
  for (int m = 0; m < est.g_hat.cols(); ++m) {
    if (m == ue || sbar_pow[m] == Cx(0.0, 0.0)) continue;
    out -= w.dot(est.g_hat.col(m)) * sbar_pow[m];
  }
  (void)mask;
  return out;
}

VecC linear_mmse_filter(int ue, const ChannelEstimate& est,
                        const SelectionMask& mask, const VecR& rho,
                        double sigma2) {
  const int num_ues = static_cast<int>(est.g_hat.cols());
  MatC b = masked_noise_cov_dense(est, mask, ue, rho, sigma2);
  for (int m = 0; m < num_ues; ++m) {
    const VecC gm = apply_selection(mask, ue, est.g_hat.col(m));
    b += rho[m] * (gm * gm.adjoint());
  }
  // singular on the non-serving coordinates; the pseudo-inverse restricts
  // the solve to the serving subspace
  Eigen::CompleteOrthogonalDecomposition<MatC> cod(b);
  return rho[ue] * cod.pseudoInverse() *
         apply_selection(mask, ue, est.g_hat.col(ue));
}

VecC linear_mmse_detect(const VecC& y, const ChannelEstimate& est,
                        const SelectionMask& mask, const VecR& rho,
                        double sigma2) {
  const int num_ues = static_cast<int>(est.g_hat.cols());
  VecC out(num_ues);
  for (int k = 0; k < num_ues; ++k)
    out[k] = linear_mmse_filter(k, est, mask, rho, sigma2).dot(y);
  return out;
}

Cx perfect_ic_detect(int ue, const VecC& y, const ChannelEstimate& est,
                     const SelectionMask& mask, const VecC& true_syms_pow,
                     const VecR& rho, double sigma2) {
  const int num_ues = static_cast<int>(est.g_hat.cols());
  VecR weight(num_ues);
  for (int m = 0; m < num_ues; ++m) weight[m] = std::norm(true_syms_pow[m]);

  MatC b = masked_noise_cov_dense(est, mask, ue, weight, sigma2);
  const VecC gk = apply_selection(mask, ue, est.g_hat.col(ue));
  b += rho[ue] * (gk * gk.adjoint());

  VecC cancelled = y;
  for (int m = 0; m < num_ues; ++m) {
    if (m == ue) continue;
    cancelled -= est.g_hat.col(m) * true_syms_pow[m];
  }
  Eigen::CompleteOrthogonalDecomposition<MatC> cod(b);
  const VecC w = rho[ue] * cod.pseudoInverse() * gk;
  return w.dot(apply_selection(mask, ue, cancelled));
}

Cx slice_symbol(Cx stat, Cx gain, double rho, const Constellation& c) {
  const Cx z = (std::norm(gain) > 0.0) ? stat / gain : stat;
  return std::sqrt(rho) * c.points[c.nearest(z)];
}

std::uint64_t filter_build_count() {
  return g_filter_builds.load(std::memory_order_relaxed);
}

void reset_filter_build_count() {
  g_filter_builds.store(0, std::memory_order_relaxed);
}

}  // namespace cfmimo
