#include "cfmimo/pilots_estimation.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cfmimo/rng.hpp"

namespace cfmimo {

namespace {
constexpr std::uint64_t kPilotAssignTag = 0x70617373ULL;
constexpr std::uint64_t kPilotNoiseTag = 0x706e6f69ULL;
}  // namespace

double ChannelEstimate::err_cov_trace(int ue) const {
  double t = 0.0;
  for (int l = 0; l < num_aps; ++l) t += err_cov_block(ue, l).real().trace();
  return t;
}

PilotBook assign_pilots(int num_ues, int tau_p, double pilot_power_w,
                        std::uint64_t seed) {
  if (tau_p < 1) throw std::invalid_argument("tau_p must be >= 1");
  if (pilot_power_w <= 0.0) throw std::invalid_argument("pilot power must be positive");

  PilotBook book;
  book.tau_p = tau_p;
  book.assignment.resize(num_ues);
  book.pilot_power_w = VecR::Constant(num_ues, pilot_power_w);

  std::vector<int> perm(num_ues);
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(derive_seed(seed, kPilotAssignTag));
  rng.shuffle(perm);
  for (int i = 0; i < num_ues; ++i) book.assignment[perm[i]] = i % tau_p;

  book.sharing_sets.resize(num_ues);
  for (int k = 0; k < num_ues; ++k)
    for (int j = 0; j < num_ues; ++j)
      if (book.assignment[j] == book.assignment[k])
        book.sharing_sets[k].push_back(j);
  return book;
}

PilotObservation receive_pilots(const ChannelRealization& chan,
                                const SpatialCorrelation& corr,
                                const PilotBook& book, double sigma2,
                                std::uint64_t seed) {
  const int n = corr.antennas_per_ap;
  const int num_aps = corr.num_aps;
  const int num_ues = book.num_ues();
  if (num_ues != corr.num_ues)
    throw std::invalid_argument("pilot book / correlation UE count mismatch");

  PilotObservation obs;
  obs.tau_p = book.tau_p;
  obs.num_aps = num_aps;
  obs.antennas_per_ap = n;
  obs.r.resize(static_cast<std::size_t>(book.tau_p) * num_aps);
  obs.psi.resize(obs.r.size());

  Rng rng(derive_seed(seed, kPilotNoiseTag));
  for (int t = 0; t < book.tau_p; ++t) {
    for (int l = 0; l < num_aps; ++l) {
      const std::size_t idx = static_cast<std::size_t>(t) * num_aps + l;
      VecC r = VecC::Zero(n);
      MatC psi = sigma2 * MatC::Identity(n, n);
      bool used = false;
      for (int j = 0; j < num_ues; ++j) {
        if (book.assignment[j] != t) continue;
        used = true;
        const double etatau = book.pilot_power_w[j] * book.tau_p;
        r += std::sqrt(etatau) * chan.g.block(l * n, j, n, 1);
        psi += etatau * corr.block(j, l);
      }
      if (!used) continue;  // pilot not assigned to anyone
      for (int i = 0; i < n; ++i) r[i] += std::sqrt(sigma2) * rng.cnormal();
      obs.r[idx] = std::move(r);
      obs.psi[idx] = std::move(psi);
    }
  }
  return obs;
}

ChannelEstimate mmse_estimate(const PilotObservation& obs,
                              const SpatialCorrelation& corr,
                              const PilotBook& book) {
  const int n = corr.antennas_per_ap;
  const int num_aps = corr.num_aps;
  const int num_ues = book.num_ues();

  ChannelEstimate est;
  est.num_aps = num_aps;
  est.antennas_per_ap = n;
  est.g_hat.resize(num_aps * n, num_ues);
  est.err_cov.resize(static_cast<std::size_t>(num_ues) * num_aps);

  for (int k = 0; k < num_ues; ++k) {
    const int t = book.assignment[k];
    const double etatau = book.pilot_power_w[k] * book.tau_p;
    for (int l = 0; l < num_aps; ++l) {
      const MatC& omega = corr.block(k, l);
      const MatC& psi = obs.psi_at(t, l);
      Eigen::LDLT<MatC> ldlt(psi);
      if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
          ldlt.vectorD().real().minCoeff() <= 0.0)
        throw std::runtime_error("singular pilot correlation matrix");
      // g_hat = sqrt(eta*tau) * omega * psi^-1 * r
      est.g_hat.block(l * n, k, n, 1) =
          std::sqrt(etatau) * omega * ldlt.solve(obs.r_at(t, l));
      est.err_cov[static_cast<std::size_t>(k) * num_aps + l] =
          omega - etatau * omega * ldlt.solve(omega);
    }
  }
  return est;
}

}  // namespace cfmimo
