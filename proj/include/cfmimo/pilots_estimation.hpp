#pragma once

#include <cstdint>
#include <vector>

#include "cfmimo/geometry_channel.hpp"
#include "cfmimo/linalg.hpp"

namespace cfmimo {

/// Pilot assignment bookkeeping. Pilots are indexed 0..tau_p-1; sharing_sets[k]
/// lists every UE on UE k's pilot, including k itself.
struct PilotBook {
  int tau_p = 0;
  std::vector<int> assignment;            // per UE
  std::vector<std::vector<int>> sharing_sets;
  VecR pilot_power_w;                     // eta, per UE

  int num_ues() const { return static_cast<int>(assignment.size()); }
};

/// Despread pilot observations: per (pilot, AP) the N-vector r and its
/// correlation matrix psi = sum_{j on pilot} eta_j*tau_p*omega_j + sigma2*I.
struct PilotObservation {
  int tau_p = 0;
  int num_aps = 0;
  int antennas_per_ap = 0;
  std::vector<VecC> r;     // index t * L + l; empty for unused pilots
  std::vector<MatC> psi;   // same indexing

  const VecC& r_at(int pilot, int ap) const { return r[pilot * num_aps + ap]; }
  const MatC& psi_at(int pilot, int ap) const { return psi[pilot * num_aps + ap]; }
};

/// Linear estimate of every UE channel plus the per-link error covariance
/// blocks C_{kl}; this is all the receiver knows about the channel.
struct ChannelEstimate {
  MatC g_hat;               // (N*L) x K
  std::vector<MatC> err_cov;  // index k * L + l, N x N blocks
  int num_aps = 0;
  int antennas_per_ap = 0;

  const MatC& err_cov_block(int ue, int ap) const {
    return err_cov[ue * num_aps + ap];
  }
  /// trace of the stacked error covariance C_k
  double err_cov_trace(int ue) const;
};

/// Round-robin assignment over a seed-determined random permutation of the
/// UE indices; with K <= tau_p every UE gets a private pilot.
PilotBook assign_pilots(int num_ues, int tau_p, double pilot_power_w,
                        std::uint64_t seed);

PilotObservation receive_pilots(const ChannelRealization& chan,
                                const SpatialCorrelation& corr,
                                const PilotBook& book, double sigma2,
                                std::uint64_t seed);

ChannelEstimate mmse_estimate(const PilotObservation& obs,
                              const SpatialCorrelation& corr,
                              const PilotBook& book);

}  // namespace cfmimo
