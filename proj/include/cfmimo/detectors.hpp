#pragma once

#include <cstdint>
#include <vector>

#include "cfmimo/ap_selection.hpp"
#include "cfmimo/constellation.hpp"
#include "cfmimo/pilots_estimation.hpp"

namespace cfmimo {

/// Prior statistics of the transmitted symbols, in the power domain
/// (transmitted symbol = sqrt(rho) * unit-energy point):
///   delta[m]      = rho_m * Var(unit symbol m), the residual interference
///                   variance after soft cancellation;
///   cov_weight[m] = rho_m * E|unit symbol m|^2 under the prior, the weight
///                   on the estimation-error covariance C_m.
/// With no prior knowledge both reduce to rho_m; with exact symbol knowledge
/// delta = 0 and cov_weight[m] = |s_m|^2.
struct InterferenceProfile {
  VecR rho;
  VecR delta;
  VecR cov_weight;
};

InterferenceProfile no_prior_profile(const VecR& rho);

/// MMSE receive filter with soft interference cancellation, restricted to the
/// UE's serving antennas and zero-padded back to length N*L:
///   w = rho_k * B^-1 * g_hat_k   on the serving block, where
///   B = rho_k g g^H + sum_{m != k} delta_m g_m g_m^H
///       + sum_m cov_weight_m C_m + sigma2 I.
/// Throws if the serving block is singular (possible only at sigma2 = 0).
VecC mmse_soft_ic_filter(int ue, const ChannelEstimate& est,
                         const SelectionMask& mask,
                         const InterferenceProfile& prof, double sigma2);

/// Decision statistic after soft multiuser-interference removal:
///   s_tilde = w^H y - w^H sum_{m != k} g_hat_m * sbar_pow[m].
/// sbar_pow holds power-domain symbol means; entry [ue] is ignored.
Cx soft_ic_detect(int ue, const VecC& y, const VecC& w,
                  const ChannelEstimate& est, const SelectionMask& mask,
                  const VecC& sbar_pow);

/// Linear MMSE filter, written out directly on the full masked system (dense
/// closed form, no serving-block reduction). Kept as an independent route:
/// it must agree with mmse_soft_ic_filter under a no-prior profile.
VecC linear_mmse_filter(int ue, const ChannelEstimate& est,
                        const SelectionMask& mask, const VecR& rho,
                        double sigma2);

/// Applies the linear MMSE filter of every UE to one received vector.
VecC linear_mmse_detect(const VecC& y, const ChannelEstimate& est,
                        const SelectionMask& mask, const VecR& rho,
                        double sigma2);

/// Genie-aided detector: cancels the other UEs' true symbols and filters with
/// the covariance of the estimation error and noise only (diagnostic path).
Cx perfect_ic_detect(int ue, const VecC& y, const ChannelEstimate& est,
                     const SelectionMask& mask, const VecC& true_syms_pow,
                     const VecR& rho, double sigma2);

struct DetectionResult {
  VecC u;        // raw filter outputs w^H y (pre-cancellation)
  VecC s_tilde;  // post-cancellation decision statistics
  VecC hard;     // sliced symbols, power domain
};

/// Nearest constellation point to stat / gain, returned in the power domain
/// (sqrt(rho) * point). A vanishing gain falls back to slicing stat directly.
Cx slice_symbol(Cx stat, Cx gain, double rho, const Constellation& c);

/// Number of soft-IC filter constructions since the last reset. Used to
/// verify that list detection reuses filters instead of rebuilding them.
std::uint64_t filter_build_count();
void reset_filter_build_count();

}  // namespace cfmimo
