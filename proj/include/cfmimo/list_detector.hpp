#pragma once

#include <vector>

#include "cfmimo/constellation.hpp"
#include "cfmimo/detectors.hpp"

namespace cfmimo {

struct SacConfig {
  double d_th = 0.38;  // reliability radius in the constellation plane
  int list_size = 4;   // candidate count, at most the constellation size
};

struct SacDecision {
  double d = 0.0;   // distance to the nearest point
  int nearest = 0;  // its index
  bool reliable = false;
};

/// Shadow-area reliability test on a gain-normalized soft estimate.
SacDecision sac_reliability(Cx u, const Constellation& c, double d_th);

/// UE indices sorted by descending masked channel-estimate norm
/// (strongest detected first); ties keep the lower UE index first.
std::vector<int> detection_order(const ChannelEstimate& est,
                                 const SelectionMask& mask);

/// Walk of one layered-detection pass: residual vector, decisions made so
/// far and the position reached in the detection order. Not-yet-detected
/// layers are soft-cancelled by their prior means (zero on the first pass,
/// the decoder feedback afterwards); a decision replaces the layer's mean
/// with the hard symbol.
struct LayerState {
  VecC y;         // received vector
  VecC y_check;   // running residual
  VecC hard;      // power-domain decisions, UE indexing; 0 when undetected
  VecC u;         // per-UE layer statistics collected so far
  VecC sbar_pow;  // prior symbol means, power domain
  std::vector<int> order;
  int pos = 0;
};

/// Candidate completion: symbol decisions for every UE plus the layer
/// statistics produced while completing the remaining layers.
struct SelectionVector {
  VecC phi;  // K power-domain symbols, UE indexing
  VecC u;    // layer statistics (UE indexing; valid at order[pos..])
};

/// Completes the trajectory that substitutes candidate point cand for the
/// decision at the current layer: remaining layers are hard-sliced with the
/// same precomputed filters after cancelling the candidate.
SelectionVector expand_candidate(int cand, const LayerState& state,
                                 const std::vector<VecC>& filters,
                                 const ChannelEstimate& est,
                                 const SelectionMask& mask,
                                 const Constellation& cons, const VecR& rho);

/// Local ML rule: index of the candidate with the smallest masked residual
/// ||y - G_hat * phi||^2 on the UE's serving antennas; ties -> lowest index.
int ml_select(const std::vector<SelectionVector>& candidates, const VecC& y,
              const ChannelEstimate& est, const SelectionMask& mask, int ue);

struct SicTrajectory {
  VecC u;     // raw per-layer statistics, UE indexing
  VecC hard;  // power-domain decisions, UE indexing
};

/// Plain layered soft interference cancellation: filter, hard slice, cancel.
/// Kept as the reference trajectory the list detector degenerates to.
/// sbar_pow holds the per-UE prior symbol means (zeros when uncoded).
SicTrajectory soft_ic_sequential_detect(const VecC& y,
                                        const std::vector<VecC>& filters,
                                        const ChannelEstimate& est,
                                        const SelectionMask& mask,
                                        const Constellation& cons,
                                        const VecR& rho,
                                        const std::vector<int>& order,
                                        const VecC& sbar_pow);

/// Layered detection with the shadow-area reliability test: the first
/// unreliable layer spawns list_size candidate completions and the local ML
/// rule picks the trajectory; every completion reuses the same filters, so
/// the filter-construction cost is identical to the plain pass.
SicTrajectory list_detect(const VecC& y, const std::vector<VecC>& filters,
                          const ChannelEstimate& est,
                          const SelectionMask& mask,
                          const Constellation& cons, const VecR& rho,
                          const std::vector<int>& order, const SacConfig& sac,
                          const VecC& sbar_pow);

}  // namespace cfmimo
