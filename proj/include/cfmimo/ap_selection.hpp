#pragma once

#include <vector>

#include "cfmimo/geometry_channel.hpp"
#include "cfmimo/linalg.hpp"

namespace cfmimo {

enum class ApMode { AllAps, ApsSel };

struct SelectionPolicy {
  ApMode mode = ApMode::AllAps;
  double beta_th_db = -60.0;  // non-master APs serve above this gain
};

/// Which AP serves which UE. The per-UE selection matrix is block diagonal
/// with blocks in {0, I_N}, so a boolean L x K table captures it exactly;
/// the N*L x N*L matrix is never materialized.
struct SelectionMask {
  int antennas_per_ap = 1;
  std::vector<std::vector<bool>> serve;  // [ap][ue]

  int num_aps() const { return static_cast<int>(serve.size()); }
  int num_ues() const { return serve.empty() ? 0 : static_cast<int>(serve[0].size()); }
  bool is_serving(int ap, int ue) const { return serve[ap][ue]; }

  /// stacked antenna indices of the APs serving this UE, ascending
  std::vector<int> serving_antennas(int ue) const;
  int serving_ap_count(int ue) const;
};

/// argmax_l beta[l][k]; ties broken by lowest AP index.
int select_master_ap(const LargeScaleCoefficients& ls, int ue);

SelectionMask build_selection(const LargeScaleCoefficients& ls,
                              const SelectionPolicy& policy,
                              int antennas_per_ap);

/// Zeroes the antenna blocks of APs not serving the UE.
VecC apply_selection(const SelectionMask& mask, int ue, const VecC& y);

/// UEs served by the given AP.
std::vector<int> serving_set(const SelectionMask& mask, int ap);

}  // namespace cfmimo
