#include "cfmimo/list_detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace cfmimo {

namespace {

// gain of the unit-energy symbol in the filter output
Cx unit_gain(int ue, const VecC& w, const ChannelEstimate& est, double rho) {
  return std::sqrt(rho) * w.dot(est.g_hat.col(ue));
}

Cx normalize(Cx stat, Cx gain) {
  return std::norm(gain) > 0.0 ? stat / gain : stat;
}

// candidate point indices ordered by distance to z, ties by index
std::vector<int> nearest_points(Cx z, const Constellation& cons, int count) {
  std::vector<int> idx(cons.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::norm(z - cons.points[a]) < std::norm(z - cons.points[b]);
  });
  idx.resize(std::min<std::size_t>(count, idx.size()));
  return idx;
}

}  // namespace

SacDecision sac_reliability(Cx u, const Constellation& c, double d_th) {
  SacDecision dec;
  dec.nearest = c.nearest(u);
  dec.d = std::abs(u - c.points[dec.nearest]);
  dec.reliable = dec.d <= d_th;
  return dec;
}

std::vector<int> detection_order(const ChannelEstimate& est,
                                 const SelectionMask& mask) {
  const int num_ues = static_cast<int>(est.g_hat.cols());
  std::vector<double> strength(num_ues);
  for (int k = 0; k < num_ues; ++k)
    strength[k] = apply_selection(mask, k, est.g_hat.col(k)).norm();
  std::vector<int> order(num_ues);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return strength[a] > strength[b]; });
  return order;
}

SelectionVector expand_candidate(int cand, const LayerState& state,
                                 const std::vector<VecC>& filters,
                                 const ChannelEstimate& est,
                                 const SelectionMask& mask,
                                 const Constellation& cons, const VecR& rho) {
  (void)mask;
  const int num_ues = static_cast<int>(state.order.size());
  const int ue = state.order[state.pos];

  SelectionVector sv;
  sv.phi = state.hard;
  sv.u = state.u;
  sv.phi[ue] = std::sqrt(rho[ue]) * cons.points[cand];

  // swap the layer's prior mean for the candidate decision, then complete the
  // remaining layers the same way the main pass would
  VecC residual = state.y_check - est.g_hat.col(ue) * (sv.phi[ue] - state.sbar_pow[ue]);
  for (int p = state.pos + 1; p < num_ues; ++p) {
    const int q = state.order[p];
    const Cx u_q = filters[q].dot(residual + est.g_hat.col(q) * state.sbar_pow[q]);
    sv.u[q] = u_q;
    sv.phi[q] = slice_symbol(u_q, unit_gain(q, filters[q], est, rho[q]), rho[q], cons);
    residual -= est.g_hat.col(q) * (sv.phi[q] - state.sbar_pow[q]);
  }
  return sv;
}

int ml_select(const std::vector<SelectionVector>& candidates, const VecC& y,
              const ChannelEstimate& est, const SelectionMask& mask, int ue) {
  if (candidates.empty()) throw std::invalid_argument("empty candidate list");
  int best = 0;
  double best_res = std::numeric_limits<double>::infinity();
  for (int m = 0; m < static_cast<int>(candidates.size()); ++m) {
    const VecC diff =
        apply_selection(mask, ue, y - est.g_hat * candidates[m].phi);
    const double res = diff.squaredNorm();
    if (res < best_res) {
      best_res = res;
      best = m;
    }
  }
  return best;
}

SicTrajectory soft_ic_sequential_detect(const VecC& y,
                                        const std::vector<VecC>& filters,
                                        const ChannelEstimate& est,
                                        const SelectionMask& mask,
                                        const Constellation& cons,
                                        const VecR& rho,
                                        const std::vector<int>& order,
                                        const VecC& sbar_pow) {
  (void)mask;
  const int num_ues = static_cast<int>(order.size());
  SicTrajectory traj;
  traj.u = VecC::Zero(num_ues);
  traj.hard = VecC::Zero(num_ues);

  // undetected layers enter softly cancelled by their prior means; each
  // decision then replaces the mean with the hard symbol
  VecC y_check = y;
  for (int m = 0; m < num_ues; ++m) y_check -= est.g_hat.col(m) * sbar_pow[m];

  for (int pos = 0; pos < num_ues; ++pos) {
    const int k = order[pos];
    const Cx u_k = filters[k].dot(y_check + est.g_hat.col(k) * sbar_pow[k]);
    traj.u[k] = u_k;
    traj.hard[k] = slice_symbol(u_k, unit_gain(k, filters[k], est, rho[k]), rho[k], cons);
    y_check -= est.g_hat.col(k) * (traj.hard[k] - sbar_pow[k]);
  }
  return traj;
}

SicTrajectory list_detect(const VecC& y, const std::vector<VecC>& filters,
                          const ChannelEstimate& est,
                          const SelectionMask& mask,
                          const Constellation& cons, const VecR& rho,
                          const std::vector<int>& order, const SacConfig& sac,
                          const VecC& sbar_pow) {
  const int num_ues = static_cast<int>(order.size());

  LayerState state;
  state.y = y;
  state.y_check = y;
  state.hard = VecC::Zero(num_ues);
  state.u = VecC::Zero(num_ues);
  state.order = order;
  state.sbar_pow = sbar_pow;
  for (int m = 0; m < num_ues; ++m)
    state.y_check -= est.g_hat.col(m) * sbar_pow[m];

  for (state.pos = 0; state.pos < num_ues; ++state.pos) {
    const int k = order[state.pos];
    const Cx u_k = filters[k].dot(state.y_check + est.g_hat.col(k) * sbar_pow[k]);
    state.u[k] = u_k;

    const Cx gain = unit_gain(k, filters[k], est, rho[k]);
    const SacDecision dec = sac_reliability(normalize(u_k, gain), cons, sac.d_th);
    if (dec.reliable) {
      state.hard[k] = std::sqrt(rho[k]) * cons.points[dec.nearest];
      state.y_check -= est.g_hat.col(k) * (state.hard[k] - sbar_pow[k]);
      continue;
    }

    // first unreliable layer: expand one completion per candidate point and
    // keep the whole trajectory the local ML rule prefers
    const std::vector<int> cands = nearest_points(normalize(u_k, gain), cons, sac.list_size);
    std::vector<SelectionVector> completions;
    completions.reserve(cands.size());
    for (int c : cands)
      completions.push_back(expand_candidate(c, state, filters, est, mask, cons, rho));
    const int opt = ml_select(completions, y, est, mask, k);

    SicTrajectory traj;
    traj.u = completions[opt].u;
    traj.u[k] = u_k;  // the branch point keeps its own statistic
    traj.hard = completions[opt].phi;
    return traj;
  }

  return SicTrajectory{state.u, state.hard};
}

}  // namespace cfmimo
