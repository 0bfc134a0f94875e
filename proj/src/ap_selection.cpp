#include "cfmimo/ap_selection.hpp"

#include <cmath>
#include <stdexcept>

namespace cfmimo {

std::vector<int> SelectionMask::serving_antennas(int ue) const {
  std::vector<int> idx;
  idx.reserve(static_cast<std::size_t>(num_aps()) * antennas_per_ap);
  for (int l = 0; l < num_aps(); ++l)
    if (serve[l][ue])
      for (int a = 0; a < antennas_per_ap; ++a)
        idx.push_back(l * antennas_per_ap + a);
  return idx;
}

int SelectionMask::serving_ap_count(int ue) const {
  int c = 0;
  for (int l = 0; l < num_aps(); ++l) c += serve[l][ue] ? 1 : 0;
  return c;
}

int select_master_ap(const LargeScaleCoefficients& ls, int ue) {
  if (ls.beta.rows() == 0) throw std::invalid_argument("no APs in beta");
  int best = 0;
  for (int l = 1; l < ls.beta.rows(); ++l)
    if (ls.beta(l, ue) > ls.beta(best, ue)) best = l;
  return best;
}

SelectionMask build_selection(const LargeScaleCoefficients& ls,
                              const SelectionPolicy& policy,
                              int antennas_per_ap) {
  const int num_aps = static_cast<int>(ls.beta.rows());
  const int num_ues = static_cast<int>(ls.beta.cols());
  SelectionMask mask;
  mask.antennas_per_ap = antennas_per_ap;
  mask.serve.assign(num_aps, std::vector<bool>(num_ues, false));

  if (policy.mode == ApMode::AllAps) {
    for (auto& row : mask.serve) row.assign(num_ues, true);
    return mask;
  }
  for (int k = 0; k < num_ues; ++k) {
    const int master = select_master_ap(ls, k);
    for (int l = 0; l < num_aps; ++l) {
      const double beta_db = 10.0 * std::log10(ls.beta(l, k));
      mask.serve[l][k] = (l == master) || (beta_db >= policy.beta_th_db);
    }
  }
  return mask;
}

VecC apply_selection(const SelectionMask& mask, int ue, const VecC& y) {
  const int n = mask.antennas_per_ap;
  if (y.size() != static_cast<Eigen::Index>(mask.num_aps()) * n)
    throw std::invalid_argument("vector length does not match mask");
  VecC out = VecC::Zero(y.size());
  for (int l = 0; l < mask.num_aps(); ++l)
    if (mask.serve[l][ue]) out.segment(l * n, n) = y.segment(l * n, n);
  return out;
}

std::vector<int> serving_set(const SelectionMask& mask, int ap) {
  std::vector<int> ues;
  for (int k = 0; k < mask.num_ues(); ++k)
    if (mask.serve[ap][k]) ues.push_back(k);
  return ues;
}

}  // namespace cfmimo
