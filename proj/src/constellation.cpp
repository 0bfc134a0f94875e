#include "cfmimo/constellation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cfmimo {

int Constellation::nearest(Cx x) const {
  int best = 0;
  double best_d = std::norm(x - points[0]);
  for (int i = 1; i < size(); ++i) {
    const double d = std::norm(x - points[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

Cx Constellation::map_bits(const std::uint8_t* bits) const {
  const int mc = bits_per_symbol();
  int idx = 0;
  for (int l = 0; l < mc; ++l) idx = (idx << 1) | (bits[l] & 1);
  return points[idx];
}

Constellation make_qpsk() {
  Constellation c;
  c.points.resize(4);
  c.labels.resize(4);
  const double s = 1.0 / std::sqrt(2.0);
  for (int b1 = 0; b1 < 2; ++b1) {
    for (int b2 = 0; b2 < 2; ++b2) {
      const int idx = b1 * 2 + b2;
      c.points[idx] = Cx((1 - 2 * b1) * s, (1 - 2 * b2) * s);
      c.labels[idx] = {static_cast<std::uint8_t>(b1),
                       static_cast<std::uint8_t>(b2)};
    }
  }
  c.energy = 1.0;
  return c;
}

VecR priors_from_llr(const double* llr, const Constellation& c) {
  const int mc = c.bits_per_symbol();
  VecR p(c.size());
  for (int s = 0; s < c.size(); ++s) {
    double prob = 1.0;
    for (int l = 0; l < mc; ++l) {
      const double lam = std::clamp(llr[l], -kLlrClip, kLlrClip);
      const double antipodal = 1.0 - 2.0 * c.labels[s][l];  // bit 0 -> +1
      prob *= 1.0 / (1.0 + std::exp(-antipodal * lam));
    }
    p[s] = prob;
  }
  return p;
}

Cx symbol_mean(const VecR& priors, const Constellation& c) {
  Cx m(0.0, 0.0);
  for (int s = 0; s < c.size(); ++s) m += priors[s] * c.points[s];
  return m;
}

double symbol_variance(const VecR& priors, Cx mean, const Constellation& c) {
  double v = 0.0;
  for (int s = 0; s < c.size(); ++s) v += priors[s] * std::norm(c.points[s] - mean);
  return v;
}

SoftSymbolStats soft_stats_from_llr(const double* llr, const Constellation& c) {
  const VecR p = priors_from_llr(llr, c);
  SoftSymbolStats st;
  st.mean = symbol_mean(p, c);
  st.var = symbol_variance(p, st.mean, c);
  return st;
}

}  // namespace cfmimo
