#pragma once

#include <cstdint>
#include <vector>

#include "cfmimo/linalg.hpp"

namespace cfmimo {

// LLRs are clipped to +/-kLlrClip before exponentiation; the induced
// probability error is below 1e-13.
inline constexpr double kLlrClip = 30.0;

/// Complex modulation alphabet with per-point bit labels.
///
/// Sign convention used everywhere in this project: an LLR is
/// log P(bit = 0) / P(bit = 1), and bit b maps to the antipodal value
/// (1 - 2b), so a positive LLR favors the +1 antipodal value.
struct Constellation {
  VecC points;                                    // unit average energy
  std::vector<std::vector<std::uint8_t>> labels;  // [point][bit], values 0/1
  double energy = 1.0;                            // mean |point|^2

  int size() const { return static_cast<int>(points.size()); }
  int bits_per_symbol() const { return static_cast<int>(labels.front().size()); }

  // index of the closest point; ties broken by lowest index
  int nearest(Cx x) const;

  Cx map_bits(const std::uint8_t* bits) const;
};

/// Gray-labeled QPSK: bits (b1, b2) -> ((1-2*b1) + i*(1-2*b2)) / sqrt(2).
Constellation make_qpsk();

/// A-priori probability row over the constellation from per-bit LLRs
/// (bits_per_symbol values). Rows sum to 1 for finite inputs.
VecR priors_from_llr(const double* llr, const Constellation& c);

Cx symbol_mean(const VecR& priors, const Constellation& c);

double symbol_variance(const VecR& priors, Cx mean, const Constellation& c);

/// Per-symbol mean and variance in the unit-energy domain.
struct SoftSymbolStats {
  Cx mean{0.0, 0.0};
  double var = 1.0;
};

SoftSymbolStats soft_stats_from_llr(const double* llr, const Constellation& c);

}  // namespace cfmimo
