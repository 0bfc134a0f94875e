#pragma once

#include <optional>
#include <vector>

#include "cfmimo/detectors.hpp"
#include "cfmimo/ldpc.hpp"
#include "cfmimo/list_detector.hpp"

namespace cfmimo {

enum class DetectorKind { Mmse, SoftIc, List, Genie };

const char* detector_name(DetectorKind k);
std::optional<DetectorKind> detector_from_name(const std::string& name);

/// Scalar AWGN abstraction of one UE's filter output: u = omega * a + z with
/// a the unit-energy symbol, omega the filter's complex gain on it and z
/// zero-mean noise of variance kappa2.
struct EffectiveAwgn {
  Cx omega{0.0, 0.0};
  double kappa2 = 0.0;
};

struct EffectiveAwgnOptions {
  // Adds the residual multiuser term sum_{m!=k} delta_m |w^H g_m|^2 to
  // kappa2. Off by default: the baseline variance model counts estimation
  // error and thermal noise only.
  bool include_residual_mui = false;
  VecR delta_pow;  // required when include_residual_mui is set
};

EffectiveAwgn effective_channel(int ue, const VecC& w,
                                const ChannelEstimate& est,
                                const SelectionMask& mask, const VecR& rho,
                                double sigma2,
                                const EffectiveAwgnOptions& opts = {});

/// Detector extrinsic LLRs for one symbol: log-domain marginalization of
/// f(u|s) ~ exp(-|u - omega*s|^2 / kappa2) against the bit-factorized priors,
/// minus the fed-back prior of the bit itself. prior_llr = nullptr means
/// uniform priors with nothing to subtract.
void extrinsic_llr(Cx u, const EffectiveAwgn& eff, const double* prior_llr,
                   const Constellation& cons, double* out);

struct FrameInput {
  const MatC* y = nullptr;  // (N*L) x T received block
  const ChannelEstimate* est = nullptr;
  const SelectionMask* mask = nullptr;
  VecR rho;
  double sigma2 = 0.0;
  const Constellation* cons = nullptr;
  const LdpcCode* code = nullptr;
  const MatC* true_unit_syms = nullptr;  // K x T, required for the genie path
};

struct IddOptions {
  DetectorKind kind = DetectorKind::SoftIc;
  int outer_iters = 3;
  int inner_iters = 10;
  SacConfig sac;
  bool kappa_include_mui = false;
};

struct IddIterationSnapshot {
  std::vector<std::vector<std::uint8_t>> msg_bits;  // [ue][bit]
  std::vector<bool> parity_ok;                      // per UE
};

struct IddResult {
  std::vector<IddIterationSnapshot> iterations;
  int early_exit_iter = -1;  // first iteration with all parity checks met
};

/// Outer detection/decoding exchange. Iteration 1 always runs with uniform
/// priors; afterwards the decoder extrinsic feeds the symbol statistics and
/// the filters are rebuilt. Once every UE satisfies parity the remaining
/// snapshots repeat the converged decisions.
IddResult idd_loop(const FrameInput& frame, const IddOptions& opts);

}  // namespace cfmimo
