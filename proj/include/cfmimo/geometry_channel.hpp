#pragma once

#include <cstdint>
#include <vector>

#include "cfmimo/linalg.hpp"

namespace cfmimo {

/// Access point and user placement on a square service area.
/// Antenna stacking convention: the receive vector index for antenna n of
/// AP l is l*N + n (0-based), so AP blocks are contiguous.
struct NetworkGeometry {
  double area_side_m = 0.0;  // D
  int num_aps = 0;           // L
  int antennas_per_ap = 0;   // N
  int num_ues = 0;           // K
  double ap_height_m = 10.0;
  MatR ap_xy;  // L x 2
  MatR ue_xy;  // K x 2

  int total_antennas() const { return num_aps * antennas_per_ap; }
};

struct GeometryConfig {
  double area_side_m = 1000.0;
  int num_aps = 32;
  int antennas_per_ap = 1;
  int num_ues = 8;
  double ap_height_m = 10.0;
};

/// Distance/shadowing channel-gain model. The dB gain at distance d is
/// intercept_db - slope_db * log10(d / 1 m) + shadow, with d clamped to
/// at least min_distance_m.
struct PathlossModel {
  double intercept_db = -30.5;
  double slope_db = 36.7;
  double shadow_sigma_db = 4.0;
  double min_distance_m = 1.0;
};

struct LargeScaleCoefficients {
  MatR beta;       // L x K, linear scale
  MatR shadow_db;  // L x K
};

/// Per-link N x N spatial correlation matrices, trace(omega)/N = beta.
struct SpatialCorrelation {
  int num_aps = 0;
  int num_ues = 0;
  int antennas_per_ap = 0;
  std::vector<MatC> omega;  // index k * L + l

  const MatC& block(int ue, int ap) const { return omega[ue * num_aps + ap]; }
  MatC& block(int ue, int ap) { return omega[ue * num_aps + ap]; }
  double beta(int ue, int ap) const {
    return block(ue, ap).real().trace() / antennas_per_ap;
  }
};

/// One coherence-block draw of the full channel matrix. Column k stacks the
/// per-AP channel vectors of UE k.
struct ChannelRealization {
  MatC g;  // (N*L) x K
};

NetworkGeometry place_network(std::uint64_t seed, const GeometryConfig& cfg);

/// 3D distance between UE k and AP l (includes the AP height offset).
double link_distance_m(const NetworkGeometry& geo, int ue, int ap);

double pathloss_db(double distance_m, double shadow_db,
                   const PathlossModel& model = {});

LargeScaleCoefficients make_large_scale(const NetworkGeometry& geo,
                                        std::uint64_t seed,
                                        const PathlossModel& model = {});

/// Exponential correlation: omega = beta * R with R[m][n] = r^|m-n|.
/// r = 0 gives beta * I; N = 1 gives the scalar beta.
MatC correlation_matrix(double beta, int antennas, double r);

SpatialCorrelation make_spatial_correlation(const LargeScaleCoefficients& ls,
                                            int antennas_per_ap, double r);

ChannelRealization draw_channel(const SpatialCorrelation& corr,
                                std::uint64_t seed);

}  // namespace cfmimo
