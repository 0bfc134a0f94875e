#include "cfmimo/geometry_channel.hpp"

#include <cmath>
#include <stdexcept>

#include "cfmimo/rng.hpp"

namespace cfmimo {

namespace {
constexpr std::uint64_t kGeometryTag = 0x67656f6dULL;  // stream tags
constexpr std::uint64_t kShadowTag = 0x73686164ULL;
constexpr std::uint64_t kChannelTag = 0x6368616eULL;
}  // namespace

NetworkGeometry place_network(std::uint64_t seed, const GeometryConfig& cfg) {
  if (cfg.area_side_m <= 0.0) throw std::invalid_argument("zero-area square");
  if (cfg.num_aps < 1) throw std::invalid_argument("no APs");
  if (cfg.num_ues < 1) throw std::invalid_argument("no UEs");
  if (cfg.antennas_per_ap < 1) throw std::invalid_argument("no antennas");

  NetworkGeometry geo;
  geo.area_side_m = cfg.area_side_m;
  geo.num_aps = cfg.num_aps;
  geo.antennas_per_ap = cfg.antennas_per_ap;
  geo.num_ues = cfg.num_ues;
  geo.ap_height_m = cfg.ap_height_m;

  Rng rng(derive_seed(seed, kGeometryTag));
  geo.ap_xy.resize(cfg.num_aps, 2);
  for (int l = 0; l < cfg.num_aps; ++l) {
    geo.ap_xy(l, 0) = rng.uniform() * cfg.area_side_m;
    geo.ap_xy(l, 1) = rng.uniform() * cfg.area_side_m;
  }
  geo.ue_xy.resize(cfg.num_ues, 2);
  for (int k = 0; k < cfg.num_ues; ++k) {
    geo.ue_xy(k, 0) = rng.uniform() * cfg.area_side_m;
    geo.ue_xy(k, 1) = rng.uniform() * cfg.area_side_m;
  }
  return geo;
}

double link_distance_m(const NetworkGeometry& geo, int ue, int ap) {
  const double dx = geo.ap_xy(ap, 0) - geo.ue_xy(ue, 0);
  const double dy = geo.ap_xy(ap, 1) - geo.ue_xy(ue, 1);
  return std::sqrt(dx * dx + dy * dy + geo.ap_height_m * geo.ap_height_m);
}

double pathloss_db(double distance_m, double shadow_db,
                   const PathlossModel& model) {
  const double d = std::max(distance_m, model.min_distance_m);
  return model.intercept_db - model.slope_db * std::log10(d) + shadow_db;
}

LargeScaleCoefficients make_large_scale(const NetworkGeometry& geo,
                                        std::uint64_t seed,
                                        const PathlossModel& model) {
  LargeScaleCoefficients ls;
  ls.beta.resize(geo.num_aps, geo.num_ues);
  ls.shadow_db.resize(geo.num_aps, geo.num_ues);
  Rng rng(derive_seed(seed, kShadowTag));
  for (int l = 0; l < geo.num_aps; ++l) {
    for (int k = 0; k < geo.num_ues; ++k) {
      ls.shadow_db(l, k) = model.shadow_sigma_db * rng.normal();
      const double db =
          pathloss_db(link_distance_m(geo, k, l), ls.shadow_db(l, k), model);
      ls.beta(l, k) = std::pow(10.0, db / 10.0);
    }
  }
  return ls;
}

MatC correlation_matrix(double beta, int antennas, double r) {
  if (beta <= 0.0) throw std::invalid_argument("beta must be positive");
  if (antennas < 1) throw std::invalid_argument("antennas must be >= 1");
  MatC omega(antennas, antennas);
  for (int m = 0; m < antennas; ++m)
    for (int n = 0; n < antennas; ++n)
      omega(m, n) = Cx(beta * std::pow(r, std::abs(m - n)), 0.0);
  return omega;
}

SpatialCorrelation make_spatial_correlation(const LargeScaleCoefficients& ls,
                                            int antennas_per_ap, double r) {
  SpatialCorrelation corr;
  corr.num_aps = static_cast<int>(ls.beta.rows());
  corr.num_ues = static_cast<int>(ls.beta.cols());
  corr.antennas_per_ap = antennas_per_ap;
  corr.omega.resize(static_cast<std::size_t>(corr.num_aps) * corr.num_ues);
  for (int k = 0; k < corr.num_ues; ++k)
    for (int l = 0; l < corr.num_aps; ++l)
      corr.block(k, l) = correlation_matrix(ls.beta(l, k), antennas_per_ap, r);
  return corr;
}

ChannelRealization draw_channel(const SpatialCorrelation& corr,
                                std::uint64_t seed) {
  const int n = corr.antennas_per_ap;
  const int nl = n * corr.num_aps;
  ChannelRealization chan;
  chan.g.resize(nl, corr.num_ues);
  Rng rng(derive_seed(seed, kChannelTag));
  VecC e(n);
  for (int k = 0; k < corr.num_ues; ++k) {
    for (int l = 0; l < corr.num_aps; ++l) {
      for (int i = 0; i < n; ++i) e[i] = rng.cnormal();
      chan.g.block(l * n, k, n, 1) = hermitian_sqrt(corr.block(k, l)) * e;
    }
  }
  return chan;
}

}  // namespace cfmimo
