#include <cmath>

#include "cfmimo/constellation.hpp"
#include "cfmimo/rng.hpp"
#include "doctest.h"

using namespace cfmimo;

namespace {

// direct per-bit evaluation of the prior product, arranged differently from
// the library (exp(x/2) / (2 cosh(x/2)) per factor)
VecR oracle_priors(const double* llr, const Constellation& c) {
  VecR p(c.size());
  for (int s = 0; s < c.size(); ++s) {
    double prob = 1.0;
    for (int l = 0; l < c.bits_per_symbol(); ++l) {
      const double x = (1.0 - 2.0 * c.labels[s][l]) * llr[l];
      prob *= std::exp(x / 2.0) / (2.0 * std::cosh(llr[l] / 2.0));
    }
    p[s] = prob;
  }
  return p;
}

}  // namespace

TEST_SUITE_BEGIN("soft_symbols");

TEST_CASE("QPSK alphabet: zero mean, unit energy, Gray labels") {
  const Constellation c = make_qpsk();
  REQUIRE(c.size() == 4);
  REQUIRE(c.bits_per_symbol() == 2);

  Cx mean(0, 0);
  double energy = 0;
  for (int s = 0; s < 4; ++s) {
    mean += c.points[s];
    energy += std::norm(c.points[s]);
  }
  CHECK(std::abs(mean) < 1e-15);
  CHECK(energy / 4 == doctest::Approx(1.0));

  // labels are unique and the mapping round-trips
  for (int s = 0; s < 4; ++s) {
    CHECK(c.map_bits(c.labels[s].data()) == c.points[s]);
    for (int t = s + 1; t < 4; ++t) CHECK(c.labels[s] != c.labels[t]);
  }
  // bit 0 steers the real part, bit 1 the imaginary part
  const std::uint8_t b00[2] = {0, 0}, b11[2] = {1, 1};
  CHECK(c.map_bits(b00).real() > 0);
  CHECK(c.map_bits(b00).imag() > 0);
  CHECK(c.map_bits(b11).real() < 0);
}

TEST_CASE("zero LLRs give uniform priors, zero mean and full variance") {
  const Constellation c = make_qpsk();
  const double llr[2] = {0.0, 0.0};
  const VecR p = priors_from_llr(llr, c);
  for (int s = 0; s < 4; ++s) CHECK(p[s] == doctest::Approx(0.25).epsilon(1e-15));
  const Cx mean = symbol_mean(p, c);
  CHECK(std::abs(mean) < 1e-15);
  CHECK(symbol_variance(p, mean, c) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("saturated LLRs concentrate on the labeled point") {
  const Constellation c = make_qpsk();
  const double inf = std::numeric_limits<double>::infinity();
  const double llr[2] = {inf, inf};
  const VecR p = priors_from_llr(llr, c);
  int best = 0;
  for (int s = 1; s < 4; ++s)
    if (p[s] > p[best]) best = s;
  CHECK(p[best] > 1.0 - 1e-12);
  CHECK(c.points[best].real() > 0);
  CHECK(c.points[best].imag() > 0);

  // point mass: mean is the point, variance vanishes
  const Cx mean = symbol_mean(p, c);
  CHECK(std::abs(mean - c.points[best]) < 1e-12);
  CHECK(symbol_variance(p, mean, c) < 1e-11);
}

TEST_CASE("prior row for mixed LLRs matches the direct product oracle") {
  const Constellation c = make_qpsk();
  const double llr[2] = {2.0, -1.0};
  const VecR p = priors_from_llr(llr, c);
  const VecR ref = oracle_priors(llr, c);
  CHECK(std::abs(p.sum() - 1.0) < 1e-12);
  for (int s = 0; s < 4; ++s) CHECK(p[s] == doctest::Approx(ref[s]).epsilon(1e-12));

  // mean against the same oracle row and the per-axis tanh closed form
  const Cx mean = symbol_mean(p, c);
  Cx ref_mean(0, 0);
  for (int s = 0; s < 4; ++s) ref_mean += ref[s] * c.points[s];
  CHECK(std::abs(mean - ref_mean) < 1e-14);
  CHECK(mean.real() == doctest::Approx(std::tanh(1.0) / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(mean.imag() == doctest::Approx(std::tanh(-0.5) / std::sqrt(2.0)).epsilon(1e-12));

  double ref_var = 0;
  for (int s = 0; s < 4; ++s) ref_var += ref[s] * std::norm(c.points[s] - ref_mean);
  CHECK(symbol_variance(p, mean, c) == doctest::Approx(ref_var).epsilon(1e-12));
}

TEST_CASE("priors stay row-stochastic and bounded over random LLRs") {
  const Constellation c = make_qpsk();
  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    const double llr[2] = {20.0 * (rng.uniform() - 0.5) * 2,
                           20.0 * (rng.uniform() - 0.5) * 2};
    const VecR p = priors_from_llr(llr, c);
    CHECK(std::abs(p.sum() - 1.0) < 1e-12);
    CHECK(p.minCoeff() >= 0.0);
    const SoftSymbolStats st = soft_stats_from_llr(llr, c);
    CHECK(st.var >= 0.0);
    CHECK(st.var <= c.energy + 1e-12);  // zero-mean unit-energy alphabet
  }
}

TEST_CASE("scaling LLRs sharpens the statistics toward the MAP symbol") {
  const Constellation c = make_qpsk();
  const double base[2] = {0.8, -0.4};
  double prev_var = 2.0;
  for (double t : {1.0, 4.0, 16.0, 64.0}) {
    const double llr[2] = {base[0] * t, base[1] * t};
    const SoftSymbolStats st = soft_stats_from_llr(llr, c);
    CHECK(st.var < prev_var);
    prev_var = st.var;
  }
  const double hard[2] = {base[0] * 1e6, base[1] * 1e6};
  const SoftSymbolStats st = soft_stats_from_llr(hard, c);
  const Cx map_point = c.points[c.nearest(Cx(1.0, -1.0))];
  CHECK(std::abs(st.mean - map_point) < 1e-9);
  CHECK(st.var < 1e-9);
}

TEST_CASE("priors factorize exactly over bit positions") {
  const Constellation c = make_qpsk();
  Rng rng(91);
  for (int i = 0; i < 100; ++i) {
    const double llr[2] = {8.0 * rng.normal(), 8.0 * rng.normal()};
    const VecR p = priors_from_llr(llr, c);
    // bit marginals recombine into the joint row
    double pb0[2] = {0, 0}, pb1[2] = {0, 0};
    for (int s = 0; s < 4; ++s) {
      pb0[c.labels[s][0]] += p[s];
      pb1[c.labels[s][1]] += p[s];
    }
    for (int s = 0; s < 4; ++s)
      CHECK(p[s] == doctest::Approx(pb0[c.labels[s][0]] * pb1[c.labels[s][1]]).epsilon(1e-10));
  }
}

TEST_SUITE_END();
