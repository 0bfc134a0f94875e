#include <cmath>

#include "cfmimo/list_detector.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cfmimo;
using namespace cfmimo::testutil;

namespace {

struct Fixture {
  ChannelEstimate est;
  SelectionMask mask;
  Constellation cons = make_qpsk();
  VecR rho;
  double sigma2 = 0.0;
  std::vector<VecC> filters;
  std::vector<int> order;
  VecC y;
};

Fixture make_fixture(Rng& rng, int num_aps, int num_ues, double sigma2,
                     bool all_aps = true) {
  Fixture f;
  f.est = random_estimate(rng, num_aps, 1, num_ues, 0.03);
  f.mask = all_aps ? all_aps_mask(num_aps, 1, num_ues)
                   : random_mask(rng, num_aps, 1, num_ues);
  f.rho = VecR::Constant(num_ues, 1.0);
  f.sigma2 = sigma2;
  f.filters.resize(num_ues);
  for (int k = 0; k < num_ues; ++k)
    f.filters[k] = mmse_soft_ic_filter(k, f.est, f.mask, no_prior_profile(f.rho), sigma2);
  f.order = detection_order(f.est, f.mask);

  VecC syms(num_ues);
  for (int k = 0; k < num_ues; ++k) syms[k] = f.cons.points[rng.uniform_int(4)];
  f.y = f.est.g_hat * syms;
  for (int i = 0; i < f.y.size(); ++i)
    f.y[i] += std::sqrt(sigma2) * rng.cnormal();
  return f;
}

double trajectory_residual(const Fixture& f, const VecC& phi, int ue) {
  return apply_selection(f.mask, ue, f.y - f.est.g_hat * phi).squaredNorm();
}

}  // namespace

TEST_SUITE_BEGIN("list_detector");

TEST_CASE("reliability test distances") {
  const Constellation cons = make_qpsk();

  const SacDecision on_point = sac_reliability(cons.points[2], cons, 0.38);
  CHECK(on_point.d == 0.0);
  CHECK(on_point.nearest == 2);
  CHECK(on_point.reliable);

  // the origin sits one unit away from every unit-energy QPSK point
  const SacDecision origin = sac_reliability(Cx(0, 0), cons, 0.38);
  CHECK(origin.d == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_FALSE(origin.reliable);

  const double inf = std::numeric_limits<double>::infinity();
  CHECK(sac_reliability(Cx(0, 0), cons, inf).reliable);
  CHECK(sac_reliability(Cx(5, -7), cons, inf).reliable);
}

TEST_CASE("detection order ranks by masked estimate strength") {
  ChannelEstimate est;
  est.num_aps = 2;
  est.antennas_per_ap = 1;
  est.g_hat.resize(2, 3);
  est.g_hat << Cx(3, 0), Cx(1, 0), Cx(2, 0),
               Cx(0, 0), Cx(0, 0), Cx(2, 0);
  est.err_cov.assign(6, MatC::Zero(1, 1));
  const SelectionMask all = all_aps_mask(2, 1, 3);
  CHECK(detection_order(est, all) == std::vector<int>{0, 2, 1});

  // masking AP 0 away from UE 0 demotes it
  SelectionMask mask = all;
  mask.serve[0][0] = false;
  CHECK(detection_order(est, mask) == std::vector<int>{2, 1, 0});
}

TEST_CASE("last-layer expansion needs no completion") {
  Rng rng(301);
  Fixture f = make_fixture(rng, 4, 3, 0.1);
  LayerState state;
  state.y = f.y;
  state.y_check = f.y;
  state.hard = VecC::Zero(3);
  state.u = VecC::Zero(3);
  state.sbar_pow = VecC::Zero(3);
  state.order = f.order;
  state.pos = 2;
  state.hard[f.order[0]] = f.cons.points[1];
  state.hard[f.order[1]] = f.cons.points[2];

  const SelectionVector sv = expand_candidate(3, state, f.filters, f.est, f.mask, f.cons, f.rho);
  CHECK(sv.phi[f.order[0]] == state.hard[f.order[0]]);
  CHECK(sv.phi[f.order[1]] == state.hard[f.order[1]]);
  CHECK(sv.phi[f.order[2]] == f.cons.points[3]);
}

TEST_CASE("completions match an independent re-detection") {
  Rng rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    Fixture f = make_fixture(rng, 4, 3, 0.05, trial % 2 == 0);
    LayerState state;
    state.y = f.y;
    state.y_check = f.y;
    state.hard = VecC::Zero(3);
    state.u = VecC::Zero(3);
    state.sbar_pow = VecC::Zero(3);
  state.order = f.order;
    state.pos = 0;

    const int cand = static_cast<int>(rng.uniform_int(4));
    const SelectionVector sv =
        expand_candidate(cand, state, f.filters, f.est, f.mask, f.cons, f.rho);

    // brute-force recomputation of the remaining layers
    VecC phi = VecC::Zero(3);
    phi[f.order[0]] = std::sqrt(f.rho[f.order[0]]) * f.cons.points[cand];
    VecC residual = f.y - f.est.g_hat.col(f.order[0]) * phi[f.order[0]];
    for (int p = 1; p < 3; ++p) {
      const int q = f.order[p];
      const Cx u = f.filters[q].dot(residual);
      const Cx gain = std::sqrt(f.rho[q]) * f.filters[q].dot(f.est.g_hat.col(q));
      phi[q] = std::sqrt(f.rho[q]) * f.cons.points[f.cons.nearest(u / gain)];
      residual -= f.est.g_hat.col(q) * phi[q];
    }
    CHECK((sv.phi - phi).norm() < 1e-12);
  }
}

TEST_CASE("ML selection picks the smallest residual, ties to the first") {
  Rng rng(305);
  Fixture f = make_fixture(rng, 4, 2, 0.2);

  SelectionVector a, b;
  a.phi = VecC::Zero(2);
  a.u = VecC::Zero(2);
  b = a;
  a.phi << f.cons.points[0], f.cons.points[1];
  b.phi << f.cons.points[2], f.cons.points[3];

  // craft y so candidate b matches exactly
  f.y = f.est.g_hat * b.phi;
  CHECK(ml_select({a, b}, f.y, f.est, f.mask, 0) == 1);
  CHECK(trajectory_residual(f, b.phi, 0) < 1e-20);

  CHECK(ml_select({a}, f.y, f.est, f.mask, 0) == 0);
  CHECK(ml_select({b, b, a}, f.y, f.est, f.mask, 0) == 0);  // tie -> lowest
  CHECK_THROWS(ml_select({}, f.y, f.est, f.mask, 0));
}

TEST_CASE("an infinite threshold reproduces the plain layered pass") {
  Rng rng(307);
  SacConfig sac;
  sac.d_th = std::numeric_limits<double>::infinity();
  sac.list_size = 4;
  for (int trial = 0; trial < 1000; ++trial) {
    Fixture f = make_fixture(rng, 4, 3, 0.05 + 0.4 * rng.uniform(), trial % 2 == 0);
    const SicTrajectory plain =
        soft_ic_sequential_detect(f.y, f.filters, f.est, f.mask, f.cons, f.rho, f.order, VecC::Zero(f.rho.size()));
    const SicTrajectory list =
        list_detect(f.y, f.filters, f.est, f.mask, f.cons, f.rho, f.order, sac, VecC::Zero(f.rho.size()));
    CHECK(plain.u == list.u);
    CHECK(plain.hard == list.hard);
  }
}

TEST_CASE("filter construction count stays at one per UE regardless of branching") {
  Rng rng(309);
  SacConfig forced;
  forced.d_th = 0.0;  // branch at the first layer of every frame
  forced.list_size = 4;

  reset_filter_build_count();
  Fixture f = make_fixture(rng, 4, 3, 0.3);
  CHECK(filter_build_count() == 3);

  for (int frame = 0; frame < 200; ++frame) {
    VecC y(4);
    for (int i = 0; i < 4; ++i) y[i] = rng.cnormal();
    (void)list_detect(y, f.filters, f.est, f.mask, f.cons, f.rho, f.order, forced, VecC::Zero(f.rho.size()));
  }
  CHECK(filter_build_count() == 3);
}

TEST_CASE("forced branching still emits valid constellation decisions") {
  Rng rng(311);
  SacConfig forced;
  forced.d_th = 0.0;
  forced.list_size = 4;
  Fixture f = make_fixture(rng, 5, 3, 0.5);
  const SicTrajectory traj =
      list_detect(f.y, f.filters, f.est, f.mask, f.cons, f.rho, f.order, forced, VecC::Zero(f.rho.size()));
  for (int k = 0; k < 3; ++k) {
    double best = 1e9;
    for (int s = 0; s < 4; ++s)
      best = std::min(best, std::abs(traj.hard[k] - std::sqrt(f.rho[k]) * f.cons.points[s]));
    CHECK(best < 1e-14);
  }
  // determinism
  const SicTrajectory again =
      list_detect(f.y, f.filters, f.est, f.mask, f.cons, f.rho, f.order, forced, VecC::Zero(f.rho.size()));
  CHECK(traj.hard == again.hard);
  CHECK(traj.u == again.u);
}

TEST_CASE("list output never has a larger residual than the plain pass") {
  Rng rng(313);
  SacConfig sac;
  sac.d_th = 0.25;
  sac.list_size = 4;  // the full alphabet: the plain slice is always in the list
  int branched = 0;
  for (int trial = 0; trial < 300; ++trial) {
    Fixture f = make_fixture(rng, 4, 3, 0.2 + 0.6 * rng.uniform(), trial % 2 == 0);
    const SicTrajectory plain =
        soft_ic_sequential_detect(f.y, f.filters, f.est, f.mask, f.cons, f.rho, f.order, VecC::Zero(f.rho.size()));
    const SicTrajectory list =
        list_detect(f.y, f.filters, f.est, f.mask, f.cons, f.rho, f.order, sac, VecC::Zero(f.rho.size()));
    if (plain.hard != list.hard) ++branched;

    // residual measured at the first branch layer (order position of the
    // first disagreement or any layer when equal)
    int ue = f.order[0];
    for (int pos = 0; pos < 3; ++pos)
      if (list.hard[f.order[pos]] != plain.hard[f.order[pos]]) {
        ue = f.order[pos];
        break;
      }
    CHECK(trajectory_residual(f, list.hard, ue) <=
          trajectory_residual(f, plain.hard, ue) + 1e-12);
  }
  CHECK(branched > 0);  // the stress setting actually exercises branching
}

TEST_SUITE_END();
