#include <gtest/gtest.h>

#include <cmath>

#include "gdesign/cgraph.hpp"
#include "gdesign/dense.hpp"
#include "gdesign/errors.hpp"
#include "gdesign/experiments.hpp"

using namespace gdesign;

namespace {
ExperimentConfig cfg(ExperimentKind e, GroupKind g, int n, std::size_t m, std::uint64_t seed) {
  ExperimentConfig c;
  c.experiment = e;
  c.group = g;
  c.n = n;
  c.samples = m;
  c.seed = seed;
  c.full_generators = e == ExperimentKind::gate_count;
  return c;
}
}  // namespace

TEST(Experiments, SpreadMassTrivialCases) {
  const auto p = PauliString::parse("XZI");
  const Operator id = Operator::Identity(8, 8);
  EXPECT_NEAR(pauli_spread_mass(id, p, {p, PauliString::parse("ZZZ")}), 1.0, 1e-15);
  EXPECT_NEAR(pauli_spread_mass(id, p, {PauliString::parse("ZZZ")}), 0.0, 1e-15);
}

TEST(Experiments, SpreadMassConfinedToComponent) {
  const auto g = GroupSpec::matchgate(3, true);
  const auto p = PauliString::parse("XII");
  const auto comp = component(p, *g.generators);
  std::vector<PauliString> members;
  for (auto v : comp.members()) members.push_back(decode_vertex(v, 3));
  Rng rng(3);
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(pauli_spread_mass(sample_haar(g, rng), p, members), 1.0, 1e-12);
}

TEST(Experiments, PovmProbabilityMatchesSwapTrace) {
  // p = Tr[(W (x) W) S_L] / (d d_Lbar) with W = U V U^dag.
  for (auto kind : {GroupKind::orthogonal, GroupKind::symplectic, GroupKind::matchgate}) {
    const auto g = GroupSpec::make(kind, 3);
    const auto v = PauliString::parse("IZI");
    const QubitSet region{0, 1};
    Rng rng(4);
    for (int i = 0; i < 3; ++i) {
      const Operator u = sample_haar(g, rng);
      const Operator w = u * to_dense(v) * u.adjoint();
      const double oracle = (kron(w, w) * swap_region(region, 3)).trace().real() / (8.0 * 2.0);
      EXPECT_NEAR(depth_povm_probability(u, v, *g.form, region), oracle, 1e-12) << to_string(kind);
    }
    EXPECT_NEAR(depth_povm_probability(Operator::Identity(8, 8), v, *g.form, region), 1.0, 1e-12);
  }
}

TEST(Experiments, MatchgateDefaults) {
  const auto c = default_config(ExperimentKind::depth, GroupKind::matchgate, 4);
  EXPECT_EQ(*c.perturbation, PauliString::parse("IXII"));
  EXPECT_EQ(*c.depth, 1);
  EXPECT_EQ(*c.region, (QubitSet{0, 1, 2}));
  EXPECT_THROW(default_config(ExperimentKind::depth, GroupKind::matchgate, 5), ValidationError);
}

TEST(Experiments, MatchgateDepthExperiment) {
  const auto r = run_depth_discrimination(cfg(ExperimentKind::depth, GroupKind::matchgate, 4, 4000, 7));
  EXPECT_EQ(r.lightcone_violations, 0u);
  EXPECT_EQ(r.exactness_failures, 0u);
  EXPECT_GT(r.min_shallow_probability, 1.0 - 1e-9);
  ASSERT_TRUE(r.analytic_p_haar);
  EXPECT_EQ(to_string(*r.analytic_p_haar), "5/14");
  EXPECT_EQ(to_string(*r.analytic_bound), "9/7");
  EXPECT_TRUE(r.p_haar.within(5.0 / 14)) << r.p_haar.mean << " +- " << r.p_haar.std_error;
  EXPECT_NEAR(r.mc_bound, 2 * (r.p_shallow.mean - r.p_haar.mean), 1e-15);
  EXPECT_LE(r.mc_bound, 2.0);
}

TEST(Experiments, OrthogonalDepthExperiment) {
  const auto r = run_depth_discrimination(cfg(ExperimentKind::depth, GroupKind::orthogonal, 3, 4000, 8));
  EXPECT_EQ(*r.config.region, (QubitSet{0, 1}));
  EXPECT_EQ(r.exactness_failures, 0u);
  EXPECT_EQ(to_string(*r.analytic_p_haar), "9/35");
  EXPECT_EQ(to_string(*r.analytic_bound), "52/35");
  EXPECT_TRUE(r.p_haar.within(9.0 / 35)) << r.p_haar.mean << " +- " << r.p_haar.std_error;
}

TEST(Experiments, SymplecticDepthExperiment) {
  const auto r = run_depth_discrimination(cfg(ExperimentKind::depth, GroupKind::symplectic, 3, 4000, 9));
  EXPECT_EQ(*r.config.perturbation, PauliString::parse("IZI"));
  EXPECT_EQ(*r.config.depth, 1);
  EXPECT_EQ(r.lightcone_violations, 0u);
  EXPECT_EQ(r.exactness_failures, 0u);
  EXPECT_EQ(to_string(*r.analytic_p_haar), "5/27");
  EXPECT_TRUE(r.p_haar.within(5.0 / 27)) << r.p_haar.mean << " +- " << r.p_haar.std_error;
}

TEST(Experiments, SymplecticAnticommutingPerturbationHasNoClosedForm) {
  auto c = cfg(ExperimentKind::depth, GroupKind::symplectic, 3, 200, 10);
  c.perturbation = PauliString::parse("ZII");
  c.region = QubitSet{0, 1};
  const auto r = run_depth_discrimination(c);
  EXPECT_FALSE(r.analytic_p_haar.has_value());
}

TEST(Experiments, ZeroDepthIsTriviallyExact) {
  for (auto kind : {GroupKind::matchgate, GroupKind::orthogonal, GroupKind::symplectic}) {
    auto c = cfg(ExperimentKind::depth, kind, 4, 50, 11);
    c.perturbation = PauliString::parse("IZII");
    c.region = QubitSet{0, 1, 2};
    c.depth = 0;
    const auto r = run_depth_discrimination(c);
    EXPECT_NEAR(r.p_shallow.mean, 1.0, 1e-12);
    EXPECT_EQ(r.exactness_failures, 0u);
  }
}

TEST(Experiments, DeepCircuitsLeaveTheLightcone) {
  auto c = cfg(ExperimentKind::depth, GroupKind::orthogonal, 3, 50, 12);
  c.depth = 3;
  const auto r = run_depth_discrimination(c);
  EXPECT_EQ(r.lightcone_violations, 50u);
  EXPECT_LT(r.min_shallow_probability, 1.0 - 1e-6);
}

TEST(Experiments, MixedUnitary) {
  const auto r = run_mixed_unitary_discrimination(cfg(ExperimentKind::mixed_unitary, GroupKind::mixed_unitary, 2, 4000, 13));
  EXPECT_EQ(to_string(*r.analytic_p_haar), "1/5");
  EXPECT_TRUE(r.p_haar.within(0.2)) << r.p_haar.mean << " +- " << r.p_haar.std_error;
  const auto r3 = run_mixed_unitary_discrimination(cfg(ExperimentKind::mixed_unitary, GroupKind::mixed_unitary, 3, 500, 14));
  EXPECT_EQ(*r3.config.depth, 1);
  EXPECT_EQ(r3.exactness_failures, 0u);
  EXPECT_EQ(r3.lightcone_violations, 0u);
  EXPECT_GT(r3.min_shallow_probability, 1.0 - 1e-9);
}

TEST(Experiments, GateCountExperiment) {
  const auto r = run_gatecount_discrimination(cfg(ExperimentKind::gate_count, GroupKind::matchgate, 3, 4000, 15));
  EXPECT_EQ(r.ball_size, 10u);
  EXPECT_EQ(r.component_size, 20u);
  EXPECT_GT(r.min_shallow_probability, 1.0 - 1e-9);
  EXPECT_EQ(to_string(*r.analytic_p_haar), "1/2");
  EXPECT_TRUE(r.p_haar.within(0.5)) << r.p_haar.mean << " +- " << r.p_haar.std_error;
}

TEST(Experiments, GateCountSaturatedBall) {
  auto c = cfg(ExperimentKind::gate_count, GroupKind::matchgate, 3, 200, 16);
  c.gates = 3;
  const auto r = run_gatecount_discrimination(c);
  EXPECT_EQ(r.ball_size, r.component_size);
  EXPECT_NEAR(r.p_shallow.mean, 1.0, 1e-12);
  EXPECT_NEAR(r.p_haar.mean, 1.0, 1e-12);
  EXPECT_NEAR(r.mc_bound, 0.0, 1e-11);
}

TEST(Experiments, ShotModeAgreesWithExpectation) {
  auto c = cfg(ExperimentKind::depth, GroupKind::orthogonal, 3, 8000, 17);
  const auto exact = run_depth_discrimination(c);
  c.shot_mode = true;
  const auto shots = run_depth_discrimination(c);
  EXPECT_NEAR(shots.p_shallow.mean, 1.0, 1e-12);
  const double se = std::hypot(shots.p_haar.std_error, exact.p_haar.std_error);
  EXPECT_LT(std::abs(shots.p_haar.mean - exact.p_haar.mean), 5 * se);
  EXPECT_TRUE(shots.p_haar.within(9.0 / 35));
}

TEST(Experiments, Errors) {
  EXPECT_THROW(run_depth_discrimination(cfg(ExperimentKind::depth, GroupKind::unitary, 3, 10, 1)), ValidationError);
  EXPECT_THROW(run_depth_discrimination(cfg(ExperimentKind::depth, GroupKind::custom, 3, 10, 1)), ValidationError);
  auto outside = cfg(ExperimentKind::depth, GroupKind::orthogonal, 3, 10, 1);
  outside.perturbation = PauliString::parse("IIZ");
  outside.region = QubitSet{0, 1};
  EXPECT_THROW(run_depth_discrimination(outside), ValidationError);
  auto full = cfg(ExperimentKind::depth, GroupKind::orthogonal, 3, 10, 1);
  full.region = QubitSet{0, 1, 2};
  EXPECT_THROW(run_depth_discrimination(full), ValidationError);
  EXPECT_THROW(run_depth_discrimination(cfg(ExperimentKind::depth, GroupKind::orthogonal, 9, 10, 1)), BudgetError);
  EXPECT_THROW(parse_experiment_kind("nope"), ValidationError);
}

TEST(Experiments, DeterministicAcrossThreadCounts) {
  const auto c = cfg(ExperimentKind::depth, GroupKind::matchgate, 4, 300, 18);
  set_max_threads(1);
  const auto a = run_depth_discrimination(c);
  set_max_threads(3);
  const auto b = run_depth_discrimination(c);
  set_max_threads(0);
  EXPECT_EQ(a.p_haar.mean, b.p_haar.mean);
  EXPECT_EQ(a.p_haar.std_error, b.p_haar.std_error);
  EXPECT_EQ(a.mc_bound, b.mc_bound);
}
