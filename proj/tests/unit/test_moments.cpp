#include <gtest/gtest.h>

#include <cmath>

#include "gdesign/dense.hpp"
#include "gdesign/errors.hpp"
#include "gdesign/moments.hpp"

using namespace gdesign;

TEST(Moments, IdentityPerturbationHasZeroVariance) {
  const auto g = GroupSpec::orthogonal(3);
  const QubitSet region{0, 1};
  const auto e = mc_second_moment_trace(g, Operator::Identity(8, 8), SwapRegionTag{region}, 50, 1);
  EXPECT_NEAR(e.mean, 4.0 * 2.0 * 2.0, 1e-10);
  EXPECT_LT(e.std_error, 1e-12);
}

TEST(Moments, SwapShortcutMatchesDenseObservable) {
  const auto g = GroupSpec::unitary(2);
  const Operator v = to_dense(PauliString::parse("ZI"));
  const QubitSet region{0};
  const auto fast = mc_second_moment_trace(g, v, SwapRegionTag{region}, 200, 5);
  const auto dense = mc_second_moment_trace(g, v, swap_region(region, 2), 200, 5);
  EXPECT_NEAR(fast.mean, dense.mean, 1e-10);
}

TEST(Moments, OrthogonalSecondMomentMatchesClosedForm) {
  // d d_Lbar p with p = 9/35 at d = 8, d_L = 4
  const auto g = GroupSpec::orthogonal(3);
  const auto e = mc_second_moment_trace(g, to_dense(PauliString::parse("ZII")), SwapRegionTag{QubitSet{0, 1}},
                                        20000, 7);
  EXPECT_TRUE(e.within(8.0 * 2.0 * 9.0 / 35.0)) << e.mean << " +- " << e.std_error;
}

TEST(Moments, MatchgateSecondMomentMatchesComponentFraction) {
  const int n = 4;
  const auto g = GroupSpec::matchgate(n);
  const auto v = to_dense(PauliString::single(n, n / 2 - 1, 'X'));
  const double r = (n + 1.0) / (2.0 * (2 * n - 1));
  const auto e = mc_second_moment_trace(g, v, SwapRegionTag{QubitSet{0, 1, 2}}, 20000, 8);
  EXPECT_TRUE(e.within(16.0 * 2.0 * r)) << e.mean << " +- " << e.std_error;
}

TEST(Moments, StandardErrorHalvesWithFourTimesSamples) {
  const auto g = GroupSpec::unitary(2);
  const Operator v = to_dense(PauliString::parse("ZI"));
  const auto a = mc_second_moment_trace(g, v, SwapRegionTag{QubitSet{0}}, 4000, 9);
  const auto b = mc_second_moment_trace(g, v, SwapRegionTag{QubitSet{0}}, 16000, 9);
  EXPECT_NEAR(b.std_error / a.std_error, 0.5, 0.1);
}

TEST(Moments, WeingartenCoefficientValues) {
  const auto o = weingarten_coefficients(FormKind::orthogonal, 4);
  EXPECT_EQ(o.alpha_exact, "-1/9");
  EXPECT_EQ(o.beta_exact, "2/9");
  EXPECT_EQ(o.gamma_exact, "2/9");
  const auto s = weingarten_coefficients(FormKind::symplectic, 4);
  EXPECT_EQ(s.alpha_exact, "-1/5");
  EXPECT_EQ(s.beta_exact, "2/5");
  EXPECT_EQ(s.gamma_exact, "-2/5");
  const auto s8 = weingarten_coefficients(FormKind::symplectic, 8);
  EXPECT_EQ(s8.alpha_exact, "-1/27");
  EXPECT_THROW(weingarten_coefficients(FormKind::symplectic, 3), ValidationError);
}

TEST(Moments, WeingartenReconstructionIsExactProjection) {
  // The reconstruction must reproduce Tr[E], Tr[E S] and Tr[E d|Psi><Psi|] exactly.
  for (auto kind : {FormKind::orthogonal, FormKind::symplectic}) {
    const int n = 2;
    const auto g = kind == FormKind::orthogonal ? GroupSpec::orthogonal(n) : GroupSpec::symplectic(n);
    const Operator e = weingarten_reconstruction(kind, *g.form);
    const Operator s = swap_region(QubitSet::all(n), n);
    const StateVector psi = invariant_state(*g.form);
    EXPECT_NEAR(std::abs(e.trace()), 0.0, 1e-12);
    EXPECT_NEAR((e * s).trace().real(), 4.0, 1e-12);
    EXPECT_NEAR(psi.dot(e * psi).real(), 1.0, 1e-12);
  }
}

TEST(Moments, WeingartenMonteCarloAgreement) {
  for (auto kind : {FormKind::orthogonal, FormKind::symplectic}) {
    const auto c = weingarten_check(kind, 2, 20000, 11);
    EXPECT_TRUE(c.pass) << "outliers " << c.outliers << " max_z " << c.max_z;
    EXPECT_EQ(c.entries, 2u * 256u);
  }
}

TEST(Moments, QuadraticBasisMatchgate) {
  const int n = 2;
  const auto g = GroupSpec::matchgate(n);
  const auto b = quadratic_symmetry_basis(*g.generators, g.linear_symmetries);
  EXPECT_EQ(b.labels.size(), 2 * b.components.size());
  EXPECT_LT(b.max_gram_error, 1e-12);
  EXPECT_EQ(b.degenerate_count(), 0u);
  // Dense Gram check
  for (std::size_t a = 0; a < b.labels.size(); a += 3)
    for (std::size_t c = 0; c < b.labels.size(); c += 2) {
      const Operator qa = quadratic_basis_element(b, *g.generators, a);
      const Operator qc = quadratic_basis_element(b, *g.generators, c);
      EXPECT_NEAR(std::abs((qa.adjoint() * qc).trace() - (a == c ? 1.0 : 0.0)), 0.0, 1e-12);
    }
}

TEST(Moments, QuadraticOverlapsAgreeWithDense) {
  const auto g = GroupSpec::matchgate(2);
  const auto b = quadratic_symmetry_basis(*g.generators, g.linear_symmetries);
  Rng rng(12);
  const Operator u = sample_haar(g, rng);
  const Operator w = u * to_dense(PauliString::parse("XI")) * u.adjoint();
  const auto ov = quadratic_overlaps(b, *g.generators, w);
  for (std::size_t a = 0; a < b.labels.size(); ++a) {
    const Operator q = quadratic_basis_element(b, *g.generators, a);
    EXPECT_LT(std::abs(ov[a] - (q.adjoint() * kron(w, w)).trace()), 1e-10);
  }
}

TEST(Moments, HaarMomentLivesOnOneBasisElement) {
  const auto g = GroupSpec::matchgate(2);
  const auto b = quadratic_symmetry_basis(*g.generators, g.linear_symmetries);
  const PauliString p = PauliString::parse("XI");
  const Operator pd = to_dense(p);
  const std::size_t samples = 20000;
  std::vector<std::vector<double>> re(b.labels.size(), std::vector<double>(samples));
  std::vector<std::vector<double>> im = re;
  parallel_for(samples, [&](std::size_t i) {
    Rng rng = Rng::stream(13, i);
    const Operator u = sample_haar(g, rng);
    const auto ov = quadratic_overlaps(b, *g.generators, u * pd * u.adjoint());
    for (std::size_t a = 0; a < ov.size(); ++a) {
      re[a][i] = ov[a].real();
      im[a][i] = ov[a].imag();
    }
  });
  const auto comp = component(p, *g.generators);
  for (std::size_t a = 0; a < b.labels.size(); ++a) {
    const auto& l = b.labels[a];
    const bool home = l.j == 0 && comp.contains(l.representative);
    const double expect = home ? 4.0 / std::sqrt(static_cast<double>(l.component_size)) : 0.0;
    EXPECT_TRUE(estimate(re[a]).within(expect)) << a << " " << estimate(re[a]).mean;
    EXPECT_TRUE(estimate(im[a]).within(0.0)) << a;
  }
}

TEST(Moments, SpreadUniformityMatchgate) {
  const auto g = GroupSpec::matchgate(3);
  const auto s = haar_spread_uniformity(g, PauliString::parse("ZII"), 20000, 14);
  EXPECT_EQ(s.vertices.size(), 15u);
  EXPECT_NEAR(s.predicted, 1.0 / 15.0, 1e-15);
  EXPECT_EQ(s.outliers, 0u);
  EXPECT_LT(s.max_off_component_mass, 1e-20);
  EXPECT_LT(s.max_total_mass_error, 1e-10);
}

TEST(Moments, FrobeniusSchurIndicators) {
  const std::size_t m = 20000;
  EXPECT_TRUE(frobenius_schur(GroupSpec::unitary(2), std::nullopt, m, 15).within(0.0));
  EXPECT_TRUE(frobenius_schur(GroupSpec::orthogonal(2), std::nullopt, m, 16).within(1.0));
  EXPECT_TRUE(frobenius_schur(GroupSpec::symplectic(2), std::nullopt, m, 17).within(-1.0));
  EXPECT_TRUE(frobenius_schur(GroupSpec::matchgate(2), even_parity_projector(2), m, 18).within(-1.0));
  EXPECT_TRUE(frobenius_schur(GroupSpec::matchgate(4), even_parity_projector(4), m, 19).within(1.0));
}

TEST(Moments, CliffordFrobeniusSchurExactAndSampled) {
  const double exact = frobenius_schur_clifford_exact(1);
  EXPECT_NEAR(exact, 0.0, 1e-12);
  EXPECT_TRUE(frobenius_schur(GroupSpec::clifford(1), std::nullopt, 20000, 20).within(exact));
}

TEST(Moments, CommutantDimensions) {
  EXPECT_TRUE(mixed_unitary_commutant_dimension(HaarUnitarySource{4, 50000, 21}).within(2.0));
  EXPECT_NEAR(mixed_unitary_commutant_dimension(CliffordEnumeration{1}).mean, 2.0, 1e-10);
  EXPECT_NEAR(mixed_unitary_commutant_dimension(CliffordEnumeration{2}).mean, 2.0, 1e-10);
  EXPECT_NEAR(mixed_unitary_commutant_dimension(PauliEnumeration{1}).mean, 4.0, 1e-12);
  EXPECT_NEAR(mixed_unitary_commutant_dimension(PauliEnumeration{2}).mean, 16.0, 1e-12);
}

TEST(Moments, MixedUnitaryFs) {
  EXPECT_TRUE(mixed_unitary_fs(4, 20000, 22).within(2.0));
  EXPECT_TRUE(mixed_unitary_fs(8, 20000, 23).within(2.0));
  EXPECT_NEAR(std::norm(Operator::Identity(4, 4).trace()), 16.0, 0);
}

TEST(Moments, DeterministicAcrossThreadCounts) {
  const auto g = GroupSpec::symplectic(3);
  const Operator v = to_dense(PauliString::parse("IZI"));
  set_max_threads(1);
  const auto a = mc_second_moment_trace(g, v, SwapRegionTag{QubitSet{0, 1}}, 1000, 24);
  const auto wa = weingarten_check(FormKind::symplectic, 2, 300, 25);
  set_max_threads(4);
  const auto b = mc_second_moment_trace(g, v, SwapRegionTag{QubitSet{0, 1}}, 1000, 24);
  const auto wb = weingarten_check(FormKind::symplectic, 2, 300, 25);
  set_max_threads(0);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(wa.max_abs_dev, wb.max_abs_dev);
}
