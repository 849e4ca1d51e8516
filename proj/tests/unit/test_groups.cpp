#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "gdesign/dense.hpp"
#include "gdesign/errors.hpp"
#include "gdesign/groups.hpp"

using namespace gdesign;

namespace {

double diff(const Operator& a, const Operator& b) { return (a - b).cwiseAbs().maxCoeff(); }

// Two-sample Kolmogorov-Smirnov statistic.
double ks_statistic(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double best = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    best = std::max(best, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return best;
}

}  // namespace

TEST(Groups, MatchgateFormsAcrossSizes) {
  for (int n = 2; n <= 8; ++n) {
    const auto s = matchgate_standard_generators(n);
    EXPECT_TRUE(invariant_form_check(matchgate_form_xy(n), s)) << n;
    EXPECT_TRUE(invariant_form_check(matchgate_form_yx(n), s)) << n;
    EXPECT_TRUE(invariant_form_check(matchgate_form_xy(n), matchgate_full_generators(n))) << n;
  }
  EXPECT_EQ(matchgate_form_xy(4).str(), "+XYXY");
  EXPECT_EQ(matchgate_form_yx(3).str(), "+YXY");
}

TEST(Groups, OrthogonalAndSymplecticForms) {
  for (int n = 1; n <= 5; ++n) {
    const auto o = GroupSpec::orthogonal(n);
    EXPECT_TRUE(invariant_form_check(*o.form, *o.generators));
    for (const auto& p : o.generators->generators()) EXPECT_EQ(p.y_count() % 2, 1) << p.str();
    const auto sp = GroupSpec::symplectic(n);
    EXPECT_TRUE(invariant_form_check(*sp.form, *sp.generators));
    EXPECT_EQ(sp.form->symmetry(), FormSymmetry::antisymmetric);
  }
  EXPECT_FALSE(invariant_form_check(BilinearForm::from_pauli(PauliString::identity(2)),
                                    matchgate_standard_generators(2)));
}

TEST(Groups, DenseFormAgreesWithPauliForm) {
  const auto s = GroupSpec::symplectic(3);
  const auto dense = BilinearForm::from_dense(s.form->dense());
  EXPECT_EQ(dense.symmetry(), FormSymmetry::antisymmetric);
  for (const auto& p : two_local_paulis(Adjacency::chain(3)))
    EXPECT_EQ(form_anticondition(dense, p), form_anticondition(*s.form, p)) << p.str();
}

TEST(Groups, InvariantStateOfIdentityIsBell) {
  const auto psi = invariant_state(BilinearForm::from_pauli(PauliString::identity(2)));
  EXPECT_LT((psi - bell_state(2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Groups, InvariantStatesUnderHaarSamples) {
  Rng rng(31);
  for (int n = 2; n <= 3; ++n) {
    std::vector<std::pair<GroupSpec, BilinearForm>> cases = {
        {GroupSpec::matchgate(n), matchgate_form_xy(n)},
        {GroupSpec::matchgate(n), matchgate_form_yx(n)},
        {GroupSpec::orthogonal(n), *GroupSpec::orthogonal(n).form},
        {GroupSpec::symplectic(n), symplectic_form(n)},
    };
    for (const auto& [g, form] : cases) {
      const StateVector psi = invariant_state(form);
      const Operator m = state_to_matrix(psi);
      double worst = 0;
      for (int k = 0; k < 100; ++k) {
        const Operator u = sample_haar(g, rng);
        worst = std::max(worst, diff(u * m * u.transpose(), m));
      }
      EXPECT_LT(worst, 1e-10) << g.name() << " " << form.str() << " n=" << n;
    }
  }
}

TEST(Groups, HaarSamplesAreMembers) {
  Rng rng(32);
  for (int n = 1; n <= 4; ++n)
    for (const auto& g : {GroupSpec::matchgate(n), GroupSpec::orthogonal(n), GroupSpec::symplectic(n),
                          GroupSpec::unitary(n)})
      for (int k = 0; k < 10; ++k) {
        const Operator u = sample_haar(g, rng);
        const auto rep = verify_group_membership(u, g);
        EXPECT_TRUE(rep.ok) << g.name() << " n=" << n << ": " << rep.diagnostic;
      }
  const Operator o = sample_haar(GroupSpec::orthogonal(2), rng);
  EXPECT_LT(o.imag().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Groups, MatchgateAdjointActionReproducesRotation) {
  Rng rng(33);
  for (int k = 0; k < 5; ++k) {
    const auto s = haar_matchgate(3, rng);
    const Eigen::MatrixXcd r = majorana_adjoint_action(s.u, 3);
    EXPECT_LT((r - s.rotation.cast<cplx>()).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(Groups, NonMembersAreRejected) {
  Rng rng(34);
  const Operator u = haar_unitary(4, rng);
  const auto rep = verify_group_membership(u, GroupSpec::orthogonal(2));
  EXPECT_FALSE(rep.ok);
  EXPECT_FALSE(rep.diagnostic.empty());
  EXPECT_FALSE(verify_group_membership(u, GroupSpec::matchgate(2)).ok);
  EXPECT_FALSE(verify_group_membership(u, GroupSpec::clifford(2)).ok);
  EXPECT_FALSE(verify_group_membership(Operator::Identity(8, 8), GroupSpec::unitary(2)).ok);
  Operator scaled = 2.0 * Operator::Identity(4, 4);
  EXPECT_FALSE(verify_group_membership(scaled, GroupSpec::unitary(2)).ok);
}

TEST(Groups, IdentityAndHadamardMembership) {
  for (const auto& g : {GroupSpec::matchgate(2), GroupSpec::orthogonal(2), GroupSpec::symplectic(2),
                        GroupSpec::unitary(2), GroupSpec::mixed_unitary(2), GroupSpec::clifford(2)}) {
    const auto d = static_cast<Eigen::Index>(g.dimension());
    EXPECT_TRUE(verify_group_membership(Operator::Identity(d, d), g).ok) << g.name();
  }
  Operator h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  EXPECT_TRUE(verify_group_membership(kron(h, h), GroupSpec::orthogonal(2)).ok);
}

TEST(Groups, MixedUnitaryBlockStructure) {
  Rng rng(35);
  const auto g = GroupSpec::mixed_unitary(2);
  const Operator u = sample_haar(g, rng);
  EXPECT_EQ(u.rows(), 4);
  EXPECT_TRUE(verify_group_membership(mixed_unitary_element(u), g).ok);
  EXPECT_FALSE(verify_group_membership(kron(u, haar_unitary(4, rng)), g).ok);
}

TEST(Groups, CliffordEnumeration) {
  const auto& c1 = enumerate_clifford(1);
  EXPECT_EQ(c1.size(), 24u);
  for (const auto& u : c1) EXPECT_TRUE(verify_group_membership(u, GroupSpec::clifford(1)).ok);
  const auto& c2 = enumerate_clifford(2);
  EXPECT_EQ(c2.size(), 11520u);
  for (std::size_t k = 0; k < c2.size(); k += 97) EXPECT_TRUE(verify_group_membership(c2[k], GroupSpec::clifford(2)).ok);
  EXPECT_THROW(enumerate_clifford(3), ValidationError);
}

TEST(Groups, ShallowSamples) {
  Rng rng(36);
  const auto chain4 = Adjacency::chain(4);
  EXPECT_LT(diff(sample_shallow(GroupSpec::unitary(4), 0, chain4, rng).u, Operator::Identity(16, 16)), 1e-15);
  const auto mg = GroupSpec::matchgate(4);
  for (int k = 0; k < 5; ++k) {
    const auto s = sample_shallow(mg, 1, chain4, rng);
    EXPECT_TRUE(verify_group_membership(s.u, mg).ok);
    EXPECT_EQ(s.layout.layers.size(), 1u);
  }
  const auto o = sample_shallow(GroupSpec::orthogonal(4), 2, chain4, rng);
  EXPECT_TRUE(verify_group_membership(o.u, GroupSpec::orthogonal(4)).ok);
  EXPECT_LT(o.u.imag().cwiseAbs().maxCoeff(), 1e-15);
  for (int n = 2; n <= 4; ++n) {
    const auto sp = GroupSpec::symplectic(n);
    const auto s = sample_shallow(sp, 3, Adjacency::chain(n), rng);
    EXPECT_TRUE(verify_group_membership(s.u, sp).ok) << n;
    const auto rev = sample_shallow(sp, 2, Adjacency::from_edges(n, {{1, 0}}), rng);
    EXPECT_TRUE(verify_group_membership(rev.u, sp).ok) << n;
  }
  const auto cl = sample_shallow(GroupSpec::clifford(3), 2, Adjacency::chain(3), rng);
  EXPECT_EQ(cl.u.rows(), 8);
  EXPECT_THROW(sample_shallow(mg, 1, Adjacency::from_edges(4, {{0, 2}}), rng), ValidationError);
}

TEST(Groups, Lightcones) {
  EXPECT_EQ(lightcone(QubitSet{2}, 0, Adjacency::chain(8)), QubitSet{2});
  EXPECT_EQ(lightcone(QubitSet{2}, 2, Adjacency::chain(8)), QubitSet::range(0, 5));
  EXPECT_EQ(lightcone(QubitSet{4}, 1, Adjacency::grid(3, 3)), (QubitSet{1, 3, 4, 5, 7}));
  CircuitLayout layout{3, {{{0, 1}}}};
  EXPECT_EQ(circuit_lightcone(QubitSet{1}, layout), (QubitSet{0, 1}));
  EXPECT_EQ(circuit_lightcone(QubitSet{2}, layout), QubitSet{2});
}

TEST(Groups, ShallowLightconeContainment) {
  Rng rng(37);
  const int n = 4;
  const auto adj = Adjacency::chain(n);
  for (const auto& g : {GroupSpec::matchgate(n), GroupSpec::orthogonal(n), GroupSpec::unitary(n)}) {
    const int circuits = g.kind == GroupKind::matchgate ? 1000 : 200;
    for (int k = 0; k < circuits; ++k) {
      const int depth = static_cast<int>(rng.uniform_int(3));
      const auto s = sample_shallow(g, depth, adj, rng);
      const PauliString v = PauliString::single(n, 1, 'Z');
      const QubitSet cone = lightcone(support(v), depth, adj);
      const QubitSet exact = circuit_lightcone(support(v), s.layout);
      ASSERT_TRUE(cone.contains(exact));
      const Operator img = s.u * to_dense(v) * s.u.adjoint();
      for (const auto& [t, c] : pauli_coefficients(img, 1e-12))
        ASSERT_TRUE(exact.contains(support(t))) << g.name() << " " << t.str();
    }
  }
}

TEST(Groups, HaarLeftInvarianceSmoke) {
  Rng rng(38);
  const auto g = GroupSpec::orthogonal(2);
  const Operator fixed = sample_haar(g, rng);
  std::vector<double> a, b;
  for (int k = 0; k < 3000; ++k) {
    a.push_back(std::abs(sample_haar(g, rng).trace()));
    b.push_back(std::abs((fixed * sample_haar(g, rng)).trace()));
  }
  // 1% critical value of the two-sample KS test
  EXPECT_LT(ks_statistic(a, b), 1.63 * std::sqrt(2.0 / 3000));
}

TEST(Groups, GateCountSamplesStayInGroup) {
  Rng rng(39);
  const auto g = GroupSpec::matchgate(3, true);
  for (int k = 0; k < 5; ++k) {
    const Operator u = sample_gate_count(g.generators->generators(), 4, rng);
    EXPECT_TRUE(verify_group_membership(u, g).ok);
  }
}

TEST(Groups, AdjacencyParsing) {
  EXPECT_EQ(Adjacency::parse("chain", 5).edges().size(), 4u);
  EXPECT_EQ(Adjacency::chain(5).num_colors(), 2);
  const auto grid = Adjacency::parse("grid 2x3", 6);
  EXPECT_EQ(grid.edges().size(), 7u);
  const auto e = Adjacency::parse("0-1,1-2,0-2", 3);
  EXPECT_EQ(e.num_colors(), 3);
  EXPECT_THROW(Adjacency::parse("grid 2x2", 5), ValidationError);
  EXPECT_THROW(Adjacency::parse("0-0", 3), ValidationError);
  EXPECT_THROW(Adjacency::parse("0-1,1-0", 3), ValidationError);
}

TEST(Groups, CustomGroups) {
  Rng rng(40);
  const auto gens = matchgate_standard_generators(3);
  const auto g = GroupSpec::custom(3, gens, matchgate_form_xy(3), {});
  EXPECT_THROW(sample_haar(g, rng), ValidationError);
  const auto s = sample_shallow(g, 2, Adjacency::chain(3), rng);
  EXPECT_TRUE(verify_group_membership(s.u, g).ok);
  EXPECT_THROW(GroupSpec::custom(3, gens, BilinearForm::from_pauli(PauliString::identity(3)), {}), ValidationError);
  EXPECT_EQ(parse_group_kind("Mixed-Unitary"), GroupKind::mixed_unitary);
  EXPECT_THROW(parse_group_kind("lorentz"), ValidationError);
}
