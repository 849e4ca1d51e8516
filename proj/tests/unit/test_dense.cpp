#include <gtest/gtest.h>

#include <cmath>

#include "gdesign/dense.hpp"
#include "gdesign/errors.hpp"
#include "gdesign/groups.hpp"
#include "gdesign/random.hpp"

using namespace gdesign;

namespace {

Operator random_matrix(Eigen::Index d, Rng& rng) {
  Operator m(d, d);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = cplx(rng.normal(), rng.normal());
  return m;
}

double diff(const Operator& a, const Operator& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST(Dense, BellStateSingleQubit) {
  const StateVector phi = bell_state(1);
  ASSERT_EQ(phi.size(), 4);
  EXPECT_NEAR(phi(0).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(phi(3).real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(phi(1), cplx(0));
  EXPECT_EQ(phi(2), cplx(0));
}

TEST(Dense, TransposeTrick) {
  Rng rng(11);
  const StateVector phi = bell_state(2);
  const Operator id = Operator::Identity(4, 4);
  for (int k = 0; k < 5; ++k) {
    const Operator a = random_matrix(4, rng), b = random_matrix(4, rng);
    EXPECT_LT(std::abs(phi.dot(kron(a, id) * phi) - a.trace() / 4.0), 1e-12);
    const StateVector lhs = kron(a, b) * phi;
    const StateVector rhs = kron(a * b.transpose(), id) * phi;
    EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Dense, MatrixFormOfTwoCopyAction) {
  Rng rng(12);
  const Operator a = random_matrix(8, rng), b = random_matrix(8, rng), m = random_matrix(8, rng);
  const StateVector psi = matrix_to_state(m);
  EXPECT_LT(diff(state_to_matrix(kron(a, b) * psi), a * m * b.transpose()), 1e-11);
}

TEST(Dense, SwapRegionTraces) {
  EXPECT_NEAR(swap_region(QubitSet::all(2), 2).trace().real(), 4.0, 1e-12);
  EXPECT_NEAR(swap_region(QubitSet{}, 2).trace().real(), 16.0, 1e-12);
  EXPECT_NEAR(swap_region(QubitSet{0}, 2).trace().real(), 8.0, 1e-12);
  const Operator s = swap_region(QubitSet{0, 2}, 3);
  EXPECT_LT(diff(s * s, Operator::Identity(64, 64)), 1e-14);
  EXPECT_THROW(swap_region(QubitSet{0}, 6), BudgetError);
  EXPECT_THROW(swap_region(QubitSet{4}, 3), ValidationError);
}

TEST(Dense, SwapTraceIdentities) {
  Rng rng(13);
  const Operator a = random_matrix(8, rng), b = random_matrix(8, rng);
  const Operator full = swap_region(QubitSet::all(3), 3);
  EXPECT_LT(std::abs((kron(a, b) * full).trace() - (a * b).trace()), 1e-10);
  for (const QubitSet region : {QubitSet{0}, QubitSet{1, 2}, QubitSet{0, 2}, QubitSet{}}) {
    const cplx dense = (kron(a, b) * swap_region(region, 3)).trace();
    EXPECT_LT(std::abs(dense - swap_region_trace(a, b, region, 3)), 1e-10) << region.str();
  }
}

TEST(Dense, PartialTraceMatchesExplicitSum) {
  Rng rng(14);
  const Operator a = random_matrix(4, rng), b = random_matrix(2, rng);
  // qubit 0 = a's first qubit... region {0,1} of a (x) b
  const Operator ab = kron(a, b);
  EXPECT_LT(diff(partial_trace_complement(ab, QubitSet{0, 1}, 3), a * b.trace()), 1e-12);
  const Operator ba = kron(b, a);
  EXPECT_LT(diff(partial_trace_complement(ba, QubitSet{1, 2}, 3), a * b.trace()), 1e-12);
}

TEST(Dense, BellProjectorOnComplement) {
  const Operator p = bell_projector_on_complement(QubitSet{0, 1}, 3);
  EXPECT_LT(diff(p * p, p), 1e-12);
  EXPECT_LT(diff(p, p.adjoint()), 1e-14);
  Eigen::SelfAdjointEigenSolver<Operator> es(p);
  int rank = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) rank += es.eigenvalues()(i) > 0.5;
  EXPECT_EQ(rank, 16);
  EXPECT_LT(diff(bell_projector_on_complement(QubitSet::all(2), 2), Operator::Identity(16, 16)), 1e-14);
  EXPECT_NEAR(povm_probability(bell_state(3), p), 1.0, 1e-12);
}

TEST(Dense, ComplementBellProbabilityMatchesProjector) {
  Rng rng(15);
  for (const QubitSet region : {QubitSet{0}, QubitSet{0, 1}, QubitSet{2}, QubitSet{0, 2}}) {
    Operator m = random_matrix(8, rng);
    m /= m.norm();
    const double dense = povm_probability(matrix_to_state(m), bell_projector_on_complement(region, 3));
    EXPECT_NEAR(complement_bell_probability(m, region, 3), dense, 1e-12) << region.str();
  }
}

TEST(Dense, PovmProbability) {
  Rng rng(16);
  StateVector psi = matrix_to_state(random_matrix(4, rng));
  psi.normalize();
  EXPECT_NEAR(povm_probability(psi, Operator::Identity(16, 16)), 1.0, 1e-12);
  EXPECT_NEAR(povm_probability(psi, psi * psi.adjoint()), 1.0, 1e-12);
  Operator bad = Operator::Zero(16, 16);
  bad(0, 1) = 1.0;
  EXPECT_THROW(povm_probability(psi, bad), ValidationError);
}

TEST(Dense, PauliCoefficients) {
  const auto z = pauli_coefficients(to_dense(PauliString::parse("Z")));
  ASSERT_EQ(z.size(), 1u);
  EXPECT_EQ(z[0].first.str(), "+Z");
  EXPECT_NEAR(z[0].second.real(), 1.0, 1e-15);

  Operator h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  const auto hc = pauli_coefficients(h);
  ASSERT_EQ(hc.size(), 2u);
  for (const auto& [p, c] : hc) {
    EXPECT_TRUE(p.str() == "+X" || p.str() == "+Z");
    EXPECT_NEAR(c.real(), 1 / std::sqrt(2.0), 1e-14);
  }

  Rng rng(17);
  const Operator u = haar_unitary(8, rng);
  double mass = 0;
  for (const auto& [p, c] : pauli_coefficients(u)) mass += std::norm(c);
  EXPECT_NEAR(mass, (u.adjoint() * u).trace().real() / 8.0, 1e-10);
}

TEST(Dense, LocalGateApplication) {
  Rng rng(18);
  const Eigen::Matrix4cd g = haar_unitary(4, rng);
  EXPECT_LT(diff(embed_two_qubit(g, 0, 1, 2), g), 1e-14);
  Operator swap = Operator::Zero(4, 4);
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  EXPECT_LT(diff(embed_two_qubit(g, 1, 0, 2), swap * g * swap), 1e-14);
  const Operator id2 = Operator::Identity(2, 2);
  EXPECT_LT(diff(embed_two_qubit(g, 1, 2, 3), kron(id2, g)), 1e-14);
  Eigen::Matrix2cd x;
  x << 0, 1, 1, 0;
  Operator u = Operator::Identity(8, 8);
  apply_one_qubit_left(u, x, 1, 3);
  EXPECT_LT(diff(u, to_dense(PauliString::parse("IXI"))), 1e-15);
}

TEST(Dense, PauliExponential) {
  const auto p = PauliString::parse("XY");
  const double t = 0.37;
  const Operator e = pauli_exponential(p, t);
  const Operator ref = std::cos(t) * Operator::Identity(4, 4) + cplx(0, std::sin(t)) * to_dense(p);
  EXPECT_LT(diff(e, ref), 1e-15);
}
