#include <gtest/gtest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <map>

#include "gdesign/cgraph.hpp"
#include "gdesign/dense.hpp"
#include "gdesign/errors.hpp"
#include "gdesign/groups.hpp"
#include "gdesign/random.hpp"

using namespace gdesign;

namespace {

std::uint64_t binom(int n, int k) {
  return static_cast<std::uint64_t>(std::llround(boost::math::binomial_coefficient<double>(n, k)));
}

PauliString x_on(int n, int q) { return PauliString::single(n, q, 'X'); }

}  // namespace

TEST(CGraph, NeighborsMatchDenseCommutator) {
  const GeneratorSet s(2, {PauliString::parse("XX")});
  const auto nb = neighbors(PauliString::parse("ZI"), s);
  ASSERT_EQ(nb.size(), 1u);
  EXPECT_EQ(nb[0].str(), "+YX");
  const Operator h = to_dense(PauliString::parse("XX")), p = to_dense(PauliString::parse("ZI"));
  const Operator comm = h * p - p * h;
  const auto coeffs = pauli_coefficients(comm);
  ASSERT_EQ(coeffs.size(), 1u);
  EXPECT_TRUE(coeffs[0].first.equal_up_to_phase(nb[0]));
  EXPECT_TRUE(neighbors(PauliString::identity(3), matchgate_full_generators(3)).empty());
}

TEST(CGraph, EdgeSymmetryAndDegreeBound) {
  const auto s = matchgate_standard_generators(4);
  Rng rng(21);
  for (int k = 0; k < 200; ++k) {
    const PauliString p(4, rng.next() & 15, rng.next() & 15);
    const auto nb = neighbors(p, s);
    EXPECT_LE(nb.size(), s.size());
    for (const auto& q : nb) {
      const auto back = neighbors(q, s);
      EXPECT_TRUE(std::any_of(back.begin(), back.end(), [&](const PauliString& r) { return r == p.phaseless(); }));
    }
  }
}

TEST(CGraph, MatchgateCensusIsBinomial) {
  for (int n = 2; n <= 4; ++n) {
    const auto s = matchgate_standard_generators(n);
    const auto cs = census(s);
    std::map<int, std::uint64_t> by_kappa;
    std::uint64_t total = 0;
    for (const auto& e : cs) {
      const int kappa = majorana_count(e.representative);
      EXPECT_EQ(e.size, binom(2 * n, kappa)) << "n=" << n << " kappa=" << kappa;
      EXPECT_EQ(by_kappa.count(kappa), 0u);
      by_kappa[kappa] = e.size;
      total += e.size;
    }
    EXPECT_EQ(cs.size(), static_cast<std::size_t>(2 * n + 1));
    EXPECT_EQ(total, std::uint64_t{1} << (2 * n));
  }
}

TEST(CGraph, MajoranaCountConstantOnComponents) {
  const auto s = matchgate_standard_generators(3);
  const auto c = component(PauliString::parse("ZXI"), s);
  const int k = majorana_count(PauliString::parse("ZXI"));
  for (VertexCode v : c.members()) EXPECT_EQ(majorana_count(decode_vertex(v, 3)), k);
}

TEST(CGraph, ComponentBasics) {
  const auto s = matchgate_standard_generators(3);
  EXPECT_EQ(component(PauliString::identity(3), s).size(), 1u);
  const GeneratorSet u2(2, two_local_paulis(Adjacency::chain(2)));
  const auto cs = census(u2);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].size, 1u);
  EXPECT_EQ(cs[1].size, 15u);
  const auto c = component(PauliString::parse("XZI"), s);
  EXPECT_TRUE(c.contains(PauliString::parse("XZI")));
  EXPECT_EQ(c.distance(PauliString::parse("XZI")), 0);
}

TEST(CGraph, SizesPartitionForEveryShippedSet) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& g : {GroupSpec::orthogonal(n), GroupSpec::symplectic(n), GroupSpec::unitary(n),
                          GroupSpec::matchgate(n, true)}) {
      std::uint64_t total = 0;
      for (const auto& e : census(*g.generators)) total += e.size;
      EXPECT_EQ(total, std::uint64_t{1} << (2 * n)) << g.name() << " n=" << n;
    }
}

TEST(CGraph, DistancesRespectEdges) {
  const auto s = matchgate_standard_generators(3);
  const auto c = component(PauliString::parse("XII"), s);
  for (std::size_t i = 0; i < c.bfs_order().size(); ++i) {
    const auto p = decode_vertex(c.bfs_order()[i], 3);
    for (const auto& q : neighbors(p, s)) EXPECT_LE(std::abs(*c.distance(q) - c.bfs_distances()[i]), 1);
  }
}

TEST(CGraph, JohnsonBallSizes) {
  for (int n = 3; n <= 4; ++n) {
    const auto s = matchgate_full_generators(n);
    std::vector<int> idx;
    for (int a = 1; a <= n; ++a) idx.push_back(a);
    const PauliString p = majorana_product(idx, n).phaseless();
    const auto prof = ball_profile(p, s);
    std::uint64_t expect = 0;
    for (int N = 0; N <= n; ++N) {
      expect += binom(n, N) * binom(n, N);
      ASSERT_LT(static_cast<std::size_t>(N), prof.size());
      EXPECT_EQ(prof[N], expect) << "n=" << n << " N=" << N;
      EXPECT_EQ(n_ball(p, s, N).size(), expect);
    }
    EXPECT_EQ(prof.size(), static_cast<std::size_t>(n + 1));
  }
  const auto s3 = matchgate_full_generators(3);
  EXPECT_EQ(n_ball(PauliString::parse("ZXI"), s3, 0).size(), 1u);
}

TEST(CGraph, BallProfileMonotoneAndSaturates) {
  const auto s = matchgate_standard_generators(3);
  const auto p = PauliString::parse("XII");
  const auto prof = ball_profile(p, s);
  for (std::size_t i = 1; i < prof.size(); ++i) EXPECT_GE(prof[i], prof[i - 1]);
  EXPECT_EQ(prof.back(), component(p, s).size());
  EXPECT_EQ(n_ball(p, s, 100).size(), component(p, s).size());
}

TEST(CGraph, Diameters) {
  for (int n = 2; n <= 3; ++n) {
    std::vector<int> idx;
    for (int a = 1; a <= n; ++a) idx.push_back(a);
    const PauliString p = majorana_product(idx, n).phaseless();
    const auto full = matchgate_full_generators(n);
    const auto std_set = matchgate_standard_generators(n);
    const auto df = diameter(component(p, full), full);
    EXPECT_TRUE(df.exact);
    EXPECT_EQ(df.value, n);
    const auto ds = diameter(component(p, std_set), std_set);
    EXPECT_EQ(ds.value, n * n);
    const auto lb = diameter(component(p, std_set), std_set, DiameterMode::lower_bound);
    EXPECT_FALSE(lb.exact);
    EXPECT_LE(lb.value, n * n);
  }
  const auto s = matchgate_standard_generators(3);
  EXPECT_EQ(diameter(component(PauliString::identity(3), s), s).value, 0);
}

TEST(CGraph, RFractionMatchgate) {
  for (int n : {4, 6}) {
    const auto s = matchgate_standard_generators(n);
    const PauliString p = x_on(n, n / 2 - 1);
    EXPECT_EQ(majorana_count(p), n - 1);
    const auto region = lightcone(QubitSet{n / 2 - 1}, n / 2 - 1, Adjacency::chain(n));
    EXPECT_EQ(region, QubitSet::range(0, n - 1));
    const auto r = r_fraction(p, s, region);
    const std::uint64_t num = binom(2 * n - 2, n - 1), den = binom(2 * n, n - 1);
    EXPECT_EQ(r.numerator * den, num * r.denominator);
  }
  const auto s4 = matchgate_standard_generators(4);
  const auto r = r_fraction(x_on(4, 1), s4, QubitSet{0, 1, 2});
  EXPECT_EQ(r.numerator, 20u);
  EXPECT_EQ(r.denominator, 56u);
  const auto all = r_fraction(x_on(4, 1), s4, QubitSet::all(4));
  EXPECT_EQ(all.numerator, all.denominator);
  EXPECT_THROW(r_fraction(x_on(4, 3), s4, QubitSet{0}), ValidationError);
}

TEST(CGraph, RFractionOrthogonalOracle) {
  const auto g = GroupSpec::orthogonal(3);
  const auto p = PauliString::single(3, 0, 'Z');
  const QubitSet region{0, 1};
  const auto c = component(p, *g.generators);
  std::uint64_t inside = 0;
  for (VertexCode v : c.members())
    if (region.contains(support(decode_vertex(v, 3)))) ++inside;
  const auto r = r_fraction(p, *g.generators, region);
  EXPECT_EQ(r.numerator, inside);
  EXPECT_EQ(r.denominator, c.size());
}

TEST(CGraph, MidpointBallBelowHalf) {
  for (int n = 2; n <= 3; ++n) {
    const auto s = matchgate_standard_generators(n);
    std::vector<int> idx;
    for (int a = 1; a <= n; ++a) idx.push_back(a);
    const PauliString p = majorana_product(idx, n).phaseless();
    const int radius = n * n / 2 - 1;
    const auto ball = n_ball(p, s, radius).size();
    EXPECT_LT(2 * ball, component(p, s).size()) << "n=" << n;
  }
}

TEST(CGraph, BudgetGuard) {
  const auto s = matchgate_standard_generators(15);
  EXPECT_THROW(component(PauliString::single(15, 0, 'Z'), s), BudgetError);
}
