#include <cmath>
#include <numbers>

#include "gdesign/dense.hpp"
#include "gdesign/errors.hpp"
#include "gdesign/groups.hpp"

namespace gdesign {
namespace {

using Index = Eigen::Index;

void check_dim(std::int64_t d) {
  if (d < 1) throw ValidationError("matrix dimension must be positive");
  if (d > (std::int64_t{1} << kDefaultDenseCap)) throw BudgetError("Haar sample dimension exceeds dense cap");
}

struct Givens {
  int p;
  int q;
  double theta;
};

// Spinor lift of the rotation by theta in the (a, b) Majorana plane.
void apply_plane_rotation(Operator& u, int a, int b, double theta, int n) {
  const PauliString cab = majorana(a + 1, n) * majorana(b + 1, n);
  u = std::cos(theta / 2) * u - std::sin(theta / 2) * apply_left(cab, u);
}

}  // namespace

Operator haar_unitary(std::int64_t d, Rng& rng) {
  check_dim(d);
  Operator z(d, d);
  const double s = 1.0 / std::sqrt(2.0);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) z(i, j) = cplx(rng.normal() * s, rng.normal() * s);
  Eigen::HouseholderQR<Operator> qr(z);
  Operator q = qr.householderQ();
  const Operator r = qr.matrixQR();
  for (Index j = 0; j < d; ++j) {
    const cplx rjj = r(j, j);
    const double a = std::abs(rjj);
    q.col(j) *= (a > 0 ? rjj / a : cplx(1.0));
  }
  return q;
}

Eigen::MatrixXd haar_orthogonal(std::int64_t d, Rng& rng) {
  check_dim(d);
  Eigen::MatrixXd z(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) z(i, j) = rng.normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (Index j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

Eigen::MatrixXd haar_special_orthogonal(std::int64_t d, Rng& rng) {
  Eigen::MatrixXd q = haar_orthogonal(d, rng);
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

Operator haar_symplectic(std::int64_t d, Rng& rng) {
  check_dim(d);
  if (d % 2 != 0) throw ValidationError("symplectic dimension must be even");
  const Index m = d / 2;
  Operator u = Operator::Zero(d, d);
  // w = -J conj(v) pairs with v so that U^T J U = J.
  auto partner = [m](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd w(2 * m);
    w.head(m) = -v.tail(m).conjugate();
    w.tail(m) = v.head(m).conjugate();
    return w;
  };
  const double s = 1.0 / std::sqrt(2.0);
  for (Index k = 0; k < m; ++k) {
    Eigen::VectorXcd v(d);
    double norm = 0.0;
    while (norm < 1e-6) {
      for (Index i = 0; i < d; ++i) v(i) = cplx(rng.normal() * s, rng.normal() * s);
      for (int pass = 0; pass < 2; ++pass)
        for (Index j = 0; j < k; ++j) {
          v -= u.col(j).dot(v) * u.col(j);
          v -= u.col(j + m).dot(v) * u.col(j + m);
        }
      norm = v.norm();
    }
    v /= norm;
    u.col(k) = v;
    u.col(k + m) = partner(v);
  }
  return u;
}

Operator matchgate_from_rotation(const Eigen::MatrixXd& rotation, int n) {
  const int m = 2 * n;
  if (rotation.rows() != m || rotation.cols() != m) throw ValidationError("rotation must be 2n x 2n");
  Eigen::MatrixXd o = rotation;
  std::vector<Givens> steps;
  // G_K ... G_1 O = D with D diagonal +-1.
  for (int j = 0; j < m - 1; ++j)
    for (int q = m - 1; q > j; --q) {
      const int p = q - 1;
      const double a = o(p, j), b = o(q, j);
      const double r = std::hypot(a, b);
      if (r == 0.0 || std::abs(b) == 0.0) continue;
      const double c = a / r, s = b / r;
      const Eigen::RowVectorXd rp = o.row(p), rq = o.row(q);
      o.row(p) = c * rp + s * rq;
      o.row(q) = -s * rp + c * rq;
      steps.push_back({p, q, std::atan2(s, c)});
    }
  if (std::abs(o.determinant() - 1.0) > 1e-8) throw ValidationError("rotation is not in SO(2n)");
  const Index d = Index{1} << n;
  Operator u = Operator::Identity(d, d);
  std::vector<int> flips;
  for (int i = 0; i < m; ++i)
    if (o(i, i) < 0) flips.push_back(i);
  for (std::size_t k = 0; k + 1 < flips.size(); k += 2)
    apply_plane_rotation(u, flips[k], flips[k + 1], std::numbers::pi, n);
  // O = G_1^T ... G_K^T D; G^T is the rotation by theta in the (p, q) plane.
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) apply_plane_rotation(u, it->p, it->q, it->theta, n);
  return u;
}

MatchgateSample haar_matchgate(int n, Rng& rng) {
  if (n < 1 || n > kDefaultDenseCap) throw BudgetError("matchgate Haar sample size out of range");
  MatchgateSample s;
  s.rotation = haar_special_orthogonal(2 * n, rng);
  s.u = matchgate_from_rotation(s.rotation, n);
  return s;
}

Operator sample_haar(const GroupSpec& g, Rng& rng) {
  const std::int64_t d = std::int64_t{1} << g.n;
  switch (g.kind) {
    case GroupKind::matchgate: return haar_matchgate(g.n, rng).u;
    case GroupKind::orthogonal: return haar_orthogonal(d, rng).cast<cplx>();
    case GroupKind::symplectic: {
      const Operator j = g.form->dense();
      if (max_abs_diff(j, symplectic_form(g.n).dense()) > 0)
        throw ValidationError("Haar symplectic sampling supports the i Y_0 form only");
      return haar_symplectic(d, rng);
    }
    case GroupKind::unitary:
    case GroupKind::mixed_unitary: return haar_unitary(d, rng);
    case GroupKind::clifford: {
      if (g.n > 2) throw BudgetError("Clifford sampling is limited to n <= 2");
      const auto& all = enumerate_clifford(g.n);
      return all[rng.uniform_int(all.size())];
    }
    case GroupKind::custom: break;
  }
  throw ValidationError("no Haar sampler for custom groups");
}

}  // namespace gdesign
