#include "gdesign/dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iostream>

#include "gdesign/errors.hpp"

namespace gdesign {
namespace {

using Index = Eigen::Index;

inline std::uint64_t qbit(int q, int n) { return std::uint64_t{1} << (n - 1 - q); }

void check_region(const QubitSet& region, int n) {
  if (!QubitSet::all(n).contains(region))
    throw ValidationError("region " + region.str() + " not inside " + std::to_string(n) + " qubits");
}

void check_square(const Operator& a, const char* what) {
  if (a.rows() != a.cols()) throw ValidationError(std::string(what) + ": operator is not square");
  const auto d = static_cast<std::uint64_t>(a.rows());
  if (d == 0 || (d & (d - 1)) != 0)
    throw ValidationError(std::string(what) + ": dimension is not a power of two");
}

int qubits_of(const Operator& a) { return std::countr_zero(static_cast<std::uint64_t>(a.rows())); }

}  // namespace

void check_state_budget(int n) {
  if (n < 0) throw ValidationError("negative qubit count");
  if (n > kMaxTwoCopyStateQubits)
    throw BudgetError("two-copy state on " + std::to_string(n) + " qubits per copy exceeds cap " +
                      std::to_string(kMaxTwoCopyStateQubits));
}

void check_operator_budget(int n) {
  if (n < 0) throw ValidationError("negative qubit count");
  if (n > kMaxTwoCopyOperatorQubits)
    throw BudgetError("two-copy operator on " + std::to_string(n) + " qubits per copy exceeds cap " +
                      std::to_string(kMaxTwoCopyOperatorQubits));
}

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

StateVector bell_state(int m) {
  check_state_budget(m);
  const Index d = Index{1} << m;
  StateVector psi = StateVector::Zero(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (Index i = 0; i < d; ++i) psi(i * d + i) = amp;
  return psi;
}

Operator state_to_matrix(const StateVector& psi) {
  const auto dd = static_cast<std::uint64_t>(psi.size());
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(dd))));
  if (static_cast<std::uint64_t>(d * d) != dd) throw ValidationError("state is not two-copy shaped");
  Operator m(d, d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) m(i, j) = psi(i * d + j);
  return m;
}

StateVector matrix_to_state(const Operator& m) {
  const Index d = m.rows();
  StateVector psi(d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) psi(i * d + j) = m(i, j);
  return psi;
}

Operator swap_region(const QubitSet& region, int n) {
  check_region(region, n);
  check_operator_budget(n);
  const std::uint64_t d = std::uint64_t{1} << n;
  std::uint64_t rmask = 0;
  for (int q : region.to_vector()) rmask |= qbit(q, n);
  Operator s = Operator::Zero(static_cast<Index>(d * d), static_cast<Index>(d * d));
  for (std::uint64_t i = 0; i < d; ++i)
    for (std::uint64_t j = 0; j < d; ++j) {
      const std::uint64_t i2 = (i & ~rmask) | (j & rmask);
      const std::uint64_t j2 = (j & ~rmask) | (i & rmask);
      s(static_cast<Index>(i2 * d + j2), static_cast<Index>(i * d + j)) = 1.0;
    }
  return s;
}

Operator bell_projector_on_complement(const QubitSet& region, int n) {
  check_region(region, n);
  check_operator_budget(n);
  const RegionIndex idx(region, n);
  const std::uint64_t d = std::uint64_t{1} << n;
  const double w = 1.0 / static_cast<double>(idx.dim_complement());
  Operator p = Operator::Zero(static_cast<Index>(d * d), static_cast<Index>(d * d));
  // Pi = sum_{l,l'} |l lb, l' lb><l mb, l' mb| / d_Lbar
  for (std::uint64_t l = 0; l < idx.dim_region(); ++l)
    for (std::uint64_t l2 = 0; l2 < idx.dim_region(); ++l2)
      for (std::uint64_t a = 0; a < idx.dim_complement(); ++a)
        for (std::uint64_t b = 0; b < idx.dim_complement(); ++b) {
          const auto row = idx.at(l, a) * d + idx.at(l2, a);
          const auto col = idx.at(l, b) * d + idx.at(l2, b);
          p(static_cast<Index>(row), static_cast<Index>(col)) = w;
        }
  return p;
}

std::vector<std::pair<PauliString, cplx>> pauli_coefficients(const Operator& a, double tol) {
  check_square(a, "pauli_coefficients");
  const int n = qubits_of(a);
  if (n > kDefaultDenseCap) throw BudgetError("Pauli expansion beyond dense cap");
  const double d = static_cast<double>(a.rows());
  std::vector<std::pair<PauliString, cplx>> out;
  const std::uint64_t side = std::uint64_t{1} << n;
  for (std::uint64_t x = 0; x < side; ++x)
    for (std::uint64_t z = 0; z < side; ++z) {
      const PauliString t(n, x, z);
      const cplx c = trace_product(t, a) / d;
      if (std::abs(c) > tol) out.emplace_back(t, c);
    }
  return out;
}

double povm_probability(const StateVector& psi, const Operator& projector) {
  if (projector.rows() != psi.size() || projector.cols() != psi.size())
    throw ValidationError("POVM element dimension does not match state");
  if (max_abs_diff(projector, projector.adjoint()) > 1e-10)
    throw ValidationError("POVM element is not Hermitian");
  const double p = std::real(psi.dot(projector * psi));
  const double clamped = std::clamp(p, 0.0, 1.0);
  if (std::abs(clamped - p) > 1e-9)
    std::clog << "povm_probability: clamped " << p << " to " << clamped << '\n';
  return clamped;
}

RegionIndex::RegionIndex(const QubitSet& region, int n) {
  check_region(region, n);
  const std::vector<int> in = region.to_vector();
  const std::vector<int> out = region.complement(n).to_vector();
  dl_ = std::uint64_t{1} << in.size();
  dlb_ = std::uint64_t{1} << out.size();
  table_.resize(dl_ * dlb_);
  auto spread = [n](std::uint64_t v, const std::vector<int>& qs) {
    std::uint64_t full = 0;
    const int k = static_cast<int>(qs.size());
    for (int t = 0; t < k; ++t)
      if ((v >> (k - 1 - t)) & 1u) full |= qbit(qs[t], n);
    return full;
  };
  for (std::uint64_t l = 0; l < dl_; ++l) {
    const std::uint64_t hi = spread(l, in);
    for (std::uint64_t lb = 0; lb < dlb_; ++lb) table_[l * dlb_ + lb] = hi | spread(lb, out);
  }
}

Operator partial_trace_complement(const Operator& a, const QubitSet& region, int n) {
  check_square(a, "partial_trace_complement");
  if (qubits_of(a) != n) throw ValidationError("operator size does not match qubit count");
  const RegionIndex idx(region, n);
  const auto dl = static_cast<Index>(idx.dim_region());
  Operator t = Operator::Zero(dl, dl);
  for (std::uint64_t l = 0; l < idx.dim_region(); ++l)
    for (std::uint64_t l2 = 0; l2 < idx.dim_region(); ++l2) {
      cplx acc = 0;
      for (std::uint64_t b = 0; b < idx.dim_complement(); ++b)
        acc += a(static_cast<Index>(idx.at(l, b)), static_cast<Index>(idx.at(l2, b)));
      t(static_cast<Index>(l), static_cast<Index>(l2)) = acc;
    }
  return t;
}

cplx swap_region_trace(const Operator& a, const Operator& b, const QubitSet& region, int n) {
  const Operator ta = partial_trace_complement(a, region, n);
  const Operator tb = partial_trace_complement(b, region, n);
  return (ta * tb).trace();
}

double complement_bell_probability(const Operator& m, const QubitSet& region, int n) {
  const Operator t = partial_trace_complement(m, region, n);
  const RegionIndex idx(region, n);
  return t.squaredNorm() / static_cast<double>(idx.dim_complement());
}

void apply_two_qubit_left(Operator& u, const Eigen::Matrix4cd& gate, int q0, int q1, int n) {
  if (q0 == q1 || q0 < 0 || q1 < 0 || q0 >= n || q1 >= n)
    throw ValidationError("invalid gate qubits (" + std::to_string(q0) + "," + std::to_string(q1) + ")");
  const std::uint64_t b0 = qbit(q0, n);
  const std::uint64_t b1 = qbit(q1, n);
  const auto d = static_cast<std::uint64_t>(u.rows());
  Eigen::Matrix<cplx, 4, Eigen::Dynamic> block(4, u.cols());
  for (std::uint64_t base = 0; base < d; ++base) {
    if (base & (b0 | b1)) continue;
    const Index rows[4] = {static_cast<Index>(base), static_cast<Index>(base | b1),
                           static_cast<Index>(base | b0), static_cast<Index>(base | b0 | b1)};
    for (int r = 0; r < 4; ++r) block.row(r) = u.row(rows[r]);
    const Eigen::Matrix<cplx, 4, Eigen::Dynamic> res = gate * block;
    for (int r = 0; r < 4; ++r) u.row(rows[r]) = res.row(r);
  }
}

void apply_one_qubit_left(Operator& u, const Eigen::Matrix2cd& gate, int q, int n) {
  if (q < 0 || q >= n) throw ValidationError("invalid gate qubit " + std::to_string(q));
  const std::uint64_t b = qbit(q, n);
  const auto d = static_cast<std::uint64_t>(u.rows());
  for (std::uint64_t base = 0; base < d; ++base) {
    if (base & b) continue;
    const auto r0 = static_cast<Index>(base);
    const auto r1 = static_cast<Index>(base | b);
    const Eigen::RowVectorXcd a0 = u.row(r0);
    const Eigen::RowVectorXcd a1 = u.row(r1);
    u.row(r0) = gate(0, 0) * a0 + gate(0, 1) * a1;
    u.row(r1) = gate(1, 0) * a0 + gate(1, 1) * a1;
  }
}

Operator embed_two_qubit(const Eigen::Matrix4cd& gate, int q0, int q1, int n) {
  Operator u = Operator::Identity(Index{1} << n, Index{1} << n);
  apply_two_qubit_left(u, gate, q0, q1, n);
  return u;
}

Operator pauli_exponential(const PauliString& p, double theta) {
  const int n = p.num_qubits();
  const Index d = Index{1} << n;
  Operator out = apply_left(p.phaseless(), Operator::Identity(d, d)) * cplx(0.0, std::sin(theta));
  out.diagonal().array() += std::cos(theta);
  return out;
}

double max_abs_diff(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return INFINITY;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace gdesign
