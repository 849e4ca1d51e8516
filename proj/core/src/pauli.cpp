#include "gdesign/pauli.hpp"

#include <algorithm>
#include <bit>

#include "gdesign/errors.hpp"

namespace gdesign {
namespace {

constexpr int mod4(int k) { return ((k % 4) + 4) % 4; }

std::uint64_t low_mask(int n) {
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

// Qubit j lives at dense index bit n-1-j.
std::uint64_t to_index_mask(std::uint64_t qubit_mask, int n) {
  std::uint64_t out = 0;
  for (int j = 0; j < n; ++j)
    if ((qubit_mask >> j) & 1u) out |= std::uint64_t{1} << (n - 1 - j);
  return out;
}

// P|b> = coef(b) |b ^ xi>.
struct DenseAction {
  std::uint64_t xi;
  std::uint64_t zi;
  cplx scale;
  cplx coef(std::uint64_t b) const { return (std::popcount(zi & b) & 1) ? -scale : scale; }
};

DenseAction dense_action(const PauliString& p) {
  const int n = p.num_qubits();
  return {to_index_mask(p.x_bits(), n), to_index_mask(p.z_bits(), n),
          i_pow(p.phase() + p.y_count())};
}

void check_same_size(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits())
    throw ValidationError("Pauli size mismatch: " + std::to_string(p.num_qubits()) + " vs " +
                          std::to_string(q.num_qubits()));
}

void check_operator_dim(const PauliString& p, const Operator& a) {
  const auto d = Eigen::Index{1} << p.num_qubits();
  if (a.rows() != d || a.cols() != d)
    throw ValidationError("operator dimension does not match Pauli string on " +
                          std::to_string(p.num_qubits()) + " qubits");
}

}  // namespace

cplx i_pow(int k) {
  switch (mod4(k)) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

PauliString::PauliString(int n, std::uint64_t x_bits, std::uint64_t z_bits, int phase)
    : n_(n), x_(x_bits), z_(z_bits), phase_(mod4(phase)) {
  detail::require(n >= 0 && n <= kMaxPauliQubits, "Pauli qubit count out of range: " + std::to_string(n));
  detail::require(((x_ | z_) & ~low_mask(n)) == 0, "Pauli bits set beyond qubit count");
}

PauliString PauliString::identity(int n) { return {n, 0, 0, 0}; }

PauliString PauliString::single(int n, int qubit, char letter) {
  detail::require(qubit >= 0 && qubit < n, "qubit index " + std::to_string(qubit) + " out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  switch (letter) {
    case 'I': return identity(n);
    case 'X': return {n, bit, 0};
    case 'Y': return {n, bit, bit};
    case 'Z': return {n, 0, bit};
    default: detail::fail(std::string("invalid Pauli letter '") + letter + "'");
  }
}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  if (text.starts_with("+i")) {
    phase = 1;
    text.remove_prefix(2);
  } else if (text.starts_with("-i")) {
    phase = 3;
    text.remove_prefix(2);
  } else if (text.starts_with("+")) {
    text.remove_prefix(1);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  }
  const int n = static_cast<int>(text.size());
  detail::require(n <= kMaxPauliQubits, "Pauli string too long");
  std::uint64_t x = 0, z = 0;
  for (int j = 0; j < n; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << j;
    switch (text[j]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default: detail::fail("invalid character in Pauli string: '" + std::string(1, text[j]) + "'");
    }
  }
  return {n, x, z, phase};
}

char PauliString::letter(int qubit) const {
  const bool xb = (x_ >> qubit) & 1u;
  const bool zb = (z_ >> qubit) & 1u;
  if (xb && zb) return 'Y';
  if (xb) return 'X';
  if (zb) return 'Z';
  return 'I';
}

int PauliString::y_count() const { return std::popcount(x_ & z_); }

std::string PauliString::str() const {
  static constexpr const char* prefix[] = {"+", "+i", "-", "-i"};
  std::string s = prefix[phase_];
  for (int j = 0; j < n_; ++j) s += letter(j);
  return s;
}

PauliString multiply(const PauliString& p, const PauliString& q) {
  check_same_size(p, q);
  // In X^x Z^z form: P = i^{a} X^x1 Z^z1 with a = phase + #Y; Z^z1 X^x2 = (-1)^{z1.x2} X^x2 Z^z1.
  const int a = p.phase() + p.y_count();
  const int b = q.phase() + q.y_count();
  const int sign = std::popcount(p.z_bits() & q.x_bits()) & 1;
  const std::uint64_t x = p.x_bits() ^ q.x_bits();
  const std::uint64_t z = p.z_bits() ^ q.z_bits();
  const int ys = std::popcount(x & z);
  return {p.num_qubits(), x, z, a + b + 2 * sign - ys};
}

bool commutes(const PauliString& p, const PauliString& q) {
  check_same_size(p, q);
  const int s = std::popcount(p.x_bits() & q.z_bits()) + std::popcount(p.z_bits() & q.x_bits());
  return (s & 1) == 0;
}

int transpose_sign(const PauliString& p) { return (p.y_count() & 1) ? -1 : 1; }

QubitSet support(const PauliString& p) { return QubitSet(p.x_bits() | p.z_bits()); }

Operator to_dense(const PauliString& p, int cap) {
  const int n = p.num_qubits();
  if (n > cap)
    throw BudgetError("dense Pauli on " + std::to_string(n) + " qubits exceeds cap " + std::to_string(cap));
  const auto d = std::uint64_t{1} << n;
  const DenseAction act = dense_action(p);
  Operator m = Operator::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::uint64_t b = 0; b < d; ++b)
    m(static_cast<Eigen::Index>(b ^ act.xi), static_cast<Eigen::Index>(b)) = act.coef(b);
  return m;
}

Operator apply_left(const PauliString& p, const Operator& a) {
  check_operator_dim(p, a);
  const DenseAction act = dense_action(p);
  Operator out(a.rows(), a.cols());
  for (Eigen::Index b = 0; b < a.rows(); ++b)
    out.row(static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) ^ act.xi)) =
        act.coef(static_cast<std::uint64_t>(b)) * a.row(b);
  return out;
}

Operator apply_right(const Operator& a, const PauliString& p) {
  check_operator_dim(p, a);
  const DenseAction act = dense_action(p);
  Operator out(a.rows(), a.cols());
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    const auto src = static_cast<std::uint64_t>(c) ^ act.xi;
    out.col(c) = act.coef(static_cast<std::uint64_t>(c)) * a.col(static_cast<Eigen::Index>(src));
  }
  return out;
}

cplx trace_product(const PauliString& p, const Operator& a) {
  check_operator_dim(p, a);
  const DenseAction act = dense_action(p);
  cplx acc = 0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const auto ur = static_cast<std::uint64_t>(r);
    acc += act.coef(ur) * a(r, static_cast<Eigen::Index>(ur ^ act.xi));
  }
  return acc;
}

PauliString majorana(int index, int n) {
  if (index < 1 || index > 2 * n)
    throw ValidationError("Majorana index " + std::to_string(index) + " outside 1.." + std::to_string(2 * n));
  const int q = (index - 1) / 2;
  const std::uint64_t zs = (std::uint64_t{1} << q) - 1;
  const std::uint64_t bit = std::uint64_t{1} << q;
  return (index % 2 == 1) ? PauliString(n, bit, zs) : PauliString(n, bit, zs | bit);
}

PauliString majorana_product(std::span<const int> indices, int n) {
  PauliString acc = PauliString::identity(n);
  for (int a : indices) acc = acc * majorana(a, n);
  return acc;
}

std::optional<MajoranaMonomial> majorana_decomposition(const PauliString& p) {
  const int n = p.num_qubits();
  std::uint64_t x = p.x_bits();
  std::uint64_t z = p.z_bits();
  std::vector<int> picked;
  // Majoranas on qubit q only touch qubits <= q, so peel from the last qubit.
  for (int q = n - 1; q >= 0; --q) {
    const bool xb = (x >> q) & 1u;
    const bool zb = (z >> q) & 1u;
    auto take = [&](int idx) {
      const PauliString c = majorana(idx, n);
      x ^= c.x_bits();
      z ^= c.z_bits();
      picked.push_back(idx);
    };
    if (xb && !zb) {
      take(2 * q + 1);
    } else if (xb && zb) {
      take(2 * q + 2);
    } else if (!xb && zb) {
      take(2 * q + 1);
      take(2 * q + 2);
    }
  }
  if (x != 0 || z != 0) return std::nullopt;
  std::sort(picked.begin(), picked.end());
  const PauliString prod = majorana_product(picked, n);
  if (!prod.equal_up_to_phase(p)) return std::nullopt;
  return MajoranaMonomial{std::move(picked), mod4(p.phase() - prod.phase())};
}

}  // namespace gdesign
