#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gdesign/groups.hpp"

namespace gdesign {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(unsigned n, unsigned k);
/// Sum_{k<=m} C(n,k)^2.
BigInt johnson_ball_size(unsigned n, unsigned m);

std::string to_string(const Rational& r);
/// Accepts "p/q", integers and finite decimals ("0.25").
Rational parse_rational(const std::string& text);
double to_double(const Rational& r);

struct BoundReport {
  std::string formula;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::optional<Rational> exact;
  double value = 0.0;
  /// Closed form in words, e.g. "2 - (n+1)/(2n-1)".
  std::string reference;

  std::string exact_string() const { return exact ? to_string(*exact) : std::string(); }
};

/// 2(p_shallow - p_haar).
BoundReport discrimination_bound(const Rational& p_shallow, const Rational& p_haar);
double discrimination_bound(double p_shallow, double p_haar);

BoundReport matchgate_depth_bound(int n);
BoundReport orthogonal_bound(std::uint64_t d, std::uint64_t d_l);
BoundReport symplectic_bound(std::uint64_t d, std::uint64_t d_l);
BoundReport form_bound(FormKind kind, std::uint64_t d, std::uint64_t d_l);

/// Unreduced Haar POVM probability for the form-preserving groups.
Rational exact_haar_povm_probability(FormKind kind, std::uint64_t d, std::uint64_t d_l);

/// (d_L^2 - 1)/(d^2 - 1): Haar probability of the k=1 mixed-unitary POVM.
Rational mixed_unitary_haar_probability(std::uint64_t d, std::uint64_t d_l);
BoundReport mixed_unitary_bound(std::uint64_t d, std::uint64_t d_l);

BoundReport pauli_compatible_bound(const Rational& r);
BoundReport neighborhood_ratio_bound(const BigInt& ball, const BigInt& component);
/// max(0, 2(1 - |S|^N / component)).
BoundReport simple_gatecount_bound(const BigInt& s_size, unsigned n_gates, const BigInt& component);

/// c (c-1)^(1/c - 1) / 2.
double stirling_f(double c);
/// c(n+c) / (2(c-1) sqrt(pi n)) f(c)^(2n).
double gatecount_envelope(unsigned n, double c);

struct GatecountRatio {
  unsigned n = 0;
  double c = 0.0;
  /// Sum_{k<=n/c} C(n,k)^2 / C(2n,n); set when c divides n.
  std::optional<Rational> exact;
  double f = 0.0;
  double envelope = 0.0;
};
GatecountRatio matchgate_gatecount_ratio(unsigned n, double c);

struct EnvelopeThreshold {
  double c = 0.0;
  unsigned n_max = 0;
  /// Smallest multiple of c from which exact <= envelope holds up to n_max.
  std::optional<unsigned> threshold;
};
/// c must be an integer > 2.
EnvelopeThreshold envelope_threshold(unsigned c, unsigned n_max);

}  // namespace gdesign
