#include "gdesign/bounds.hpp"

#include <cctype>
#include <cmath>
#include <numbers>

#include "gdesign/errors.hpp"

namespace gdesign {
namespace {

bool is_power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

void check_dims(std::uint64_t d, std::uint64_t d_l) {
  detail::require(is_power_of_two(d) && is_power_of_two(d_l), "d and d_L must be powers of 2");
  detail::require(d_l < d, "d_L must be smaller than d (the complement must be nonempty)");
  detail::require(d_l >= 2, "d_L must be at least 2 (the region must hold the perturbation)");
}

std::string str(std::uint64_t v) { return std::to_string(v); }

Rational two_times_one_minus(const Rational& p) { return Rational(2) * (Rational(1) - p); }

BoundReport report(std::string formula, std::vector<std::pair<std::string, std::string>> inputs, const Rational& exact,
                   std::string reference) {
  BoundReport r;
  r.formula = std::move(formula);
  r.inputs = std::move(inputs);
  r.exact = exact;
  r.value = to_double(exact);
  r.reference = std::move(reference);
  return r;
}

void check_probability(const Rational& p, const char* name) {
  if (p < 0 || p > 1) throw ValidationError(std::string(name) + " must lie in [0,1], got " + to_string(p));
}

}  // namespace

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt johnson_ball_size(unsigned n, unsigned m) {
  BigInt s = 0;
  for (unsigned k = 0; k <= std::min(m, n); ++k) {
    const BigInt b = binomial(n, k);
    s += b * b;
  }
  return s;
}

std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

Rational parse_rational(const std::string& text) {
  const auto bad = [&] { return ValidationError("not a rational number: '" + text + "'"); };
  if (text.empty()) throw bad();
  const auto parse_int = [&](std::string s) -> BigInt {
    if (s.empty() || s == "-" || s == "+") throw bad();
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) throw bad();
    if (s[0] == '+') s.erase(0, 1);
    return BigInt(s);
  };
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const BigInt num = parse_int(text.substr(0, slash));
    const BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw ValidationError("zero denominator in '" + text + "'");
    return Rational(num, den);
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    std::string whole = text.substr(0, dot);
    const bool neg = !whole.empty() && whole[0] == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    const BigInt w = parse_int(whole);
    if (frac.empty()) return Rational(w);
    const BigInt f = parse_int(frac);
    if (frac[0] == '-' || frac[0] == '+') throw bad();
    const BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac.size()));
    const Rational mag = Rational(boost::multiprecision::abs(w)) + Rational(f, scale);
    return neg ? Rational(-mag) : mag;
  }
  return Rational(parse_int(text));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

BoundReport discrimination_bound(const Rational& p_shallow, const Rational& p_haar) {
  check_probability(p_shallow, "p_shallow");
  check_probability(p_haar, "p_haar");
  return report("discrimination", {{"p_shallow", to_string(p_shallow)}, {"p_haar", to_string(p_haar)}},
                Rational(2) * (p_shallow - p_haar), "2 (p_shallow - p_haar)");
}

double discrimination_bound(double p_shallow, double p_haar) {
  if (!(p_shallow >= 0 && p_shallow <= 1)) throw ValidationError("p_shallow must lie in [0,1]");
  if (!(p_haar >= 0 && p_haar <= 1)) throw ValidationError("p_haar must lie in [0,1]");
  return 2.0 * (p_shallow - p_haar);
}

BoundReport matchgate_depth_bound(int n) {
  if (n < 2 || n % 2 != 0) throw ValidationError("matchgate depth bound needs an even n >= 2, got " + std::to_string(n));
  const Rational v = Rational(2) - Rational(n + 1, 2 * n - 1);
  return report("matchgate-depth", {{"n", std::to_string(n)}}, v, "2 - (n+1)/(2n-1)");
}

Rational exact_haar_povm_probability(FormKind kind, std::uint64_t d, std::uint64_t d_l) {
  check_dims(d, d_l);
  const BigInt D = d, L = d_l, Lb = d / d_l;
  const int s = kind == FormKind::orthogonal ? 1 : -1;
  if (kind == FormKind::symplectic) detail::require(d >= 4, "symplectic probability needs d >= 4");
  const BigInt num = -2 * L * Lb * Lb + D * L * L * Lb + s * D * D;
  const BigInt den = D * Lb * (D + 2 * s) * (D - s);
  return Rational(num, den);
}

BoundReport form_bound(FormKind kind, std::uint64_t d, std::uint64_t d_l) {
  check_dims(d, d_l);
  const bool orth = kind == FormKind::orthogonal;
  if (!orth) detail::require(d >= 4, "symplectic bound needs d >= 4");
  const BigInt D = d, L = d_l;
  const int s = orth ? 1 : -1;
  const Rational p(L * L + s * L - 2, (D + 2 * s) * (D - s));
  return report(orth ? "orthogonal" : "symplectic", {{"d", str(d)}, {"d_L", str(d_l)}}, two_times_one_minus(p),
                orth ? "2 (1 - (d_L^2 + d_L - 2)/((d+2)(d-1)))" : "2 (1 - (d_L^2 - d_L - 2)/((d-2)(d+1)))");
}

BoundReport orthogonal_bound(std::uint64_t d, std::uint64_t d_l) { return form_bound(FormKind::orthogonal, d, d_l); }
BoundReport symplectic_bound(std::uint64_t d, std::uint64_t d_l) { return form_bound(FormKind::symplectic, d, d_l); }

Rational mixed_unitary_haar_probability(std::uint64_t d, std::uint64_t d_l) {
  check_dims(d, d_l);
  const BigInt D = d, L = d_l;
  return Rational(L * L - 1, D * D - 1);
}

BoundReport mixed_unitary_bound(std::uint64_t d, std::uint64_t d_l) {
  return report("mixed-unitary", {{"d", str(d)}, {"d_L", str(d_l)}},
                two_times_one_minus(mixed_unitary_haar_probability(d, d_l)), "2 (1 - (d_L^2 - 1)/(d^2 - 1))");
}

BoundReport pauli_compatible_bound(const Rational& r) {
  check_probability(r, "r");
  return report("pauli-compatible", {{"r", to_string(r)}}, two_times_one_minus(r), "2 (1 - r)");
}

BoundReport neighborhood_ratio_bound(const BigInt& ball, const BigInt& component) {
  detail::require(component > 0, "component size must be positive");
  detail::require(ball >= 0 && ball <= component, "ball size must lie in [0, component]");
  return report("neighborhood-ratio", {{"ball", ball.str()}, {"component", component.str()}},
                two_times_one_minus(Rational(ball, component)), "2 (1 - |ball| / |component|)");
}

BoundReport simple_gatecount_bound(const BigInt& s_size, unsigned n_gates, const BigInt& component) {
  detail::require(component > 0, "component size must be positive");
  detail::require(s_size >= 0, "generator count must be nonnegative");
  const BigInt reach = boost::multiprecision::pow(s_size, n_gates);
  const Rational v = reach >= component ? Rational(0) : two_times_one_minus(Rational(reach, component));
  return report("simple-gatecount",
                {{"S", s_size.str()}, {"N", std::to_string(n_gates)}, {"component", component.str()}}, v,
                "max(0, 2 (1 - |S|^N / |component|))");
}

double stirling_f(double c) {
  if (!(c > 1)) throw ValidationError("f(c) needs c > 1");
  return c * std::pow(c - 1, 1.0 / c - 1) / 2;
}

double gatecount_envelope(unsigned n, double c) {
  if (!(c > 2)) throw ValidationError("the gate-count envelope needs c > 2");
  detail::require(n >= 1, "n must be positive");
  const double nn = n;
  return c * (nn + c) / (2 * (c - 1) * std::sqrt(std::numbers::pi * nn)) * std::pow(stirling_f(c), 2 * nn);
}

GatecountRatio matchgate_gatecount_ratio(unsigned n, double c) {
  if (!(c > 2)) throw ValidationError("c must exceed 2, got " + std::to_string(c));
  detail::require(n >= 1, "n must be positive");
  GatecountRatio g;
  g.n = n;
  g.c = c;
  g.f = stirling_f(c);
  g.envelope = gatecount_envelope(n, c);
  const double m = n / c;
  if (std::abs(m - std::round(m)) < 1e-12)
    g.exact = Rational(johnson_ball_size(n, static_cast<unsigned>(std::lround(m))), binomial(2 * n, n));
  return g;
}

EnvelopeThreshold envelope_threshold(unsigned c, unsigned n_max) {
  detail::require(c > 2, "c must exceed 2");
  EnvelopeThreshold t;
  t.c = c;
  t.n_max = n_max;
  for (unsigned n = (n_max / c) * c; n >= c; n -= c) {
    const auto g = matchgate_gatecount_ratio(n, c);
    if (to_double(*g.exact) > g.envelope) break;
    t.threshold = n;
  }
  return t;
}

}  // namespace gdesign
