#include "hx/numbers.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace hx {

BigInt binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

std::uint64_t binomial_u64(long long n, long long k) {
  BigInt b = binomial(n, k);
  if (b > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("binomial_u64: C(" + std::to_string(n) + "," +
                              std::to_string(k) + ") exceeds 64 bits");
  return static_cast<std::uint64_t>(b);
}

BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt r = 1, b = base;
  while (exp != 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

Rational rpow(const Rational& base, long long exp) {
  if (exp == 0) return Rational(1);
  if (exp < 0) {
    if (base == 0) throw std::domain_error("rpow: zero base, negative exponent");
    return Rational(1) / rpow(base, -exp);
  }
  Rational r = 1, b = base;
  while (exp != 0) {
    if (exp & 1) r *= b;
    b *= b;
    exp >>= 1;
  }
  return r;
}

BigInt floor_rational(const Rational& r) {
  BigInt q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

BigInt ceil_rational(const Rational& r) { return -floor_rational(-r); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("rational_from_double: non-finite");
  if (x == 0.0) return Rational(0);
  int exp2 = 0;
  double m = std::frexp(x, &exp2);  // x = m * 2^exp2, |m| in [1/2, 1)
  // 53 doublings make the mantissa integral.
  std::int64_t mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  exp2 -= 53;
  Rational r(mant);
  if (exp2 >= 0)
    r *= ipow(BigInt(2), static_cast<unsigned long>(exp2));
  else
    r /= ipow(BigInt(2), static_cast<unsigned long>(-exp2));
  return r;
}

double next_down(double x) {
  return std::nextafter(x, -std::numeric_limits<double>::infinity());
}

Rational exp_neg_sqrt_rounded_down(int s) {
  if (s < 0) throw std::domain_error("exp_neg_sqrt_rounded_down: s < 0");
  double v = std::exp(-std::sqrt(static_cast<double>(s)));
  // Two ulp steps down absorb any libm rounding slack.
  v = next_down(next_down(v));
  if (v < 0.0) v = 0.0;
  return rational_from_double(v);
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

}  // namespace hx
