#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hx {

// Exact arithmetic backs every density and threshold comparison; floating
// point appears only where a formula involves e^x, and then rounded down
// before use so asserted bounds stay conservative.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(long long n, long long k);

// C(n,k) when it fits in 64 bits; throws std::overflow_error otherwise.
std::uint64_t binomial_u64(long long n, long long k);

BigInt ipow(const BigInt& base, unsigned long exp);

// base^exp with exp possibly negative; base must be nonzero for exp < 0.
Rational rpow(const Rational& base, long long exp);

BigInt floor_rational(const Rational& r);
BigInt ceil_rational(const Rational& r);

// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double x);

// Largest representable double strictly below x.
double next_down(double x);

// e^{-sqrt(s)} rounded down a couple of ulps, as an exact rational.
// Used by the Zarankiewicz guarantee thresholds.
Rational exp_neg_sqrt_rounded_down(int s);

std::string to_string(const Rational& r);

}  // namespace hx
