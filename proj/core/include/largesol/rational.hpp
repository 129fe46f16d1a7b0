#pragma once

// Exact rational arithmetic for the closed-form constants.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace largesol {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Smallest-denominator rational that rounds to exactly `x`, if its
/// denominator does not exceed `max_den`.
std::optional<Rational> to_rational(double x, std::int64_t max_den = 1'000'000);

double to_double(const Rational& q);
std::string to_string(const Rational& q);

Rational pow_int(const Rational& base, long n);

/// Integer k-th root of a non-negative integer, if it is a perfect k-th power.
std::optional<BigInt> exact_root(const BigInt& n, unsigned k);

/// base^(p/q) when the result is rational; nullopt otherwise.
/// Requires base >= 0 and a reduced exponent with positive denominator.
std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent);

}  // namespace largesol
