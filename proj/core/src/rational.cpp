#include "largesol/rational.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace largesol {

std::optional<Rational> to_rational(double x, std::int64_t max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    if (x == std::floor(x) && std::fabs(x) < 9.0e15) return Rational(static_cast<long long>(x));

    // Continued-fraction convergents of |x|; stop at the first one that rounds back to x.
    const bool neg = x < 0;
    double rem = std::fabs(x);
    BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(rem);
        const BigInt c = static_cast<long long>(fl);
        const BigInt p2 = c * p1 + p0;
        const BigInt q2 = c * q1 + q0;
        if (q2 > max_den) return std::nullopt;
        const double approx = static_cast<double>(p2) / static_cast<double>(q2);
        if (approx == std::fabs(x)) {
            Rational r(p2, q2);
            return neg ? Rational(-r) : r;
        }
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double frac = rem - fl;
        if (frac <= 0) return std::nullopt;
        rem = 1.0 / frac;
    }
    return std::nullopt;
}

double to_double(const Rational& q) { return static_cast<double>(q); }

std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << boost::multiprecision::numerator(q);
    if (boost::multiprecision::denominator(q) != 1) os << '/' << boost::multiprecision::denominator(q);
    return os.str();
}

Rational pow_int(const Rational& base, long n) {
    if (n < 0) return Rational(1) / pow_int(base, -n);
    Rational result = 1, b = base;
    while (n > 0) {
        if (n & 1) result *= b;
        b *= b;
        n >>= 1;
    }
    return result;
}

std::optional<BigInt> exact_root(const BigInt& n, unsigned k) {
    if (n < 0 || k == 0) return std::nullopt;
    if (n < 2 || k == 1) return n;
    // Newton iteration from an upper bound, standard integer k-th root.
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
    BigInt x = BigInt(1) << (bits / k + 1);
    while (true) {
        BigInt y = ((k - 1) * x + n / boost::multiprecision::pow(x, k - 1)) / k;
        if (y >= x) break;
        x = y;
    }
    if (boost::multiprecision::pow(x, k) == n) return x;
    return std::nullopt;
}

std::optional<Rational> exact_pow(const Rational& base, const Rational& exponent) {
    if (base < 0) return std::nullopt;
    if (base == 0) {
        if (exponent > 0) return Rational(0);
        return std::nullopt;
    }
    const BigInt num = boost::multiprecision::numerator(exponent);
    const BigInt den = boost::multiprecision::denominator(exponent);
    if (den > 4096 || boost::multiprecision::abs(num) > 4096) return std::nullopt;
    const unsigned q = static_cast<unsigned>(den);
    const auto rn = exact_root(boost::multiprecision::numerator(base), q);
    const auto rd = exact_root(boost::multiprecision::denominator(base), q);
    if (!rn || !rd) return std::nullopt;
    return pow_int(Rational(*rn, *rd), static_cast<long>(num));
}

}  // namespace largesol
