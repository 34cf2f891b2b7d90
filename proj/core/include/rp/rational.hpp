// Exact integers and rationals on top of GMP, plus the handful of
// integer helpers (factorials, lcm) the rest of the library leans on.
#ifndef RP_RATIONAL_HPP
#define RP_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>

namespace rp {

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical rational from a numerator/denominator pair (gcd one, denominator
// positive). Throws division_by_zero_error for a zero denominator.
Rational make_rational(Integer num, Integer den);

// Parses "n", "-n" or "n/d" with arbitrary-precision parts.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& n);

bool is_integer(const Rational& q);

// Floor of log_base(value) for value >= 1.
unsigned long floor_log(const Integer& value, const Integer& base);

Integer factorial(int n);

// n (n-1) ... (n-k+1); empty product for k = 0.
Integer falling_factorial(int n, int k);

Integer binomial(int n, int k);

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// -infinity-aware degree values: std::nullopt stands for -infinity.
using DegValue = std::optional<Rational>;

inline bool deg_less(const DegValue& a, const DegValue& b) {
    if (!a) return static_cast<bool>(b);
    if (!b) return false;
    return *a < *b;
}

std::string to_string(const DegValue& d);

} // namespace rp

#endif
