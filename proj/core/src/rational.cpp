#include "rp/rational.hpp"

#include <cctype>

#include "rp/errors.hpp"

namespace rp {

Rational make_rational(Integer num, Integer den) {
    if (den == 0) throw division_by_zero_error("rational with zero denominator");
    Rational q;
    mpq_set_num(q.get_mpq_t(), num.get_mpz_t());
    mpq_set_den(q.get_mpq_t(), den.get_mpz_t());
    q.canonicalize();
    return q;
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw parse_error("empty rational literal");
    auto digits_ok = [](const std::string& part) {
        if (part.empty()) return false;
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        if (!digits_ok(s)) throw parse_error("bad integer literal: " + text);
        return Rational(Integer(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits_ok(num) || !digits_ok(den))
        throw parse_error("bad rational literal: " + text);
    return make_rational(Integer(num), Integer(den));
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& n) { return n.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

unsigned long floor_log(const Integer& value, const Integer& base) {
    if (value < 1 || base < 2) throw domain_error("floor_log arguments out of range");
    unsigned long k = 0;
    Integer pow = base;
    while (pow <= value) {
        pow *= base;
        ++k;
    }
    return k;
}

Integer factorial(int n) {
    if (n < 0) throw domain_error("factorial of negative argument");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Integer falling_factorial(int n, int k) {
    if (k < 0) throw domain_error("falling factorial with negative step count");
    Integer r = 1;
    for (int j = 0; j < k; ++j) r *= Integer(n - j);
    return r;
}

Integer binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

std::string to_string(const DegValue& d) {
    return d ? to_string(*d) : std::string("-inf");
}

} // namespace rp
