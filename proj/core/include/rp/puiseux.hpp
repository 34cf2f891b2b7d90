// Finite Puiseux polynomials (sums c*x^q with rational exponents) and
// floor-tracking truncated series at x = +infinity. The governing data at
// +infinity are the maximal exponent deg_inf and its coefficient lc_inf;
// the "order at infinity" of a series is identified with deg_inf throughout.
//
// Values are immutable; all operations are pure.
#ifndef RP_PUISEUX_HPP
#define RP_PUISEUX_HPP

#include <map>
#include <string>

#include "rp/numfield.hpp"

namespace rp {

class PuiseuxPoly {
public:
    PuiseuxPoly() = default; // zero over Q
    explicit PuiseuxPoly(ExtensionTower tower) : tower_(std::move(tower)) {}

    static PuiseuxPoly zero(const ExtensionTower& t) { return PuiseuxPoly(t); }
    static PuiseuxPoly constant(const ExtensionTower& t, const FieldElement& c);
    // c * x^q
    static PuiseuxPoly term(const FieldElement& c, const Rational& q);

    bool is_zero() const { return terms_.empty(); }
    const ExtensionTower& tower() const { return tower_; }
    const std::map<Rational, FieldElement>& terms() const { return terms_; }
    int term_count() const { return static_cast<int>(terms_.size()); }
    FieldElement coeff(const Rational& q) const;

    // Maximal exponent with nonzero coefficient; nullopt encodes -infinity.
    DegValue deg_inf() const;
    // Coefficient of x^deg_inf; throws domain_error on zero input.
    FieldElement lc_inf() const;
    // Least exponent carried (for ramification bookkeeping); pre: nonzero.
    Rational min_exponent() const;
    // lcm of the exponent denominators; 1 for constants and zero.
    Integer ramification_index() const;

    PuiseuxPoly differentiate() const;

    friend PuiseuxPoly operator+(const PuiseuxPoly& a, const PuiseuxPoly& b);
    friend PuiseuxPoly operator-(const PuiseuxPoly& a, const PuiseuxPoly& b);
    friend PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b);
    PuiseuxPoly operator-() const;
    PuiseuxPoly scaled(const FieldElement& c) const;

    PuiseuxPoly embed(const ExtensionTower& deeper) const;
    // Drops every term with exponent < floor.
    PuiseuxPoly truncated_below(const Rational& floor) const;

    friend bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b);
    friend bool operator!=(const PuiseuxPoly& a, const PuiseuxPoly& b) { return !(a == b); }

    // Terms in decreasing exponent order: "c1*x^(q1) + c2*x^(q2) + ...".
    std::string to_string() const;

private:
    void insert_term(const Rational& q, const FieldElement& c);
    ExtensionTower tower_;
    std::map<Rational, FieldElement> terms_; // exponent -> nonzero coefficient
};

// A Puiseux polynomial known only above an exponent floor: terms with
// exponent >= floor are exact, anything below has been discarded. The exact
// flag means nothing was discarded at all.
class TruncatedSeries {
public:
    TruncatedSeries() : exact_(true) {}

    static TruncatedSeries exact(PuiseuxPoly body);
    static TruncatedSeries truncated(PuiseuxPoly body, Rational floor);

    const PuiseuxPoly& body() const { return body_; }
    bool is_exact() const { return exact_; }
    const Rational& floor() const; // pre: !is_exact()

    DegValue deg_inf() const { return body_.deg_inf(); }
    const ExtensionTower& tower() const { return body_.tower(); }

    TruncatedSeries differentiate() const;
    TruncatedSeries embed(const ExtensionTower& deeper) const;

    std::string to_string() const;

private:
    PuiseuxPoly body_;
    Rational floor_;
    bool exact_ = false;
};

} // namespace rp

#endif
