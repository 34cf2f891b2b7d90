// Exact arithmetic over Q and over towers of simple algebraic extensions
// Q(theta1)(theta2)... Each level is described by a monic minimal polynomial
// over the field below it; elements are stored in nested polynomial
// coordinates, reduced and trimmed so that equal values have identical
// representations.
//
// Towers and elements are immutable after construction and may be shared
// freely across threads.
#ifndef RP_NUMFIELD_HPP
#define RP_NUMFIELD_HPP

#include <memory>
#include <string>
#include <vector>

#include "rp/rational.hpp"

namespace rp {

class FieldElement;

namespace detail {

// Nested coordinates: at depth 0 only `rat` is meaningful; at depth k > 0
// `coords` holds depth-(k-1) values with trailing zeros trimmed, so the
// zero element is always the empty vector.
struct Value {
    Rational rat;
    std::vector<Value> coords;
};

struct TowerLevel {
    std::shared_ptr<const TowerLevel> below;
    std::string name;
    std::vector<FieldElement> minpoly; // monic, ascending, coefficients below
    std::vector<Value> minpoly_v;      // same coefficients as raw coordinates
    int degree = 0;
    int depth = 0;
};

} // namespace detail

class ExtensionTower {
public:
    ExtensionTower() = default; // the rationals

    int depth() const;
    // Product of the level degrees; 1 for Q.
    Integer degree_over_q() const;
    bool is_rational() const { return top_ == nullptr; }

    // Degree, generator name and minimal polynomial (coefficients living in
    // the tower one level down) of level `k` (0-based from the bottom).
    int level_degree(int k) const;
    const std::string& level_name(int k) const;
    const std::vector<FieldElement>& level_minpoly(int k) const;

    ExtensionTower prefix(int levels) const;

    friend bool operator==(const ExtensionTower& a, const ExtensionTower& b) {
        return a.top_ == b.top_;
    }

    std::shared_ptr<const detail::TowerLevel> handle() const { return top_; }

private:
    friend class FieldElement;
    friend ExtensionTower adjoin(const ExtensionTower&, const std::vector<FieldElement>&);
    std::shared_ptr<const detail::TowerLevel> top_;
};

// True when every level of `a` is (pointer-identically) a level of `b`.
bool is_prefix(const ExtensionTower& a, const ExtensionTower& b);

// The deeper of two prefix-related towers; throws tower_mismatch_error when
// neither embeds in the other.
const ExtensionTower& common_tower(const ExtensionTower& a, const ExtensionTower& b);

// Appends one level. The minimal polynomial is given by ascending
// coefficients over `tower` and must be monic of degree >= 2; irreducibility
// is the caller's responsibility (certified by the factorization routines).
ExtensionTower adjoin(const ExtensionTower& tower, const std::vector<FieldElement>& minpoly);

class FieldElement {
public:
    FieldElement() = default; // 0 in Q
    FieldElement(const Rational& q);
    FieldElement(long n);

    static FieldElement zero(const ExtensionTower& t);
    static FieldElement one(const ExtensionTower& t);
    static FieldElement from_rational(const ExtensionTower& t, const Rational& q);
    // Generator of the top level; requires depth >= 1.
    static FieldElement generator(const ExtensionTower& t);
    // Element of `t` from coordinates over the tower one level down.
    static FieldElement from_coords(const ExtensionTower& t, std::vector<FieldElement> coords);

    const ExtensionTower& tower() const { return tower_; }
    bool is_zero() const;
    bool is_one() const;
    // True when the value lies in Q (regardless of the ambient tower).
    bool is_rational_value() const;
    Rational rational_value() const; // pre: is_rational_value()

    // Top-level coordinates as elements of the tower one level down,
    // trailing zeros trimmed. Requires depth >= 1.
    std::vector<FieldElement> coords() const;

    FieldElement embed(const ExtensionTower& deeper) const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& b) { return *this = *this + b; }
    FieldElement& operator-=(const FieldElement& b) { return *this = *this - b; }
    FieldElement& operator*=(const FieldElement& b) { return *this = *this * b; }

    FieldElement invert() const;
    FieldElement pow(long e) const; // negative e inverts first

    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    // Canonical total order on representations (used for deterministic
    // sorting, not for field semantics).
    static int compare(const FieldElement& a, const FieldElement& b);

    std::string to_string() const;

private:
    friend ExtensionTower adjoin(const ExtensionTower&, const std::vector<FieldElement>&);
    ExtensionTower tower_;
    detail::Value v_;
};

} // namespace rp

#endif
