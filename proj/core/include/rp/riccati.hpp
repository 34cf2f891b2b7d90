// The Riccati differential polynomial attached to a homogeneous linear ODE
// S(y) = f_n y^(n) + ... + f_0 y, kept in the r-basis
//
//     r_0 = 1,  r_1 = y0,  r_{i+1} = y0 r_i + D r_i   (D y_j = y_{j+1}),
//
// so that R = sum g_i r_i with g_i = f_i initially. The r-basis is closed
// under the three operations the solver needs:
//   * differentiation in y0 rescales and shifts the coefficient vector,
//   * evaluation at a series is the r-sequence recursion,
//   * the substitution y -> y + c x^mu is a Taylor expansion whose
//     coefficients are evaluations of the derivatives.
// Fully expanded monomial forms exist only as a (capped) test oracle.
#ifndef RP_RICCATI_HPP
#define RP_RICCATI_HPP

#include <map>
#include <vector>

#include "rp/puiseux.hpp"

namespace rp {

inline constexpr int kRBasisCap = 8;
inline constexpr int kExpandCap = 3;

struct LinearODE {
    // coeffs[i] multiplies y^(i); entries are ordinary polynomials in x
    // (integer exponents >= 0) over one tower, and coeffs[n] != 0.
    std::vector<PuiseuxPoly> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
    const ExtensionTower& tower() const { return coeffs.back().tower(); }
    // Checks the shape constraints above; throws domain_error.
    void validate() const;
};

class RiccatiOperator {
public:
    RiccatiOperator() = default;

    // g_0 .. g_n in the r-basis; the top coefficient may only vanish for the
    // flagged zero operator.
    static RiccatiOperator from_coeffs(std::vector<PuiseuxPoly> g);
    static RiccatiOperator zero_operator(const ExtensionTower& t);

    int order() const { return static_cast<int>(g_.size()) - 1; }
    bool is_zero() const;
    // Top coefficient vanished (order collapse); never produced by
    // substitution, kept as a guard.
    bool degenerate() const { return degenerate_; }
    const PuiseuxPoly& g(int i) const;
    const std::vector<PuiseuxPoly>& coeffs() const { return g_; }
    const ExtensionTower& tower() const { return tower_; }

    RiccatiOperator embed(const ExtensionTower& deeper) const;

    friend bool operator==(const RiccatiOperator& a, const RiccatiOperator& b);

private:
    std::vector<PuiseuxPoly> g_;
    ExtensionTower tower_;
    bool degenerate_ = false;
};

// Monomial differential polynomials in x, y_0, ..., y_k with Puiseux-style
// rational x-exponents: the expansion oracle for small operators.
class MonomialDiffPoly {
public:
    struct Monomial {
        std::vector<int> ypow; // exponent of y_j at index j, trailing zeros trimmed
        Rational xexp;
        bool operator<(const Monomial& o) const;
        bool operator==(const Monomial& o) const { return ypow == o.ypow && xexp == o.xexp; }
    };

    MonomialDiffPoly() = default;
    explicit MonomialDiffPoly(ExtensionTower t) : tower_(std::move(t)) {}

    static MonomialDiffPoly one(const ExtensionTower& t);
    static MonomialDiffPoly variable(const ExtensionTower& t, int j); // y_j

    bool is_zero() const { return terms_.empty(); }
    const std::map<Monomial, FieldElement>& terms() const { return terms_; }
    const ExtensionTower& tower() const { return tower_; }

    friend MonomialDiffPoly operator+(const MonomialDiffPoly& a, const MonomialDiffPoly& b);
    friend MonomialDiffPoly operator-(const MonomialDiffPoly& a, const MonomialDiffPoly& b);
    friend MonomialDiffPoly operator*(const MonomialDiffPoly& a, const MonomialDiffPoly& b);
    MonomialDiffPoly scaled_by_term(const FieldElement& c, const Rational& xexp) const;
    MonomialDiffPoly multiplied_by(const PuiseuxPoly& p) const;

    // Total derivative: d/dx on the x part plus D y_j = y_{j+1}.
    MonomialDiffPoly total_derivative() const;
    // Partial derivative in y_0.
    MonomialDiffPoly dy0() const;

    int total_degree() const; // in the y variables
    // Sum of the terms of exact total degree d.
    MonomialDiffPoly degree_part(int d) const;

    // Substitutes y_j -> psi^(j); exact in the body.
    PuiseuxPoly evaluate_at(const PuiseuxPoly& psi) const;

    friend bool operator==(const MonomialDiffPoly& a, const MonomialDiffPoly& b);

    std::string to_string() const;

private:
    void insert(const Monomial& m, const FieldElement& c);
    ExtensionTower tower_;
    std::map<Monomial, FieldElement> terms_;
};

// r_i fully expanded; i must stay within `cap`.
MonomialDiffPoly r_basis(int i, int cap = kRBasisCap);

// g_i := f_i; the r-basis coefficients are exactly the ODE coefficients.
RiccatiOperator from_linear_ode(const LinearODE& s);

// d^k/dy0^k R: order n-k with coefficients (i+k)_k g_{i+k}. k > n yields the
// flagged zero operator.
RiccatiOperator derivative_k(const RiccatiOperator& r, int k);

// [r_0(psi), ..., r_upto(psi)] with truncation floors propagated.
std::vector<TruncatedSeries> eval_r_sequence(const TruncatedSeries& psi, int upto);

// sum g_i r_i(psi); exact when psi is exact, floor-carrying otherwise.
TruncatedSeries evaluate(const RiccatiOperator& r, const TruncatedSeries& psi);
PuiseuxPoly evaluate(const RiccatiOperator& r, const PuiseuxPoly& psi);

// Coefficients of R(y + c x^mu) in the r-basis: the i-th one is
// (1/i!) * (d^i R)(c x^mu). c must be nonzero.
RiccatiOperator shift_substitute(const RiccatiOperator& r, const FieldElement& c,
                                 const Rational& mu);

// sum g_i * r_basis(i) fully expanded; oracle only.
MonomialDiffPoly expand_monomials(const RiccatiOperator& r, int cap = kExpandCap);

} // namespace rp

#endif
