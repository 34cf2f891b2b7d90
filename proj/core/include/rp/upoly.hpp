// Dense univariate polynomials over a FieldElement coefficient field:
// arithmetic, gcd, squarefree decomposition, irreducible factorization
// (lifting over Q, norm-based over towers) and root extraction with
// automatic extension generation.
//
// All functions are pure; inputs are never mutated.
#ifndef RP_UPOLY_HPP
#define RP_UPOLY_HPP

#include <string>
#include <utility>
#include <vector>

#include "rp/errors.hpp"
#include "rp/numfield.hpp"

namespace rp {

class Poly {
public:
    Poly() = default; // zero over Q in variable "x"
    explicit Poly(ExtensionTower tower, std::string variable = "x");

    static Poly from_coeffs(const ExtensionTower& tower, std::string variable,
                            std::vector<FieldElement> coeffs);
    static Poly constant(const ExtensionTower& tower, std::string variable,
                         const FieldElement& c);
    // c * X^k
    static Poly monomial(const ExtensionTower& tower, std::string variable,
                         const FieldElement& c, int k);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; } // -1 when zero
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    FieldElement coeff(int i) const;
    const FieldElement& leading() const; // pre: nonzero
    const std::vector<FieldElement>& coeffs() const { return coeffs_; }
    const ExtensionTower& tower() const { return tower_; }
    const std::string& variable() const { return var_; }

    Poly embed(const ExtensionTower& deeper) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly scaled(const FieldElement& c) const;
    Poly shifted(int k) const; // multiply by X^k

    // Euclidean division; the divisor must be nonzero.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
    // Division known to be exact; throws internal_error on a remainder.
    friend Poly divexact(const Poly& a, const Poly& b);

    Poly monic() const; // zero stays zero
    Poly derivative() const;
    FieldElement eval(const FieldElement& point) const;
    // Substitutes another polynomial for the variable (Horner).
    Poly compose(const Poly& inner) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // Deterministic order: degree first, then coefficients from the top.
    static int compare(const Poly& a, const Poly& b);

    std::string to_string() const;

private:
    void trim();
    ExtensionTower tower_;
    std::string var_ = "x";
    std::vector<FieldElement> coeffs_; // ascending, trailing zeros trimmed
};

// Monic gcd; gcd(a, 0) = monic(a).
Poly gcd(const Poly& a, const Poly& b);

// Yun decomposition in characteristic zero: pairwise-coprime squarefree
// factors with exponents, product reproducing monic(p). Constants map to {}.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);

inline constexpr int kDefaultExtensionCap = 3;

// Thrown when factorization would have to run over a tower deeper than the
// configured cap; carries the offending polynomial.
struct depth_cap_error : error {
    depth_cap_error(std::string msg, Poly unsplit_factor)
        : error(std::move(msg)), unsplit(std::move(unsplit_factor)) {}
    Poly unsplit;
};

// Complete monic irreducible factorization over the coefficient tower.
// Deterministically sorted by (degree, coefficient order).
std::vector<std::pair<Poly, int>> factor(const Poly& p,
                                         int depth_cap = kDefaultExtensionCap);

struct RootSet {
    struct Entry {
        FieldElement root;
        int multiplicity = 0;
        ExtensionTower tower;   // tower after any adjunction for this root
        int factor_ordinal = 0; // index of the irreducible factor over the input tower
        int factor_degree = 0;  // its degree over the input tower
    };
    std::vector<Entry> entries;
    std::vector<Poly> unsplit; // nonlinear factors abandoned at the depth cap
    bool capped = false;
};

// All roots of p reachable by adjoining generators up to `depth_cap` total
// levels, with multiplicities; each entry carries the tower its root lives in.
RootSet roots_with_adjunction(const Poly& p, const ExtensionTower& tower,
                              int depth_cap = kDefaultExtensionCap);

// Bridge for the spec-level adjunction operation: validates and appends one
// extension level described by an irreducible monic Poly over `tower`.
ExtensionTower adjoin(const ExtensionTower& tower, const Poly& minpoly);

// Internal entry points exposed for tests.
namespace fq {
// Irreducible factors (without multiplicity) of a squarefree monic
// polynomial with rational coefficients.
std::vector<Poly> factor_squarefree_rational(const Poly& p);
} // namespace fq

} // namespace rp

#endif
