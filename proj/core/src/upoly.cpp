#include "rp/upoly.hpp"

#include <algorithm>
#include <sstream>

namespace rp {

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly::Poly(ExtensionTower tower, std::string variable)
    : tower_(std::move(tower)), var_(std::move(variable)) {}

Poly Poly::from_coeffs(const ExtensionTower& tower, std::string variable,
                       std::vector<FieldElement> coeffs) {
    Poly p(tower, std::move(variable));
    p.coeffs_.reserve(coeffs.size());
    for (auto& c : coeffs) p.coeffs_.push_back(c.embed(tower));
    p.trim();
    return p;
}

Poly Poly::constant(const ExtensionTower& tower, std::string variable, const FieldElement& c) {
    return from_coeffs(tower, std::move(variable), {c});
}

Poly Poly::monomial(const ExtensionTower& tower, std::string variable, const FieldElement& c,
                    int k) {
    if (k < 0) throw domain_error("negative monomial exponent");
    std::vector<FieldElement> v(static_cast<std::size_t>(k) + 1, FieldElement::zero(tower));
    v.back() = c;
    return from_coeffs(tower, std::move(variable), std::move(v));
}

FieldElement Poly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(coeffs_.size())) return FieldElement::zero(tower_);
    return coeffs_[static_cast<std::size_t>(i)];
}

const FieldElement& Poly::leading() const {
    if (is_zero()) throw domain_error("leading coefficient of the zero polynomial");
    return coeffs_.back();
}

Poly Poly::embed(const ExtensionTower& deeper) const {
    Poly p(deeper, var_);
    p.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) p.coeffs_.push_back(c.embed(deeper));
    return p;
}

namespace {
void require_same_variable(const Poly& a, const Poly& b) {
    if (!a.is_zero() && !b.is_zero() && a.variable() != b.variable())
        throw domain_error("polynomials in different variables");
}
const std::string& pick_var(const Poly& a, const Poly& b) {
    return a.is_zero() && !b.is_zero() ? b.variable() : a.variable();
}
} // namespace

Poly operator+(const Poly& a, const Poly& b) {
    require_same_variable(a, b);
    const ExtensionTower& t = common_tower(a.tower(), b.tower());
    Poly r(t, pick_var(a, b));
    const std::size_t n = std::max(a.coeffs_.size(), b.coeffs_.size());
    r.coeffs_.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        r.coeffs_.push_back(a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i)));
    r.trim();
    return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
    Poly r(tower_, var_);
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) r.coeffs_.push_back(-c);
    return r;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_variable(a, b);
    const ExtensionTower& t = common_tower(a.tower(), b.tower());
    if (a.is_zero() || b.is_zero()) return Poly(t, pick_var(a, b));
    Poly r(t, pick_var(a, b));
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, FieldElement::zero(t));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    r.trim();
    return r;
}

Poly Poly::scaled(const FieldElement& c) const {
    const ExtensionTower& t = common_tower(tower_, c.tower());
    Poly r(t, var_);
    r.coeffs_.reserve(coeffs_.size());
    for (const auto& x : coeffs_) r.coeffs_.push_back(x * c);
    r.trim();
    return r;
}

Poly Poly::shifted(int k) const {
    if (k < 0) throw domain_error("negative shift");
    if (is_zero()) return *this;
    Poly r(tower_, var_);
    r.coeffs_.assign(static_cast<std::size_t>(k), FieldElement::zero(tower_));
    r.coeffs_.insert(r.coeffs_.end(), coeffs_.begin(), coeffs_.end());
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    require_same_variable(a, b);
    if (b.is_zero()) throw division_by_zero_error("polynomial division by zero");
    const ExtensionTower& t = common_tower(a.tower(), b.tower());
    Poly rem = a.embed(t);
    Poly div = b.embed(t);
    Poly quo(t, pick_var(a, b));
    if (rem.degree() >= div.degree())
        quo.coeffs_.assign(static_cast<std::size_t>(rem.degree() - div.degree()) + 1,
                           FieldElement::zero(t));
    const FieldElement lead_inv = div.leading().invert();
    while (rem.degree() >= div.degree()) {
        const int shift = rem.degree() - div.degree();
        FieldElement c = rem.leading() * lead_inv;
        quo.coeffs_[static_cast<std::size_t>(shift)] = c;
        for (int j = 0; j <= div.degree(); ++j) {
            std::size_t k = static_cast<std::size_t>(shift + j);
            rem.coeffs_[k] = rem.coeffs_[k] - c * div.coeffs_[static_cast<std::size_t>(j)];
        }
        rem.trim();
    }
    quo.trim();
    return {std::move(quo), std::move(rem)};
}

Poly divexact(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw internal_error("division expected to be exact");
    return q;
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scaled(leading().invert());
}

Poly Poly::derivative() const {
    Poly r(tower_, var_);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        r.coeffs_.push_back(coeffs_[i] * FieldElement::from_rational(tower_, Rational(static_cast<long>(i))));
    r.trim();
    return r;
}

FieldElement Poly::eval(const FieldElement& point) const {
    const ExtensionTower& t = common_tower(tower_, point.tower());
    FieldElement acc = FieldElement::zero(t);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * point + coeffs_[i];
    return acc;
}

Poly Poly::compose(const Poly& inner) const {
    const ExtensionTower& t = common_tower(tower_, inner.tower());
    Poly acc(t, inner.is_zero() ? var_ : inner.variable());
    for (std::size_t i = coeffs_.size(); i-- > 0;)
        acc = acc * inner + Poly::constant(t, acc.variable(), coeffs_[i]);
    return acc;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return false;
    for (int i = 0; i <= a.degree(); ++i)
        if (a.coeff(i) != b.coeff(i)) return false;
    return true;
}

int Poly::compare(const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
    for (int i = a.degree(); i >= 0; --i) {
        int c = FieldElement::compare(a.coeff(i), b.coeff(i));
        if (c != 0) return c;
    }
    return 0;
}

std::string Poly::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        if (coeffs_[i].is_zero()) continue;
        std::string cs = coeffs_[i].to_string();
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        bool wrap = cs.find(' ') != std::string::npos;
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        bool unit = cs == "1";
        if (i == 0) {
            out << (wrap ? "(" + cs + ")" : cs);
        } else {
            if (!unit) out << (wrap ? "(" + cs + ")" : cs) << "*";
            out << var_;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly u = a, v = b;
    while (!v.is_zero()) {
        Poly r = divmod(u, v).second;
        u = std::move(v);
        v = std::move(r);
    }
    return u.monic();
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p) {
    if (p.is_zero()) throw domain_error("squarefree decomposition of the zero polynomial");
    std::vector<std::pair<Poly, int>> out;
    if (p.degree() < 1) return out;
    Poly f = p.monic();
    Poly fp = f.derivative();
    Poly u = gcd(f, fp);
    Poly v = divexact(f, u);
    Poly w = divexact(fp, u);
    int i = 1;
    while (v.degree() > 0) {
        Poly s = w - v.derivative();
        Poly h = gcd(v, s);
        if (h.degree() > 0) out.emplace_back(h, i);
        v = divexact(v, h);
        w = divexact(s, h);
        ++i;
    }
    return out;
}

ExtensionTower adjoin(const ExtensionTower& tower, const Poly& minpoly) {
    if (minpoly.degree() < 2)
        throw invalid_extension_error("adjoined minimal polynomial must have degree >= 2");
    if (!(minpoly.leading().is_rational_value() && minpoly.leading().rational_value() == 1))
        throw invalid_extension_error("adjoined minimal polynomial must be monic");
    return adjoin(tower, minpoly.coeffs());
}

namespace {

// --- norm-based factorization over a proper tower ---

// Determinant by fraction-free elimination; entries are polynomials over the
// sub-tower, every division below is exact.
Poly bareiss_det(std::vector<std::vector<Poly>> m, const ExtensionTower& tower,
                 const std::string& var) {
    const std::size_t n = m.size();
    if (n == 0) return Poly::constant(tower, var, FieldElement::one(tower));
    Poly denom = Poly::constant(tower, var, FieldElement::one(tower));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k].is_zero()) ++pivot;
        if (pivot == n) return Poly(tower, var); // singular
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = divexact(m[k][k] * m[i][j] - m[i][k] * m[k][j], denom);
            m[i][k] = Poly(tower, var);
        }
        denom = m[k][k];
    }
    Poly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

// Resultant in the top generator of m(theta) (the level's minimal polynomial)
// and g viewed as a polynomial in theta with coefficients in below[x].
Poly tower_norm(const Poly& g) {
    const ExtensionTower& t = g.tower();
    const ExtensionTower below = t.prefix(t.depth() - 1);
    const int d = t.level_degree(t.depth() - 1);
    const std::string& var = g.variable();

    std::vector<Poly> theta_major(static_cast<std::size_t>(d), Poly(below, var));
    for (int i = 0; i <= g.degree(); ++i) {
        FieldElement ci = g.coeff(i).embed(t);
        std::vector<FieldElement> cs = ci.coords();
        for (std::size_t j = 0; j < cs.size(); ++j)
            theta_major[j] = theta_major[j] + Poly::monomial(below, var, cs[j], i);
    }
    int dg = d - 1;
    while (dg >= 0 && theta_major[static_cast<std::size_t>(dg)].is_zero()) --dg;
    if (dg < 0) return Poly(below, var); // g = 0
    if (dg == 0) {
        // No theta dependence: the norm collapses to a pure power.
        Poly r = Poly::constant(below, var, FieldElement::one(below));
        for (int i = 0; i < d; ++i) r = r * theta_major[0];
        return r;
    }

    // Minimal polynomial coefficients as constants of below[x].
    const std::vector<FieldElement>& mp = t.level_minpoly(t.depth() - 1);
    std::vector<Poly> mrow;
    mrow.reserve(mp.size());
    for (std::size_t j = mp.size(); j-- > 0;)
        mrow.push_back(Poly::constant(below, var, mp[j]));

    std::vector<Poly> grow;
    grow.reserve(static_cast<std::size_t>(dg) + 1);
    for (int j = dg; j >= 0; --j) grow.push_back(theta_major[static_cast<std::size_t>(j)]);

    const std::size_t size = static_cast<std::size_t>(d + dg);
    std::vector<std::vector<Poly>> syl(size, std::vector<Poly>(size, Poly(below, var)));
    for (int r = 0; r < dg; ++r)
        for (std::size_t j = 0; j < mrow.size(); ++j)
            syl[static_cast<std::size_t>(r)][static_cast<std::size_t>(r) + j] = mrow[j];
    for (int r = 0; r < d; ++r)
        for (std::size_t j = 0; j < grow.size(); ++j)
            syl[static_cast<std::size_t>(dg + r)][static_cast<std::size_t>(r) + j] = grow[j];
    return bareiss_det(std::move(syl), below, var);
}

std::vector<Poly> factor_squarefree(const Poly& f, int depth_cap);

// Trager reduction: map to a squarefree norm by shifting with the top
// generator, factor the norm one level down, pull factors back with gcds.
std::vector<Poly> factor_squarefree_tower(const Poly& f, int depth_cap) {
    const ExtensionTower& t = f.tower();
    const FieldElement theta = FieldElement::generator(t);
    const std::string& var = f.variable();

    Poly x = Poly::monomial(t, var, FieldElement::one(t), 1);
    Poly norm(t.prefix(t.depth() - 1), var);
    long shift = 0;
    bool found = false;
    for (long k = 0; k <= 50 && !found; ++k) {
        for (long s : k == 0 ? std::vector<long>{0} : std::vector<long>{k, -k}) {
            Poly shifted_arg = x - Poly::constant(t, var, theta * FieldElement(Rational(s)));
            Poly g = f.compose(shifted_arg);
            Poly n = tower_norm(g);
            if (n.is_zero()) throw internal_error("vanishing norm of a nonzero polynomial");
            if (gcd(n, n.derivative()).degree() == 0) {
                norm = n.monic();
                shift = s;
                found = true;
                break;
            }
        }
    }
    if (!found) throw internal_error("no squarefree norm shift found");

    std::vector<Poly> norm_factors = factor_squarefree(norm, depth_cap);
    if (norm_factors.size() == 1) return {f.monic()};

    std::vector<Poly> out;
    Poly theta_shift = x + Poly::constant(t, var, theta * FieldElement(Rational(shift)));
    for (const Poly& nf : norm_factors) {
        Poly candidate = gcd(f, nf.embed(t).compose(theta_shift));
        if (candidate.degree() > 0) out.push_back(candidate.monic());
    }
    return out;
}

std::vector<Poly> factor_squarefree(const Poly& f, int depth_cap) {
    if (f.degree() == 1) return {f.monic()};
    if (f.tower().depth() == 0) return fq::factor_squarefree_rational(f);
    (void)depth_cap;
    return factor_squarefree_tower(f, depth_cap);
}

} // namespace

std::vector<std::pair<Poly, int>> factor(const Poly& p, int depth_cap) {
    if (p.is_zero()) throw domain_error("factorization of the zero polynomial");
    if (p.tower().depth() > depth_cap)
        throw depth_cap_error("factorization over a tower deeper than the extension cap", p);
    std::vector<std::pair<Poly, int>> out;
    if (p.degree() < 1) return out;
    for (const auto& [sf, e] : squarefree_decomposition(p))
        for (const Poly& q : factor_squarefree(sf, depth_cap)) out.emplace_back(q, e);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int c = Poly::compare(a.first, b.first);
        if (c != 0) return c < 0;
        return a.second < b.second;
    });
    return out;
}

namespace {

void split_roots(RootSet& rs, const Poly& q, int multiplicity, const ExtensionTower& t,
                 int ordinal, int factor_degree, int depth_cap) {
    if (q.degree() == 1) {
        rs.entries.push_back({-q.coeff(0), multiplicity, t, ordinal, factor_degree});
        return;
    }
    if (t.depth() >= depth_cap) {
        rs.unsplit.push_back(q);
        rs.capped = true;
        return;
    }
    ExtensionTower t2 = adjoin(t, q);
    FieldElement theta = FieldElement::generator(t2);
    rs.entries.push_back({theta, multiplicity, t2, ordinal, factor_degree});
    Poly linear = Poly::monomial(t2, q.variable(), FieldElement::one(t2), 1) -
                  Poly::constant(t2, q.variable(), theta);
    Poly cofactor = divexact(q.embed(t2), linear);
    if (cofactor.degree() == 0) return;
    for (const auto& [h, e] : factor(cofactor, depth_cap)) {
        (void)e; // q squarefree, so each piece appears once
        split_roots(rs, h, multiplicity, t2, ordinal, factor_degree, depth_cap);
    }
}

} // namespace

RootSet roots_with_adjunction(const Poly& p, const ExtensionTower& tower, int depth_cap) {
    if (p.degree() < 1) throw domain_error("root extraction needs a nonconstant polynomial");
    Poly q = p.embed(common_tower(p.tower(), tower));
    RootSet rs;
    int ordinal = 0;
    for (const auto& [f, e] : factor(q, depth_cap)) {
        split_roots(rs, f, e, q.tower(), ordinal, f.degree(), depth_cap);
        ++ordinal;
    }
    return rs;
}

} // namespace rp
