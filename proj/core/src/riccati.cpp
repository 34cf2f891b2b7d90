#include "rp/riccati.hpp"

#include <algorithm>
#include <sstream>

#include "rp/errors.hpp"

namespace rp {

void LinearODE::validate() const {
    if (coeffs.size() < 2) throw domain_error("linear ODE needs order at least 1");
    if (coeffs.back().is_zero()) throw domain_error("top coefficient f_n must be nonzero");
    for (const auto& f : coeffs) {
        for (const auto& [q, c] : f.terms()) {
            (void)c;
            if (q.get_den() != 1 || q < 0)
                throw domain_error("ODE coefficients must be ordinary polynomials in x");
        }
        if (!is_prefix(f.tower(), tower()) && !is_prefix(tower(), f.tower()))
            throw tower_mismatch_error("ODE coefficients live in unrelated towers");
    }
}

RiccatiOperator RiccatiOperator::from_coeffs(std::vector<PuiseuxPoly> g) {
    if (g.empty()) throw domain_error("empty coefficient vector");
    RiccatiOperator r;
    ExtensionTower t;
    for (const auto& p : g) t = common_tower(t, p.tower());
    r.tower_ = t;
    r.g_.reserve(g.size());
    for (auto& p : g) r.g_.push_back(p.embed(t));
    r.degenerate_ = r.g_.back().is_zero();
    return r;
}

RiccatiOperator RiccatiOperator::zero_operator(const ExtensionTower& t) {
    RiccatiOperator r;
    r.tower_ = t;
    r.g_.push_back(PuiseuxPoly::zero(t));
    r.degenerate_ = true;
    return r;
}

bool RiccatiOperator::is_zero() const {
    for (const auto& p : g_)
        if (!p.is_zero()) return false;
    return true;
}

const PuiseuxPoly& RiccatiOperator::g(int i) const {
    if (i < 0 || i >= static_cast<int>(g_.size()))
        throw domain_error("r-basis coefficient index out of range");
    return g_[static_cast<std::size_t>(i)];
}

RiccatiOperator RiccatiOperator::embed(const ExtensionTower& deeper) const {
    RiccatiOperator r;
    r.tower_ = deeper;
    r.g_.reserve(g_.size());
    for (const auto& p : g_) r.g_.push_back(p.embed(deeper));
    r.degenerate_ = degenerate_;
    return r;
}

bool operator==(const RiccatiOperator& a, const RiccatiOperator& b) {
    if (a.order() != b.order()) return false;
    for (int i = 0; i <= a.order(); ++i)
        if (a.g(i) != b.g(i)) return false;
    return true;
}

// --- MonomialDiffPoly ---

bool MonomialDiffPoly::Monomial::operator<(const Monomial& o) const {
    if (ypow != o.ypow) return ypow < o.ypow;
    return xexp < o.xexp;
}

MonomialDiffPoly MonomialDiffPoly::one(const ExtensionTower& t) {
    MonomialDiffPoly p(t);
    p.terms_.emplace(Monomial{}, FieldElement::one(t));
    return p;
}

MonomialDiffPoly MonomialDiffPoly::variable(const ExtensionTower& t, int j) {
    if (j < 0) throw domain_error("negative derivative index");
    MonomialDiffPoly p(t);
    Monomial m;
    m.ypow.assign(static_cast<std::size_t>(j) + 1, 0);
    m.ypow.back() = 1;
    p.terms_.emplace(std::move(m), FieldElement::one(t));
    return p;
}

void MonomialDiffPoly::insert(const Monomial& m, const FieldElement& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(m, c);
    if (!fresh) {
        FieldElement sum = it->second + c;
        if (sum.is_zero())
            terms_.erase(it);
        else
            it->second = sum;
    }
}

MonomialDiffPoly operator+(const MonomialDiffPoly& a, const MonomialDiffPoly& b) {
    const ExtensionTower& t = common_tower(a.tower(), b.tower());
    MonomialDiffPoly r(t);
    for (const auto& [m, c] : a.terms_) r.insert(m, c.embed(t));
    for (const auto& [m, c] : b.terms_) r.insert(m, c.embed(t));
    return r;
}

MonomialDiffPoly operator-(const MonomialDiffPoly& a, const MonomialDiffPoly& b) {
    const ExtensionTower& t = common_tower(a.tower(), b.tower());
    MonomialDiffPoly r(t);
    for (const auto& [m, c] : a.terms_) r.insert(m, c.embed(t));
    for (const auto& [m, c] : b.terms_) r.insert(m, -c.embed(t));
    return r;
}

namespace {
MonomialDiffPoly::Monomial merge_monomials(const MonomialDiffPoly::Monomial& a,
                                           const MonomialDiffPoly::Monomial& b) {
    MonomialDiffPoly::Monomial m;
    m.xexp = a.xexp + b.xexp;
    m.ypow.assign(std::max(a.ypow.size(), b.ypow.size()), 0);
    for (std::size_t i = 0; i < a.ypow.size(); ++i) m.ypow[i] += a.ypow[i];
    for (std::size_t i = 0; i < b.ypow.size(); ++i) m.ypow[i] += b.ypow[i];
    return m;
}
} // namespace

MonomialDiffPoly operator*(const MonomialDiffPoly& a, const MonomialDiffPoly& b) {
    const ExtensionTower& t = common_tower(a.tower(), b.tower());
    MonomialDiffPoly r(t);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.insert(merge_monomials(ma, mb), ca.embed(t) * cb.embed(t));
    return r;
}

MonomialDiffPoly MonomialDiffPoly::scaled_by_term(const FieldElement& c,
                                                  const Rational& xexp) const {
    const ExtensionTower& t = common_tower(tower_, c.tower());
    MonomialDiffPoly r(t);
    for (const auto& [m, x] : terms_) {
        Monomial mm = m;
        mm.xexp += xexp;
        r.insert(mm, x.embed(t) * c.embed(t));
    }
    return r;
}

MonomialDiffPoly MonomialDiffPoly::multiplied_by(const PuiseuxPoly& p) const {
    const ExtensionTower& t = common_tower(tower_, p.tower());
    MonomialDiffPoly r(t);
    for (const auto& [q, c] : p.terms()) {
        MonomialDiffPoly part = scaled_by_term(c, q);
        for (const auto& [m, x] : part.terms_) r.insert(m, x);
    }
    return r;
}

MonomialDiffPoly MonomialDiffPoly::total_derivative() const {
    MonomialDiffPoly r(tower_);
    for (const auto& [m, c] : terms_) {
        if (m.xexp != 0) {
            Monomial mm = m;
            mm.xexp -= 1;
            r.insert(mm, c * FieldElement::from_rational(tower_, m.xexp));
        }
        for (std::size_t j = 0; j < m.ypow.size(); ++j) {
            if (m.ypow[j] == 0) continue;
            Monomial mm = m;
            mm.ypow[j] -= 1;
            if (mm.ypow.size() < j + 2) mm.ypow.resize(j + 2, 0);
            mm.ypow[j + 1] += 1;
            while (!mm.ypow.empty() && mm.ypow.back() == 0) mm.ypow.pop_back();
            r.insert(mm, c * FieldElement::from_rational(tower_, Rational(m.ypow[j])));
        }
    }
    return r;
}

MonomialDiffPoly MonomialDiffPoly::dy0() const {
    MonomialDiffPoly r(tower_);
    for (const auto& [m, c] : terms_) {
        if (m.ypow.empty() || m.ypow[0] == 0) continue;
        Monomial mm = m;
        mm.ypow[0] -= 1;
        while (!mm.ypow.empty() && mm.ypow.back() == 0) mm.ypow.pop_back();
        r.insert(mm, c * FieldElement::from_rational(tower_, Rational(m.ypow[0])));
    }
    return r;
}

int MonomialDiffPoly::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        (void)c;
        int s = 0;
        for (int e : m.ypow) s += e;
        d = std::max(d, s);
    }
    return d;
}

MonomialDiffPoly MonomialDiffPoly::degree_part(int d) const {
    MonomialDiffPoly r(tower_);
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (int e : m.ypow) s += e;
        if (s == d) r.insert(m, c);
    }
    return r;
}

PuiseuxPoly MonomialDiffPoly::evaluate_at(const PuiseuxPoly& psi) const {
    const ExtensionTower& t = common_tower(tower_, psi.tower());
    // Highest derivative used.
    std::size_t top = 0;
    for (const auto& [m, c] : terms_) {
        (void)c;
        top = std::max(top, m.ypow.size());
    }
    std::vector<PuiseuxPoly> derivs;
    derivs.reserve(top);
    PuiseuxPoly cur = psi.embed(t);
    for (std::size_t j = 0; j < top; ++j) {
        derivs.push_back(cur);
        cur = cur.differentiate();
    }
    PuiseuxPoly out(t);
    for (const auto& [m, c] : terms_) {
        PuiseuxPoly prod = PuiseuxPoly::term(c.embed(t), m.xexp);
        for (std::size_t j = 0; j < m.ypow.size(); ++j)
            for (int e = 0; e < m.ypow[j]; ++e) prod = prod * derivs[j];
        out = out + prod;
    }
    return out;
}

bool operator==(const MonomialDiffPoly& a, const MonomialDiffPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
        if (!(ia->first == ib->first)) return false;
        if (!(ia->second == ib->second)) return false;
    }
    return true;
}

std::string MonomialDiffPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << c.to_string();
        if (m.xexp != 0) out << "*x^(" << rp::to_string(m.xexp) << ")";
        for (std::size_t j = 0; j < m.ypow.size(); ++j) {
            if (m.ypow[j] == 0) continue;
            out << "*y" << j;
            if (m.ypow[j] > 1) out << "^" << m.ypow[j];
        }
    }
    return out.str();
}

// --- r-basis operations ---

MonomialDiffPoly r_basis(int i, int cap) {
    if (i < 0) throw domain_error("negative r-basis index");
    if (i > cap) throw cap_error("r-basis expansion beyond the oracle cap");
    ExtensionTower q;
    MonomialDiffPoly r = MonomialDiffPoly::one(q);
    if (i == 0) return r;
    MonomialDiffPoly y0 = MonomialDiffPoly::variable(q, 0);
    r = y0;
    for (int k = 1; k < i; ++k) r = y0 * r + r.total_derivative();
    return r;
}

RiccatiOperator from_linear_ode(const LinearODE& s) {
    s.validate();
    return RiccatiOperator::from_coeffs(s.coeffs);
}

RiccatiOperator derivative_k(const RiccatiOperator& r, int k) {
    if (k < 0) throw domain_error("negative derivative order");
    if (k == 0) return r;
    const int n = r.order();
    if (k > n) return RiccatiOperator::zero_operator(r.tower());
    std::vector<PuiseuxPoly> g;
    g.reserve(static_cast<std::size_t>(n - k) + 1);
    for (int i = 0; i <= n - k; ++i) {
        Rational scale(falling_factorial(i + k, k));
        g.push_back(r.g(i + k).scaled(FieldElement::from_rational(r.tower(), scale)));
    }
    return RiccatiOperator::from_coeffs(std::move(g));
}

namespace {

struct FloorInfo {
    bool exact = true;
    Rational floor;
};

// Validity floor of r_i(psi) for a truncated psi: errors stay strictly below
// floor(psi) + (i-1)*max(deg psi, 0).
FloorInfo r_floor(const TruncatedSeries& psi, int i) {
    FloorInfo fi;
    if (psi.is_exact() || i == 0) return fi;
    fi.exact = false;
    Rational m(0);
    if (DegValue d = psi.deg_inf(); d && *d > 0) m = *d;
    fi.floor = psi.floor() + Rational(i - 1) * m;
    return fi;
}

} // namespace

std::vector<TruncatedSeries> eval_r_sequence(const TruncatedSeries& psi, int upto) {
    if (upto < 0) throw domain_error("negative r-sequence bound");
    std::vector<TruncatedSeries> out;
    out.reserve(static_cast<std::size_t>(upto) + 1);
    PuiseuxPoly one = PuiseuxPoly::constant(psi.tower(), FieldElement::one(psi.tower()));
    PuiseuxPoly cur = one;
    for (int i = 0; i <= upto; ++i) {
        FloorInfo fi = r_floor(psi, i);
        out.push_back(fi.exact ? TruncatedSeries::exact(cur)
                               : TruncatedSeries::truncated(cur, fi.floor));
        if (i < upto) cur = psi.body() * cur + cur.differentiate();
    }
    return out;
}

PuiseuxPoly evaluate(const RiccatiOperator& r, const PuiseuxPoly& psi) {
    const ExtensionTower& t = common_tower(r.tower(), psi.tower());
    PuiseuxPoly acc(t);
    PuiseuxPoly cur = PuiseuxPoly::constant(t, FieldElement::one(t));
    PuiseuxPoly body = psi.embed(t);
    for (int i = 0; i <= r.order(); ++i) {
        acc = acc + r.g(i).embed(t) * cur;
        if (i < r.order()) cur = body * cur + cur.differentiate();
    }
    return acc;
}

TruncatedSeries evaluate(const RiccatiOperator& r, const TruncatedSeries& psi) {
    PuiseuxPoly value = evaluate(r, psi.body());
    if (psi.is_exact()) return TruncatedSeries::exact(std::move(value));
    // Error terms of g_i * r_i(psi) sit strictly below deg(g_i) + floor_i.
    bool any = false;
    Rational floor(0);
    for (int i = 1; i <= r.order(); ++i) {
        if (r.g(i).is_zero()) continue;
        FloorInfo fi = r_floor(psi, i);
        Rational f = *r.g(i).deg_inf() + fi.floor;
        if (!any || f > floor) floor = f;
        any = true;
    }
    if (!any) return TruncatedSeries::exact(std::move(value)); // only g_0 present
    return TruncatedSeries::truncated(std::move(value), floor);
}

RiccatiOperator shift_substitute(const RiccatiOperator& r, const FieldElement& c,
                                 const Rational& mu) {
    if (c.is_zero()) throw domain_error("substitution coefficient must be nonzero");
    const ExtensionTower& t = common_tower(r.tower(), c.tower());
    const int n = r.order();
    PuiseuxPoly monomial = PuiseuxPoly::term(c.embed(t), mu);
    std::vector<PuiseuxPoly> g;
    g.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) {
        PuiseuxPoly value = evaluate(derivative_k(r, i).embed(t), monomial);
        Rational inv_fact = Rational(1) / Rational(factorial(i));
        g.push_back(value.scaled(FieldElement::from_rational(t, inv_fact)));
    }
    return RiccatiOperator::from_coeffs(std::move(g));
}

MonomialDiffPoly expand_monomials(const RiccatiOperator& r, int cap) {
    if (r.order() > cap) throw cap_error("operator order beyond the expansion cap");
    MonomialDiffPoly out(r.tower());
    for (int i = 0; i <= r.order(); ++i) {
        if (r.g(i).is_zero()) continue;
        out = out + r_basis(i, std::max(cap, kRBasisCap)).multiplied_by(r.g(i));
    }
    return out;
}

} // namespace rp
