#include "rp/numfield.hpp"

#include <algorithm>
#include <sstream>

#include "rp/errors.hpp"

namespace rp {

using detail::TowerLevel;
using detail::Value;

namespace {

int depth_of(const TowerLevel* lvl) { return lvl ? lvl->depth : 0; }

bool vis_zero(const TowerLevel* lvl, const Value& v) {
    if (!lvl) return v.rat == 0;
    return v.coords.empty();
}

Value vzero(const TowerLevel* lvl) {
    Value v;
    if (!lvl) v.rat = 0;
    return v;
}

void vtrim(const TowerLevel* lvl, Value& v) {
    if (!lvl) return;
    while (!v.coords.empty() && vis_zero(lvl->below.get(), v.coords.back()))
        v.coords.pop_back();
}

Value vfrom_rat(const TowerLevel* lvl, const Rational& q) {
    if (!lvl) {
        Value v;
        v.rat = q;
        return v;
    }
    Value v;
    if (q != 0) v.coords.push_back(vfrom_rat(lvl->below.get(), q));
    return v;
}

Value vadd(const TowerLevel* lvl, const Value& a, const Value& b) {
    if (!lvl) {
        Value v;
        v.rat = a.rat + b.rat;
        return v;
    }
    Value v;
    const std::size_t n = std::max(a.coords.size(), b.coords.size());
    v.coords.reserve(n);
    const TowerLevel* sub = lvl->below.get();
    for (std::size_t i = 0; i < n; ++i) {
        if (i >= a.coords.size())
            v.coords.push_back(b.coords[i]);
        else if (i >= b.coords.size())
            v.coords.push_back(a.coords[i]);
        else
            v.coords.push_back(vadd(sub, a.coords[i], b.coords[i]));
    }
    vtrim(lvl, v);
    return v;
}

Value vneg(const TowerLevel* lvl, const Value& a) {
    if (!lvl) {
        Value v;
        v.rat = -a.rat;
        return v;
    }
    Value v;
    v.coords.reserve(a.coords.size());
    for (const auto& c : a.coords) v.coords.push_back(vneg(lvl->below.get(), c));
    return v;
}

Value vsub(const TowerLevel* lvl, const Value& a, const Value& b) {
    return vadd(lvl, a, vneg(lvl, b));
}

Value vmul(const TowerLevel* lvl, const Value& a, const Value& b) {
    if (!lvl) {
        Value v;
        v.rat = a.rat * b.rat;
        return v;
    }
    const TowerLevel* sub = lvl->below.get();
    if (a.coords.empty() || b.coords.empty()) return vzero(lvl);
    std::vector<Value> conv(a.coords.size() + b.coords.size() - 1, vzero(sub));
    for (std::size_t i = 0; i < a.coords.size(); ++i)
        for (std::size_t j = 0; j < b.coords.size(); ++j)
            conv[i + j] = vadd(sub, conv[i + j], vmul(sub, a.coords[i], b.coords[j]));
    // Reduce by the monic minimal polynomial of this level.
    const int d = lvl->degree;
    for (int t = static_cast<int>(conv.size()) - 1; t >= d; --t) {
        if (vis_zero(sub, conv[t])) continue;
        const Value lead = conv[t];
        for (int j = 0; j < d; ++j) {
            const Value& mj = lvl->minpoly_v[static_cast<std::size_t>(j)];
            conv[t - d + j] = vsub(sub, conv[t - d + j], vmul(sub, lead, mj));
        }
        conv[t] = vzero(sub);
    }
    conv.resize(static_cast<std::size_t>(d), vzero(sub));
    Value v;
    v.coords = std::move(conv);
    vtrim(lvl, v);
    return v;
}

// --- dense polynomials over the field at level `lvl` (used only for the
// extended Euclidean inversion step) ---

using VPoly = std::vector<Value>; // ascending coefficients

void vp_trim(const TowerLevel* lvl, VPoly& p) {
    while (!p.empty() && vis_zero(lvl, p.back())) p.pop_back();
}

int vp_deg(const VPoly& p) { return static_cast<int>(p.size()) - 1; }

Value vinv(const TowerLevel* lvl, const Value& a);

// Division with remainder over the field at level `lvl`.
void vp_divmod(const TowerLevel* lvl, VPoly num, const VPoly& den, VPoly& quo, VPoly& rem) {
    if (den.empty()) throw division_by_zero_error("polynomial division by zero");
    quo.assign(num.size() > den.size() - 1 ? num.size() - den.size() + 1 : 0, vzero(lvl));
    const Value lead_inv = vinv(lvl, den.back());
    while (vp_deg(num) >= vp_deg(den)) {
        const int shift = vp_deg(num) - vp_deg(den);
        Value c = vmul(lvl, num.back(), lead_inv);
        quo[static_cast<std::size_t>(shift)] = c;
        for (std::size_t j = 0; j < den.size(); ++j) {
            num[static_cast<std::size_t>(shift) + j] =
                vsub(lvl, num[static_cast<std::size_t>(shift) + j], vmul(lvl, c, den[j]));
        }
        vp_trim(lvl, num);
    }
    rem = std::move(num);
}

Value vinv(const TowerLevel* lvl, const Value& a) {
    if (vis_zero(lvl, a)) throw division_by_zero_error("inverting zero field element");
    if (!lvl) {
        Value v;
        v.rat = 1 / a.rat;
        return v;
    }
    const TowerLevel* sub = lvl->below.get();
    // Extended Euclid against the minimal polynomial; only the Bezout
    // coefficient of `a` is tracked.
    VPoly r0 = lvl->minpoly_v;
    VPoly r1 = a.coords;
    VPoly s0{};                  // coefficient of a in r0 (zero)
    VPoly s1{vfrom_rat(sub, 1)}; // coefficient of a in r1 (one)
    while (vp_deg(r1) > 0) {
        VPoly q, r2;
        vp_divmod(sub, r0, r1, q, r2);
        // s2 = s0 - q*s1
        VPoly qs(q.empty() || s1.empty() ? 0 : q.size() + s1.size() - 1, vzero(sub));
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < s1.size(); ++j)
                qs[i + j] = vadd(sub, qs[i + j], vmul(sub, q[i], s1[j]));
        VPoly s2(std::max(s0.size(), qs.size()), vzero(sub));
        for (std::size_t i = 0; i < s2.size(); ++i) {
            Value t = i < s0.size() ? s0[i] : vzero(sub);
            if (i < qs.size()) t = vsub(sub, t, qs[i]);
            s2[i] = t;
        }
        vp_trim(sub, s2);
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty())
        throw internal_error("minimal polynomial not coprime with nonzero element");
    const Value scale = vinv(sub, r1[0]);
    Value v;
    v.coords.reserve(s1.size());
    for (const auto& c : s1) v.coords.push_back(vmul(sub, c, scale));
    vtrim(lvl, v);
    return v;
}

Value vembed(const TowerLevel* from, const TowerLevel* to, const Value& v) {
    if (from == to) return v;
    // `from` is a strict prefix of `to`: wrap as a constant coordinate.
    Value inner = vembed(from, to->below.get(), v);
    Value out;
    if (!vis_zero(to->below.get(), inner)) out.coords.push_back(std::move(inner));
    return out;
}

int vcompare(const TowerLevel* lvl, const Value& a, const Value& b) {
    if (!lvl) return mpq_cmp(a.rat.get_mpq_t(), b.rat.get_mpq_t());
    if (a.coords.size() != b.coords.size())
        return a.coords.size() < b.coords.size() ? -1 : 1;
    for (std::size_t i = a.coords.size(); i-- > 0;) {
        int c = vcompare(lvl->below.get(), a.coords[i], b.coords[i]);
        if (c != 0) return c;
    }
    return 0;
}

std::string vrender(const TowerLevel* lvl, const Value& v);

// Renders one coefficient, parenthesizing anything that is not a plain
// rational so the generator-polynomial reading stays unambiguous.
std::string render_coeff(const TowerLevel* lvl, const Value& c, bool* negated, bool* is_unit) {
    *negated = false;
    *is_unit = false;
    if (!lvl) {
        Rational q = c.rat;
        if (q < 0) {
            *negated = true;
            q = -q;
        }
        if (q == 1) *is_unit = true;
        return to_string(q);
    }
    if (c.coords.size() == 1) return render_coeff(lvl->below.get(), c.coords[0], negated, is_unit);
    return "(" + vrender(lvl, c) + ")";
}

std::string vrender(const TowerLevel* lvl, const Value& v) {
    if (!lvl) return to_string(v.rat);
    if (v.coords.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = v.coords.size(); i-- > 0;) {
        if (vis_zero(lvl->below.get(), v.coords[i])) continue;
        bool neg = false, unit = false;
        std::string cs = render_coeff(lvl->below.get(), v.coords[i], &neg, &unit);
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        if (i == 0) {
            out << cs;
        } else {
            if (!unit) out << cs << "*";
            out << lvl->name;
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

} // namespace

// --- ExtensionTower ---

int ExtensionTower::depth() const { return depth_of(top_.get()); }

Integer ExtensionTower::degree_over_q() const {
    Integer d = 1;
    for (const TowerLevel* l = top_.get(); l; l = l->below.get()) d *= l->degree;
    return d;
}

namespace {
const TowerLevel* level_at(const ExtensionTower& t, int k) {
    int steps = t.depth() - 1 - k;
    if (k < 0 || steps < 0) throw domain_error("tower level index out of range");
    const TowerLevel* l = t.handle().get();
    for (int i = 0; i < steps; ++i) l = l->below.get();
    return l;
}
} // namespace

int ExtensionTower::level_degree(int k) const { return level_at(*this, k)->degree; }
const std::string& ExtensionTower::level_name(int k) const { return level_at(*this, k)->name; }
const std::vector<FieldElement>& ExtensionTower::level_minpoly(int k) const {
    return level_at(*this, k)->minpoly;
}

ExtensionTower ExtensionTower::prefix(int levels) const {
    if (levels < 0 || levels > depth()) throw domain_error("tower prefix out of range");
    std::shared_ptr<const TowerLevel> cur = top_;
    for (int i = depth(); i > levels; --i) cur = cur->below;
    ExtensionTower t;
    t.top_ = cur;
    return t;
}

bool is_prefix(const ExtensionTower& a, const ExtensionTower& b) {
    const TowerLevel* pa = a.handle().get();
    const TowerLevel* pb = b.handle().get();
    while (depth_of(pb) > depth_of(pa)) pb = pb->below.get();
    return pa == pb;
}

const ExtensionTower& common_tower(const ExtensionTower& a, const ExtensionTower& b) {
    if (is_prefix(a, b)) return b;
    if (is_prefix(b, a)) return a;
    throw tower_mismatch_error("elements live in unrelated extension towers");
}

ExtensionTower adjoin(const ExtensionTower& tower, const std::vector<FieldElement>& minpoly) {
    if (minpoly.size() < 3)
        throw invalid_extension_error("extension degree must be at least 2");
    for (const auto& c : minpoly)
        if (!is_prefix(c.tower(), tower))
            throw tower_mismatch_error("minimal polynomial coefficients outside base tower");
    if (!(minpoly.back().is_rational_value() && minpoly.back().rational_value() == 1))
        throw invalid_extension_error("minimal polynomial must be monic");

    auto lvl = std::make_shared<TowerLevel>();
    lvl->below = tower.handle();
    lvl->depth = tower.depth() + 1;
    lvl->degree = static_cast<int>(minpoly.size()) - 1;
    lvl->name = "theta" + std::to_string(lvl->depth);
    lvl->minpoly.reserve(minpoly.size());
    for (const auto& c : minpoly) {
        FieldElement e = c.embed(tower);
        lvl->minpoly_v.push_back(e.v_);
        lvl->minpoly.push_back(std::move(e));
    }

    ExtensionTower t;
    t.top_ = std::move(lvl);
    return t;
}

// --- FieldElement ---

FieldElement::FieldElement(const Rational& q) { v_.rat = q; }
FieldElement::FieldElement(long n) { v_.rat = n; }

FieldElement FieldElement::zero(const ExtensionTower& t) {
    FieldElement e;
    e.tower_ = t;
    e.v_ = vzero(t.handle().get());
    return e;
}

FieldElement FieldElement::one(const ExtensionTower& t) { return from_rational(t, 1); }

FieldElement FieldElement::from_rational(const ExtensionTower& t, const Rational& q) {
    FieldElement e;
    e.tower_ = t;
    e.v_ = vfrom_rat(t.handle().get(), q);
    return e;
}

FieldElement FieldElement::generator(const ExtensionTower& t) {
    if (t.depth() == 0) throw domain_error("the rational tower has no generator");
    FieldElement e;
    e.tower_ = t;
    e.v_.coords.push_back(vzero(t.handle()->below.get()));
    e.v_.coords.push_back(vfrom_rat(t.handle()->below.get(), 1));
    return e;
}

FieldElement FieldElement::from_coords(const ExtensionTower& t, std::vector<FieldElement> coords) {
    if (t.depth() == 0) throw domain_error("coordinate constructor needs an extension");
    if (static_cast<int>(coords.size()) > t.handle()->degree)
        throw domain_error("coordinate vector longer than the extension degree");
    ExtensionTower below = t.prefix(t.depth() - 1);
    FieldElement e;
    e.tower_ = t;
    for (auto& c : coords) e.v_.coords.push_back(c.embed(below).v_);
    vtrim(t.handle().get(), e.v_);
    return e;
}

bool FieldElement::is_zero() const { return vis_zero(tower_.handle().get(), v_); }

bool FieldElement::is_one() const {
    return *this == one(tower_);
}

bool FieldElement::is_rational_value() const {
    const Value* v = &v_;
    const TowerLevel* lvl = tower_.handle().get();
    while (lvl) {
        if (v->coords.empty()) return true;
        if (v->coords.size() > 1) return false;
        v = &v->coords[0];
        lvl = lvl->below.get();
    }
    return true;
}

Rational FieldElement::rational_value() const {
    const Value* v = &v_;
    const TowerLevel* lvl = tower_.handle().get();
    while (lvl) {
        if (v->coords.empty()) return Rational(0);
        if (v->coords.size() > 1) throw domain_error("element does not lie in Q");
        v = &v->coords[0];
        lvl = lvl->below.get();
    }
    return v->rat;
}

std::vector<FieldElement> FieldElement::coords() const {
    if (tower_.depth() == 0) throw domain_error("rational elements have no coordinates");
    ExtensionTower below = tower_.prefix(tower_.depth() - 1);
    std::vector<FieldElement> out;
    out.reserve(v_.coords.size());
    for (const auto& c : v_.coords) {
        FieldElement e;
        e.tower_ = below;
        e.v_ = c;
        out.push_back(std::move(e));
    }
    return out;
}

FieldElement FieldElement::embed(const ExtensionTower& deeper) const {
    if (tower_ == deeper) return *this;
    if (!is_prefix(tower_, deeper))
        throw tower_mismatch_error("embedding target does not extend the element's tower");
    FieldElement e;
    e.tower_ = deeper;
    e.v_ = vembed(tower_.handle().get(), deeper.handle().get(), v_);
    return e;
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    const ExtensionTower& t = common_tower(a.tower_, b.tower_);
    FieldElement ea = a.embed(t), eb = b.embed(t);
    FieldElement r;
    r.tower_ = t;
    r.v_ = vadd(t.handle().get(), ea.v_, eb.v_);
    return r;
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    const ExtensionTower& t = common_tower(a.tower_, b.tower_);
    FieldElement ea = a.embed(t), eb = b.embed(t);
    FieldElement r;
    r.tower_ = t;
    r.v_ = vsub(t.handle().get(), ea.v_, eb.v_);
    return r;
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    const ExtensionTower& t = common_tower(a.tower_, b.tower_);
    FieldElement ea = a.embed(t), eb = b.embed(t);
    FieldElement r;
    r.tower_ = t;
    r.v_ = vmul(t.handle().get(), ea.v_, eb.v_);
    return r;
}

FieldElement FieldElement::operator-() const {
    FieldElement r;
    r.tower_ = tower_;
    r.v_ = vneg(tower_.handle().get(), v_);
    return r;
}

FieldElement FieldElement::invert() const {
    FieldElement r;
    r.tower_ = tower_;
    r.v_ = vinv(tower_.handle().get(), v_);
    return r;
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return invert().pow(-e);
    FieldElement acc = one(tower_);
    FieldElement base = *this;
    unsigned long u = static_cast<unsigned long>(e);
    while (u) {
        if (u & 1) acc *= base;
        base *= base;
        u >>= 1;
    }
    return acc;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    if (a.tower_ == b.tower_) return vcompare(a.tower_.handle().get(), a.v_, b.v_) == 0;
    const ExtensionTower& t = common_tower(a.tower_, b.tower_);
    return vcompare(t.handle().get(), a.embed(t).v_, b.embed(t).v_) == 0;
}

int FieldElement::compare(const FieldElement& a, const FieldElement& b) {
    const ExtensionTower& t = common_tower(a.tower_, b.tower_);
    return vcompare(t.handle().get(), a.embed(t).v_, b.embed(t).v_);
}

std::string FieldElement::to_string() const { return vrender(tower_.handle().get(), v_); }

} // namespace rp
