#include "rp/puiseux.hpp"

#include <sstream>

#include "rp/errors.hpp"

namespace rp {

PuiseuxPoly PuiseuxPoly::constant(const ExtensionTower& t, const FieldElement& c) {
    return term(c.embed(t), Rational(0));
}

PuiseuxPoly PuiseuxPoly::term(const FieldElement& c, const Rational& q) {
    PuiseuxPoly p(c.tower());
    if (!c.is_zero()) p.terms_.emplace(q, c);
    return p;
}

FieldElement PuiseuxPoly::coeff(const Rational& q) const {
    auto it = terms_.find(q);
    return it == terms_.end() ? FieldElement::zero(tower_) : it->second;
}

DegValue PuiseuxPoly::deg_inf() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first;
}

FieldElement PuiseuxPoly::lc_inf() const {
    if (terms_.empty()) throw domain_error("leading coefficient of the zero series");
    return terms_.rbegin()->second;
}

Rational PuiseuxPoly::min_exponent() const {
    if (terms_.empty()) throw domain_error("minimal exponent of the zero series");
    return terms_.begin()->first;
}

Integer PuiseuxPoly::ramification_index() const {
    Integer nu = 1;
    for (const auto& [q, c] : terms_) nu = lcm(nu, q.get_den());
    return nu;
}

PuiseuxPoly PuiseuxPoly::differentiate() const {
    PuiseuxPoly r(tower_);
    for (const auto& [q, c] : terms_) {
        if (q == 0) continue;
        r.insert_term(q - 1, c * FieldElement::from_rational(tower_, q));
    }
    return r;
}

void PuiseuxPoly::insert_term(const Rational& q, const FieldElement& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(q, c);
    if (!fresh) {
        FieldElement sum = it->second + c;
        if (sum.is_zero())
            terms_.erase(it);
        else
            it->second = sum;
    }
}

PuiseuxPoly operator+(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    const ExtensionTower& t = common_tower(a.tower(), b.tower());
    PuiseuxPoly r = a.embed(t);
    for (const auto& [q, c] : b.terms_) r.insert_term(q, c.embed(t));
    return r;
}

PuiseuxPoly operator-(const PuiseuxPoly& a, const PuiseuxPoly& b) { return a + (-b); }

PuiseuxPoly PuiseuxPoly::operator-() const {
    PuiseuxPoly r(tower_);
    for (const auto& [q, c] : terms_) r.terms_.emplace(q, -c);
    return r;
}

PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    const ExtensionTower& t = common_tower(a.tower(), b.tower());
    PuiseuxPoly ea = a.embed(t), eb = b.embed(t);
    PuiseuxPoly r(t);
    for (const auto& [qa, ca] : ea.terms_)
        for (const auto& [qb, cb] : eb.terms_) r.insert_term(qa + qb, ca * cb);
    return r;
}

PuiseuxPoly PuiseuxPoly::scaled(const FieldElement& c) const {
    const ExtensionTower& t = common_tower(tower_, c.tower());
    PuiseuxPoly r(t);
    FieldElement ce = c.embed(t);
    for (const auto& [q, x] : terms_) r.insert_term(q, x.embed(t) * ce);
    return r;
}

PuiseuxPoly PuiseuxPoly::embed(const ExtensionTower& deeper) const {
    if (tower_ == deeper) return *this;
    PuiseuxPoly r(deeper);
    for (const auto& [q, c] : terms_) r.terms_.emplace(q, c.embed(deeper));
    return r;
}

PuiseuxPoly PuiseuxPoly::truncated_below(const Rational& floor) const {
    PuiseuxPoly r(tower_);
    for (auto it = terms_.lower_bound(floor); it != terms_.end(); ++it)
        r.terms_.insert(*it);
    return r;
}

bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (!(ia->second == ib->second)) return false;
    }
    return true;
}

std::string PuiseuxPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rational& q = it->first;
        std::string cs = it->second.to_string();
        bool neg = !cs.empty() && cs[0] == '-';
        if (neg) cs = cs.substr(1);
        bool wrap = cs.find(' ') != std::string::npos;
        if (wrap) cs = "(" + cs + ")";
        if (first) {
            if (neg) out << "-";
            first = false;
        } else {
            out << (neg ? " - " : " + ");
        }
        if (q == 0) {
            out << cs;
            continue;
        }
        if (cs != "1") out << cs << "*";
        out << "x";
        if (q != 1) out << "^(" << rp::to_string(q) << ")";
    }
    return out.str();
}

TruncatedSeries TruncatedSeries::exact(PuiseuxPoly body) {
    TruncatedSeries s;
    s.body_ = std::move(body);
    s.exact_ = true;
    return s;
}

TruncatedSeries TruncatedSeries::truncated(PuiseuxPoly body, Rational floor) {
    TruncatedSeries s;
    s.body_ = body.truncated_below(floor);
    s.floor_ = std::move(floor);
    s.exact_ = false;
    return s;
}

const Rational& TruncatedSeries::floor() const {
    if (exact_) throw domain_error("exact series carries no floor");
    return floor_;
}

TruncatedSeries TruncatedSeries::differentiate() const {
    if (exact_) return exact(body_.differentiate());
    return truncated(body_.differentiate(), floor_ - 1);
}

TruncatedSeries TruncatedSeries::embed(const ExtensionTower& deeper) const {
    TruncatedSeries s = *this;
    s.body_ = body_.embed(deeper);
    return s;
}

std::string TruncatedSeries::to_string() const {
    if (exact_) return body_.to_string();
    return body_.to_string() + " + O(x^(<" + rp::to_string(floor_) + "))";
}

} // namespace rp
