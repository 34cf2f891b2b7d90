#include "rp/polygon.hpp"

#include <algorithm>

#include "rp/errors.hpp"

namespace rp {

Rational Edge::abscissa_at(int ordinate) const {
    return upper.deg + Rational(upper.i - ordinate) * inclination;
}

int NewtonPolygon::min_ordinate() const {
    if (marked_points.empty()) throw domain_error("empty polygon");
    return marked_points.front().i;
}

int NewtonPolygon::max_ordinate() const {
    if (marked_points.empty()) throw domain_error("empty polygon");
    return marked_points.back().i;
}

bool NewtonPolygon::contains_edge(const Edge& e) const {
    return std::find(edges.begin(), edges.end(), e) != edges.end();
}

NewtonPolygon compute_polygon(const RiccatiOperator& r) {
    NewtonPolygon np;
    for (int i = 0; i <= r.order(); ++i) {
        if (r.g(i).is_zero()) continue;
        np.marked_points.push_back({*r.g(i).deg_inf(), i});
    }
    if (np.marked_points.empty()) throw domain_error("polygon of the zero operator");
    np.has_infinite_edge = np.marked_points.front().i > 0;

    // Upper concave chain of (i, deg) by monotone chain: walking up in the
    // ordinate, slopes strictly decrease.
    std::vector<PolygonPoint> chain;
    for (const auto& p : np.marked_points) {
        while (chain.size() >= 2) {
            const PolygonPoint& a = chain[chain.size() - 2];
            const PolygonPoint& b = chain[chain.size() - 1];
            // Keep b only if it lies strictly above segment a-p.
            // cross = (p.i - a.i)*(b.deg - a.deg) - (b.i - a.i)*(p.deg - a.deg)
            Rational cross = Rational(p.i - a.i) * (b.deg - a.deg) -
                             Rational(b.i - a.i) * (p.deg - a.deg);
            if (cross > 0) break;
            chain.pop_back();
        }
        chain.push_back(p);
    }
    np.vertices = chain;

    for (std::size_t k = chain.size(); k-- > 1;) {
        Edge e;
        e.upper = chain[k];
        e.lower = chain[k - 1];
        e.inclination = (e.lower.deg - e.upper.deg) / Rational(e.upper.i - e.lower.i);
        np.edges.push_back(std::move(e));
    }
    return np;
}

CharPoly characteristic(const RiccatiOperator& r, const Edge& e) {
    NewtonPolygon np = compute_polygon(r);
    if (!np.contains_edge(e))
        throw edge_mismatch_error("edge does not belong to the operator's polygon");
    const ExtensionTower& t = r.tower();
    std::vector<FieldElement> coeffs(static_cast<std::size_t>(e.upper.i) + 1,
                                     FieldElement::zero(t));
    for (const auto& p : np.marked_points) {
        if (p.i < e.lower.i || p.i > e.upper.i) continue;
        if (p.deg != e.abscissa_at(p.i)) continue;
        coeffs[static_cast<std::size_t>(p.i)] = r.g(p.i).lc_inf();
    }
    CharPoly cp;
    cp.h = Poly::from_coeffs(t, "C", std::move(coeffs));
    cp.edge = e;
    if (cp.h.is_zero()) throw internal_error("characteristic polynomial vanished");
    return cp;
}

FieldElement indicial(const RiccatiOperator& r, const PolygonPoint& vertex) {
    NewtonPolygon np = compute_polygon(r);
    if (std::find(np.vertices.begin(), np.vertices.end(), vertex) == np.vertices.end())
        throw domain_error("point is not a vertex of the polygon");
    return r.g(vertex.i).lc_inf();
}

} // namespace rp
