// Newton polygon of a Riccati operator at x = +infinity.
//
// Each nonzero coefficient g_i marks the point (deg_inf(g_i), i). The
// polygon is the convex hull of the marked points together with the ideal
// point (-inf, 0); only the finite right-hand chain is materialized: its
// vertices have strictly increasing ordinates, its edges strictly decreasing
// inclinations from top to bottom. The side running off to (-inf, 0) exists
// exactly when the lowest marked ordinate is positive and is reported by the
// has_infinite_edge flag.
//
// The inclination mu of an edge is characterized by: deg g_i + i*mu is
// maximal over all marked points exactly on the edge. The characteristic
// polynomial of an edge collects lc_inf(g_i) C^i over the points on it; the
// indicial value of a vertex is the single lc_inf there, a nonzero constant.
#ifndef RP_POLYGON_HPP
#define RP_POLYGON_HPP

#include <vector>

#include "rp/riccati.hpp"
#include "rp/upoly.hpp"

namespace rp {

struct PolygonPoint {
    Rational deg; // abscissa: deg_inf(g_i)
    int i = 0;    // ordinate: r-basis index

    friend bool operator==(const PolygonPoint& a, const PolygonPoint& b) {
        return a.i == b.i && a.deg == b.deg;
    }
};

struct Edge {
    PolygonPoint upper; // larger ordinate
    PolygonPoint lower; // smaller ordinate
    Rational inclination; // (deg_lower - deg_upper) / (i_upper - i_lower)

    friend bool operator==(const Edge& a, const Edge& b) {
        return a.upper == b.upper && a.lower == b.lower && a.inclination == b.inclination;
    }

    // Abscissa of the edge point at a given ordinate (need not be marked).
    Rational abscissa_at(int ordinate) const;
};

struct NewtonPolygon {
    std::vector<PolygonPoint> marked_points; // ascending ordinate
    std::vector<PolygonPoint> vertices;      // hull chain, ascending ordinate
    std::vector<Edge> edges;                 // decreasing inclination (top first)
    bool has_infinite_edge = false;          // lowest marked ordinate > 0

    int min_ordinate() const; // of the marked points
    int max_ordinate() const;
    bool contains_edge(const Edge& e) const;
};

struct CharPoly {
    Poly h;    // in the variable "C" over the operator's tower
    Edge edge;
};

// Exact-rational hull of the marked points; throws domain_error for the zero
// operator.
NewtonPolygon compute_polygon(const RiccatiOperator& r);

// H(C) = sum lc_inf(g_i) C^i over marked points on e; e must belong to
// compute_polygon(r) (edge_mismatch_error otherwise).
CharPoly characteristic(const RiccatiOperator& r, const Edge& e);

// Indicial constant at a vertex: lc_inf(g_{i0}) for the vertex ordinate i0.
FieldElement indicial(const RiccatiOperator& r, const PolygonPoint& vertex);

} // namespace rp

#endif
