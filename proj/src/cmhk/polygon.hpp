#pragma once

#include <optional>
#include <vector>

#include "cmhk/poly.hpp"

namespace cmhk {

struct PolygonSegment {
    Rat slope;
    long length = 0;  // horizontal length, positive
};

// Lower convex hull polygon. Vertices have strictly increasing integer
// abscissae; segment slopes are weakly increasing.
class LowerPolygon {
public:
    LowerPolygon() = default;

    // Lower hull of the given (abscissa, ordinate) points.
    static LowerPolygon hull(std::vector<std::pair<long, Rat>> points);
    // Polygon starting at (x0, y0) whose segments are the given (slope, length)
    // runs; slopes must be fed weakly increasing.
    static LowerPolygon from_slopes(long x0, const Rat& y0, const std::vector<PolygonSegment>& segs);

    const std::vector<std::pair<long, Rat>>& vertices() const { return verts_; }
    std::vector<PolygonSegment> segments() const;
    // Slopes expanded with multiplicity = horizontal length.
    std::vector<Rat> slope_multiset() const;

    long left() const { return verts_.front().first; }
    long right() const { return verts_.back().first; }
    long width() const { return right() - left(); }
    // Ordinate difference between the two endpoints.
    Rat total_rise() const { return verts_.back().second - verts_.front().second; }
    // Smallest ordinate over the polygon (attained at a vertex).
    Rat min_ordinate() const;
    // Value of the piecewise-linear function at abscissa x (must lie in range).
    Rat at(long x) const;

    friend bool operator==(const LowerPolygon& a, const LowerPolygon& b) { return a.verts_ == b.verts_; }

private:
    std::vector<std::pair<long, Rat>> verts_;
};

// Newton polygon of a polynomial from the valuations of its coefficients:
// lower hull of the points (i, v(a_i)), zero coefficients skipped.
// Convention: root valuations are the negated hull slopes, with multiplicity
// equal to the segment length.
LowerPolygon newton_polygon_from_valuations(const std::vector<std::optional<Rat>>& vals);

// Root-valuation multiset (value, multiplicity), ascending, from a polynomial
// Newton polygon.
std::vector<std::pair<Rat, long>> root_valuations(const LowerPolygon& np);

// Newton polygon of a rational polynomial at p.
LowerPolygon newton_polygon(const RatPoly& f, const Int& p);

}  // namespace cmhk
