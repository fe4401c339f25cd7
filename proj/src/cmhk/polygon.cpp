#include "cmhk/polygon.hpp"

#include <algorithm>

namespace cmhk {

LowerPolygon LowerPolygon::hull(std::vector<std::pair<long, Rat>> points) {
    if (points.empty()) throw domain_error("polygon hull of no points");
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first < b.first : a.second < b.second;
    });
    // Keep the lowest ordinate per abscissa.
    std::vector<std::pair<long, Rat>> pts;
    for (auto& p : points)
        if (pts.empty() || pts.back().first != p.first) pts.push_back(p);
    LowerPolygon poly;
    for (auto& p : pts) {
        auto& h = poly.verts_;
        while (h.size() >= 2) {
            // Drop the middle point when it lies on or above the chord.
            const auto& a = h[h.size() - 2];
            const auto& b = h[h.size() - 1];
            Rat lhs = (b.second - a.second) * Rat(p.first - a.first);
            Rat rhs = (p.second - a.second) * Rat(b.first - a.first);
            if (lhs >= rhs)
                h.pop_back();
            else
                break;
        }
        poly.verts_.push_back(p);
    }
    return poly;
}

LowerPolygon LowerPolygon::from_slopes(long x0, const Rat& y0, const std::vector<PolygonSegment>& segs) {
    LowerPolygon poly;
    poly.verts_.emplace_back(x0, y0);
    long x = x0;
    Rat y = y0;
    for (size_t i = 0; i < segs.size(); ++i) {
        if (segs[i].length <= 0) throw domain_error("polygon segment of nonpositive length");
        if (i > 0 && segs[i].slope < segs[i - 1].slope)
            throw domain_error("polygon slopes must be weakly increasing");
        if (i > 0 && segs[i].slope == segs[i - 1].slope) {
            x += segs[i].length;
            y += segs[i].slope * Rat(segs[i].length);
            poly.verts_.back() = {x, y};
            continue;
        }
        x += segs[i].length;
        y += segs[i].slope * Rat(segs[i].length);
        poly.verts_.emplace_back(x, y);
    }
    return poly;
}

std::vector<PolygonSegment> LowerPolygon::segments() const {
    std::vector<PolygonSegment> segs;
    for (size_t i = 0; i + 1 < verts_.size(); ++i) {
        long len = verts_[i + 1].first - verts_[i].first;
        Rat slope = (verts_[i + 1].second - verts_[i].second) / Rat(len);
        segs.push_back({slope, len});
    }
    return segs;
}

std::vector<Rat> LowerPolygon::slope_multiset() const {
    std::vector<Rat> out;
    for (auto& s : segments())
        for (long i = 0; i < s.length; ++i) out.push_back(s.slope);
    return out;
}

Rat LowerPolygon::min_ordinate() const {
    Rat m = verts_.front().second;
    for (auto& v : verts_) m = std::min(m, v.second);
    return m;
}

Rat LowerPolygon::at(long x) const {
    if (x < left() || x > right()) throw domain_error("polygon evaluation out of range");
    for (size_t i = 0; i + 1 < verts_.size(); ++i) {
        if (x <= verts_[i + 1].first) {
            long len = verts_[i + 1].first - verts_[i].first;
            return verts_[i].second +
                   (verts_[i + 1].second - verts_[i].second) * Rat(x - verts_[i].first) / Rat(len);
        }
    }
    return verts_.back().second;
}

LowerPolygon newton_polygon_from_valuations(const std::vector<std::optional<Rat>>& vals) {
    if (vals.empty() || !vals.back().has_value())
        throw domain_error("newton polygon: zero polynomial or leading coefficient of infinite valuation");
    std::vector<std::pair<long, Rat>> pts;
    for (size_t i = 0; i < vals.size(); ++i)
        if (vals[i].has_value()) pts.emplace_back(static_cast<long>(i), *vals[i]);
    return LowerPolygon::hull(std::move(pts));
}

std::vector<std::pair<Rat, long>> root_valuations(const LowerPolygon& np) {
    std::vector<std::pair<Rat, long>> out;
    auto segs = np.segments();
    for (auto it = segs.rbegin(); it != segs.rend(); ++it) out.emplace_back(-it->slope, it->length);
    return out;
}

LowerPolygon newton_polygon(const RatPoly& f, const Int& p) {
    if (f.is_zero()) throw domain_error("newton polygon of the zero polynomial");
    std::vector<std::optional<Rat>> vals(f.coeffs().size());
    for (size_t i = 0; i < vals.size(); ++i)
        if (f.coeffs()[i] != 0) vals[i] = Rat(vp(f.coeffs()[i], p));
    return newton_polygon_from_valuations(vals);
}

}  // namespace cmhk
