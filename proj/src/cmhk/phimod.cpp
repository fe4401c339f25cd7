#include "cmhk/phimod.hpp"

#include <algorithm>
#include <numeric>

namespace cmhk {

FilteredPhiModule FilteredPhiModule::make(LayerPtr layer, Matrix<LayerElem> frob,
                                          std::vector<std::pair<long, long>> hodge_jumps,
                                          bool cm_symmetric_tag) {
    if (frob.rows() != frob.cols() || frob.rows() == 0)
        throw domain_error("phi module: Frobenius matrix must be square and nonempty");
    long total = 0;
    for (auto& [w, m] : hodge_jumps) {
        if (m <= 0) throw domain_error("phi module: jump multiplicity must be positive");
        total += m;
    }
    if (total != static_cast<long>(frob.rows()))
        throw domain_error("phi module: jump multiplicities must sum to the rank");
    FilteredPhiModule d{std::move(layer), std::move(frob), std::move(hodge_jumps), cm_symmetric_tag};
    if (det(d.frob).is_zero_at_precision()) throw domain_error("phi module: Frobenius matrix singular");
    return d;
}

Matrix<LayerElem> frobenius_matrix(const Matrix<LayerElem>& m) {
    return m.map([](const LayerElem& x) { return x.frobenius(); });
}

Matrix<LayerElem> phi_power_matrix(const FilteredPhiModule& d) {
    Matrix<LayerElem> acc = d.frob;
    Matrix<LayerElem> twisted = d.frob;
    for (int i = 1; i < d.layer->f(); ++i) {
        twisted = frobenius_matrix(twisted);
        acc = acc * twisted;
    }
    return acc;
}

LowerPolygon newton_polygon_module(const FilteredPhiModule& d) {
    Poly<LayerElem> cp = char_poly(phi_power_matrix(d));
    std::vector<std::optional<Rat>> vals(static_cast<size_t>(d.rank()) + 1);
    for (int i = 0; i <= d.rank(); ++i) {
        LayerElem c = cp.coeff_or(static_cast<size_t>(i), d.layer->zero());
        if (c.is_exact_zero()) continue;
        vals[static_cast<size_t>(i)] = c.valuation().value();
    }
    LowerPolygon np = newton_polygon_from_valuations(vals);
    std::vector<PolygonSegment> segs;
    for (auto& [val, mult] : root_valuations(np)) {
        Rat slope = val / Rat(d.layer->f());
        segs.push_back({slope, mult});
    }
    return LowerPolygon::from_slopes(0, Rat(0), segs);
}

LowerPolygon hodge_polygon(const FilteredPhiModule& d) {
    auto jumps = d.hodge_jumps;
    std::sort(jumps.begin(), jumps.end());
    std::vector<PolygonSegment> segs;
    for (auto& [w, m] : jumps) segs.push_back({Rat(w), m});
    return LowerPolygon::from_slopes(0, Rat(0), segs);
}

AdmissibilityCertificate admissibility_certificate(const FilteredPhiModule& d) {
    LowerPolygon newton = newton_polygon_module(d);
    LowerPolygon hodge = hodge_polygon(d);
    Rat tn = newton.total_rise(), th = hodge.total_rise();

    if (d.cm_symmetric_tag) {
        bool flat = true;
        for (const Rat& s : newton.slope_multiset())
            if (s != 0) flat = false;
        if (!flat || th != 0)
            throw check_failure("phi module: symmetric tag fails the flatness cross-validation");
        return {Admissibility::certified_admissible,
                "F-equivariant route: phi-invariant basis, Newton and Hodge heights zero"};
    }

    if (tn != th)
        return {Admissibility::certified_inadmissible,
                "polygon heights differ: t_N = " + tn.get_str() + ", t_H = " + th.get_str()};
    for (long x = 0; x <= static_cast<long>(d.rank()); ++x)
        if (newton.at(x) < hodge.at(x))
            return {Admissibility::certified_inadmissible,
                    "Newton polygon dips below the Hodge polygon at abscissa " + std::to_string(x)};

    auto segs = newton.segments();
    if (segs.size() == 1) {
        // height is integral here since t_N = t_H in Z
        Int rise_num = tn.get_num();
        Int g;
        Int width(static_cast<long>(d.rank()));
        mpz_gcd(g.get_mpz_t(), rise_num.get_mpz_t(), width.get_mpz_t());
        if (g == 1)
            return {Admissibility::certified_admissible,
                    "single Newton segment through no interior lattice point"};
        return {Admissibility::unknown,
                "single segment but gcd(rank, height) = " + g.get_str() +
                    " admits interior lattice points"};
    }
    return {Admissibility::unknown, "reducible Newton polygon; subobject bound not certified"};
}

FilteredPhiModule from_filtered_cm(const FilteredCMSpace& v, LayerPtr layer) {
    if (!validate_symmetric(v)) throw domain_error("from_filtered_cm: space is not symmetric");
    Matrix<LayerElem> frob = Matrix<LayerElem>::identity(static_cast<size_t>(v.d), layer->one());
    std::map<long, long> mult;
    for (long w : v.weights) mult[w] += 1;
    std::vector<std::pair<long, long>> jumps(mult.begin(), mult.end());
    return FilteredPhiModule::make(layer, std::move(frob), std::move(jumps), true);
}

size_t layer_rank(Matrix<LayerElem> m) {
    size_t rank = 0;
    for (size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        size_t piv = rank;
        while (piv < m.rows() && m(piv, col).is_zero_at_precision()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != rank)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(rank, j));
        LayerElem inv = m(rank, col).inverse();
        for (size_t j = 0; j < m.cols(); ++j) m(rank, j) = m(rank, j) * inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || m(i, col).is_zero_at_precision()) continue;
            LayerElem f = m(i, col);
            for (size_t j = 0; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(rank, j);
        }
        ++rank;
    }
    return rank;
}

}  // namespace cmhk
