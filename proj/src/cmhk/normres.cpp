#include "cmhk/normres.hpp"

#include <cmath>
#include <functional>

#include "cmhk/qform.hpp"

namespace cmhk {

namespace {

// True when v(a) >= threshold, treating values beyond the working precision
// as accepted (they certify the congruence a fortiori).
bool valuation_at_least(const PadicElement& a, const Rat& threshold) {
    if (a.is_exact_zero()) return true;
    try {
        auto v = a.valuation();
        return !v || *v >= threshold;
    } catch (const precision_error&) {
        return true;  // indistinguishable from zero at precision >> threshold
    }
}

// Depth-first search over pi-adic digit expansions w = sum_{k<K} t_k y^k for
// a w with v(residual(w)) >= threshold. Requires the residual to move by at
// most ... >= (j+1)/e when w is perturbed by pi^(j+1)-multiples, so that a
// depth-j prefix pins the residual mod pi^(j+1); prefixes violating the
// truncated congruence are pruned. Node budget guards against degenerate
// blowup.
struct DigitSearch {
    const PadicTower& t;
    int K;
    Rat threshold;
    const std::function<PadicElement(const PadicElement&)>& residual;
    long budget = 5'000'000;

    std::vector<LayerElem> digit_values() const {
        std::vector<LayerElem> vals;
        const long p = t.p().get_si();
        const int f = t.f();
        std::vector<long> d(static_cast<size_t>(f), 0);
        while (true) {
            std::vector<Rat> c(static_cast<size_t>(f), Rat(0));
            for (int j = 0; j < f; ++j) c[static_cast<size_t>(j)] = Rat(d[static_cast<size_t>(j)]);
            vals.push_back(t.layer()->from_coords(std::move(c)));
            int i = 0;
            for (; i < f; ++i) {
                if (++d[static_cast<size_t>(i)] < p) break;
                d[static_cast<size_t>(i)] = 0;
            }
            if (i == f) return vals;
        }
    }

    bool run() {
        auto digits = digit_values();
        return descend(t.zero(), 0, digits);
    }

    bool descend(const PadicElement& w, int depth, const std::vector<LayerElem>& digits) {
        if (--budget < 0) throw domain_error("digit search budget exhausted");
        Rat depth_bound(depth + 1, t.e());
        bool final_level = depth_bound >= threshold;
        if (!final_level && depth + 1 >= K) throw check_failure("digit search: depth bound below threshold");
        Rat bound = final_level ? threshold : depth_bound;
        PadicElement ypw = t.gen_y().pow(depth);
        for (const LayerElem& d : digits) {
            PadicElement wc = w + t.from_layer(d) * ypw;
            if (!valuation_at_least(residual(wc), bound)) continue;
            if (final_level) return true;
            if (descend(wc, depth + 1, digits)) return true;
        }
        return false;
    }
};

bool padic_digit_search(const PadicTower& t, int K, const Rat& threshold,
                        const std::function<PadicElement(const PadicElement&)>& residual) {
    DigitSearch s{t, K, threshold, residual};
    return s.run();
}

Rat rational_part(const PadicElement& a) {
    // Exact element of Q inside the tower; throws if coordinates beyond the
    // first are nonzero.
    auto flat = a.owner()->to_rat_coords(a);
    for (size_t i = 1; i < flat.size(); ++i)
        if (flat[i] != 0) throw check_failure("element expected to be rational is not");
    return flat[0];
}

}  // namespace

bool is_square(const PadicElement& x) {
    const PadicTower& t = *x.owner();
    auto v = x.valuation();
    if (!v) throw domain_error("is_square of zero");
    long e = t.e();
    Rat ev = *v * Rat(e);
    ev.canonicalize();
    if (ev.get_den() != 1) throw check_failure("valuation outside (1/e)Z");
    long tval = ev.get_num().get_si();
    if (tval % 2 != 0) return false;
    PadicElement u = x * t.gen_y().pow(-tval);
    if (t.p() != 2) return t.layer()->residue_field().is_square(t.residue(u));

    // p = 2: a unit is a square iff it is a square mod pi^(2e+1); certified
    // Hensel bound with v(2) = e.
    long m = 2 * e + 1;
    Rat threshold(m, e);
    if (u.precision() != kExactPrecision && Rat(u.precision()) < threshold + 2)
        throw precision_error("is_square at p=2: insufficient precision for the Hensel bound");
    std::function<PadicElement(const PadicElement&)> residual = [&](const PadicElement& a) {
        return a * a - u;
    };
    return padic_digit_search(t, static_cast<int>(m), threshold, residual);
}

bool is_norm(const PadicElement& x, const Involution& star) {
    const PadicTower& t = *x.owner();
    if (x.is_zero_at_precision()) throw domain_error("is_norm of zero");
    if (!star.is_fixed(x)) throw domain_error("is_norm: element not in the fixed field");

    if (!star.ramified()) {
        // Every norm has even valuation in F_0, and conversely: units are
        // norms in an unramified extension.
        return star.valuation_f0(x) % 2 == 0;
    }

    const PadicElement& delta = star.delta();
    if (t.p() != 2) {
        // Tame symbol (x, delta)_{F_0} through the residue character.
        long a = star.valuation_f0(x);
        long b = star.valuation_f0(delta);
        if (b % 2 == 0) throw check_failure("tame ramified quadratic with even v(delta)");
        PadicElement w = x.pow(b) * delta.pow(-a);
        if ((a % 2) * (b % 2) == 1) w = -w;
        return t.layer()->residue_field().is_square(t.residue(w));
    }

    // p = 2, ramified.
    if (t.degree() == 2) {
        // F_0 = Q_p: the rational 2-adic Hilbert symbol decides.
        return hilbert_symbol(rational_part(x), rational_part(delta), PlaceQ::prime(Int(2))) == 1;
    }

    // General wild case: certified digit search for w with w w* = x up to the
    // square margin  U_0^(2e0+3) subset (F_0^x)^2.
    int e0 = star.e0();
    long m = star.valuation_f0(x);
    PadicElement ny = t.gen_y() * star.apply(t.gen_y());  // v_{F_0} = 1
    PadicElement target = x * ny.pow(-m);
    Rat threshold(2 * e0 + 3, e0);
    int K = 4 * e0 + 6;
    std::function<PadicElement(const PadicElement&)> residual = [&](const PadicElement& w) {
        return w * star.apply(w) - target;
    };
    return padic_digit_search(t, K, threshold, residual);
}

ReciprocitySymbol reciprocity_symbol(const PadicElement& x, const Involution& star) {
    return is_norm(x, star) ? ReciprocitySymbol::identity : ReciprocitySymbol::star;
}

namespace {

// Hensel square root in the layer: returns h with h^2 = w, h congruent to the
// given residue seed mod p. p odd, w a unit.
LayerElem layer_hensel_sqrt(const LayerElem& w, const IntVec& seed) {
    const auto& L = *w.owner();
    const Int& p = L.p();
    long n = L.precision();
    Int pN = pow_int(p, static_cast<unsigned long>(n));
    IntVec u = mod_from_rat(L.unram_poly(), pN);
    // integer representative of w mod p^N
    IntVec wrep;
    for (const Rat& c : w.coords()) {
        Int num = mod_floor(Int(c.get_num()), pN);
        wrep.push_back(mod_floor(num * mod_inverse(Int(c.get_den()), pN), pN));
    }
    wrep = mod_trim(std::move(wrep));
    IntVec h = seed;
    long k = 1;
    Int inv2 = mod_inverse(Int(2), pN);
    while (k < n) {
        k = std::min(2 * k, n);
        Int pk = pow_int(p, static_cast<unsigned long>(k));
        // h <- (h + w/h) / 2
        IntVec hinv;
        {
            auto [g, s, t0] = mod_xgcd(mod_divmod(h, u, p).second, u, p);
            if (mod_degree(g) != 0) throw check_failure("hensel sqrt: seed not a unit");
            hinv = s;
            long kk = 1;
            while (kk < k) {
                kk = std::min(2 * kk, k);
                Int pkk = pow_int(p, static_cast<unsigned long>(kk));
                IntVec prod = mod_divmod(mod_mul(h, hinv, pkk), u, pkk).second;
                hinv = mod_divmod(mod_mul(hinv, mod_sub(IntVec{Int(2)}, prod, pkk), pkk), u, pkk).second;
            }
        }
        IntVec woh = mod_divmod(mod_mul(mod_reduce(wrep, pk), hinv, pk), u, pk).second;
        IntVec sum = mod_add(h, woh, pk);
        h = mod_divmod(mod_mul(sum, IntVec{mod_floor(inv2, pk)}, pk), u, pk).second;
    }
    std::vector<Rat> coords(static_cast<size_t>(L.f()), Rat(0));
    for (size_t i = 0; i < h.size(); ++i) coords[i] = Rat(h[i]);
    return L.from_coords(std::move(coords), n);
}

}  // namespace

DworkWitnessReport dwork_tame_witness(const Involution& star) {
    const PadicTower& t = *star.tower();
    if (t.p() == 2) throw domain_error("dwork witness: p = 2 is the wild case, unsupported");
    if (!star.ramified()) throw domain_error("dwork witness: extension is unramified");

    // A uniformizer with pi* = -pi: scale the minus-eigenvector to valuation 1/e.
    PadicElement z = star.minus_generator();
    auto vz = z.valuation();
    Rat evz = *vz * Rat(t.e());
    evz.canonicalize();
    if (evz.get_den() != 1 || evz.get_num().get_si() % 2 == 0)
        throw domain_error("dwork witness: no uniformizer with pi* = -pi in the minus eigenspace");
    long shift = (evz.get_num().get_si() - 1) / 2;
    PadicElement ny = t.gen_y() * star.apply(t.gen_y());
    PadicElement pi = z * ny.pow(-shift);
    if (!(star.apply(pi) == -pi)) throw check_failure("dwork witness: pi* = -pi violated after scaling");

    DworkWitnessReport rep;

    // Unit with non-square residue (exact integer coordinates).
    const ResidueField& k = t.layer()->residue_field();
    IntVec ures = k.first_non_square();
    std::vector<Rat> ucoords(static_cast<size_t>(t.f()), Rat(0));
    for (size_t i = 0; i < ures.size(); ++i) ucoords[i] = Rat(ures[i]);
    LayerElem u = t.layer()->from_coords(ucoords);
    PadicElement uelem = t.from_layer(u);
    if (!star.is_fixed(uelem)) throw check_failure("dwork witness: layer unit not fixed by the involution");
    rep.u_coords = ucoords;

    // c = sqrt(u) in the unramified quadratic extension E = F_a(c), modeled as
    // pairs over the layer. phi_E(c) = h c with h^2 = phi(u)/u and
    // h = residue(u)^((p-1)/2) mod p; then phi^f(c) = (prod phi^i(h)) c.
    LayerElem w = u.frobenius() * u.inverse();
    IntVec seed = k.pow(ures, (t.p() - 1) / 2);
    LayerElem h = layer_hensel_sqrt(w, seed);
    // consistency: h^2 = w at working precision
    if (!((h * h - w).is_zero_at_precision())) throw check_failure("dwork witness: hensel sqrt failed");
    LayerElem big_h = h;
    LayerElem hh = h;
    for (int i = 1; i < t.f(); ++i) {
        hh = hh.frobenius();
        big_h = big_h * hh;
    }
    rep.frobenius_negates = (big_h + t.layer()->one()).is_zero_at_precision();

    // c c* = u: the ramified extension of * to E fixes the unramified constant
    // c, so c c* = c^2, computed in the pair model (a, b) ~ a + b c with
    // (a1,b1)(a2,b2) = (a1 a2 + b1 b2 u, a1 b2 + b1 a2).
    {
        LayerElem zero = t.layer()->zero(), one = t.layer()->one();
        LayerElem prod_a = zero * zero + one * one * u;
        LayerElem prod_b = zero * one + one * zero;
        rep.cc_star_is_u = (prod_a == u) && prod_b.is_zero_at_precision();
    }

    rep.u_not_norm = !is_norm(uelem, star);
    rep.pass = rep.frobenius_negates && rep.cc_star_is_u && rep.u_not_norm;
    rep.detail = rep.pass ? "phi^f negates sqrt(u); u has non-square residue and is not a norm"
                          : "witness checks failed";
    return rep;
}

}  // namespace cmhk
