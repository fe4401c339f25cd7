#include "cmhk/hensel.hpp"

namespace cmhk {

namespace {

Int eval_mod(const IntVec& f, const Int& x, const Int& m) {
    Int acc(0);
    for (size_t i = f.size(); i-- > 0;) acc = mod_floor(acc * x + f[i], m);
    return acc;
}

// Lift f = g*h from mod p^k to mod p^(k+1), keeping g,h monic and congruent to
// their mod-p^k values. sg*g + sh*h = 1 mod p is the fixed Bezout pair.
void lift_pair(const IntVec& f, IntVec& g, IntVec& h, const IntVec& sg, const IntVec& sh, const Int& p,
               const Int& pk, const Int& pk1) {
    IntVec prod = mod_mul(g, h, pk1);
    IntVec err = mod_sub(mod_reduce(f, pk1), prod, pk1);
    // err = p^k * ehat with ehat defined mod p.
    IntVec ehat(err.size());
    for (size_t i = 0; i < err.size(); ++i) ehat[i] = mod_floor(err[i] / pk, p);
    ehat = mod_trim(std::move(ehat));
    // dg*h + dh*g = ehat mod p with deg dg < deg g; dh = (ehat - dg*h)/g exactly.
    IntVec dg = mod_divmod(mod_mul(sh, ehat, p), g, p).second;
    auto [dh, r] = mod_divmod(mod_sub(ehat, mod_mul(dg, h, p), p), g, p);
    if (!r.empty()) throw check_failure("hensel: correction not divisible by the factor");
    for (size_t i = 0; i < dg.size(); ++i) {
        if (i + 1 >= g.size()) throw check_failure("hensel: correction degree overflow");
        g[i] = mod_floor(g[i] + pk * dg[i], pk1);
    }
    for (size_t i = 0; i < dh.size(); ++i) {
        if (i + 1 >= h.size()) throw check_failure("hensel: correction degree overflow");
        h[i] = mod_floor(h[i] + pk * dh[i], pk1);
    }
}

// Two-factor lift to mod p^precision.
std::pair<IntVec, IntVec> lift_two(const IntVec& f, IntVec g, IntVec h, const Int& p, long precision) {
    auto [one, sg, sh] = mod_xgcd(g, h, p);
    if (mod_degree(one) != 0)
        throw domain_error("hensel_factor: seed factors not coprime mod p (gcd has positive degree)");
    Int pk = p;
    for (long k = 1; k < precision; ++k) {
        Int pk1 = pk * p;
        lift_pair(f, g, h, sg, sh, p, pk, pk1);
        pk = pk1;
    }
    return {g, h};
}

}  // namespace

std::vector<IntVec> hensel_factor(const RatPoly& f, const std::vector<IntVec>& seeds, const Int& p,
                                  long precision) {
    if (f.is_zero()) throw domain_error("hensel_factor: zero polynomial");
    if (f.lead() != 1) throw domain_error("hensel_factor: input must be monic");
    if (precision < 1) throw domain_error("hensel_factor: precision must be positive");
    for (const Rat& c : f.coeffs())
        if (mod_floor(Int(c.get_den()), p) == 0)
            throw domain_error("hensel_factor: coefficient not p-integral");
    Int pN = pow_int(p, static_cast<unsigned long>(precision));
    IntVec fN = mod_from_rat(f, pN);
    IntVec fp = mod_reduce(fN, p);

    // Validate the seed.
    IntVec prod{Int(1)};
    for (const auto& s : seeds) {
        if (s.empty() || s.back() != 1) throw domain_error("hensel_factor: seed factor not monic");
        prod = mod_mul(prod, s, p);
    }
    if (mod_trim(mod_sub(prod, fp, p)) != IntVec{})
        throw domain_error("hensel_factor: seed product differs from f mod p");
    for (size_t i = 0; i < seeds.size(); ++i)
        for (size_t j = i + 1; j < seeds.size(); ++j)
            if (mod_degree(mod_gcd(seeds[i], seeds[j], p)) != 0)
                throw domain_error("hensel_factor: seed factors not pairwise coprime mod p");

    if (seeds.size() == 1) return {fN};

    // Peel factors one at a time: lift (seed_i, product of the rest).
    std::vector<IntVec> out;
    IntVec rem = fN;
    for (size_t i = 0; i + 1 < seeds.size(); ++i) {
        IntVec rest{Int(1)};
        for (size_t j = i + 1; j < seeds.size(); ++j) rest = mod_mul(rest, seeds[j], p);
        auto [gi, hi] = lift_two(rem, seeds[i], rest, p, precision);
        out.push_back(gi);
        rem = hi;
    }
    out.push_back(rem);

    // Exact verification of the lift.
    IntVec check{Int(1)};
    for (const auto& g : out) check = mod_mul(check, g, pN);
    if (mod_trim(mod_sub(check, fN, pN)) != IntVec{})
        throw check_failure("hensel_factor: lifted product fails the congruence");
    return out;
}

Int hensel_root(const IntVec& f, const Int& r0, const Int& p, long precision) {
    IntVec df = mod_derivative(f, pow_int(p, static_cast<unsigned long>(precision)));
    Int pk = p;
    Int r = mod_floor(r0, p);
    if (eval_mod(f, r, p) != 0) throw domain_error("hensel_root: seed is not a root mod p");
    Int d0 = eval_mod(df, r, p);
    if (d0 == 0) throw domain_error("hensel_root: derivative vanishes mod p");
    for (long k = 1; k < precision; ++k) {
        Int pk1 = pk * p;
        Int val = eval_mod(f, r, pk1);
        Int dval = eval_mod(df, r, pk1);
        Int step = mod_floor(val / pk * mod_inverse(dval, p), p);
        r = mod_floor(r - step * pk, pk1);
        pk = pk1;
    }
    return r;
}

}  // namespace cmhk
