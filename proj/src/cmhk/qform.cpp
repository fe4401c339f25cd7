#include "cmhk/qform.hpp"

#include <sstream>
#include <unordered_map>

namespace cmhk {

PlaceQ PlaceQ::prime(Int q) {
    if (!is_prime(q)) throw domain_error("place tag is not a prime: " + q.get_str());
    return PlaceQ{false, std::move(q)};
}

QuadraticFormQ::QuadraticFormQ(RatMatrix gram) : gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols() || gram_.rows() == 0)
        throw domain_error("quadratic form: Gram matrix must be square and nonempty");
    gram_ = gram_.map([](const Rat& r) {
        Rat c = r;
        c.canonicalize();
        return c;
    });
    for (size_t i = 0; i < gram_.rows(); ++i)
        for (size_t j = i + 1; j < gram_.cols(); ++j)
            if (gram_(i, j) != gram_(j, i)) throw domain_error("quadratic form: Gram matrix not symmetric");
    if (det(gram_) == 0) throw domain_error("quadratic form: degenerate Gram matrix");
}

QuadraticFormQ QuadraticFormQ::diagonal(const std::vector<Rat>& entries) {
    RatMatrix m(entries.size(), entries.size(), Rat(0));
    for (size_t i = 0; i < entries.size(); ++i) {
        if (entries[i] == 0) throw domain_error("diagonal form with a zero entry");
        m(i, i) = entries[i];
    }
    return QuadraticFormQ(std::move(m));
}

std::vector<Rat> QuadraticFormQ::diagonalize() const {
    RatMatrix m = gram_;
    const size_t n = m.rows();
    std::vector<Rat> out;
    for (size_t k = 0; k < n; ++k) {
        // Pivot: first nonzero diagonal entry at or after k.
        size_t piv = k;
        while (piv < n && m(piv, piv) == 0) ++piv;
        if (piv == n) {
            // Diagonal all zero on the remaining block: make one nonzero via
            // row_i += row_j, col_i += col_j at the first nonzero pair.
            bool fixed = false;
            for (size_t i = k; i < n && !fixed; ++i)
                for (size_t j = i + 1; j < n && !fixed; ++j)
                    if (m(i, j) != 0) {
                        for (size_t t = 0; t < n; ++t) m(i, t) += m(j, t);
                        for (size_t t = 0; t < n; ++t) m(t, i) += m(t, j);
                        piv = i;
                        fixed = true;
                    }
            if (!fixed) throw domain_error("diagonalize: degenerate form");
        }
        if (piv != k) {
            for (size_t t = 0; t < n; ++t) std::swap(m(piv, t), m(k, t));
            for (size_t t = 0; t < n; ++t) std::swap(m(t, piv), m(t, k));
        }
        Rat d = m(k, k);
        for (size_t i = k + 1; i < n; ++i) {
            if (m(i, k) == 0) continue;
            Rat f = m(i, k) / d;
            for (size_t t = 0; t < n; ++t) m(i, t) -= f * m(k, t);
            for (size_t t = 0; t < n; ++t) m(t, i) -= f * m(t, k);
        }
        out.push_back(d);
    }
    return out;
}

Int QuadraticFormQ::discriminant() const {
    return squarefree_part(det(gram_));
}

std::pair<int, int> QuadraticFormQ::signature() const {
    int plus = 0, minus = 0;
    for (const Rat& d : diagonalize()) (d > 0 ? plus : minus) += 1;
    return {plus, minus};
}

namespace {

int hilbert_real(const Rat& a, const Rat& b) {
    return (a < 0 && b < 0) ? -1 : 1;
}

int hilbert_odd_p(const Rat& a, const Rat& b, const Int& p) {
    long alpha = vp(a, p), beta = vp(b, p);
    Rat u = unit_part(a, p), w = unit_part(b, p);
    int sign = 1;
    if ((alpha % 2 != 0) && (beta % 2 != 0) && ((p - 1) / 2) % 2 == 1) sign = -sign;
    if (beta % 2 != 0 && legendre_unit(u, p) == -1) sign = -sign;
    if (alpha % 2 != 0 && legendre_unit(w, p) == -1) sign = -sign;
    return sign;
}

int hilbert_two(const Rat& a, const Rat& b) {
    Int two(2);
    long alpha = vp(a, two), beta = vp(b, two);
    Rat u = unit_part(a, two), w = unit_part(b, two);
    long eu = ((mod8_unit(u) - 1) / 2) % 2;  // (u-1)/2 mod 2
    long ew = ((mod8_unit(w) - 1) / 2) % 2;
    long ou = (mod8_unit(u) * mod8_unit(u) - 1) / 8 % 2;  // (u^2-1)/8 mod 2
    long ow = (mod8_unit(w) * mod8_unit(w) - 1) / 8 % 2;
    long ex = eu * ew + alpha * ow + beta * ou;
    return (ex % 2 == 0) ? 1 : -1;
}

}  // namespace

int hilbert_symbol(const Rat& a, const Rat& b, const PlaceQ& place) {
    if (a == 0 || b == 0) throw domain_error("hilbert symbol of zero");
    if (place.real) return hilbert_real(a, b);
    if (place.p == 2) return hilbert_two(a, b);
    return hilbert_odd_p(a, b, place.p);
}

namespace {

// Reduced square-class representative at p: signed integer with v_p in {0,1}
// and the unit part reduced mod p^k (keeping the class exactly).
Int reduced_class_rep(const Rat& r, const Int& p) {
    // a/b ~ a*b; strip even powers of p.
    Int n = Int(r.get_num()) * Int(r.get_den());
    long v = vp(n, p);
    Int pk = pow_int(p, static_cast<unsigned long>(v - (v % 2)));
    return n / pk;
}

bool conic_solvable_mod(const Int& a, const Int& b, const Int& p, long k) {
    Int pk = pow_int(p, static_cast<unsigned long>(k));
    // squares mod p^k
    std::vector<char> is_sq(static_cast<size_t>(pk.get_ui()), 0);
    unsigned long m = pk.get_ui();
    for (unsigned long z = 0; z < m; ++z) is_sq[static_cast<size_t>((z * z) % m)] = 1;
    unsigned long am = mod_floor(a, pk).get_ui();
    unsigned long bm = mod_floor(b, pk).get_ui();
    unsigned long pl = p.get_ui();
    for (unsigned long x = 0; x < m; ++x)
        for (unsigned long y = 0; y < m; ++y) {
            if (x % pl == 0 && y % pl == 0) continue;  // primitivity (z is then forced)
            unsigned long w = (am * ((x * x) % m) + bm * ((y * y) % m)) % m;
            if (is_sq[static_cast<size_t>(w)]) return true;
        }
    return false;
}

}  // namespace

int hilbert_symbol_oracle(const Rat& a, const Rat& b, const PlaceQ& place) {
    if (a == 0 || b == 0) throw domain_error("hilbert symbol oracle of zero");
    if (place.real) return hilbert_real(a, b);
    const Int& p = place.p;
    long k = (p == 2) ? 6 : 3;
    Int ra = reduced_class_rep(a, p), rb = reduced_class_rep(b, p);
    Int pk = pow_int(p, static_cast<unsigned long>(k));
    // Memoize per (p, ra mod p^k, rb mod p^k); the class determines the answer.
    static std::unordered_map<std::string, int> cache;
    std::ostringstream key;
    key << p.get_str() << '|' << mod_floor(ra, pk).get_str() << '|' << mod_floor(rb, pk).get_str();
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;
    int res = conic_solvable_mod(ra, rb, p, k) ? 1 : -1;
    cache.emplace(key.str(), res);
    return res;
}

int epsilon(const std::vector<Rat>& diag, const PlaceQ& place) {
    int e = 1;
    for (size_t i = 0; i < diag.size(); ++i)
        for (size_t j = i + 1; j < diag.size(); ++j) e *= hilbert_symbol(diag[i], diag[j], place);
    return e;
}

int epsilon(const QuadraticFormQ& form, const PlaceQ& place) {
    return epsilon(form.diagonalize(), place);
}

ProductFormulaReport product_formula_check(const QuadraticFormQ& form) {
    auto diag = form.diagonalize();
    std::map<PlaceQ, int> table;
    table[PlaceQ::infinite()] = epsilon(diag, PlaceQ::infinite());
    std::map<Int, bool> primes;
    primes[Int(2)] = true;
    for (const Rat& d : diag) {
        for (auto& [q, e] : factor(Int(d.get_num()))) primes[q] = true;
        for (auto& [q, e] : factor(Int(d.get_den()))) primes[q] = true;
    }
    for (auto& [q, dummy] : primes) table[PlaceQ::prime(q)] = epsilon(diag, PlaceQ::prime(q));
    ProductFormulaReport rep;
    rep.table = std::move(table);
    for (auto& [pl, e] : rep.table) rep.product *= e;
    return rep;
}

bool is_square_qp(const Rat& r, const Int& p) {
    if (r == 0) throw domain_error("is_square_qp(0)");
    if (vp(r, p) % 2 != 0) return false;
    Rat u = unit_part(r, p);
    if (p == 2) return mod8_unit(u) == 1;
    return legendre_unit(u, p) == 1;
}

bool compare_local(const QuadraticFormQ& f1, const QuadraticFormQ& f2, const Int& p) {
    if (f1.dim() != f2.dim()) throw domain_error("compare_local: dimension mismatch");
    Rat ratio = Rat(f1.discriminant()) * Rat(f2.discriminant());
    if (!is_square_qp(ratio, p)) return false;
    PlaceQ pl = PlaceQ::prime(p);
    return epsilon(f1, pl) == epsilon(f2, pl);
}

Mod4Report mod4_report(const QuadraticFormQ& form) {
    Mod4Report rep;
    auto [sp, sm] = form.signature();
    rep.s_minus = sm;
    rep.disc_sign = (form.discriminant() > 0) ? 1 : -1;
    rep.eps_real = epsilon(form, PlaceQ::infinite());
    rep.verdict_2_divides = (sm % 2 == 0);
    if ((rep.disc_sign == 1) != rep.verdict_2_divides)
        throw check_failure("mod4: disc sign disagrees with parity of s_minus");
    if (rep.disc_sign == 1) {
        rep.verdict_4_divides = (sm % 4 == 0);
        if ((rep.eps_real == 1) != rep.verdict_4_divides)
            throw check_failure("mod4: eps_real disagrees with 4 | s_minus");
    }
    return rep;
}

PadicReductionReport padic_reduction_check(const QuadraticFormQ& q_z, const QuadraticFormQ& q_b,
                                           const Int& p, const HodgeNumbers& hodge) {
    PadicReductionReport rep;
    if (q_z.dim() != q_b.dim()) throw domain_error("padic_reduction_check: dimension mismatch");
    for (auto& [i, h] : hodge)
        if (h < 0) throw domain_error("padic_reduction_check: negative Hodge number");
    for (auto& [i, h] : hodge)
        if (i >= 1 && i % 2 != 0) rep.s_m += h;

    rep.disc_z = q_z.discriminant();
    rep.disc_b = q_b.discriminant();
    bool disc_equal = (rep.disc_z == rep.disc_b);
    bool disc_positive = (rep.disc_b > 0) && (rep.disc_z > 0);
    PlaceQ pl = PlaceQ::prime(p);
    rep.eps_z = epsilon(q_z, pl);
    rep.eps_b = epsilon(q_b, pl);
    int expected = (rep.s_m % 2 == 0) ? 1 : -1;
    bool ratio_ok = (rep.eps_z * rep.eps_b == expected);

    auto item = [&](const std::string& name, bool pass, const std::string& detail) {
        rep.items.push_back({name, pass, detail});
    };
    item("discriminant", disc_equal,
         "disc(q_Z) = " + rep.disc_z.get_str() + ", disc(q_B) = " + rep.disc_b.get_str());
    item("positivity", disc_positive, "both discriminants positive");
    {
        std::ostringstream d;
        d << "eps_p(q_Z) = " << rep.eps_z << ", eps_p(q_B) = " << rep.eps_b << ", s_M = " << rep.s_m
          << ", expected ratio " << expected;
        item("hilbert_ratio", ratio_ok, d.str());
    }
    rep.pass = disc_equal && disc_positive && ratio_ok;
    return rep;
}

}  // namespace cmhk
