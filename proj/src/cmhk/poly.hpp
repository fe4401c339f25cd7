#pragma once

#include <algorithm>
#include <vector>

#include "cmhk/rat.hpp"

namespace cmhk {

// Customization points so Poly/Matrix work over rings whose elements carry
// context (layer elements). Defaults cover plain value types.
template <class T>
T ring_zero_like(const T&) {
    return T(0);
}
template <class T>
T ring_one_like(const T&) {
    return T(1);
}
template <class T>
bool ring_is_zero(const T& x) {
    return x == T(0);
}

// Dense univariate polynomial, coefficients ascending: c[i] * x^i.
template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> c) : c_(std::move(c)) { trim(); }

    static Poly constant(const T& v) {
        if (ring_is_zero(v)) return Poly{};
        return Poly(std::vector<T>{v});
    }
    // x^n with the given leading coefficient.
    static Poly monomial(const T& lead, int n) {
        if (ring_is_zero(lead)) return Poly{};
        std::vector<T> c(static_cast<size_t>(n) + 1, ring_zero_like(lead));
        c.back() = lead;
        return Poly(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coeffs() const { return c_; }
    const T& operator[](size_t i) const { return c_[i]; }
    const T& lead() const { return c_.back(); }

    T coeff_or(size_t i, const T& zero) const { return i < c_.size() ? c_[i] : zero; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<T> c = a.c_;
        if (b.c_.size() > c.size()) {
            T z = ring_zero_like(b.c_.front());
            c.resize(b.c_.size(), z);
        }
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] = c[i] + b.c_[i];
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    Poly operator-() const {
        std::vector<T> c = c_;
        for (auto& x : c) x = ring_zero_like(x) - x;
        return Poly(std::move(c));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly{};
        T z = ring_zero_like(a.c_.front());
        std::vector<T> c(a.c_.size() + b.c_.size() - 1, z);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    friend Poly operator*(const T& s, const Poly& a) {
        std::vector<T> c = a.c_;
        for (auto& x : c) x = s * x;
        return Poly(std::move(c));
    }
    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!ring_is_zero(static_cast<T>(a.c_[i] - b.c_[i]))) return false;
        return true;
    }

    T eval(const T& x) const {
        if (c_.empty()) return ring_zero_like(x);
        T acc = c_.back();
        for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }
    // Horner over a larger ring containing the coefficients via U(coefficient).
    template <class U>
    U eval_in(const U& x, const U& one) const {
        U acc = ring_zero_like(x);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i] * one;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly{};
        std::vector<T> c(c_.size() - 1, ring_zero_like(c_.front()));
        for (size_t i = 1; i < c_.size(); ++i) {
            T k = ring_zero_like(c_[i]);
            for (size_t j = 0; j < i; ++j) k = k + ring_one_like(c_[i]);
            c[i - 1] = k * c_[i];
        }
        return Poly(std::move(c));
    }

    // Division with remainder; divisor's leading coefficient must be invertible
    // (pass its inverse). For monic divisors pass one.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const T& lead_inv) {
        if (b.is_zero()) throw domain_error("poly division by zero");
        if (a.degree() < b.degree()) return {Poly{}, a};
        T z = ring_zero_like(b.lead());
        std::vector<T> rem = a.c_;
        const size_t db = b.c_.size() - 1;
        std::vector<T> quo(a.c_.size() - db, z);
        for (size_t i = rem.size(); i-- > db;) {
            T q = rem[i] * lead_inv;
            if (!ring_is_zero(q)) {
                quo[i - db] = q;
                for (size_t j = 0; j <= db; ++j) rem[i - db + j] = rem[i - db + j] - q * b.c_[j];
            }
        }
        return {Poly(std::move(quo)), Poly(std::move(rem))};
    }

private:
    void trim() {
        while (!c_.empty() && ring_is_zero(c_.back())) c_.pop_back();
    }
    std::vector<T> c_;
};

using RatPoly = Poly<Rat>;
using IntVec = std::vector<Int>;

inline RatPoly rat_poly(std::vector<Rat> c) {
    return RatPoly(std::move(c));
}
inline RatPoly int_poly(const std::vector<long>& c) {
    std::vector<Rat> v;
    v.reserve(c.size());
    for (long x : c) v.emplace_back(x);
    return RatPoly(std::move(v));
}

// gcd of rational polynomials, monic normalization.
RatPoly rat_poly_gcd(RatPoly a, RatPoly b);
RatPoly rat_poly_monic(const RatPoly& a);

// ---- polynomials over Z/m, coefficients stored as mpz in [0, m) ----------

IntVec mod_trim(IntVec c);
IntVec mod_reduce(const IntVec& c, const Int& m);
IntVec mod_from_rat(const RatPoly& f, const Int& m);  // denominators must be units mod m
IntVec mod_add(const IntVec& a, const IntVec& b, const Int& m);
IntVec mod_sub(const IntVec& a, const IntVec& b, const Int& m);
IntVec mod_mul(const IntVec& a, const IntVec& b, const Int& m);
// Requires lead(b) invertible mod m.
std::pair<IntVec, IntVec> mod_divmod(const IntVec& a, const IntVec& b, const Int& m);
IntVec mod_pow_mod(const IntVec& base, const Int& e, const IntVec& modulus, const Int& m);
// gcd over the field Z/p (p prime), monic.
IntVec mod_gcd(IntVec a, IntVec b, const Int& p);
// Extended gcd over Z/p: returns (g, s, t) with s*a + t*b = g, g monic.
std::tuple<IntVec, IntVec, IntVec> mod_xgcd(const IntVec& a, const IntVec& b, const Int& p);
IntVec mod_derivative(const IntVec& a, const Int& m);
IntVec mod_compose(const IntVec& f, const IntVec& g, const IntVec& modulus, const Int& m);
bool mod_is_irreducible(const IntVec& f, const Int& p);
// Distinct-degree + equal-degree factorization over Z/p, deterministic seed.
std::vector<IntVec> mod_factor_squarefree(const IntVec& f, const Int& p, unsigned long seed);

inline int mod_degree(const IntVec& c) {
    return static_cast<int>(c.size()) - 1;
}

}  // namespace cmhk
