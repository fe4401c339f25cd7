#pragma once

#include <map>
#include <string>
#include <vector>

#include "cmhk/matrix.hpp"

namespace cmhk {

// A place of the rationals: the real place or a finite prime.
struct PlaceQ {
    bool real = false;
    Int p = 0;

    static PlaceQ infinite() { return PlaceQ{true, Int(0)}; }
    static PlaceQ prime(Int q);
    friend bool operator==(const PlaceQ& a, const PlaceQ& b) {
        return a.real == b.real && a.p == b.p;
    }
    friend bool operator<(const PlaceQ& a, const PlaceQ& b) {
        if (a.real != b.real) return a.real;  // real place sorts first
        return a.p < b.p;
    }
    std::string str() const { return real ? "real" : p.get_str(); }
};

// Non-degenerate quadratic form over Q, held as a symmetric Gram matrix.
class QuadraticFormQ {
public:
    explicit QuadraticFormQ(RatMatrix gram);
    static QuadraticFormQ diagonal(const std::vector<Rat>& entries);

    size_t dim() const { return gram_.rows(); }
    const RatMatrix& gram() const { return gram_; }

    // Congruence diagonalization; entries are well-defined up to nonzero
    // square factors. Deterministic pivoting: first nonzero diagonal entry,
    // else a row+column combination at the first nonzero off-diagonal pair.
    std::vector<Rat> diagonalize() const;

    // Determinant class as a signed squarefree integer.
    Int discriminant() const;
    std::pair<int, int> signature() const;  // (s_plus, s_minus)

private:
    RatMatrix gram_;
};

// Hilbert symbol (a, b)_place: +1 iff z^2 = a x^2 + b y^2 has a nontrivial
// point over the completion. Closed local formulas (tame Legendre form at odd
// p, the epsilon/omega exponent formula at 2, sign rule at the real place).
int hilbert_symbol(const Rat& a, const Rat& b, const PlaceQ& place);

// Brute-force conic oracle: primitive solvability of z^2 = a x^2 + b y^2
// mod p^k with k = 3 (p odd) or 6 (p = 2). At the real place falls back to
// the sign rule. Results are memoized per reduced square-class pair.
int hilbert_symbol_oracle(const Rat& a, const Rat& b, const PlaceQ& place);

// Hasse invariant: product of pairwise symbols of a diagonalization.
int epsilon(const QuadraticFormQ& form, const PlaceQ& place);
int epsilon(const std::vector<Rat>& diag, const PlaceQ& place);

struct ProductFormulaReport {
    std::map<PlaceQ, int> table;  // relevant places only
    int product = 1;
};
// Relevant set: real, 2, and primes dividing numerator or denominator of a
// diagonal entry. epsilon is +1 off this set, so the product runs over it.
ProductFormulaReport product_formula_check(const QuadraticFormQ& form);

// Local isomorphism test at p: equal discriminant classes in Q_p and equal
// Hasse invariants (forms of equal rank).
bool compare_local(const QuadraticFormQ& f1, const QuadraticFormQ& f2, const Int& p);

// True iff r is a square in Q_p.
bool is_square_qp(const Rat& r, const Int& p);

struct Mod4Report {
    int disc_sign = 0;  // +1 / -1
    int s_minus = 0;
    int eps_real = 0;
    bool verdict_2_divides = false;
    bool verdict_4_divides = false;  // meaningful only when disc_sign = +1
};
// Signature-mod-4 criteria: disc > 0 iff 2 | s_-, and given disc > 0,
// 4 | s_- iff eps_real = +1. Throws check_failure if either biconditional is
// violated (they are theorems, not inputs).
Mod4Report mod4_report(const QuadraticFormQ& form);

// Finitely supported Hodge multiplicities i -> h_i.
using HodgeNumbers = std::map<long, long>;

struct PadicReductionItem {
    std::string name;
    bool pass = false;
    std::string detail;
};
struct PadicReductionReport {
    long s_m = 0;
    Int disc_z = 0, disc_b = 0;
    int eps_z = 0, eps_b = 0;
    bool pass = false;
    std::vector<PadicReductionItem> items;
};
// Supersingular comparison: discriminants equal and positive, and
// eps_p(q_Z)/eps_p(q_B) = (-1)^{s_M} with s_M = sum of h_i over odd i >= 1.
PadicReductionReport padic_reduction_check(const QuadraticFormQ& q_z, const QuadraticFormQ& q_b,
                                           const Int& p, const HodgeNumbers& hodge);

}  // namespace cmhk
