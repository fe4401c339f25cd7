#pragma once

#include <string>
#include <vector>

#include "cmhk/rat.hpp"

namespace cmhk {

// Embedding-indexed integer weights with an order-two index involution.
// Index 0 is the distinguished embedding and must not be fixed.
struct FilteredCMSpace {
    int d = 0;
    std::vector<int> star_perm;  // involution of {0..d-1}, star_perm[0] != 0
    std::vector<long> weights;

    static FilteredCMSpace make(std::vector<int> star_perm, std::vector<long> weights);
};

// n[i] = -n[star(i)] for all i.
bool validate_symmetric(const FilteredCMSpace& v);

// Componentwise weight sum; requires matching (d, star_perm).
FilteredCMSpace tensor(const FilteredCMSpace& v, const FilteredCMSpace& w);

// Weights 1 at index 0, -1 at its star image, 0 elsewhere.
FilteredCMSpace fundamental(int d, std::vector<int> star_perm);

// Sum of the nonnegative weights; symmetric spaces only.
long hodge_min(const FilteredCMSpace& v);

enum class PeriodClass { norm, non_norm };
// Norm class of the attached period: non-norm exactly when hodge_min is odd.
// Multiplicative under tensor.
PeriodClass period_norm_class(const FilteredCMSpace& v);

struct GoodnessReport {
    long hodge_min = 0;
    PeriodClass period_class = PeriodClass::norm;
    bool forms_isomorphic = false;
    bool s_m_parity_even = true;
    bool good = false;
    std::vector<std::string> trace;
};
// Goodness derivation: isomorphic iff the period class is a norm; parity from
// hodge_min; good when (isomorphic and even) or (not isomorphic and odd).
// For symmetric spaces this is a tautology; the report carries the full
// derivation so the tautology is audited rather than assumed.
GoodnessReport goodness(const FilteredCMSpace& v);

struct AggregateVerdict {
    bool good = false;
    bool total_parity_even = true;
    std::vector<std::string> block_lines;
    int failing_block = -1;  // index into the report list when not good
};
// Combines per-block reports with hyperbolic blocks (isomorphic forms, even
// Hodge minimum by the dual-pairing symmetry). Epsilon-multiplicativity across
// blocks is underwritten by the equal-discriminant cancellation.
AggregateVerdict aggregate_blocks(const std::vector<GoodnessReport>& reports,
                                  const std::vector<long>& hyperbolic_ranks);

}  // namespace cmhk
