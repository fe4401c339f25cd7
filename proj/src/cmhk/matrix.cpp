#include "cmhk/matrix.hpp"

namespace cmhk {

namespace {

// Row echelon with pivot columns recorded; operates in place.
std::vector<size_t> echelon(RatMatrix& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t piv = row;
        while (piv < m.rows() && m(piv, col) == 0) ++piv;
        if (piv == m.rows()) continue;
        if (piv != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
        Rat inv = 1 / m(row, col);
        for (size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Rat f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

size_t rat_rank(RatMatrix m) {
    return echelon(m).size();
}

std::vector<Rat> rat_solve(RatMatrix a, std::vector<Rat> b) {
    if (a.rows() != b.size()) throw domain_error("rat_solve shape mismatch");
    RatMatrix aug(a.rows(), a.cols() + 1, Rat(0));
    for (size_t i = 0; i < a.rows(); ++i) {
        for (size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = b[i];
    }
    auto pivots = echelon(aug);
    for (size_t t = 0; t < pivots.size(); ++t)
        if (pivots[t] == a.cols()) throw domain_error("rat_solve: inconsistent system");
    if (pivots.size() < a.cols()) throw domain_error("rat_solve: singular system");
    std::vector<Rat> x(a.cols(), Rat(0));
    for (size_t t = 0; t < pivots.size(); ++t) x[pivots[t]] = aug(t, a.cols());
    return x;
}

std::vector<std::vector<Rat>> rat_kernel(RatMatrix m) {
    size_t ncols = m.cols();
    auto pivots = echelon(m);
    std::vector<bool> is_pivot(ncols, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (size_t freec = 0; freec < ncols; ++freec) {
        if (is_pivot[freec]) continue;
        std::vector<Rat> v(ncols, Rat(0));
        v[freec] = 1;
        for (size_t t = 0; t < pivots.size(); ++t) v[pivots[t]] = -m(t, freec);
        basis.push_back(std::move(v));
    }
    return basis;
}

RatMatrix rat_inverse(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw domain_error("rat_inverse: non-square");
    size_t n = m.rows();
    RatMatrix aug(n, 2 * n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    auto pivots = echelon(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) throw domain_error("rat_inverse: singular matrix");
    RatMatrix r(n, n, Rat(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
}

}  // namespace cmhk
