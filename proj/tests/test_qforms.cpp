#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmhk/qform.hpp"

using namespace cmhk;

namespace {

QuadraticFormQ diag(std::vector<long> v) {
    std::vector<Rat> e;
    for (long x : v) e.emplace_back(x);
    return QuadraticFormQ::diagonal(e);
}

std::vector<Rat> random_diag_entries(std::mt19937_64& rng, int dim) {
    std::vector<Rat> e;
    for (int i = 0; i < dim; ++i) {
        long v = 0;
        while (v == 0) v = static_cast<long>(rng() % 61) - 30;
        e.emplace_back(v);
    }
    return e;
}

}  // namespace

TEST_CASE("diagonalize spec cases") {
    CHECK(diag({1, 1, 1}).diagonalize() == std::vector<Rat>{1, 1, 1});

    // hyperbolic plane: equivalent to x^2 - y^2
    RatMatrix h(2, 2, Rat(0));
    h(0, 1) = h(1, 0) = 1;
    QuadraticFormQ hyp(h);
    auto d = hyp.diagonalize();
    REQUIRE(d.size() == 2);
    CHECK(hyp.signature() == std::pair<int, int>{1, 1});
    CHECK(hyp.discriminant() == -1);
    CHECK(squarefree_part(d[0] * d[1]) == -1);

    RatMatrix m(2, 2, Rat(0));
    m(0, 0) = 2;
    m(0, 1) = m(1, 0) = 1;
    m(1, 1) = 2;
    CHECK(QuadraticFormQ(m).diagonalize() == std::vector<Rat>{2, Rat(3, 2)});

    RatMatrix z(2, 2, Rat(0));
    CHECK_THROWS_AS(QuadraticFormQ{z}, domain_error);
}

TEST_CASE("invariants spec cases") {
    auto f1 = diag({1, 1, -1, -1});
    CHECK(f1.signature() == std::pair<int, int>{2, 2});
    CHECK(f1.discriminant() == 1);

    auto f2 = diag({-1, -1, -1, -1});
    CHECK(f2.signature() == std::pair<int, int>{0, 4});
    CHECK(f2.discriminant() == 1);

    auto f3 = diag({2, -10});
    CHECK(f3.signature() == std::pair<int, int>{1, 1});
    CHECK(f3.discriminant() == -5);
}

TEST_CASE("hilbert symbol spec cases") {
    auto real = PlaceQ::infinite();
    for (long b : {2L, -3L, 7L}) {
        CHECK(hilbert_symbol(Rat(1), Rat(b), real) == 1);
        CHECK(hilbert_symbol(Rat(1), Rat(b), PlaceQ::prime(Int(2))) == 1);
        CHECK(hilbert_symbol(Rat(1), Rat(b), PlaceQ::prime(Int(5))) == 1);
    }
    CHECK(hilbert_symbol(Rat(-1), Rat(-1), real) == -1);
    CHECK(hilbert_symbol(Rat(2), Rat(5), PlaceQ::prime(Int(5))) == -1);
    CHECK_THROWS_AS(hilbert_symbol(Rat(0), Rat(1), real), domain_error);
}

TEST_CASE("hilbert symbol agrees with the conic oracle") {
    std::vector<PlaceQ> places{PlaceQ::prime(Int(2)), PlaceQ::prime(Int(3)), PlaceQ::prime(Int(5))};
    for (auto& pl : places)
        for (long an = -8; an <= 8; ++an)
            for (long bn = -8; bn <= 8; ++bn) {
                if (an == 0 || bn == 0) continue;
                Rat a(an), b(bn, 3);  // exercise denominators too
                CHECK(hilbert_symbol(a, b, pl) == hilbert_symbol_oracle(a, b, pl));
            }
}

TEST_CASE("hilbert symbol bimultiplicativity and symmetry") {
    std::mt19937_64 rng(5);
    std::vector<PlaceQ> places{PlaceQ::infinite(), PlaceQ::prime(Int(2)), PlaceQ::prime(Int(3)),
                               PlaceQ::prime(Int(5))};
    for (int t = 0; t < 200; ++t) {
        auto rnd = [&]() {
            long n = 0;
            while (n == 0) n = static_cast<long>(rng() % 41) - 20;
            long d = 1 + static_cast<long>(rng() % 9);
            return Rat(n, d);
        };
        Rat a = rnd(), ap = rnd(), b = rnd();
        for (auto& pl : places) {
            CHECK(hilbert_symbol(a * ap, b, pl) == hilbert_symbol(a, b, pl) * hilbert_symbol(ap, b, pl));
            CHECK(hilbert_symbol(a, b, pl) == hilbert_symbol(b, a, pl));
        }
    }
}

TEST_CASE("epsilon spec cases") {
    auto real = PlaceQ::infinite();
    CHECK(epsilon(diag({1, 1, 1, 1}), real) == 1);
    CHECK(epsilon(diag({1, 1, 1, 1}), PlaceQ::prime(Int(3))) == 1);
    CHECK(epsilon(diag({-1, -1}), PlaceQ::prime(Int(2))) == -1);
    CHECK(epsilon(diag({-1, -1}), real) == -1);
    CHECK(epsilon(diag({-1, -1, -1, -1}), real) == 1);  // six pairs of (-1,-1)
}

TEST_CASE("epsilon invariant under congruence transforms") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 40; ++t) {
        int n = 2 + static_cast<int>(rng() % 3);
        QuadraticFormQ f = QuadraticFormQ::diagonal(random_diag_entries(rng, n));
        // random invertible rational congruence
        RatMatrix s(static_cast<size_t>(n), static_cast<size_t>(n), Rat(0));
        do {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    s(static_cast<size_t>(i), static_cast<size_t>(j)) =
                        Rat(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 2));
        } while (det(s) == 0);
        QuadraticFormQ g(s.transpose() * f.gram() * s);
        for (auto& pl : {PlaceQ::infinite(), PlaceQ::prime(Int(2)), PlaceQ::prime(Int(3)),
                         PlaceQ::prime(Int(5)), PlaceQ::prime(Int(7))}) {
            CHECK(epsilon(f, pl) == epsilon(g, pl));
        }
    }
}

TEST_CASE("product formula spec cases") {
    auto rep = product_formula_check(diag({-1, -1}));
    CHECK(rep.table.at(PlaceQ::infinite()) == -1);
    CHECK(rep.table.at(PlaceQ::prime(Int(2))) == -1);
    CHECK(rep.product == 1);

    auto rep2 = product_formula_check(diag({1, 1}));
    for (auto& [pl, e] : rep2.table) CHECK(e == 1);
    CHECK(rep2.product == 1);

    auto rep3 = product_formula_check(diag({2, -10}));
    CHECK(rep3.table.at(PlaceQ::prime(Int(5))) == -1);
    CHECK(rep3.product == 1);
}

TEST_CASE("product formula and signature criteria on a random corpus") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 500; ++t) {
        int n = 2 + static_cast<int>(rng() % 5);
        QuadraticFormQ f = QuadraticFormQ::diagonal(random_diag_entries(rng, n));
        CHECK(product_formula_check(f).product == 1);
        auto rep = mod4_report(f);  // throws check_failure if a criterion fails
        CHECK((rep.disc_sign == 1) == (rep.s_minus % 2 == 0));
    }
}

TEST_CASE("compare_local spec cases") {
    auto f = diag({3, -7, 2});
    CHECK(compare_local(f, f, Int(5)));
    CHECK(!compare_local(diag({1, -5}), diag({2, -10}), Int(5)));
    CHECK(compare_local(diag({1, -1}), diag({2, -2}), Int(3)));
    CHECK_THROWS_AS(compare_local(diag({1}), diag({1, 1}), Int(3)), domain_error);
}

TEST_CASE("mod4_report spec cases") {
    auto r1 = mod4_report(diag({-1, -1, -1, -1}));
    CHECK(r1.disc_sign == 1);
    CHECK(r1.s_minus == 4);
    CHECK(r1.eps_real == 1);
    CHECK(r1.verdict_2_divides);
    CHECK(r1.verdict_4_divides);

    auto r2 = mod4_report(diag({1, 1, -1, -1}));
    CHECK(r2.disc_sign == 1);
    CHECK(r2.s_minus == 2);
    CHECK(r2.eps_real == -1);
    CHECK(r2.verdict_2_divides);
    CHECK(!r2.verdict_4_divides);

    auto r3 = mod4_report(diag({1, -1}));
    CHECK(r3.disc_sign == -1);
    CHECK(!r3.verdict_2_divides);
}

TEST_CASE("padic_reduction_check spec cases") {
    // identical forms, Hodge concentrated in degree 0
    auto f = diag({1, 5, 5, 5});
    HodgeNumbers h0{{0, 4}};
    auto rep = padic_reduction_check(f, f, Int(2), h0);
    CHECK(rep.s_m == 0);
    CHECK(rep.pass);

    // the worked supersingular pair at p = 2
    auto qb = diag({1, 5, 5, 5});
    auto qz = diag({2, 10, 5, 5});
    HodgeNumbers h{{1, 1}, {-1, 1}, {0, 2}};
    auto rep2 = padic_reduction_check(qz, qb, Int(2), h);
    CHECK(rep2.s_m == 1);
    CHECK(rep2.eps_b == 1);
    CHECK(rep2.eps_z == -1);
    CHECK(rep2.pass);

    // discriminant mismatch flagged, not thrown
    auto rep3 = padic_reduction_check(diag({1, 3}), diag({1, 5}), Int(2), h0);
    CHECK(!rep3.pass);
    bool disc_item_failed = false;
    for (auto& it : rep3.items)
        if (it.name == "discriminant" && !it.pass) disc_item_failed = true;
    CHECK(disc_item_failed);
}
