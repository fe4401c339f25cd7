#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmhk/hensel.hpp"
#include "cmhk/matrix.hpp"
#include "cmhk/polygon.hpp"
#include "cmhk/rat.hpp"
#include "cmhk/residue.hpp"

using namespace cmhk;

TEST_CASE("rational parsing and square classes") {
    CHECK(parse_rat("3/6") == Rat(1, 2));
    CHECK(parse_rat("-4/2") == Rat(-2));
    CHECK_THROWS_AS(parse_rat("1/0"), parse_error);
    CHECK(rat_to_string(Rat(-5, 3)) == "-5/3");

    CHECK(squarefree_part(Rat(4)) == 1);
    CHECK(squarefree_part(Rat(-20)) == -5);
    CHECK(squarefree_part(Rat(18, 5)) == 10);  // 18/5 ~ 90 ~ 2*5*9 ~ 10
    CHECK(squarefree_part(Rat(1, 2)) == 2);

    CHECK(vp(Rat(50, 3), Int(5)) == 2);
    CHECK(vp(Rat(3, 25), Int(5)) == -2);
    CHECK(unit_part(Rat(50, 3), Int(5)) == Rat(2, 3));

    CHECK(legendre_unit(Rat(2), Int(5)) == -1);
    CHECK(legendre_unit(Rat(1, 4), Int(5)) == 1);
    CHECK(mod8_unit(Rat(17)) == 1);
    CHECK(mod8_unit(Rat(3, 5)) == 7);  // 3 * 5^{-1} = 3*5 = 15 = 7 mod 8
}

TEST_CASE("factorization backstops") {
    auto f = factor(Int("600851475143"));
    Int prod(1);
    for (auto& [p, e] : f)
        for (int i = 0; i < e; ++i) prod *= p;
    CHECK(prod == Int("600851475143"));
    for (auto& [p, e] : f) CHECK(is_prime(p));
}

TEST_CASE("polynomial arithmetic") {
    RatPoly f = int_poly({2, -3, 1});  // x^2 - 3x + 2
    RatPoly g = int_poly({-1, 1});     // x - 1
    auto [q, r] = RatPoly::divmod(f, g, Rat(1));
    CHECK(r.is_zero());
    CHECK(q == int_poly({-2, 1}));
    CHECK(f.eval(Rat(2)) == 0);
    CHECK(rat_poly_gcd(f, g) == g);
    CHECK(f.derivative() == int_poly({-3, 2}));
}

TEST_CASE("char_poly spec cases") {
    // identity 2x2 -> (x-1)^2
    auto I = RatMatrix::identity(2, Rat(1));
    CHECK(char_poly(I) == int_poly({1, -2, 1}));

    // companion matrix of x^2 - p -> x^2 - p
    for (long p : {2L, 5L}) {
        RatMatrix c(2, 2, Rat(0));
        c(0, 1) = p;
        c(1, 0) = 1;
        CHECK(char_poly(c) == int_poly({-p, 0, 1}));
    }

    // diag(p, p) -> (x-p)^2
    RatMatrix d(2, 2, Rat(0));
    d(0, 0) = 5;
    d(1, 1) = 5;
    CHECK(char_poly(d) == int_poly({25, -10, 1}));

    CHECK_THROWS_AS(char_poly(RatMatrix(2, 3, Rat(0))), domain_error);

    // cross-check det against cofactor expansion on random 4x4 integer matrices
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; ++t) {
        RatMatrix m(4, 4, Rat(0));
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) m(i, j) = Rat(static_cast<long>(rng() % 11) - 5);
        // Laplace oracle
        auto laplace = [&](auto&& self, std::vector<size_t> rows, std::vector<size_t> cols) -> Rat {
            if (rows.size() == 1) return m(rows[0], cols[0]);
            Rat acc(0);
            for (size_t k = 0; k < cols.size(); ++k) {
                std::vector<size_t> r2(rows.begin() + 1, rows.end());
                std::vector<size_t> c2;
                for (size_t j = 0; j < cols.size(); ++j)
                    if (j != k) c2.push_back(cols[j]);
                Rat term = m(rows[0], cols[k]) * self(self, r2, c2);
                acc += (k % 2 == 0) ? term : -term;
            }
            return acc;
        };
        Rat oracle = laplace(laplace, {0, 1, 2, 3}, {0, 1, 2, 3});
        CHECK(det(m) == oracle);
    }
}

TEST_CASE("newton polygon spec cases") {
    // x - p over Q_p: single segment, root valuation 1
    auto np1 = newton_polygon(int_poly({-5, 1}), Int(5));
    auto rv1 = root_valuations(np1);
    REQUIRE(rv1.size() == 1);
    CHECK(rv1[0] == std::pair<Rat, long>{Rat(1), 1});

    // x^2 - 5 over Q_5: hull of (0,1),(2,0): root valuation 1/2, multiplicity 2
    auto np2 = newton_polygon(int_poly({-5, 0, 1}), Int(5));
    auto rv2 = root_valuations(np2);
    REQUIRE(rv2.size() == 1);
    CHECK(rv2[0] == std::pair<Rat, long>{Rat(1, 2), 2});

    // x^2 - 3x + 2 over Q_2: roots 2 and 1 have valuations 1 and 0
    auto np3 = newton_polygon(int_poly({2, -3, 1}), Int(2));
    auto rv3 = root_valuations(np3);
    REQUIRE(rv3.size() == 2);
    CHECK(rv3[0] == std::pair<Rat, long>{Rat(0), 1});
    CHECK(rv3[1] == std::pair<Rat, long>{Rat(1), 1});

    CHECK_THROWS_AS(newton_polygon(RatPoly{}, Int(5)), domain_error);
}

TEST_CASE("newton polygon structural invariants") {
    std::mt19937_64 rng(11);
    for (long p : {2L, 3L, 5L}) {
        for (int t = 0; t < 60; ++t) {
            // Random monic integer polynomials with controlled p-content.
            auto rand_poly = [&](int deg) {
                std::vector<Rat> c(static_cast<size_t>(deg) + 1);
                for (int i = 0; i < deg; ++i) {
                    long u = static_cast<long>(rng() % 40) + 1;
                    long e = static_cast<long>(rng() % 4);
                    Rat v(u);
                    for (long k = 0; k < e; ++k) v *= p;
                    if (rng() % 2) v = -v;
                    if (rng() % 5 == 0) v = 0;
                    c[static_cast<size_t>(i)] = v;
                }
                c.back() = 1;
                return RatPoly(c);
            };
            RatPoly f = rand_poly(static_cast<int>(rng() % 4) + 1);
            RatPoly g = rand_poly(static_cast<int>(rng() % 4) + 1);

            // slopes weakly increase; total horizontal length = degree
            auto check_shape = [&](const RatPoly& h) {
                auto np = newton_polygon(h, Int(p));
                auto segs = np.segments();
                long total = 0;
                for (size_t i = 0; i < segs.size(); ++i) {
                    total += segs[i].length;
                    if (i > 0) CHECK(segs[i].slope >= segs[i - 1].slope);
                }
                // width runs from the order of h (lowest nonzero coefficient) to deg h
                CHECK(np.right() == h.degree());
            };
            check_shape(f);
            check_shape(g);

            // polygon of a product of monic polynomials = sorted concatenation
            // of the factors' segments
            auto slopes_f = newton_polygon(f, Int(p)).slope_multiset();
            auto slopes_g = newton_polygon(g, Int(p)).slope_multiset();
            std::vector<Rat> expect = slopes_f;
            expect.insert(expect.end(), slopes_g.begin(), slopes_g.end());
            std::sort(expect.begin(), expect.end());
            auto got = newton_polygon(f * g, Int(p)).slope_multiset();
            CHECK(got == expect);
        }
    }
}

TEST_CASE("hensel_factor spec cases") {
    // x^2 + 1 mod 5 seeded by (x+2)(x+3), precision 6
    RatPoly f = int_poly({1, 0, 1});
    std::vector<IntVec> seeds{{Int(2), Int(1)}, {Int(3), Int(1)}};
    auto out = hensel_factor(f, seeds, Int(5), 6);
    REQUIRE(out.size() == 2);
    Int p6 = pow_int(Int(5), 6);
    IntVec prod = mod_mul(out[0], out[1], p6);
    CHECK(prod == mod_from_rat(f, p6));
    // each output reduces to its seed mod 5
    CHECK(mod_reduce(out[0], Int(5)) == seeds[0]);
    CHECK(mod_reduce(out[1], Int(5)) == seeds[1]);
    // linear monic factors
    CHECK(mod_degree(out[0]) == 1);
    CHECK(out[0].back() == 1);

    // irreducible seed consisting of the whole reduction: input returned unchanged
    RatPoly g = int_poly({1, 1, 1});  // irreducible mod 5? 1+x+x^2: disc -3, nonsquare mod 5
    auto single = hensel_factor(g, {mod_from_rat(g, Int(5))}, Int(5), 4);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == mod_from_rat(g, pow_int(Int(5), 4)));

    // x^2 + 1 over Q_2: (x+1)^2 mod 2; any seed must be refused
    CHECK_THROWS_AS(hensel_factor(f, {{Int(1), Int(1)}, {Int(1), Int(1)}}, Int(2), 4), domain_error);
    // non-monic input
    CHECK_THROWS_AS(hensel_factor(int_poly({1, 0, 2}), seeds, Int(5), 4), domain_error);
}

TEST_CASE("hensel_factor random round trips") {
    std::mt19937_64 rng(23);
    for (long p : {3L, 5L, 7L}) {
        for (int t = 0; t < 20; ++t) {
            // Build f as a product of distinct monic linears mod p, lifted with noise.
            int n = 2 + static_cast<int>(rng() % 2);
            std::vector<long> roots;
            for (long r = 0; r < p && static_cast<int>(roots.size()) < n; ++r)
                if (rng() % 2) roots.push_back(r);
            if (roots.size() < 2) roots = {0, 1};
            RatPoly f = int_poly({1});
            std::vector<IntVec> seeds;
            for (long r : roots) {
                long lift = r + p * static_cast<long>(rng() % 5);
                f = f * int_poly({-lift, 1});
                seeds.push_back({mod_floor(Int(-r), Int(p)), Int(1)});
            }
            long N = 5;
            auto out = hensel_factor(f, seeds, Int(p), N);
            Int pN = pow_int(Int(p), static_cast<unsigned long>(N));
            IntVec prod{Int(1)};
            for (auto& gi : out) prod = mod_mul(prod, gi, pN);
            CHECK(prod == mod_from_rat(f, pN));
        }
    }
}

TEST_CASE("hensel_root") {
    // sqrt(2) in Z_7: 2 is a QR mod 7 (3^2 = 2)
    IntVec f{Int(-2), Int(0), Int(1)};
    Int r = hensel_root(f, Int(3), Int(7), 8);
    Int p8 = pow_int(Int(7), 8);
    CHECK(mod_floor(r * r - 2, p8) == 0);
}

TEST_CASE("residue fields") {
    ResidueField f25(Int(5), {Int(-2), Int(0), Int(1)});  // F_25 = F_5[x]/(x^2-2)
    CHECK(f25.order() == 25);
    IntVec x{Int(0), Int(1)};
    CHECK(f25.mul(x, x) == IntVec{Int(2)});
    CHECK(!f25.is_square(x));  // x = sqrt(2) has order 8 in the cyclic group of order 24
    IntVec inv = f25.inverse(x);
    CHECK(f25.mul(x, inv) == IntVec{Int(1)});
    // Frobenius has order 2
    IntVec fx = f25.frobenius(x);
    CHECK(f25.frobenius(fx) == f25.reduce(x));
    CHECK(fx != f25.reduce(x));
    // 2 is a nonsquare mod 5 but a square in F_25 (x^2 = 2)
    CHECK(f25.is_square(IntVec{Int(2)}));

    ResidueField f5(Int(5), {Int(-1), Int(1)});  // F_5 itself via x-1
    CHECK(!f5.is_square(IntVec{Int(2)}));
    CHECK(f5.is_square(IntVec{Int(4)}));
    CHECK(f5.first_non_square() == IntVec{Int(2)});

    CHECK_THROWS_AS(ResidueField(Int(2), IntVec{Int(1), Int(0), Int(1)}), domain_error);  // (x+1)^2 mod 2
}
