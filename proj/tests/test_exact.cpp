#include <doctest.h>

#include <random>

#include "rigidconv/matq.hpp"

using namespace rigidconv;

namespace {

Rational rnd_rational(std::mt19937& rng, int num_bound = 9, int den_bound = 5) {
    std::uniform_int_distribution<long> num(-num_bound, num_bound);
    std::uniform_int_distribution<long> den(1, den_bound);
    return Rational(num(rng), den(rng));
}

MatQ rnd_matrix(std::mt19937& rng, int n) {
    MatQ m(n, n);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) m.at(i, j) = rnd_rational(rng);
    return m;
}

MatQ rnd_invertible(std::mt19937& rng, int n) {
    for (;;) {
        MatQ m = rnd_matrix(rng, n);
        if (is_invertible(m)) return m;
    }
}

MatQ mat2(long a, long b, long c, long d) {
    MatQ m(2, 2);
    m.at(0, 0) = Rational(a);
    m.at(0, 1) = Rational(b);
    m.at(1, 0) = Rational(c);
    m.at(1, 1) = Rational(d);
    return m;
}

} // namespace

TEST_CASE("rational text form") {
    CHECK(Rational::parse("1/2").str() == "1/2");
    CHECK(Rational::parse("-5/6").str() == "-5/6");
    CHECK(Rational::parse("4/6").str() == "2/3");   // lowest terms
    CHECK(Rational::parse("3/-6").str() == "-1/2"); // positive denominator
    CHECK(Rational::parse("7").str() == "7");
    CHECK(Rational::parse("\xE2\x88\x92" "3/4").str() == "-3/4"); // typographic minus
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("a/b"), ParseError);
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
}

TEST_CASE("rational arithmetic is exact") {
    std::mt19937 rng(7);
    for (int i = 0; i < 500; i++) {
        Rational x = rnd_rational(rng, 1000, 999);
        Rational y = rnd_rational(rng, 1000, 999);
        CHECK((x + y) - y == x);
        if (!y.is_zero()) CHECK((x * y) / y == x);
    }
}

TEST_CASE("p-adic valuation") {
    CHECK(p_adic_valuation(2, Rational(12)) == 2);
    CHECK(p_adic_valuation(3, Rational(1, 6)) == -1);
    CHECK(p_adic_valuation(5, Rational(1)) == 0);
    CHECK_THROWS_AS(p_adic_valuation(2, Rational(0)), DomainError);
}

TEST_CASE("integer utilities") {
    CHECK(primes_in(2, 10) == std::vector<long>{2, 3, 5, 7});
    CHECK(divisors(Int(12)) == std::vector<Int>{1, 2, 3, 4, 6, 12});
    auto f = factor(Int(360));
    REQUIRE(f.size() == 3);
    CHECK(f[0] == std::pair<Int, int>{Int(2), 3});
    CHECK(f[1] == std::pair<Int, int>{Int(3), 2});
    CHECK(f[2] == std::pair<Int, int>{Int(5), 1});
    // a semiprime beyond the trial-division bound
    Int big = Int("1000003") * Int("1000033");
    auto g = factor(big);
    REQUIRE(g.size() == 2);
    CHECK(g[0].first == Int("1000003"));
    CHECK(g[1].first == Int("1000033"));
}

TEST_CASE("legendre formula matches direct factorial valuation") {
    for (long p : {2L, 3L, 5L, 7L, 13L}) {
        Int fact = 1;
        for (long s = 1; s <= 200; s++) {
            fact *= s;
            CHECK(factorial_valuation(s, p) == p_adic_valuation(p, fact));
        }
    }
}

TEST_CASE("kernel_basis fixtures") {
    MatQ proj = mat2(1, 0, 0, 0);
    auto b1 = kernel_basis(proj);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0] == VecQ{Rational(0), Rational(1)});

    auto b2 = kernel_basis(MatQ(2, 2));
    REQUIRE(b2.size() == 2);
    CHECK(b2[0] == VecQ{Rational(1), Rational(0)});
    CHECK(b2[1] == VecQ{Rational(0), Rational(1)});

    auto b3 = kernel_basis(mat2(1, 2, 2, 4));
    REQUIRE(b3.size() == 1);
    CHECK(b3[0] == VecQ{Rational(-2), Rational(1)});
}

TEST_CASE("kernel_basis properties") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; trial++) {
        int rows = 1 + (int)(rng() % 4), cols = 1 + (int)(rng() % 4);
        MatQ m(rows, cols);
        for (int i = 0; i < rows; i++)
            for (int j = 0; j < cols; j++) m.at(i, j) = rnd_rational(rng, 3, 2);
        auto basis = kernel_basis(m);
        CHECK(rank(m) + (int)basis.size() == cols);
        for (const auto& v : basis) {
            VecQ mv = m.apply(v);
            for (const auto& x : mv) CHECK(x.is_zero());
        }
    }
}

TEST_CASE("char_poly fixtures") {
    CHECK(char_poly(MatQ::identity(2)) ==
          PolyQ({Rational(1), Rational(-2), Rational(1)})); // (x-1)^2
    CHECK(char_poly(mat2(0, 1, 0, 0)) == PolyQ({Rational(0), Rational(0), Rational(1)})); // x^2

    MatQ m(2, 2);
    m.at(0, 0) = Rational(2, 3);
    m.at(0, 1) = Rational(1, 3);
    m.at(1, 0) = Rational(1, 2);
    m.at(1, 1) = Rational(1, 2);
    CHECK(char_poly(m) == PolyQ({Rational(1, 6), Rational(-7, 6), Rational(1)}));

    CHECK_THROWS_AS(char_poly(MatQ(2, 3)), DomainError);
}

TEST_CASE("char_poly is a conjugacy invariant") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 30; trial++) {
        int n = 2 + (int)(rng() % 3);
        MatQ m = rnd_matrix(rng, n);
        MatQ s = rnd_invertible(rng, n);
        CHECK(char_poly(s * m * inverse(s)) == char_poly(m));
    }
}

TEST_CASE("rational_eigenvalues fixtures") {
    MatQ m(2, 2);
    m.at(0, 0) = Rational(2, 3);
    m.at(0, 1) = Rational(1, 3);
    m.at(1, 0) = Rational(1, 2);
    m.at(1, 1) = Rational(1, 2);
    auto eigs = rational_eigenvalues(m);
    REQUIRE(eigs.size() == 2);
    // tie-break: equal multiplicity, height |1|+|1| = 2 < |1|+|6| = 7
    CHECK(eigs[0] == std::pair<Rational, int>{Rational(1), 1});
    CHECK(eigs[1] == std::pair<Rational, int>{Rational(1, 6), 1});

    // x^2 + 1 has no rational roots
    MatQ rot = mat2(0, 1, -1, 0);
    CHECK_THROWS_AS(rational_eigenvalues(rot), DomainError);

    // (x - 1/2)^2
    MatQ half = MatQ::identity(2).scaled(Rational(1, 2));
    auto e2 = rational_eigenvalues(half);
    REQUIRE(e2.size() == 1);
    CHECK(e2[0] == std::pair<Rational, int>{Rational(1, 2), 2});
}

TEST_CASE("rational_eigenvalues reproduces the characteristic polynomial") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 30; trial++) {
        int n = 2 + (int)(rng() % 2);
        // build a matrix with known rational spectrum
        MatQ d(n, n);
        for (int i = 0; i < n; i++) d.at(i, i) = rnd_rational(rng, 4, 3);
        MatQ s = rnd_invertible(rng, n);
        MatQ m = s * d * inverse(s);
        auto eigs = rational_eigenvalues(m);
        PolyQ prod = PolyQ::constant(Rational(1));
        int total = 0;
        for (auto& [e, mult] : eigs) {
            for (int k = 0; k < mult; k++)
                prod = prod * PolyQ({-e, Rational(1)});
            total += mult;
        }
        CHECK(total == n);
        CHECK(prod == char_poly(m));
    }
}

TEST_CASE("simultaneous_conjugacy fixtures") {
    std::vector<MatQ> a{mat2(0, 1, 0, 0)};
    auto s = simultaneous_conjugacy(a, a);
    REQUIRE(s.has_value());

    // conjugated copy by S0 = [[1,1],[0,1]]
    std::mt19937 rng(19);
    MatQ s0 = mat2(1, 1, 0, 1);
    std::vector<MatQ> orig{rnd_matrix(rng, 2), rnd_matrix(rng, 2)};
    std::vector<MatQ> conj;
    for (const auto& m : orig) conj.push_back(s0 * m * inverse(s0));
    auto found = simultaneous_conjugacy(orig, conj);
    REQUIRE(found.has_value());
    for (size_t k = 0; k < orig.size(); k++)
        CHECK(*found * orig[k] == conj[k] * *found);
    CHECK(is_invertible(*found));

    // trace mismatch rules conjugacy out
    std::vector<MatQ> b{mat2(1, 0, 0, 0)};
    CHECK_FALSE(simultaneous_conjugacy(a, b).has_value());

    std::vector<MatQ> wrong_len{mat2(0, 1, 0, 0), mat2(0, 0, 0, 0)};
    CHECK_THROWS_AS(simultaneous_conjugacy(a, wrong_len), DomainError);
}

TEST_CASE("centralizer dimension equals sum of squared multiplicities") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 20; trial++) {
        // diagonal with prescribed multiplicities, then conjugate
        std::vector<int> mults;
        int n = 0;
        while (n < 3) {
            int m = 1 + (int)(rng() % 2);
            mults.push_back(m);
            n += m;
        }
        MatQ d(n, n);
        int pos = 0;
        long val = 0;
        for (int m : mults) {
            Rational e(++val, 3);
            for (int k = 0; k < m; k++) d.at(pos + k, pos + k) = e;
            pos += m;
        }
        MatQ s = rnd_invertible(rng, n);
        int expect = 0;
        for (int m : mults) expect += m * m;
        CHECK(centralizer_dimension(s * d * inverse(s)) == expect);
    }
}

TEST_CASE("polynomial basics") {
    PolyQ zero;
    CHECK(zero.degree() == -1);
    CHECK(zero.is_zero());
    PolyQ f({Rational(1), Rational(2), Rational(1)}); // 1 + 2x + x^2
    CHECK(f.degree() == 2);
    CHECK(f.eval(Rational(-1)).is_zero());
    CHECK(f.deflate(Rational(-1)) == PolyQ({Rational(1), Rational(1)}));
    CHECK(f.derivative() == PolyQ({Rational(2), Rational(2)}));
    CHECK((f - f).is_zero());
    CHECK(PolyQ::from_roots({Rational(1), Rational(-1)}) ==
          PolyQ({Rational(-1), Rational(0), Rational(1)}));
}
