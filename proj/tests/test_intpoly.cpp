#include <catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <vector>

#include "twistbound/intpoly.hpp"

using namespace twistbound;

namespace {

// Independent oracle: disc(x^n + a) = (-1)^(n(n-1)/2) n^n a^(n-1).
Int disc_binomial_oracle(unsigned long n, const Int& a) {
    Int nn, an;
    mpz_ui_pow_ui(nn.get_mpz_t(), n, n);
    mpz_pow_ui(an.get_mpz_t(), a.get_mpz_t(), n - 1);
    Int sign = (n * (n - 1) / 2) % 2 == 0 ? 1 : -1;
    return sign * nn * an;
}

// Independent oracle: Sylvester determinant over F_p by row reduction,
// a completely separate code path from the fraction-free integer one.
std::uint64_t resultant_mod_p(const IntegerPolynomial& f, const IntegerPolynomial& g,
                              std::uint64_t p) {
    const auto df = static_cast<std::size_t>(f.degree());
    const auto dg = static_cast<std::size_t>(g.degree());
    const std::size_t n = df + dg;
    auto reduce = [p](const Int& c) {
        Int r = c % static_cast<long>(p);
        if (r < 0) r += static_cast<long>(p);
        return r.get_ui();
    };
    std::vector<std::vector<std::uint64_t>> m(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t row = 0; row < dg; ++row)
        for (std::size_t j = 0; j <= df; ++j) m[row][row + j] = reduce(f.coefficient(df - j));
    for (std::size_t row = 0; row < df; ++row)
        for (std::size_t j = 0; j <= dg; ++j) m[dg + row][row + j] = reduce(g.coefficient(dg - j));
    auto pow_mod = [p](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    std::uint64_t det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m[pivot][k] == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            std::swap(m[pivot], m[k]);
            det = (p - det) % p;
        }
        det = det * m[k][k] % p;
        const std::uint64_t inv = pow_mod(m[k][k], p - 2);
        for (std::size_t i = k + 1; i < n; ++i) {
            const std::uint64_t factor = m[i][k] * inv % p;
            for (std::size_t j = k; j < n; ++j)
                m[i][j] = (m[i][j] + p * p - factor * m[k][j] % p) % p;
        }
    }
    return det;
}

IntegerPolynomial random_poly(std::mt19937_64& rng, int max_degree, int coeff_bound) {
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> coeff(-coeff_bound, coeff_bound);
    for (;;) {
        std::vector<Int> cs(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& c : cs) c = coeff(rng);
        IntegerPolynomial p(std::move(cs));
        if (!p.is_zero()) return p;
    }
}

}  // namespace

TEST_CASE("polynomial basics and canonical form") {
    IntegerPolynomial zero;
    CHECK(zero.is_zero());
    CHECK(zero.degree() == IntegerPolynomial::kDegreeOfZero);
    CHECK(IntegerPolynomial{0, 0, 0}.is_zero());

    IntegerPolynomial f{1, 0, 0, 0, 0, 1};
    CHECK(f.degree() == 5);
    CHECK(f.leading() == 1);
    CHECK(f.evaluate(Int(2)) == 33);
    CHECK(f.evaluate(Rat(-1)) == 0);
    CHECK((f - f).is_zero());
    CHECK(f.derivative() == IntegerPolynomial{0, 0, 0, 0, 5});

    // b^N * f(a/b)
    CHECK(f.evaluate_homogeneous(Int(2), Int(3), 5) == 32 + 243);
    CHECK(f.evaluate_homogeneous(Int(2), Int(3), 7) == 9 * (32 + 243));
}

TEST_CASE("polynomial wire format") {
    const std::string text = "1,0,0,0,0,1";
    CHECK(IntegerPolynomial::from_string(text).to_string() == text);
    CHECK(IntegerPolynomial::from_string("0").is_zero());
    CHECK(IntegerPolynomial::from_string("-3, 5").degree() == 1);
    CHECK_THROWS_AS(IntegerPolynomial::from_string(""), std::invalid_argument);
    CHECK_THROWS_AS(IntegerPolynomial::from_string("1,,2"), std::invalid_argument);
    CHECK_THROWS_AS(IntegerPolynomial::from_string("1,x"), std::invalid_argument);

    std::mt19937_64 rng(20260810);
    for (int i = 0; i < 50; ++i) {
        const auto p = random_poly(rng, 6, 50);
        CHECK(IntegerPolynomial::from_string(p.to_string()) == p);
    }
}

TEST_CASE("resultant on fixed cases") {
    const IntegerPolynomial xm1{-1, 1}, xp1{1, 1};
    CHECK(resultant(xm1, xp1) == 2);
    CHECK(resultant(IntegerPolynomial{1, 0, 1}, IntegerPolynomial{0, 2}) == 4);
    CHECK(resultant(IntegerPolynomial{-1, 0, 1}, IntegerPolynomial{-4, 0, 1}) == 9);
    CHECK_THROWS_AS(resultant(IntegerPolynomial{}, IntegerPolynomial{}), std::domain_error);
    CHECK(resultant(IntegerPolynomial{}, xp1) == 0);
}

TEST_CASE("resultant antisymmetry and multiplicativity") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
        const auto f = random_poly(rng, 4, 10);
        const auto g = random_poly(rng, 4, 10);
        const auto h = random_poly(rng, 3, 10);
        const Int rfg = resultant(f, g);
        Int sign = (f.degree() * g.degree()) % 2 == 0 ? 1 : -1;
        CHECK(rfg == sign * resultant(g, f));
        if (!(g * h).is_zero()) CHECK(resultant(f, g * h) == resultant(f, g) * resultant(f, h));
    }
}

TEST_CASE("resultant against the modular oracle") {
    std::mt19937_64 rng(2);
    const std::uint64_t primes[] = {101, 997, 65537};
    for (int i = 0; i < 100; ++i) {
        const auto f = random_poly(rng, 5, 30);
        const auto g = random_poly(rng, 5, 30);
        if (f.degree() < 1 || g.degree() < 1) continue;
        const Int r = resultant(f, g);
        for (const auto p : primes) {
            // The modular Sylvester matrix uses the same exact degrees, so
            // skip primes killing a leading coefficient.
            if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) continue;
            if (mpz_divisible_ui_p(g.leading().get_mpz_t(), p)) continue;
            Int expected = r % static_cast<long>(p);
            if (expected < 0) expected += static_cast<long>(p);
            CHECK(expected.get_ui() == resultant_mod_p(f, g, p));
        }
    }
}

TEST_CASE("binary discriminant fixed cases") {
    CHECK(binary_discriminant(BinaryForm({1, 0, 1}, 2)) == -4);
    CHECK(binary_discriminant(BinaryForm({1, 0, 0, 0, 0, 1}, 5)) == 3125);
    CHECK(binary_discriminant(BinaryForm({1, 0, 0, 0, 0, 1}, 6)) == 3125);
    CHECK(binary_discriminant(BinaryForm({1, 0, 0, 1}, 3)) == -27);
    CHECK(binary_discriminant(BinaryForm({2, 0, 0, 1}, 3)) == -108);
    // Z^2 divides the form
    CHECK(binary_discriminant(BinaryForm({1, 1}, 3)) == 0);
    CHECK_THROWS_AS(binary_discriminant(BinaryForm({}, 4)), std::domain_error);
}

TEST_CASE("binary discriminant against the closed form for x^n + a") {
    for (unsigned long n = 2; n <= 9; ++n) {
        for (long a : {1L, 2L, -3L, 324L}) {
            std::vector<Int> cs(n + 1, Int(0));
            cs[0] = a;
            cs[n] = 1;
            const BinaryForm F(IntegerPolynomial(std::move(cs)), n);
            CHECK(binary_discriminant(F) == disc_binomial_oracle(n, Int(a)));
        }
    }
}

TEST_CASE("discriminant multiplicativity disc(FG) = disc(F) disc(G) Res(F,G)^2") {
    std::mt19937_64 rng(3);
    int done = 0;
    while (done < 150) {
        std::uniform_int_distribution<unsigned long> degree_dist(1, 4);
        const unsigned long nf = degree_dist(rng), ng = degree_dist(rng);
        auto random_form = [&rng](unsigned long n) {
            std::uniform_int_distribution<int> coeff(-10, 10);
            for (;;) {
                std::vector<Int> cs(n + 1);
                for (auto& c : cs) c = coeff(rng);
                IntegerPolynomial p(std::move(cs));
                if (!p.is_zero()) return BinaryForm(p, n);
            }
        };
        const BinaryForm F = random_form(nf), G = random_form(ng);
        const BinaryForm FG(F.poly * G.poly, nf + ng);
        const Int res = form_resultant(F, G);
        CHECK(binary_discriminant(FG) ==
              binary_discriminant(F) * binary_discriminant(G) * res * res);
        ++done;
    }
}

TEST_CASE("squarefreeness") {
    CHECK(is_squarefree_poly(IntegerPolynomial{1, 0, 0, 0, 0, 1}));
    // (x-1)^2 (x+2)
    const IntegerPolynomial sq = IntegerPolynomial{-1, 1} * IntegerPolynomial{-1, 1} *
                                 IntegerPolynomial{2, 1};
    CHECK_FALSE(is_squarefree_poly(sq));
    CHECK(is_squarefree_poly(IntegerPolynomial{7}));
    CHECK_THROWS_AS(is_squarefree_poly(IntegerPolynomial{}), std::domain_error);
}

TEST_CASE("squarefree iff nonzero discriminant at the exact degree") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        const auto f = random_poly(rng, 5, 8);
        if (f.degree() < 1) continue;
        const BinaryForm F(f, static_cast<unsigned long>(f.degree()));
        CHECK(is_squarefree_poly(f) == (binary_discriminant(F) != 0));
    }
}

TEST_CASE("rational roots") {
    CHECK(rational_roots(IntegerPolynomial{1, 0, 0, 0, 0, 1}) == std::set<Rat>{Rat(-1)});
    CHECK(rational_roots(IntegerPolynomial{-1, -1, 2}) == std::set<Rat>{Rat(1), Rat(-1, 2)});
    CHECK(rational_roots(IntegerPolynomial{1, 0, 1}).empty());
    CHECK(rational_roots(IntegerPolynomial{0, 0, 3, 3}) == std::set<Rat>{Rat(0), Rat(-1)});
    CHECK(rational_roots(IntegerPolynomial{7}).empty());
    CHECK_THROWS_AS(rational_roots(IntegerPolynomial{}), std::domain_error);

    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto f = random_poly(rng, 5, 12);
        for (const Rat& x : rational_roots(f)) CHECK(f.evaluate(x) == 0);
    }
}

TEST_CASE("rational linear factors of binary forms") {
    const BinaryForm cubes({1, 0, 0, 1}, 3);  // X^3 + Y^3
    CHECK(rational_linear_factors(cubes) == std::set<ProjectivePoint>{ProjectivePoint(-1, 1)});

    // X Y (X - Y) = X^2 Y - X Y^2, dehomogenized x^2 - x at degree 3
    const BinaryForm split({0, -1, 1}, 3);
    const std::set<ProjectivePoint> expected{ProjectivePoint(0, 1), ProjectivePoint(1, 0),
                                             ProjectivePoint(1, 1)};
    CHECK(rational_linear_factors(split) == expected);

    CHECK(rational_linear_factors(BinaryForm({1, 0, 1}, 2)).empty());
    CHECK_THROWS_AS(rational_linear_factors(BinaryForm({}, 3)), std::domain_error);
}

TEST_CASE("binary form wire format") {
    const BinaryForm F({1, 0, 0, 0, 0, 1}, 6);
    CHECK(F.to_string() == "1,0,0,0,0,1@6");
    CHECK(BinaryForm::from_string("1,0,0,0,0,1@6") == F);
    CHECK_THROWS_AS(BinaryForm::from_string("1,2,3"), std::invalid_argument);
    CHECK_THROWS_AS(BinaryForm::from_string("1,2@x"), std::invalid_argument);
    CHECK_THROWS_AS(BinaryForm({1, 1, 1}, 1), std::domain_error);
}
