#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pretzelcv/poly.hpp"
#include "pretzelcv/rational_fn.hpp"
#include "pretzelcv/roots.hpp"

using namespace pretzelcv;

namespace {

const Var X = Var::named("x");
const Var A = Var::named("a");
const Var B = Var::named("b");

// Random sparse polynomial over the given variables with small integer or
// half-integer coefficients.
Poly random_poly(std::mt19937_64& rng, const std::vector<Var>& vars, int max_terms, int max_deg) {
    std::uniform_int_distribution<int> nterms(0, max_terms), deg(0, max_deg), coef(-9, 9), den(1, 2);
    std::vector<Term> ts;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Monomial m;
        for (Var v : vars) m = m * Monomial::of(v, static_cast<unsigned>(deg(rng)));
        ts.push_back({m, Rational(coef(rng), den(rng))});
    }
    for (auto& t : ts) t.coeff.canonicalize();
    return Poly::from_terms(std::move(ts));
}

Poly nonconstant_in(std::mt19937_64& rng, const std::vector<Var>& vars, Var v, int max_terms, int max_deg) {
    while (true) {
        Poly p = random_poly(rng, vars, max_terms, max_deg);
        if (p.contains(v)) return p;
    }
}

} // namespace

TEST_CASE("additive inverse and difference of squares") {
    Poly x(X);
    CHECK((x + (-x)).is_zero());
    CHECK((x + 1) * (x - 1) == x * x - 1);
}

TEST_CASE("substitute clears denominators") {
    Poly x(X), a(A), b(B);
    RationalFn r = substitute(x * x, X, RationalFn(a + 1, b));
    CHECK(r.num() == (a + 1) * (a + 1));
    CHECK(r.den() == b * b);
}

TEST_CASE("ring axioms on random sparse triples") {
    std::mt19937_64 rng(11);
    std::vector<Var> vars{X, A, B};
    for (int i = 0; i < 1000; ++i) {
        Poly p = random_poly(rng, vars, 5, 3), q = random_poly(rng, vars, 5, 3), r = random_poly(rng, vars, 5, 3);
        REQUIRE(p + q == q + p);
        REQUIRE(p * q == q * p);
        REQUIRE((p + q) + r == p + (q + r));
        REQUIRE((p * q) * r == p * (q * r));
        REQUIRE(p * (q + r) == p * q + p * r);
        REQUIRE(p - p == Poly());
        REQUIRE(p * Poly(1L) == p);
        Poly pq = p * q;
        for (const auto& t : pq.terms()) REQUIRE(t.coeff != 0);
    }
}

TEST_CASE("exact division inverts multiplication") {
    std::mt19937_64 rng(12);
    std::vector<Var> vars{X, A, B};
    for (int i = 0; i < 200; ++i) {
        Poly p = random_poly(rng, vars, 5, 3), q = random_poly(rng, vars, 4, 2);
        if (q.is_zero()) continue;
        auto d = divide_exact(p * q, q);
        REQUIRE(d.has_value());
        REQUIRE(*d == p);
        if (!q.is_constant() && !p.is_zero()) {
            auto e = divide_exact(p * q + 1, q);
            REQUIRE_FALSE(e.has_value());
        }
    }
}

TEST_CASE("resultant small cases") {
    Poly x(X), a(A), b(B);
    CHECK(resultant(x - a, x - b, X) == a - b);
    CHECK(resultant(x * x - 1, x - 1, X).is_zero());
    // product formula: (i^2 - 1)((-i)^2 - 1) = 4
    CHECK(resultant(x * x + 1, x * x - 1, X) == Poly(4L));
    CHECK_THROWS_AS(resultant(a + 1, x - 1, X), NotEliminable);
    CHECK_THROWS_WITH(resultant(x, a, X), doctest::Contains("not eliminable"));
}

TEST_CASE("resultant sign convention against the product over roots") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> root(-5, 5), lcd(1, 4), deg(1, 4);
    for (int trial = 0; trial < 200; ++trial) {
        int m = deg(rng);
        Rational lc(lcd(rng));
        std::vector<Rational> roots;
        Poly f(lc);
        for (int i = 0; i < m; ++i) {
            roots.emplace_back(root(rng), lcd(rng));
            roots.back().canonicalize();
            f = f * (Poly(X) - Poly(roots.back()));
        }
        std::mt19937_64 r2(trial);
        Poly g = nonconstant_in(r2, {X}, X, 4, 4);
        Rational expected = 1;
        for (unsigned i = 0; i < g.degree(X); ++i) expected *= lc;
        for (const auto& al : roots) {
            std::array<Rational, kMaxVars> at{};
            at[X.index()] = al;
            expected *= evaluate_exact(g, at);
        }
        Poly res = resultant(f, g, X);
        REQUIRE(res == Poly(expected));
        REQUIRE(resultant_subresultant(f, g, X) == res);
        REQUIRE(resultant_bareiss(f, g, X) == res);
    }
}

TEST_CASE("resultant algorithms agree on multivariate input") {
    std::mt19937_64 rng(14);
    std::vector<Var> vars{X, A, B};
    for (int i = 0; i < 60; ++i) {
        Poly f = nonconstant_in(rng, vars, X, 4, 3);
        Poly g = nonconstant_in(rng, vars, X, 4, 3);
        Poly r1 = resultant_subresultant(f, g, X);
        Poly r2 = resultant_bareiss(f, g, X);
        REQUIRE(r1 == r2);
        REQUIRE_FALSE(r1.contains(X));
        REQUIRE(resultant(f, g, X) == r1);
    }
}

TEST_CASE("resultant vanishes exactly with a planted common factor") {
    std::mt19937_64 rng(15);
    std::vector<Var> vars{X, A};
    int zero_seen = 0, nonzero_seen = 0;
    for (int i = 0; i < 150; ++i) {
        Poly f = nonconstant_in(rng, vars, X, 3, 2);
        Poly g = nonconstant_in(rng, vars, X, 3, 2);
        Poly c = nonconstant_in(rng, vars, X, 3, 2);
        bool planted = i % 2 == 0;
        Poly ff = planted ? f * c : f, gg = planted ? g * c : g;
        Poly res = resultant(ff, gg, X);
        bool shares = gcd(ff, gg).contains(X);
        REQUIRE(res.is_zero() == shares);
        if (planted) REQUIRE(res.is_zero());
        (res.is_zero() ? zero_seen : nonzero_seen)++;
    }
    CHECK(zero_seen > 0);
    CHECK(nonzero_seen > 0);
}

TEST_CASE("gcd recovers planted factors") {
    std::mt19937_64 rng(16);
    std::vector<Var> vars{X, A, B};
    for (int i = 0; i < 120; ++i) {
        Poly f = random_poly(rng, vars, 3, 2), g = random_poly(rng, vars, 3, 2), c = random_poly(rng, vars, 3, 2);
        if (f.is_zero() || g.is_zero() || c.is_zero()) continue;
        Poly d = gcd(f * c, g * c);
        REQUIRE(divides(d, f * c));
        REQUIRE(divides(d, g * c));
        REQUIRE(divides(normalize(c), d));
    }
}

TEST_CASE("squarefree_primitive") {
    Poly x(X);
    CHECK(squarefree_primitive((x - 1) * (x - 1) * (x + 2), X) == (x - 1) * (x + 2));
    CHECK(squarefree_primitive(6 * x + 6, X) == x + 1);
    CHECK(squarefree_primitive(x * x - 2 * x + 1, X) == x - 1);
    CHECK_THROWS(squarefree_primitive(Poly(), X));
    CHECK(squarefree_primitive(-(x * x) + 4, X) == x * x - 4);
}

TEST_CASE("split_factors multiplies back to the squarefree part") {
    Poly x(X), a(A), b(B);
    Poly p = a * a * x * (x - a) * (x - a) * (b + 1) * (a * x + b) * 3;
    auto fs = split_factors(p);
    Poly prod(1L);
    for (const auto& f : fs) prod = prod * f;
    CHECK(normalize(prod) == squarefree_part(p));
    CHECK(fs.size() == 5);

    std::mt19937_64 rng(17);
    for (int i = 0; i < 40; ++i) {
        Poly f = random_poly(rng, {X, A}, 3, 2), g = random_poly(rng, {X, A}, 3, 2);
        if (f.is_zero() || g.is_zero() || (f * g).is_constant()) continue;
        Poly q = f * f * g;
        Poly pr(1L);
        for (const auto& h : split_factors(q)) pr = pr * h;
        REQUIRE(normalize(pr) == squarefree_part(q));
    }
}

TEST_CASE("refine_by_candidates splits along candidate gcds") {
    Poly x(X), a(A);
    Poly f = (x - a) * (x + a + 1);
    auto out = refine_by_candidates({f}, {x - a});
    REQUIRE(out.size() == 2);
}

TEST_CASE("canonical text round trip") {
    Poly w(Var::w()), u(Var::u());
    CHECK(to_string(w * u.pow(6) + 1) == "w*u^6 + 1");
    CHECK(to_string(Poly(Rational(3, 2)) * Poly(Var::s(1)).pow(2) * Poly(Var::lam()) - Poly(Var::s(2))) ==
          "3/2*lam*s1^2 - s2");
    CHECK(parse_poly("w*u^6 + 1") == w * u.pow(6) + 1);
    CHECK(parse_poly("-(x - 1)^2") == -(Poly(X) - 1) * (Poly(X) - 1));
    CHECK_THROWS(parse_poly("x +"));
    CHECK_THROWS(parse_poly("1/x"));
    std::mt19937_64 rng(18);
    for (int i = 0; i < 300; ++i) {
        Poly p = random_poly(rng, {X, A, B, Var::u(), Var::w()}, 6, 4);
        REQUIRE(parse_poly(to_string(p)) == p);
    }
}

TEST_CASE("complex_roots small cases") {
    Poly x(X);
    auto r1 = roots_of(x * x + 1);
    REQUIRE(r1.size() == 2);
    double im = std::max(r1[0].imag(), r1[1].imag());
    CHECK(im == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(r1[0] + r1[1]) < 1e-15);

    auto r2 = real_roots(x * x - 3 * x + 2);
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == doctest::Approx(1.0));
    CHECK(r2[1] == doctest::Approx(2.0));

    auto r3 = roots_of(x.pow(3) - 2);
    REQUIRE(r3.size() == 3);
    for (auto z : r3) CHECK(std::abs(std::pow(std::abs(z), 3) - 2.0) < 1e-14);
}

TEST_CASE("complex_roots multiplicities and residual bound") {
    Poly x(X);
    auto rs = complex_roots((x - 1).pow(3) * (x + 2) * x.pow(2) * (x * x + x + 1));
    CHECK(rs.roots.size() == 8);
    int near_one = 0;
    for (auto z : rs.roots)
        if (std::abs(z - Complex(1, 0)) < 1e-12) ++near_one;
    CHECK(near_one == 3);

    std::mt19937_64 rng(19);
    for (unsigned bits : {53u, 128u, 256u}) {
        for (int i = 0; i < 30; ++i) {
            Poly p = nonconstant_in(rng, {X}, X, 8, 12);
            auto r = complex_roots(p, bits);
            REQUIRE(r.roots.size() == p.degree(X));
            for (double res : r.relative_residual) REQUIRE(res <= std::ldexp(1.0, -static_cast<int>(bits) / 2));
        }
    }
    CHECK_THROWS(complex_roots(Poly(3L)));
    CHECK_THROWS(complex_roots(Poly(X) * Poly(A)));
}

TEST_CASE("rational functions stay reduced") {
    Poly x(X), a(A);
    RationalFn r(x * x - 1, 2 * x - 2);
    CHECK(r.num() == (x + 1).scaled(Rational(1, 2)));
    CHECK(r.den() == Poly(1L));
    RationalFn s = RationalFn(Poly(1L), x) + RationalFn(Poly(1L), a);
    CHECK(s.num() == x + a);
    CHECK(s.den() == x * a);
}

TEST_CASE("work limit") {
    Poly x(Var::u()), y(Var::w());
    Poly big = (x + y + 1).pow(12);
    std::uint64_t before = work_counter();
    Poly sq = big * big;
    CHECK(work_counter() > before);
    {
        WorkLimit outer(1'000'000'000);
        {
            WorkLimit inner(10);
            CHECK_THROWS_AS(big * big, WorkLimitExceeded);
        }
        // The outer, looser cap applies again.
        CHECK(big * big == sq);
        CHECK_THROWS_AS(
            [&] {
                WorkLimit tight(10);
                return divide(sq, big);
            }(),
            WorkLimitExceeded);
    }
    CHECK(divide(sq, big) == big);
}
