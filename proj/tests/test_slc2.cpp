#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pretzelcv/roots.hpp"
#include "pretzelcv/slc2.hpp"
#include "pretzelcv/tracecheb.hpp"

using namespace pretzelcv;

namespace {

struct Gen {
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> d{-1.5, 1.5};
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    Complex z() { return {d(rng), d(rng)}; }

    Mat2 sl2() {
        for (;;) {
            Mat2 m{z(), z(), z(), z()};
            Complex det = m.det();
            if (std::abs(det) < 0.2) continue;
            Complex r = std::sqrt(det);
            return (1.0 / r) * m;
        }
    }

    /// Random conjugate of diag(u, 1/u) with the given trace.
    Mat2 with_trace(Complex t) {
        Complex u = eigen_branch(t);
        Mat2 p = sl2();
        return p * Mat2{u, z(), 0, 1.0 / u} * p.inverse();
    }
};

double dist(const Mat2& a, const Mat2& b) { return (a - b).norm(); }

double ft_err(const FiveTuple& a, const FiveTuple& b) {
    double m = std::max({std::abs(a.t), std::abs(a.t12), std::abs(a.t23), std::abs(a.t13), std::abs(a.t123), 1.0});
    double e = std::max({std::abs(a.t - b.t), std::abs(a.t12 - b.t12), std::abs(a.t23 - b.t23),
                         std::abs(a.t13 - b.t13), std::abs(a.t123 - b.t123)});
    return e / m;
}

/// Trefoil representations: the braid relation forces tr(X1 X2) = 1 and
/// X3 = X1 X2 X1^{-1}.
Rep trefoil_rep(Complex u, const Mat2& conj = Mat2::identity()) {
    Mat2 x1 = Mat2::upper(u, 1.0);
    Mat2 x2{1.0 / u, 0, -1.0, u};
    Mat2 x3 = x1 * x2 * x1.inverse();
    Rep r{{x1, x2, x3}, {0, 0, 0}};
    for (auto& m : r.x) m = conj * m * conj.inverse();
    return r;
}

} // namespace

TEST_CASE("inverse, XYX and anticommutator identities on random matrices") {
    Gen g(1);
    for (int i = 0; i < 1000; ++i) {
        Mat2 x = g.sl2(), y = g.sl2();
        REQUIRE(dist(x.inverse(), x.trace() * Mat2::identity() - x) < 1e-12 * (1 + x.norm()));
        Mat2 lhs = x * y * x;
        Mat2 rhs = (x * y).trace() * x - y.inverse();
        REQUIRE(dist(lhs, rhs) < 1e-12 * (1 + lhs.norm() + rhs.norm()));
        Complex t1 = x.trace(), t2 = y.trace(), t12 = (x * y).trace();
        Mat2 s = x * y + y * x;
        Mat2 r2 = (t12 - t1 * t2) * Mat2::identity() + t2 * x + t1 * y;
        REQUIRE(dist(s, r2) < 1e-12 * (1 + s.norm() + r2.norm()));
    }
}

TEST_CASE("matrix powers through omega agree with repeated multiplication") {
    Gen g(2);
    for (int i = 0; i < 200; ++i) {
        Mat2 x = g.sl2();
        for (int k = -8; k <= 8; ++k) {
            Mat2 a = mat_pow(x, k), b = mat_pow_naive(x, k);
            REQUIRE(dist(a, b) <= 1e-10 * std::max(1.0, b.norm()));
        }
    }
}

TEST_CASE("five-tuple from a character point") {
    CharPoint p{0, 1, 2, 3, 0};
    CHECK(std::abs(five_tuple_from_charpoint(p).t123) == 0);
    FiveTuple f = five_tuple_from_charpoint({2, 2, 2, 2, 0});
    CHECK(f.t12 == Complex(2));
    CHECK(f.t23 == Complex(2));
    CHECK(f.t13 == Complex(2));
    CHECK(f.t123 == Complex(10));

    // X2 X3 = I makes tr(X1 X2 X3) = t, so tau = t^3.
    Gen g(3);
    Mat2 x1 = g.with_trace(1.3), x2 = g.with_trace(1.3);
    Triple tr{x1, x2, x2.inverse()};
    CharPoint cp = charpoint_of(tr);
    CHECK(std::abs(cp.tau - cp.t * cp.t * cp.t) < 1e-12);
    FiveTuple back = five_tuple_from_charpoint(cp);
    CHECK(ft_err(back, five_tuple_of(tr)) < 1e-12);
}

TEST_CASE("the symmetric reading of the five-tuple relation is the one that holds") {
    Gen g(4);
    int sym_ok = 0, rep_ok = 0;
    for (int i = 0; i < 200; ++i) {
        Complex t = g.z();
        Triple tr{g.with_trace(t), g.with_trace(t), g.with_trace(t)};
        FiveTuple f = five_tuple_of(tr);
        double sc = five_tuple_scale(f);
        if (std::abs(five_tuple_residual(f, Nu0Reading::Symmetric)) <= 1e-10 * sc) ++sym_ok;
        if (std::abs(five_tuple_residual(f, Nu0Reading::RepeatedT13)) <= 1e-10 * sc) ++rep_ok;
    }
    CHECK(sym_ok == 200);
    CHECK(rep_ok < 5);
}

TEST_CASE("reconstruction round trip") {
    Gen g(5);
    int done = 0;
    for (int i = 0; i < 500; ++i) {
        Complex t = g.z();
        Triple tr{g.with_trace(t), g.with_trace(t), g.with_trace(t)};
        FiveTuple f = five_tuple_of(tr);
        Triple r = reconstruct(f);
        REQUIRE(ft_err(five_tuple_of(r), f) < 1e-10);
        for (const auto& m : r) REQUIRE(std::abs(m.det() - 1.0) < 1e-9);
        CharPoint cp = charpoint_of(r);
        REQUIRE(ft_err(five_tuple_from_charpoint(cp), f) < 1e-10);
        REQUIRE(irreducibility_score(r) > 1e-8);
        if (std::abs(r[0].c) == 0) ++done;
    }
    // The (X1, X2) pair is the normal form for generic data.
    CHECK(done > 490);
}

TEST_CASE("reconstruction errors") {
    try {
        reconstruct({2, 2, 2, 2, 2});
        FAIL("identity tuple accepted");
    } catch (const ReconstructionError& e) {
        CHECK(e.kind() == ReconstructionError::Kind::ReducibleConfiguration);
        CHECK(std::string(e.what()).find("reducible configuration") == 0);
    }
    try {
        reconstruct({0.3, 1.1, -0.4, 0.7, 5.0});
        FAIL("non-character accepted");
    } catch (const ReconstructionError& e) {
        CHECK(e.kind() == ReconstructionError::Kind::NotACharacter);
        CHECK(std::string(e.what()).find("not a character") == 0);
    }
    Triple ident{Mat2::identity(), Mat2::identity(), Mat2::identity()};
    CHECK(irreducibility_score(ident) < 1e-12);
    Triple upper{Mat2::upper(2.0, 1.0), Mat2::upper(2.0, 3.0), Mat2::upper(2.0, -1.0)};
    CHECK(irreducibility_score(upper) < 1e-12);
}

TEST_CASE("eigen branch") {
    CHECK(std::abs(eigen_branch(2.5) - Complex(2.0)) < 1e-14);
    CHECK(std::abs(eigen_branch(-2.5) - Complex(-2.0)) < 1e-14);
    CHECK(std::abs(eigen_branch(0.0) - Complex(0, 1)) < 1e-14);
    CHECK(std::abs(eigen_branch(1.0) - std::polar(1.0, M_PI / 3)) < 1e-14);
    Complex u(1.3, -0.4);
    CHECK(std::abs(eigen_branch(u + 1.0 / u) - u) < 1e-13);
}

TEST_CASE("operators on the abelian representation") {
    Gen g(6);
    Mat2 x = g.sl2();
    Rep r{{x, x, x}, {1, 2, -1}};
    Operators op = compute_operators(r);
    for (int j = 1; j <= 3; ++j) {
        CHECK(dist(op.y(j), Mat2::identity()) < 1e-12);
        CHECK(dist(op.a(j), x * x) < 1e-10);
        CHECK(dist(op.b(j), Mat2::identity()) < 1e-10);
        CHECK(dist(op.l(j), Mat2::identity()) < 1e-10);
    }
    CHECK(verify_relations(r) < 1e-10);
    Rep triv{{Mat2::identity(), Mat2::identity(), Mat2::identity()}, {0, 0, 0}};
    CHECK(verify_relations(triv) == 0);
}

TEST_CASE("B operators: product, four-term form and trace of A") {
    Gen g(7);
    std::uniform_int_distribution<int> kd(-3, 3);
    for (int i = 0; i < 300; ++i) {
        Complex t = g.z();
        PretzelParams pp{kd(g.rng), kd(g.rng), kd(g.rng)};
        Rep r{{g.with_trace(t), g.with_trace(t), g.with_trace(t)}, pp};
        Operators op = compute_operators(r);
        Mat2 prod = op.b(1) * op.b(2) * op.b(3);
        REQUIRE(dist(prod, Mat2::identity()) < 1e-9 * (1 + op.b(1).norm() * op.b(2).norm() * op.b(3).norm()));
        CharPoint cp = charpoint_of(r.x);
        for (int j = 1; j <= 3; ++j) {
            Mat2 ft = b_four_term(r, j);
            double sc = 1 + op.b(j).norm() + ft.norm();
            REQUIRE(std::abs(ft.trace() - op.b(j).trace()) < 1e-9 * sc);
            REQUIRE(dist(ft, op.b(j)) < 1e-9 * sc);
            Complex s = cp.s(j);
            Complex beta = omega_eval(pp.k(j), s), gamma = omega_eval(pp.k(j) + 1, s);
            Complex d = gamma - beta;
            Complex expect = 2.0 - (s + 2.0 - t * t) * d * d;
            REQUIRE(std::abs(op.a(j).trace() - expect) < 1e-9 * (1 + std::abs(expect) + op.a(j).norm()));
        }
    }
}

TEST_CASE("trefoil representations satisfy the relations and the longitude commutes") {
    Gen g(8);
    for (double re : {1.1, 0.7, -1.4}) {
        Complex u(re, 0.3);
        Rep r = trefoil_rep(u, g.sl2());
        RelationCheck rc = check_relations(r);
        REQUIRE(rc.accepted(1e-9));
        Operators op = compute_operators(r);
        double sc = 1 + op.l(1).norm() * r.X(1).norm();
        CHECK(std::abs(op.l(1).trace() - op.l(2).trace()) < 1e-9 * sc);
        CHECK(std::abs(op.l(1).trace() - op.l(3).trace()) < 1e-9 * sc);
        for (int j = 1; j <= 3; ++j) CHECK(dist(op.l(j) * r.X(j), r.X(j) * op.l(j)) < 1e-9 * sc);
    }
}

TEST_CASE("random triples do not satisfy the relations") {
    Gen g(9);
    for (int i = 0; i < 50; ++i) {
        Complex t = g.z();
        Rep r{{g.with_trace(t), g.with_trace(t), g.with_trace(t)}, {1, 0, 2}};
        RelationCheck rc = check_relations(r);
        CHECK(rc.residual > 1e-4 * (1 + rc.scale));
    }
}

TEST_CASE("trefoil end to end: reconstruct, verify, normalize") {
    Gen g(10);
    Complex u = 1.1;
    Rep src = trefoil_rep(u, g.sl2());
    Triple r = reconstruct(five_tuple_of(src.x));
    Rep rep{r, {0, 0, 0}};
    CHECK(check_relations(rep).accepted(1e-9));
    CHECK(std::abs(r[0].c) == 0);

    UpperNormalized n = normalize_upper(rep);
    CHECK(std::abs(n.u - u) < 1e-12);
    CHECK(std::abs(n.w + std::pow(u, -6)) < 1e-8);
    CHECK(n.commutator < 1e-9);
    CHECK(std::abs(n.rep.X(1).c) == 0);

    // A conjugated input gives the same (u, w).
    UpperNormalized m = normalize_upper(src);
    CHECK(std::abs(m.u - u) < 1e-10);
    CHECK(std::abs(m.w - n.w) < 1e-8);
    CHECK(check_relations(m.rep).accepted(1e-9));

    // Already upper triangular: unchanged.
    Rep up = trefoil_rep(Complex(1.2, 0.5));
    UpperNormalized k = normalize_upper(up);
    for (int j = 1; j <= 3; ++j) CHECK(dist(k.rep.X(j), up.X(j)) < 1e-12);
    CHECK(std::abs(k.u - Complex(1.2, 0.5)) < 1e-14);

    Rep central{{Mat2::identity(), Mat2::identity(), Mat2::identity()}, {0, 0, 0}};
    CHECK_THROWS_AS(normalize_upper(central), CentralMeridian);
    central.x[0] = -1.0 * Mat2::identity();
    CHECK_THROWS_WITH(normalize_upper(central), "central meridian: X1 = +-I");
}

TEST_CASE("reducible locus: trefoil") {
    Var u = Var::u();
    Poly U(u);
    ReducibleLocus loc = reducible_locus({0, 0, 0});
    CHECK(loc.matches_display);
    CHECK(loc.clearing_power == 2);
    CHECK(normalize(loc.det) == U.pow(4) - U.pow(2) + 1);
    CHECK(normalize(loc.displayed_det) == normalize(loc.det));
}

TEST_CASE("reducible locus: roots give non-abelian reducible representations") {
    for (PretzelParams pp : {PretzelParams{0, 0, 0}, PretzelParams{1, 2, -1}, PretzelParams{2, 0, 3}}) {
        ReducibleLocus loc = reducible_locus(pp);
        REQUIRE(loc.matches_display);
        RootSet rs = complex_roots(loc.det, 128);
        for (Complex u0 : rs.roots) {
            auto m = reducible_system(pp, u0);
            Complex det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            double sc = std::abs(m[0][0] * m[1][1]) + std::abs(m[0][1] * m[1][0]);
            REQUIRE(std::abs(det) < 1e-9 * (1 + sc));
            // Null vector gives (a2 - 1, a3 - 1).
            Complex n0 = m[0][1], n1 = -m[0][0];
            if (std::abs(n0) + std::abs(n1) < 1e-9) {
                n0 = m[1][1];
                n1 = -m[1][0];
            }
            Rep r{{Mat2::upper(u0, 1.0), Mat2::upper(u0, 1.0 + n0), Mat2::upper(u0, 1.0 + n1)}, pp};
            RelationCheck rc = check_relations(r);
            REQUIRE(rc.accepted(1e-9));
            REQUIRE(dist(r.X(1), r.X(2)) + dist(r.X(1), r.X(3)) > 1e-6);
        }
    }
}

TEST_CASE("reducible locus: brute-force search finds exactly the polynomial roots") {
    PretzelParams pp{0, 0, 0};
    RootSet rs = complex_roots(reducible_locus(pp).det, 128);
    auto detf = [&](Complex u) {
        auto m = reducible_system(pp, u);
        return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    };
    std::vector<Complex> found;
    for (double x = -2; x <= 2; x += 0.25)
        for (double y = -2; y <= 2; y += 0.25) {
            Complex z(x, y);
            if (std::abs(z) < 0.1) continue;
            for (int it = 0; it < 60; ++it) {
                Complex h = 1e-7, f = detf(z);
                Complex df = (detf(z + h) - detf(z - h)) / (2.0 * h);
                if (std::abs(df) < 1e-14) break;
                z -= f / df;
            }
            if (std::abs(detf(z)) > 1e-10 || reducible_degenerate(z)) continue;
            bool seen = false;
            for (auto f : found) seen = seen || std::abs(f - z) < 1e-6;
            if (!seen) found.push_back(z);
        }
    CHECK(found.size() == rs.roots.size());
    for (auto f : found) {
        bool match = false;
        for (auto r : rs.roots) match = match || std::abs(f - r) < 1e-6;
        CHECK(match);
    }
}

TEST_CASE("reducible locus: symmetry and the parabolic case") {
    Var u = Var::u();
    for (PretzelParams pp : {PretzelParams{1, 2, 3}, PretzelParams{-2, 0, 4}}) {
        Poly d = normalize(reducible_locus(pp).det);
        CHECK(normalize(reducible_locus({pp.k2, pp.k3, pp.k1}).det) == d);
        CHECK(normalize(reducible_locus({pp.k2, pp.k1, pp.k3}).det) == d);
    }
    // k1 = k2 = k3: the determinant is palindromic (u <-> 1/u).
    for (int k : {0, 1, 3}) {
        ReducibleLocus loc = reducible_locus({k, k, k});
        auto cs = coefficients(loc.det, u);
        for (std::size_t i = 0; i < cs.size(); ++i) CHECK(cs[i] == cs[cs.size() - 1 - i]);
    }
    for (Complex u0 : {Complex(1), Complex(-1)}) {
        CHECK(reducible_degenerate(u0));
        for (PretzelParams pp : {PretzelParams{0, 0, 0}, PretzelParams{3, -1, 2}}) {
            auto m = reducible_system(pp, u0);
            CHECK(std::abs(m[0][0] * m[1][1] - m[0][1] * m[1][0] + 1.0) < 1e-12);
        }
    }
    CHECK_FALSE(reducible_degenerate(Complex(1.1)));
}
