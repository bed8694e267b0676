#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pretzelcv/variety.hpp"

using namespace pretzelcv;

namespace {

const VarietyComponent& find(const std::vector<VarietyComponent>& cs, const std::string& id) {
    for (const auto& c : cs)
        if (c.id == id) return c;
    throw std::runtime_error("missing component " + id);
}

bool all_two(const CharPoint& p) {
    return std::abs(p.s1 - 2.0) < 1e-9 && std::abs(p.s2 - 2.0) < 1e-9 && std::abs(p.s3 - 2.0) < 1e-9;
}

void require_clean(const CharPoint& p) {
    REQUIRE(std::abs(kappa_minus_delta(p)) <= 1e-9 * (1 + std::norm(p.tau) + std::norm(p.t) * 30));
    REQUIRE_FALSE(all_two(p));
}

} // namespace

TEST_CASE("trefoil: components") {
    PretzelParams pp{0, 0, 0};
    auto x0 = build_x0(pp);
    CHECK(x0.components[0].points.empty());
    CHECK(build_x1(pp).points.empty());
    auto x2 = build_x2(pp);
    REQUIRE(x2.size() == 1);
    CHECK(x2[0].x2->flagged());
    CHECK_THROWS_AS(build_x3_regular(pp), NoRegularChart);

    VarietyComponent sin = build_x3_singular(pp);
    REQUIRE(sin.sin_curve);
    Poly s(Var::s());
    CHECK(sin.sin_curve->lambda == RationalFn(s + 2));
    CHECK(sin.sin_curve->t2 == RationalFn(s + 1));
    SampleReport r = sample_component(sin, 50, 1);
    CHECK(r.accepted.size() == 50);
    CHECK(r.rejected.empty());
    for (const auto& smp : r.accepted) require_clean(smp.point);
}

TEST_CASE("(1,1,1): finite parts") {
    PretzelParams pp{1, 1, 1};
    auto x0 = build_x0(pp);
    // gamma = -beta gives s_j = -1, where delta = 4 - 1 + 6 - 9 = 0.
    CHECK(x0.components[0].points.empty());
    REQUIRE_FALSE(x0.components[0].notes.empty());
    CHECK(x0.components[0].notes[0].find("delta = 0") == 0);

    VarietyComponent x1 = build_x1(pp);
    CHECK(x1.rejected.empty());
    REQUIRE(x1.points.size() == 6);
    for (const auto& p : x1.points) {
        CHECK(std::abs(p.t * p.t - 2.0) < 1e-12);
        CHECK(std::abs(p.tau - p.t * p.t * p.t) < 1e-12);
        int zeros = 0, ones = 0;
        for (int j = 1; j <= 3; ++j) {
            if (std::abs(p.s(j)) < 1e-12) ++zeros;
            if (std::abs(p.s(j) - 1.0) < 1e-12) ++ones;
        }
        CHECK(zeros == 1);
        CHECK(ones == 2);
        CHECK(check_point(pp, p).accepted);
    }
}

TEST_CASE("t = 0 family: the odd-multiple wording is the one the oracle accepts") {
    PretzelParams pp{1, 1, 1};
    X0Report x0 = build_x0(pp);
    CHECK(x0.odd_candidates == 14);
    CHECK(x0.odd_verified == 13);
    CHECK(x0.shifted_candidates == 4);
    CHECK(x0.shifted_verified == 1);
    const auto& c = x0.components[1];
    CHECK(c.points.size() == 13);
    for (const auto& p : c.points) {
        CHECK(p.t == Complex(0));
        CHECK(p.tau == Complex(0));
        CHECK(std::abs(p.delta()) < 1e-9);
    }
    // The odd candidate turned down is s = (2, 2, 2).
    auto odd = x02_candidates(pp, X02Wording::OddMultiple);
    int rejected = 0;
    for (const auto& p : odd)
        if (!check_point(pp, p).accepted) {
            ++rejected;
            CHECK(all_two(p));
        }
    CHECK(rejected == 1);
}

TEST_CASE("X2 conics") {
    PretzelParams pp{1, 1, 1};
    auto x2 = build_x2(pp);
    REQUIRE(x2.size() == 8);
    const auto& c = x2[0];
    CHECK_FALSE(c.x2->flagged());
    Poly t(Var::t()), tau(Var::named("tau"));
    CHECK(c.x2->conic == tau * tau - 5 * t * tau + 7 * t * t - 2);
    SampleReport r = sample_component(c, 20, 3);
    CHECK(r.accepted.size() == 20);
    for (const auto& smp : r.accepted) {
        require_clean(smp.point);
        for (int j = 1; j <= 3; ++j)
            CHECK(std::abs(omega_eval(2, smp.point.s(j)) - omega_eval(1, smp.point.s(j))) < 1e-12);
    }
    int flagged = 0;
    for (const auto& comp : x2)
        if (comp.x2->flagged()) {
            ++flagged;
            SampleReport bad = sample_component(comp, 5, 3);
            CHECK(bad.accepted.empty());
            CHECK(bad.diagnostic == "invalid (s=-2 anomaly)");
        }
    CHECK(flagged == 7);

    CHECK(build_x2({1, 2, 2}).size() == 18);
    CHECK(build_x2({2, 2, 2}).size() == 27);
    // Negative k_j use k' = -k-1.
    CHECK(build_x2({-1, 0, 2}).size() == 3);
    CHECK(build_x2({-3, 1, 1}).size() == 12);
}

TEST_CASE("X2 and the boundary of X3 share the tangency locus") {
    Poly s1(Var::s(1)), s2(Var::s(2)), s3(Var::s(3)), t(Var::t()), lam(Var::named("lam"));
    Poly sig1 = s1 + s2 + s3, sig2 = s1 * s2 + s2 * s3 + s3 * s1, sig3 = s1 * s2 * s3;
    Poly delta = 4 + sig3 + 2 * sig2 - sig1 * sig1;
    // lambda = 1 + sigma1/2, gamma = beta: every trace equation reduces to zero
    // and the conic coincides with the quadratic relation in lambda.
    Poly lam0 = 1 + sig1.scaled(Rational(1, 2));
    for (Poly sj : {s1, s2, s3}) CHECK(((lam0 - 2 - sj) - (sig1 - sj - lam0)).is_zero());
    Poly tau = t * lam;
    Poly conic = tau * tau - t * (sig1 + 2) * tau + t * t * (sig2 + 4) - delta;
    Poly last = t * t * (lam * lam - (sig1 + 2) * lam + sig2 + 4) - delta;
    CHECK(conic == last);
}

TEST_CASE("X3 regular chart") {
    Poly s1(Var::s(1)), s2(Var::s(2));
    for (int k3 : {1, 2, 3}) {
        X3Chart ch = x3_chart({1, 1, k3}, 3);
        CHECK(ch.lambda == RationalFn(s1 + s2 + 1));
        CHECK(ch.s_chart == RationalFn(s1 * s2 + 1));
    }
    PretzelParams pp{1, 1, 1};
    VarietyComponent c = build_x3_regular(pp);
    REQUIRE(c.chart);
    CHECK(c.other_charts.size() == 2);
    SampleReport r = sample_component(c, 50, 11);
    CHECK(r.accepted.size() == 50);
    CHECK(r.rejected.empty());
    for (const auto& smp : r.accepted) {
        const CharPoint& p = smp.point;
        require_clean(p);
        Complex lam = p.tau / p.t;
        CHECK(std::abs(p.t) > 1e-6);
        CHECK(std::abs(p.sigma1() + 2.0 - 2.0 * lam) > 1e-9);
        std::array<Complex, 3> e{};
        for (int j = 1; j <= 3; ++j) {
            Complex s = p.s(j), d = omega_eval(pp.k(j) + 1, s) - omega_eval(pp.k(j), s);
            e[static_cast<std::size_t>(j - 1)] = (s + 2.0 - p.t * p.t) * d * d;
        }
        double sc = 1 + std::abs(e[0]);
        CHECK(std::abs(e[1] - e[0]) < 1e-9 * sc);
        CHECK(std::abs(e[2] - e[0]) < 1e-9 * sc);
    }

    // The two forms of t^2 agree on the curve.
    const X3Chart& ch = *c.chart;
    for (const auto& p : chart_points(pp, ch, 0.75)) {
        ComplexPoint pt{};
        pt[ch.plus.index()] = p.s(jp(ch.chart));
        pt[ch.minus.index()] = p.s(jm(ch.chart));
        Complex a = ch.t2.evaluate(pt), b = ch.t2_fallback.evaluate(pt);
        CHECK(std::abs(a - b) < 1e-9 * (1 + std::abs(a)));
    }
}

TEST_CASE("a chart blind to the curve is passed over") {
    // For (1,1,-1) the whole curve lies on s1 = s2, where chart 3's pivot vanishes.
    PretzelParams pp{1, 1, -1};
    CHECK(x3_chart(pp, 3).raw_curve.is_constant());
    VarietyComponent c = build_x3_regular(pp);
    REQUIRE(c.is_curve());
    CHECK(c.chart->chart != 3);
    CHECK(sample_component(c, 20, 2).accepted.size() == 20);
    // P(-1, 1, 3) has no irreducible curve.
    CHECK_FALSE(build_x3_regular({-1, 0, 1}).is_curve());
}

TEST_CASE("X3 singular part") {
    VarietyComponent c = build_x3_singular({1, 2, 3});
    CHECK_FALSE(c.sin_curve);
    for (const auto& p : c.points) {
        CHECK(std::abs(p.s1 + 2.0) < 1e-12);
        require_clean(p);
    }
    for (const auto& r : c.rejected) CHECK(std::abs(r.point.s1 + 2.0) < 1e-12);
    CHECK(c.points.size() + c.rejected.size() + c.notes.size() >= 1);

    VarietyComponent e = build_x3_singular({1, 1, 1});
    REQUIRE(e.sin_curve);
    SampleReport r = sample_component(e, 50, 4);
    CHECK(r.accepted.size() == 50);
    int pos = 0;
    for (const auto& smp : r.accepted) pos += smp.point.t.real() > 0;
    CHECK(pos > 0);
    CHECK(pos < 50);
}

TEST_CASE("sampling is deterministic and finite components return their points") {
    PretzelParams pp{1, 2, 1};
    VarietyComponent c = build_x3_regular(pp);
    SampleReport a = sample_component(c, 10, 99), b = sample_component(c, 10, 99);
    REQUIRE(a.accepted.size() == b.accepted.size());
    for (std::size_t i = 0; i < a.accepted.size(); ++i) {
        CHECK(a.accepted[i].point.t == b.accepted[i].point.t);
        CHECK(a.accepted[i].point.tau == b.accepted[i].point.tau);
    }
    VarietyComponent x1 = build_x1({1, 1, 1});
    CHECK(sample_component(x1, 10, 0).accepted.size() == 6);
    VarietyComponent empty = build_x1({0, 0, 0});
    SampleReport r = sample_component(empty, 10, 0);
    CHECK(r.accepted.empty());
    CHECK(r.diagnostic == "empty component");
}

TEST_CASE("every component for a few parameter triples") {
    for (PretzelParams pp : {PretzelParams{0, 0, 0}, PretzelParams{1, 1, 2}, PretzelParams{2, -1, 1},
                             PretzelParams{-2, 2, 0}}) {
        auto comps = build_all(pp);
        for (const auto& c : comps) {
            for (const auto& p : c.points) {
                require_clean(p);
                REQUIRE(check_point(pp, p).accepted);
            }
            if (!c.is_curve() || (c.x2 && c.x2->flagged())) continue;
            SampleReport r = sample_component(c, 20, 5);
            CHECK(r.accepted.size() == 20);
            CHECK(r.rejected.empty());
        }
    }
}
