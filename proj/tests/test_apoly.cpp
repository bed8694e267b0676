#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "pretzelcv/apoly.hpp"

using namespace pretzelcv;

namespace {

// Independent sympy elimination for (1,1,1).
const char* kSinFactor =
    "w^3*u^18 - 2*w^2*u^18 + w*u^18 + 3*w^2*u^16 - 3*w*u^16 + 12*w^2*u^14 + 9*w*u^14 - 19*w^2*u^12 - "
    "13*w*u^12 + 6*w^2*u^10 + 9*w*u^10 + 9*w^2*u^8 + 6*w*u^8 - 13*w^2*u^6 - 19*w*u^6 + 9*w^2*u^4 + "
    "12*w*u^4 - 3*w^2*u^2 + 3*w*u^2 + w^2 - 2*w + 1";
const char* kRegFactor =
    "u^16*w^4 - 2*u^16*w^3 + u^16*w^2 + 3*u^14*w^3 - 3*u^14*w^2 + 3*u^12*w^3 - u^12*w^2 - u^12*w + "
    "3*u^10*w^2 + u^10*w + 6*u^8*w^2 + u^6*w^3 + 3*u^6*w^2 - u^4*w^3 - u^4*w^2 + 3*u^4*w - 3*u^2*w^2 + "
    "3*u^2*w + w^2 - 2*w + 1";

std::vector<SampleGroup> x3_groups(const PretzelParams& pp, std::size_t n) {
    std::vector<SampleGroup> out;
    VarietyComponent sin = build_x3_singular(pp);
    if (sin.is_curve()) out.push_back(uw_samples(sin, n, 1));
    try {
        VarietyComponent reg = build_x3_regular(pp);
        if (reg.is_curve()) out.push_back(uw_samples(reg, n, 1));
    } catch (const NoRegularChart&) {
    }
    return out;
}

EliminationSystem guided_system(const PretzelParams& pp) {
    EliminationSystem sys = build_system(pp);
    for (const auto& g : x3_groups(pp, 30))
        for (const auto& q : g.points) sys.guide.push_back(guide_point(q.point, q.u, q.w));
    return sys;
}

bool has(const std::vector<APolyFactor>& fs, const Poly& p) {
    return std::any_of(fs.begin(), fs.end(), [&](const APolyFactor& f) { return f.poly == normalize(p); });
}

} // namespace

TEST_CASE("trefoil") {
    APolyResult r = full_a_polynomial({0, 0, 0});
    REQUIRE(r.hard.size() == 1);
    CHECK(r.hard[0].poly == parse_poly("w*u^6 + 1"));
    CHECK(r.hard[0].source.find("X3_sin") == 0);
    CHECK(r.conics.empty());

    SampleGroup g = uw_samples(build_x3_singular({0, 0, 0}), 20, 7);
    REQUIRE(g.points.size() == 20);
    for (const auto& q : g.points) CHECK(std::abs(q.w + std::pow(q.u, -6)) < 1e-8 * (1 + std::abs(q.w)));
}

TEST_CASE("the system vanishes on verified samples") {
    for (int k3 : {1, 2, 3}) {
        PretzelParams pp{1, 1, k3};
        EliminationSystem sys = guided_system(pp);
        REQUIRE(sys.equations.size() == sys.labels.size());
        REQUIRE(sys.guide.size() >= 20);
        for (const auto& pt : sys.guide)
            for (const auto& e : sys.equations)
                CHECK(std::abs(evaluate(e, pt)) <= 1e-8 * (1 + magnitude_scale(e, pt)));
    }
}

TEST_CASE("extraneous factors are filtered with reasons") {
    std::vector<SampleGroup> groups = x3_groups({0, 0, 0}, 20);
    Poly target = parse_poly("w*u^6 + 1"), u(Var::u());

    auto kept = filter_extraneous(target * (u - 3), groups);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].poly == target);
    REQUIRE(kept[0].filtered.size() == 1);
    CHECK(kept[0].filtered[0].factor == u - 3);

    kept = filter_extraneous(target * u * u * u * u, groups);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].poly == target);
    REQUIRE(kept[0].filtered.size() == 1);
    CHECK(kept[0].filtered[0].reason == "clearing multiplier locus");

    CHECK_THROWS_AS(filter_extraneous(parse_poly("w - 3*u"), groups), LostCurve);
}

TEST_CASE("(1,1,1) matches the independent elimination") {
    APolyResult r = full_a_polynomial({1, 1, 1});
    REQUIRE(r.hard.size() == 2);
    CHECK(has(r.hard, parse_poly(kSinFactor)));
    CHECK(has(r.hard, parse_poly(kRegFactor)));
    for (const auto& h : r.hard) CHECK(h.support >= 0.9);
    REQUIRE_FALSE(r.conics.empty());
    for (const auto& c : r.conics) {
        CHECK(c.poly == parse_poly("w - 1"));
        CHECK(c.note == "longitude eigenvalue w = 1 on every sample");
    }
}

TEST_CASE("elimination order does not change the result") {
    EliminationSystem sys = guided_system({1, 1, 1});
    Var l = Var::lam(), s1 = Var::s(1), s2 = Var::s(2), s3 = Var::s(3);
    Poly a = eliminate_in_order(sys, {l, s3, s2, s1});
    Poly b = eliminate_in_order(sys, {l, s2, s1, s3});
    CHECK(a == b);
    CHECK(divides(parse_poly(kSinFactor), a));
    CHECK(divides(parse_poly(kRegFactor), a));
}

TEST_CASE("a glued factor is split by a second order") {
    APolyResult r = full_a_polynomial({1, 1, 2}, {50, 1, true});
    REQUIRE(r.hard.size() == 1);
    CHECK(r.hard[0].poly.degree(Var::u()) == 24);
    CHECK(r.hard[0].poly.degree(Var::w()) == 6);
    CHECK_FALSE(r.cross_order.empty());
    bool dropped = false;
    for (const auto& d : r.discarded) dropped = dropped || d.factor == parse_poly("w*u^6 + 1");
    CHECK(dropped);

    // Same knot with the strands permuted.
    APolyResult s = full_a_polynomial({1, 2, 1}, {50, 1, true});
    REQUIRE(s.hard.size() == 1);
    CHECK(s.hard[0].poly == r.hard[0].poly);
}

TEST_CASE("budget") {
    EliminationSystem sys = guided_system({1, 1, 1});
    Var l = Var::lam(), s1 = Var::s(1), s2 = Var::s(2), s3 = Var::s(3);
    CHECK_THROWS_AS(eliminate_in_order(sys, {s3, s2, s1, l}), BudgetExceeded);
    Elimination e = eliminate(sys);
    CHECK(e.retries == 0);
    CHECK(e.order == std::vector<Var>{l, s3, s2, s1});
}

TEST_CASE("conic factors") {
    auto x2 = build_x2({0, 0, 0});
    REQUIRE(x2.size() == 1);
    APolyFactor f = x2_factor({0, 0, 0}, x2[0]);
    CHECK(f.empty());
    CHECK(f.note == "empty factor: flagged conic (s=-2 anomaly)");

    for (PretzelParams pp : {PretzelParams{1, 1, 1}, PretzelParams{1, 1, 2}, PretzelParams{2, -1, 1}})
        for (const auto& c : build_x2(pp)) {
            if (c.x2->flagged()) continue;
            APolyFactor g = x2_factor(pp, c);
            CHECK(g.poly == parse_poly("w - 1"));
            CHECK(g.support >= 0.9);
        }
}

TEST_CASE("(1,1,k3) route") {
    Poly generic = parse_poly(kRegFactor);
    P33Route one = p33_route(1);
    CHECK(divides(generic, one.poly));

    APolyResult r = full_a_polynomial({1, 1, 2}, {50, 1, true});
    REQUIRE(r.hard.size() == 1);
    P33Route two = p33_route(2);
    CHECK(divides(r.hard[0].poly, two.poly));

    for (int k3 : {1, 2}) {
        PretzelParams pp{1, 1, k3};
        P33Route derived = p33_route(k3), printed = p33_route(k3, P33Third::Printed);
        SampleGroup g = uw_samples(build_x3_regular(pp), 80, 3);
        int used = 0, printed_off = 0;
        for (const auto& q : g.points) {
            if (std::abs(q.point.s1 - q.point.s2) < 1e-6) continue;
            ++used;
            CHECK(relative_value(derived.poly, q.u, q.w) < kVanishTol);
            ComplexPoint pt{};
            pt[Var::p().index()] = q.point.s1 + q.point.s2;
            pt[Var::s(3).index()] = q.point.s3;
            pt[Var::u().index()] = q.u;
            pt[Var::w().index()] = q.w;
            const Poly& third = printed.equations[2];
            printed_off += std::abs(evaluate(third, pt)) > 1e-6 * (1 + magnitude_scale(third, pt));
            for (const auto& e : derived.equations) CHECK(std::abs(evaluate(e, pt)) < 1e-8 * (1 + magnitude_scale(e, pt)));
        }
        CHECK(used >= 20);
        CHECK(printed_off == used);
    }
}

TEST_CASE("meridian-longitude identity and the B3 trace") {
    for (PretzelParams pp : {PretzelParams{1, 1, 1}, PretzelParams{1, 1, 2}, PretzelParams{2, -1, 1}}) {
        VarietyComponent reg = build_x3_regular(pp);
        for (const auto& q : uw_samples(reg, 20, 5).points) {
            auto [res, scale] = uw_identity(q.point, q.u, q.w);
            CHECK(std::abs(res) <= 1e-8 * (1 + scale));
        }
        for (const auto& smp : sample_component(reg, 10, 5).accepted) {
            auto [direct, from_traces] = b3_trace_check(smp.rep, smp.point);
            CHECK(std::abs(direct - from_traces) < 1e-8 * (1 + std::abs(direct)));
        }
    }
}
