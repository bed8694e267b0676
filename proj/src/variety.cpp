#include "pretzelcv/variety.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "pretzelcv/roots.hpp"

namespace pretzelcv {

const char* kind_name(ComponentKind k) {
    switch (k) {
    case ComponentKind::X0_1: return "X0_1";
    case ComponentKind::X0_2: return "X0_2";
    case ComponentKind::X1: return "X1";
    case ComponentKind::X2Conic: return "X2_conic";
    case ComponentKind::X3Sin: return "X3_sin";
    case ComponentKind::X3Reg: return "X3_reg";
    }
    return "?";
}

Complex kappa_minus_delta(const CharPoint& p) { return p.kappa() - p.delta(); }

OracleResult check_point(const PretzelParams& params, const CharPoint& p, double tol) {
    OracleResult out;
    out.point = p;
    out.rep.params = params;
    try {
        out.rep.x = reconstruct(five_tuple_from_charpoint(p));
    } catch (const ReconstructionError& e) {
        out.failure = e.what();
        return out;
    }
    out.check = check_relations(out.rep);
    out.accepted = out.check.accepted(tol);
    if (!out.accepted) out.failure = "relation residual " + std::to_string(out.check.residual);
    return out;
}

namespace {

double point_gap(const CharPoint& a, const CharPoint& b) {
    return std::max({std::abs(a.t - b.t), std::abs(a.s1 - b.s1), std::abs(a.s2 - b.s2), std::abs(a.s3 - b.s3),
                     std::abs(a.tau - b.tau)});
}

void push_unique(std::vector<CharPoint>& pts, const CharPoint& p, double tol = 1e-9) {
    for (const auto& q : pts)
        if (point_gap(p, q) <= tol * (1 + std::abs(p.t) + std::abs(p.tau))) return;
    pts.push_back(p);
}

/// Runs the oracle on every candidate and sorts them into the component.
void admit(VarietyComponent& c, const std::vector<CharPoint>& candidates, double tol) {
    for (const auto& p : candidates) {
        OracleResult r = check_point(c.params, p, tol);
        if (r.accepted)
            push_unique(c.points, p);
        else
            c.rejected.push_back({p, r.failure});
    }
}

Complex delta_of(Complex s1, Complex s2, Complex s3) {
    CharPoint p{0, s1, s2, s3, 0};
    return p.delta();
}

} // namespace

// ---------------------------------------------------------------------------

std::vector<CharPoint> x02_candidates(const PretzelParams& params, X02Wording wording, std::size_t* singular) {
    std::array<long, 3> m{};
    for (int j = 1; j <= 3; ++j)
        m[static_cast<std::size_t>(j - 1)] =
            std::labs(wording == X02Wording::OddMultiple ? 2L * params.k(j) + 1 : static_cast<long>(params.k(j)) + 1);
    const long a = m[0], b = m[1], c = m[2];
    std::vector<CharPoint> out;
    std::size_t sing = 0;
    // theta = 2 pi x; the matching conditions are a x1 = e1 b x2 + n1 and
    // a x1 = e2 c (e3 x1 + e4 x2) + n2 with theta3 = e3 theta1 + e4 theta2 (delta = 0).
    for (int e1 : {1, -1})
        for (int e2 : {1, -1})
            for (int e3 : {1, -1})
                for (int e4 : {1, -1}) {
                    long m00 = a, m01 = -e1 * b, m10 = a - e2 * e3 * c, m11 = -e2 * e4 * c;
                    long det = m00 * m11 - m01 * m10;
                    if (det == 0) {
                        ++sing;
                        continue;
                    }
                    long D = std::labs(det);
                    for (long n1 = 0; n1 < D; ++n1)
                        for (long n2 = 0; n2 < D; ++n2) {
                            // x = adj(M) n / det, reduced mod 1.
                            long p1 = m11 * n1 - m01 * n2, p2 = -m10 * n1 + m00 * n2;
                            if (det < 0) {
                                p1 = -p1;
                                p2 = -p2;
                            }
                            p1 = ((p1 % D) + D) % D;
                            p2 = ((p2 % D) + D) % D;
                            double th1 = 2 * M_PI * static_cast<double>(p1) / static_cast<double>(D);
                            double th2 = 2 * M_PI * static_cast<double>(p2) / static_cast<double>(D);
                            double th3 = e3 * th1 + e4 * th2;
                            double c1 = std::cos(a * th1), c2 = std::cos(b * th2), c3 = std::cos(c * th3);
                            if (std::abs(c1 - c2) > 1e-9 || std::abs(c1 - c3) > 1e-9) continue;
                            if (std::abs(c1 + 1) <= 1e-9) continue;
                            if (wording == X02Wording::ShiftedMultiple && std::abs(c1 - 1) <= 1e-9) continue;
                            CharPoint p{0, 2 * std::cos(th1), 2 * std::cos(th2), 2 * std::cos(th3), 0};
                            for (int j = 1; j <= 3; ++j)
                                if (std::abs(p.s(j).real()) < 1e-15) p.s(j) = 0;
                            push_unique(out, p);
                        }
                }
    if (singular) *singular = sing;
    return out;
}

X0Report build_x0(const PretzelParams& params, double tol) {
    X0Report rep;
    VarietyComponent c1;
    c1.kind = ComponentKind::X0_1;
    c1.params = params;
    c1.id = "X0_1";
    std::array<std::vector<CosValue>, 3> roots;
    for (int j = 1; j <= 3; ++j) roots[static_cast<std::size_t>(j - 1)] = gamma_eq_minus_beta_roots(params.k(j)).roots;
    std::vector<CharPoint> cands;
    for (const auto& r1 : roots[0])
        for (const auto& r2 : roots[1])
            for (const auto& r3 : roots[2]) {
                Complex d = delta_of(r1.value, r2.value, r3.value);
                if (std::abs(d) <= 1e-9) {
                    c1.notes.push_back("delta = 0 at (" + r1.label + ", " + r2.label + ", " + r3.label + ")");
                    continue;
                }
                Complex tau = std::sqrt(d);
                cands.push_back({0, r1.value, r2.value, r3.value, tau});
                cands.push_back({0, r1.value, r2.value, r3.value, -tau});
            }
    admit(c1, cands, tol);
    if (roots[0].empty() || roots[1].empty() || roots[2].empty())
        c1.notes.push_back("some gamma = -beta root set is empty");

    VarietyComponent c2;
    c2.kind = ComponentKind::X0_2;
    c2.params = params;
    c2.id = "X0_2";
    std::size_t sing1 = 0, sing2 = 0;
    auto odd = x02_candidates(params, X02Wording::OddMultiple, &sing1);
    auto shifted = x02_candidates(params, X02Wording::ShiftedMultiple, &sing2);
    rep.singular_lattices = sing1 + sing2;
    rep.odd_candidates = odd.size();
    rep.shifted_candidates = shifted.size();
    for (const auto& p : odd)
        if (check_point(params, p, tol).accepted) ++rep.odd_verified;
    for (const auto& p : shifted)
        if (check_point(params, p, tol).accepted) ++rep.shifted_verified;
    std::vector<CharPoint> all = odd;
    for (const auto& p : shifted) push_unique(all, p);
    admit(c2, all, tol);
    c2.notes.push_back("odd-multiple wording: " + std::to_string(rep.odd_verified) + " of " +
                       std::to_string(rep.odd_candidates) + " candidates verified");
    c2.notes.push_back("shifted-multiple wording: " + std::to_string(rep.shifted_verified) + " of " +
                       std::to_string(rep.shifted_candidates) + " candidates verified");
    if (rep.singular_lattices > 0)
        c2.notes.push_back(std::to_string(rep.singular_lattices) + " sign patterns with a singular angle system skipped");
    rep.components.push_back(std::move(c1));
    rep.components.push_back(std::move(c2));
    return rep;
}

// ---------------------------------------------------------------------------

VarietyComponent build_x1(const PretzelParams& params, double tol) {
    VarietyComponent c;
    c.kind = ComponentKind::X1;
    c.params = params;
    c.id = "X1";
    std::vector<CharPoint> cands;
    for (int l = 1; l <= 3; ++l) {
        auto rp = gamma_eq_beta_roots(params.k(jp(l))).candidates;
        auto rm = gamma_eq_beta_roots(params.k(jm(l))).candidates;
        for (const auto& a : rp)
            for (const auto& b : rm) {
                double sum = a.root.value + b.root.value;
                if (!(sum > 1e-12 && sum < 4 - 1e-12)) continue;
                for (double sign : {1.0, -1.0}) {
                    CharPoint p;
                    p.t = sign * std::sqrt(sum);
                    p.s(jp(l)) = a.root.value;
                    p.s(jm(l)) = b.root.value;
                    p.s(l) = sum - 2;
                    p.tau = p.t * p.t * p.t;
                    push_unique(cands, p);
                }
            }
    }
    admit(c, cands, tol);
    return c;
}

std::vector<VarietyComponent> build_x2(const PretzelParams& params) {
    Var t = Var::t(), tau = Var::named("tau");
    std::array<std::vector<TraceRoot>, 3> cand;
    for (int j = 1; j <= 3; ++j) cand[static_cast<std::size_t>(j - 1)] = gamma_eq_beta_roots(params.k(j)).candidates;

    Poly s1(Var::s(1)), s2(Var::s(2)), s3(Var::s(3)), T(t), R(tau);
    Poly sig1 = s1 + s2 + s3, sig2 = s1 * s2 + s2 * s3 + s3 * s1, sig3 = s1 * s2 * s3;
    Poly delta = 4 + sig3 + 2 * sig2 - sig1 * sig1;
    Poly generic = R * R - T * (sig1 + 2) * R + T * T * (sig2 + 4) - delta;

    std::vector<VarietyComponent> out;
    for (std::size_t h1 = 0; h1 < cand[0].size(); ++h1)
        for (std::size_t h2 = 0; h2 < cand[1].size(); ++h2)
            for (std::size_t h3 = 0; h3 < cand[2].size(); ++h3) {
                VarietyComponent c;
                c.kind = ComponentKind::X2Conic;
                c.params = params;
                c.id = "X2[" + std::to_string(h1) + "," + std::to_string(h2) + "," + std::to_string(h3) + "]";
                X2Data d;
                std::array<std::size_t, 3> h{h1, h2, h3};
                Poly conic = generic;
                for (int j = 1; j <= 3; ++j) {
                    const TraceRoot& tr = cand[static_cast<std::size_t>(j - 1)][h[static_cast<std::size_t>(j - 1)]];
                    d.s[static_cast<std::size_t>(j - 1)] = two_cos_pi(tr.root.num, tr.root.den, Var::s(j));
                    d.on_defining[static_cast<std::size_t>(j - 1)] = tr.satisfies_defining;
                    const Poly& mp = d.s[static_cast<std::size_t>(j - 1)].minpoly;
                    if (mp.degree(Var::s(j)) == 1) {
                        auto cs = coefficients(mp, Var::s(j));
                        conic = substitute(conic, Var::s(j), Rational(-cs[0].constant_value() / cs[1].constant_value()));
                    }
                }
                d.conic = conic;
                if (d.flagged()) c.notes.push_back("invalid (s=-2 anomaly) candidate: listed root off omega_{k+1} = omega_k");
                c.x2 = std::move(d);
                out.push_back(std::move(c));
            }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

Complex lambda_equal_s(int k, Complex s, bool* ok) {
    Complex b = omega_eval(k, s), g = omega_eval(k + 1, s);
    if (std::abs(g + b) <= 1e-12 * (1 + std::abs(g) + std::abs(b))) {
        *ok = false;
        return 0;
    }
    *ok = true;
    return ((2.0 + s) * g + 2.0 * s * b) / (g + b);
}

Complex quad_in_lambda(Complex s1, Complex s2, Complex s3, Complex lam) {
    Complex sig1 = s1 + s2 + s3, sig2 = s1 * s2 + s2 * s3 + s3 * s1;
    return lam * lam - (sig1 + 2.0) * lam + sig2 + 4.0;
}

} // namespace

VarietyComponent build_x3_singular(const PretzelParams& params, double tol) {
    VarietyComponent c;
    c.kind = ComponentKind::X3Sin;
    c.params = params;
    c.id = "X3_sin";
    if (params.all_equal()) {
        Var sv = Var::s();
        Poly S(sv);
        OmegaTriple w = omega_triple(params.k1, sv);
        RationalFn lam(((2 + S) * w.gamma + 2 * S * w.beta), w.gamma + w.beta);
        RationalFn L = lam;
        RationalFn sig1(3 * S), sig2(3 * S * S);
        RationalFn delta(4 - 3 * S * S + S * S * S);
        RationalFn q = L * L - (sig1 + RationalFn(Poly(2L))) * L + sig2 + RationalFn(Poly(4L));
        if (q.is_zero()) {
            c.notes.push_back("all k_j equal but the quadratic in lambda vanishes identically");
            return c;
        }
        c.sin_curve = X3SingularCurve{lam, delta / q};
        c.notes.push_back("all k_j equal: curve s1 = s2 = s3 = s, t = +-sqrt(t2(s))");
        return c;
    }
    int g = std::gcd(std::abs(params.k1 - params.k2), std::abs(params.k2 - params.k3));
    std::vector<CharPoint> cands;
    std::vector<double> svals;
    for (int m = 0; m < 2 * g; ++m) {
        double s = 2 * std::cos(M_PI * m / g);
        if (std::abs(s - 2) < 1e-12) continue;  // all s_j = 2 is reducible
        bool seen = false;
        for (double x : svals) seen = seen || std::abs(x - s) < 1e-12;
        if (seen) continue;
        svals.push_back(s);
        bool ok = true;
        std::array<Complex, 3> lam{};
        for (int j = 1; j <= 3 && ok; ++j) lam[static_cast<std::size_t>(j - 1)] = lambda_equal_s(params.k(j), s, &ok);
        if (!ok) {
            c.notes.push_back("s = " + std::to_string(s) + ": gamma_j + beta_j = 0");
            continue;
        }
        if (std::abs(lam[0] - lam[1]) > 1e-9 * (1 + std::abs(lam[0])) ||
            std::abs(lam[0] - lam[2]) > 1e-9 * (1 + std::abs(lam[0]))) {
            c.notes.push_back("s = " + std::to_string(s) + ": the three lambda values disagree");
            continue;
        }
        Complex L = lam[0];
        Complex q = quad_in_lambda(s, s, s, L);
        Complex d = delta_of(s, s, s);
        if (std::abs(q) < 1e-12 || std::abs(d) < 1e-12 || std::abs(3.0 * s + 2.0 - 2.0 * L) < 1e-12) {
            c.notes.push_back("s = " + std::to_string(s) + ": excluded locus (t = 0, t infinite or sigma1 + 2 = 2 lambda)");
            continue;
        }
        Complex t = std::sqrt(d / q);
        for (Complex tt : {t, -t}) cands.push_back({tt, s, s, s, tt * L});
    }
    admit(c, cands, tol);
    return c;
}

// ---------------------------------------------------------------------------

X3Chart x3_chart(const PretzelParams& params, int l) {
    X3Chart ch;
    ch.chart = l;
    ch.plus = Var::s(jp(l));
    ch.minus = Var::s(jm(l));
    OmegaTriple wp = omega_triple(params.k(jp(l)), ch.plus);
    OmegaTriple wm = omega_triple(params.k(jm(l)), ch.minus);
    Poly sp(ch.plus), sm(ch.minus);
    ch.pivot = wm.gamma * wp.beta - wp.gamma * wm.beta;
    if (ch.pivot.is_zero()) throw NoRegularChart();
    RationalFn two{Poly(2L)};
    Poly bb = wp.beta * wm.beta;
    ch.lambda = RationalFn(sm * (wm.gamma * wp.beta - bb) - sp * (wp.gamma * wm.beta - bb), ch.pivot) + two;
    ch.s_chart = RationalFn((sm - sp) * (wp.gamma * wm.gamma - bb), ch.pivot) + two;

    RationalFn gl = omega_compose(params.k(l) + 1, ch.s_chart);
    RationalFn bl = omega_compose(params.k(l), ch.s_chart);
    RationalFn eq = (ch.lambda - two - ch.s_chart) * gl - (RationalFn(sp + sm) - ch.lambda) * bl;
    ch.raw_curve = eq.is_zero() ? Poly() : normalize(eq.num());

    Poly dp = wp.gamma - wp.beta, dm = wm.gamma - wm.beta;
    Poly t2den = dp * dp - dm * dm;
    RationalFn S1(sp), S2(sm), S3 = ch.s_chart;
    RationalFn sig1 = S1 + S2 + S3, sig2 = S1 * S2 + S2 * S3 + S3 * S1, sig3 = S1 * S2 * S3;
    RationalFn delta = RationalFn(Poly(4L)) + sig3 + two * sig2 - sig1 * sig1;
    RationalFn q = ch.lambda * ch.lambda - (sig1 + two) * ch.lambda + sig2 + RationalFn(Poly(4L));
    if (q.is_zero()) throw NoRegularChart();  // the quadratic relation carries no t
    ch.t2_fallback = delta / q;
    ch.t2 = t2den.is_zero() ? ch.t2_fallback : RationalFn((sp + 2) * dp * dp - (sm + 2) * dm * dm, t2den);
    ch.curve = ch.raw_curve;
    return ch;
}

namespace {

Rational slice_value(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-192, 192);
    return Rational(d(rng), 64);
}

/// Drops factors of the raw curve lying on excluded loci or rejected by the oracle.
void filter_chart(const PretzelParams& params, X3Chart& ch) {
    if (ch.raw_curve.is_zero() || ch.raw_curve.is_constant()) {
        ch.curve = ch.raw_curve;
        return;
    }
    RationalFn two{Poly(2L)};
    RationalFn sig1 = RationalFn(Poly(ch.plus) + Poly(ch.minus)) + ch.s_chart;
    RationalFn excl = sig1 + two - two * ch.lambda;
    std::vector<Poly> cands{excl.num(), ch.t2_fallback.num(), ch.t2_fallback.den(), ch.pivot,
                            ch.lambda.den(), ch.s_chart.den()};
    std::vector<Poly> factors = refine_by_candidates(split_factors(ch.raw_curve), cands);
    Poly kept(1L);
    std::mt19937_64 rng(0x5eed);
    for (const Poly& f : factors) {
        std::string why;
        if (!excl.num().is_zero() && divides(f, excl.num()))
            why = "sigma1 + 2 - 2 lambda = 0";
        else if (divides(f, ch.t2_fallback.num()))
            why = "t = 0";
        else if (divides(f, ch.t2_fallback.den()))
            why = "t infinite";
        else if (divides(f, ch.pivot))
            why = "pivot vanishes";
        else if (!f.contains(ch.minus) || !f.contains(ch.plus))
            why = "";  // a line s_{l+-} = const: decided by the oracle below
        if (why.empty()) {
            X3Chart probe = ch;
            probe.curve = f;
            int good = 0, bad = 0;
            for (int i = 0; i < 6 && good + bad < 6; ++i) {
                Rational sl = slice_value(rng);
                std::vector<CharPoint> pts;
                if (f.contains(ch.minus)) {
                    pts = chart_points(params, probe, Complex(sl.get_d()));
                } else {
                    break;
                }
                for (const auto& p : pts) (check_point(params, p).accepted ? good : bad) += 1;
            }
            if (!f.contains(ch.minus))
                why = "constant s_{l-}";
            else if (good == 0 && bad > 0)
                why = "oracle rejects every probe point";
        }
        if (why.empty())
            kept = kept * f;
        else
            ch.notes.push_back("dropped factor " + to_string(f) + ": " + why);
    }
    ch.curve = normalize(kept);
}

} // namespace

std::vector<CharPoint> chart_points(const PretzelParams& params, const X3Chart& ch, Complex slice,
                                    std::vector<Rejection>* skipped) {
    (void)params;
    std::vector<CharPoint> out;
    Rational sl(slice.real());
    Poly uni = substitute(ch.curve, ch.plus, sl);
    if (!uni.contains(ch.minus)) return out;
    std::vector<Complex> rs;
    try {
        rs = roots_of(uni);
    } catch (const RootFindingError&) {
        return out;
    }
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = i + 1; j < rs.size(); ++j)
            if (std::abs(rs[i] - rs[j]) < 1e-6 * (1 + std::abs(rs[i]))) return out;  // discriminant slice
    const Complex sp = sl.get_d();
    for (Complex sm : rs) {
        ComplexPoint pt{};
        pt[ch.plus.index()] = sp;
        pt[ch.minus.index()] = sm;
        CharPoint p;
        p.s(jp(ch.chart)) = sp;
        p.s(jm(ch.chart)) = sm;
        auto skip = [&](const std::string& why) {
            if (skipped) skipped->push_back({p, why});
        };
        double scale = 1 + std::abs(sp) + std::abs(sm);
        Complex piv = evaluate(ch.pivot, pt);
        if (std::abs(piv) <= 1e-8 * magnitude_scale(ch.pivot, pt)) {
            skip("pivot vanishes");
            continue;
        }
        Complex lam, sl3, t2;
        try {
            lam = ch.lambda.evaluate(pt);
            sl3 = ch.s_chart.evaluate(pt);
            bool near = std::abs(sp - sm) <= 1e-6 * scale;
            t2 = near ? ch.t2_fallback.evaluate(pt) : ch.t2.evaluate(pt);
        } catch (const std::domain_error&) {
            skip("pole");
            continue;
        }
        p.s(ch.chart) = sl3;
        Complex sig1 = sp + sm + sl3;
        if (std::abs(t2) <= 1e-10 || !std::isfinite(std::abs(t2)) || std::abs(t2) > 1e8) {
            skip("t = 0 or t infinite");
            continue;
        }
        if (std::abs(sig1 + 2.0 - 2.0 * lam) <= 1e-9 * (1 + std::abs(lam) + std::abs(sig1))) {
            skip("sigma1 + 2 - 2 lambda = 0");
            continue;
        }
        Complex t = std::sqrt(t2);
        for (Complex tt : {t, -t}) {
            CharPoint q = p;
            q.t = tt;
            q.tau = tt * lam;
            out.push_back(q);
        }
    }
    return out;
}

VarietyComponent build_x3_regular(const PretzelParams& params, int chart) {
    VarietyComponent c;
    c.kind = ComponentKind::X3Reg;
    c.params = params;
    c.id = "X3_reg";
    std::vector<X3Chart> charts;
    std::vector<int> which = chart == 0 ? std::vector<int>{1, 2, 3} : std::vector<int>{chart};
    for (int l : which) {
        try {
            X3Chart ch = x3_chart(params, l);
            filter_chart(params, ch);
            charts.push_back(std::move(ch));
        } catch (const NoRegularChart&) {
            c.notes.push_back("chart " + std::to_string(l) + ": pivot vanishes identically");
        }
    }
    if (charts.empty()) throw NoRegularChart();
    // A constant curve means the chart sees no points; prefer any chart that does.
    auto rank = [](const X3Chart& ch) {
        return ch.curve.is_constant() ? std::numeric_limits<unsigned>::max() : ch.curve.total_degree();
    };
    std::size_t best = 0;
    for (std::size_t i = 1; i < charts.size(); ++i)
        if (rank(charts[i]) < rank(charts[best])) best = i;
    if (charts[best].curve.is_constant()) c.notes.push_back("empty: every chart curve is constant");
    c.chart = charts[best];
    for (std::size_t i = 0; i < charts.size(); ++i)
        if (i != best) c.other_charts.push_back(charts[i]);
    return c;
}

std::vector<VarietyComponent> build_all(const PretzelParams& params, double tol) {
    std::vector<VarietyComponent> out;
    for (auto& c : build_x0(params, tol).components) out.push_back(std::move(c));
    out.push_back(build_x1(params, tol));
    for (auto& c : build_x2(params)) out.push_back(std::move(c));
    VarietyComponent sin = build_x3_singular(params, tol);
    try {
        VarietyComponent reg = build_x3_regular(params);
        out.push_back(std::move(sin));
        out.push_back(std::move(reg));
    } catch (const NoRegularChart&) {
        sin.notes.push_back("no regular chart: the pivot vanishes identically for every l");
        out.push_back(std::move(sin));
    }
    return out;
}

// ---------------------------------------------------------------------------

SampleReport sample_component(const VarietyComponent& c, std::size_t n, std::uint64_t seed, double tol) {
    SampleReport rep;
    auto take = [&](const CharPoint& p, Complex slice) {
        OracleResult r = check_point(c.params, p, tol);
        Sample s{p, r.rep, r.check, r.accepted, r.failure, slice};
        (r.accepted ? rep.accepted : rep.rejected).push_back(std::move(s));
    };
    if (!c.is_curve()) {
        for (const auto& p : c.points) {
            if (rep.accepted.size() >= n) break;
            take(p, 0);
        }
        if (c.points.empty()) rep.diagnostic = "empty component";
        return rep;
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-2.5, 2.5), im(-1.0, 1.0);
    const std::size_t max_attempts = 8 * n + 16;
    std::size_t attempts = 0;

    if (c.kind == ComponentKind::X2Conic) {
        const X2Data& d = *c.x2;
        Complex s1 = d.s[0].value, s2 = d.s[1].value, s3 = d.s[2].value;
        Complex sig1 = s1 + s2 + s3, sig2 = s1 * s2 + s2 * s3 + s3 * s1;
        Complex delta = delta_of(s1, s2, s3);
        while (rep.accepted.size() < n && attempts++ < max_attempts) {
            if (rep.accepted.empty() && rep.rejected.size() >= n) break;
            Complex t(re(rng), im(rng));
            if (std::abs(t) < 0.2 || std::abs(t - 2.0) < 0.2 || std::abs(t + 2.0) < 0.2) continue;
            Complex b = -t * (sig1 + 2.0), cc = t * t * (sig2 + 4.0) - delta;
            Complex disc = std::sqrt(b * b - 4.0 * cc);
            if (std::abs(disc) < 1e-6 * (1 + std::abs(b))) continue;
            for (Complex tau : {(-b + disc) / 2.0, (-b - disc) / 2.0})
                if (rep.accepted.size() < n) take({t, s1, s2, s3, tau}, t);
        }
        if (d.flagged() && rep.accepted.empty()) rep.diagnostic = "invalid (s=-2 anomaly)";
        return rep;
    }
    if (c.kind == ComponentKind::X3Sin) {
        const X3SingularCurve& sc = *c.sin_curve;
        while (rep.accepted.size() < n && attempts++ < max_attempts) {
            Complex s(re(rng), im(rng));
            ComplexPoint pt{};
            pt[Var::s().index()] = s;
            Complex lam, t2;
            try {
                lam = sc.lambda.evaluate(pt);
                t2 = sc.t2.evaluate(pt);
            } catch (const std::domain_error&) {
                continue;
            }
            if (std::abs(t2) < 1e-8 || std::abs(t2) > 1e8) continue;
            if (std::abs(3.0 * s + 2.0 - 2.0 * lam) < 1e-8) continue;
            Complex t = std::sqrt(t2);
            for (Complex tt : {t, -t})
                if (rep.accepted.size() < n) take({tt, s, s, s, tt * lam}, s);
        }
        return rep;
    }
    // Regular chart: rational slices of s_{l+}.
    const X3Chart& ch = *c.chart;
    while (rep.accepted.size() < n && attempts++ < max_attempts) {
        Rational sl = slice_value(rng);
        for (const auto& p : chart_points(c.params, ch, Complex(sl.get_d())))
            if (rep.accepted.size() < n) take(p, sl.get_d());
    }
    if (rep.accepted.size() < n) rep.diagnostic = "fewer verified samples than requested";
    return rep;
}

} // namespace pretzelcv
