#include "pretzelcv/apoly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pretzelcv/slc2.hpp"
#include "pretzelcv/tracecheb.hpp"

namespace pretzelcv {

namespace {

Poly U() { return Poly(Var::u()); }
Poly W() { return Poly(Var::w()); }
Poly S(int j) { return Poly(Var::s(j)); }
Poly Lam() { return Poly(Var::lam()); }

struct SymS {
    Poly sig1, sig2, sig3, delta;
};

SymS sym_s() {
    Poly s1 = S(1), s2 = S(2), s3 = S(3);
    SymS r;
    r.sig1 = s1 + s2 + s3;
    r.sig2 = s1 * s2 + s2 * s3 + s3 * s1;
    r.sig3 = s1 * s2 * s3;
    r.delta = 4 + r.sig3 + 2 * r.sig2 - r.sig1 * r.sig1;
    return r;
}

/// u^2 t^2 = (u^2 + 1)^2.
Poly u2t2() { return (U() * U() + 1).pow(2); }

/// AP-2 times u^2.
Poly quadratic_relation() {
    SymS y = sym_s();
    Poly lam = Lam();
    return u2t2() * (lam * lam - (y.sig1 + 2) * lam + y.sig2 + 4) - U() * U() * y.delta;
}

/// Strips factors shared with powers of m.
Poly strip_factors_of(Poly r, const Poly& m) {
    if (m.is_constant()) return r;
    for (int guard = 0; guard < 64; ++guard) {
        Poly g = gcd(r, m);
        if (g.is_constant()) break;
        r = divide(r, g);
    }
    return r;
}

Poly clean(const Poly& r) {
    if (r.is_zero()) return r;
    if (r.is_constant()) return Poly(1L);
    return squarefree_part(r);
}

double vanish_fraction(const Poly& f, const SampleGroup& g) {
    if (g.points.empty()) return 0;
    std::size_t hits = 0;
    for (const auto& p : g.points)
        if (relative_value(f, p.u, p.w) <= kVanishTol) ++hits;
    return static_cast<double>(hits) / static_cast<double>(g.points.size());
}

std::string fmt_pct(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.0f%%", 100 * x);
    return buf;
}

bool only_in(const Poly& f, Var v) {
    for (Var x : f.variables())
        if (x != v) return false;
    return true;
}

/// Factors the resultant chain is known to introduce.
std::vector<Poly> standard_hints() {
    Poly u = U(), w = W(), u2 = u * u;
    return {u, w, u - 1, u + 1, u2 + 1, w - 1, w + 1, w + u2, w * u2 + 1, u2 * u2 + u2 + 1, u2 * u2 - u2 + 1};
}

std::string discard_reason(const Poly& f, double best) {
    Poly u = U();
    if (f == u) return "clearing multiplier locus";
    if (only_in(f, Var::u())) {
        if (f == u - 1 || f == u + 1) return "parabolic meridian locus (u = +-1)";
        if (f == u * u + 1) return "t = 0 locus";
        return "u-only factor, nonvanishing on samples (" + fmt_pct(best) + ")";
    }
    if (only_in(f, Var::w())) return "w-only factor, nonvanishing on samples (" + fmt_pct(best) + ")";
    return "nonvanishing on samples (" + fmt_pct(best) + ")";
}

bool even_in_u(const Poly& p) {
    return std::all_of(p.terms().begin(), p.terms().end(), [](const Term& t) { return t.mono[Var::u()] % 2 == 0; });
}

/// u^(2k) -> v^k; the system only ever involves u^2.
Poly fold_u(const Poly& p) {
    std::vector<Term> ts = p.terms();
    for (auto& t : ts) {
        auto& e = t.mono.exp;
        e[Var::v().index()] = static_cast<std::uint16_t>(e[Var::u().index()] / 2);
        t.mono.deg -= e[Var::u().index()] / 2;
        e[Var::u().index()] = 0;
    }
    return Poly::from_terms(std::move(ts));
}

Poly unfold_u(const Poly& p) { return substitute(p, Var::v(), Poly(Var::u()) * Poly(Var::u())); }

bool vanishes_at(const Poly& f, const ComplexPoint& at) {
    double sc = magnitude_scale(f, at);
    return sc == 0 || std::abs(evaluate(f, at)) <= 1e-8 * sc;
}

/// Orders tried for the splitting pass, cheapest patterns first.
std::vector<std::vector<Var>> cross_orders() {
    Var l = Var::lam(), s1 = Var::s(1), s2 = Var::s(2), s3 = Var::s(3);
    return {{l, s2, s1, s3}, {s3, s2, s1, l}, {l, s3, s1, s2}, {l, s1, s2, s3}, {s2, s1, s3, l}, {l, s1, s3, s2}};
}

} // namespace

ComplexPoint guide_point(const CharPoint& p, Complex u, Complex w) {
    ComplexPoint at{};
    for (int j = 1; j <= 3; ++j) at[Var::s(j).index()] = p.s(j);
    at[Var::lam().index()] = p.tau / p.t;
    at[Var::u().index()] = u;
    at[Var::v().index()] = u * u;
    at[Var::w().index()] = w;
    return at;
}

EliminationSystem build_system(const PretzelParams& params) {
    EliminationSystem sys;
    sys.params = params;
    SymS y = sym_s();
    Poly lam = Lam();
    for (int j = 1; j <= 3; ++j) {
        OmegaTriple o = omega_triple(params.k(j), Var::s(j));
        Poly sj = S(j);
        sys.equations.push_back((lam - 2 - sj) * o.gamma - (y.sig1 - sj - lam) * o.beta);
        sys.labels.push_back("trace" + std::to_string(j));
        sys.clearing_powers.push_back(0);
    }
    sys.equations.push_back(quadratic_relation());
    sys.labels.push_back("quadratic");
    sys.clearing_powers.push_back(2);

    // (1+w)(u+1/u)(sigma1+2-2 lambda) - (1-w)(u-1/u)(sigma1+2-2t^2), times u^3.
    Poly u = U(), w = W(), u2 = u * u;
    Poly lhs = (1 + w) * (u2 + 1) * u2 * (y.sig1 + 2 - 2 * lam);
    Poly rhs = (1 - w) * (u2 - 1) * (u2 * (y.sig1 + 2) - 2 * u2t2());
    sys.equations.push_back(lhs - rhs);
    sys.labels.push_back("longitude");
    sys.clearing_powers.push_back(3);

    sys.elimination_order = {Var::lam(), Var::s(3), Var::s(2), Var::s(1)};
    return sys;
}

namespace {

/// Resultant chain with sample-guided branching: an equation whose factors
/// split the guide points is replaced, branch by branch, by each factor with
/// the points it carries.
class Chain {
public:
    Chain(const EliminationSystem& sys, const std::vector<Var>& order) : sys_(sys), order_(order) {}

    std::vector<Poly> run() {
        std::vector<std::size_t> pts(sys_.guide.size());
        std::iota(pts.begin(), pts.end(), 0);
        fold_ = std::all_of(sys_.equations.begin(), sys_.equations.end(), even_in_u);
        std::vector<Poly> eqs;
        for (const auto& e : sys_.equations) eqs.push_back(clean(fold_ ? fold_u(e) : e));
        step(eqs, 0, pts);
        if (fold_)
            for (auto& r : out_) r = normalize(unfold_u(r));
        return out_;
    }

private:
    std::vector<std::size_t> carried(const Poly& f, const std::vector<std::size_t>& pts) const {
        std::vector<std::size_t> r;
        for (auto i : pts)
            if (vanishes_at(f, sys_.guide[i])) r.push_back(i);
        return r;
    }

    void step(std::vector<Poly> eqs, std::size_t k, const std::vector<std::size_t>& pts) {
        std::vector<Poly> uniq;
        for (auto& e : eqs) {
            if (e.is_constant()) continue;
            Poly n = normalize(e);
            if (std::find(uniq.begin(), uniq.end(), n) == uniq.end()) uniq.push_back(n);
        }
        eqs = std::move(uniq);
        if (!pts.empty()) {
            for (std::size_t i = 0; i < eqs.size(); ++i) {
                std::vector<std::pair<Poly, std::vector<std::size_t>>> parts;
                for (const auto& f : split_factors(eqs[i])) {
                    auto c = carried(f, pts);
                    if (c.size() == pts.size()) {
                        parts = {{f, c}};
                        break;
                    }
                    if (c.size() >= std::min<std::size_t>(3, pts.size())) parts.emplace_back(f, std::move(c));
                }
                if (parts.empty()) throw LostCurve();
                if (parts.size() == 1) {
                    eqs[i] = parts[0].first;
                    continue;
                }
                for (auto& [f, c] : parts) {
                    auto sub = eqs;
                    sub[i] = f;
                    step(sub, k, c);
                }
                return;
            }
        }
        if (k == order_.size()) {
            if (eqs.empty()) throw DegenerateOrder();
            Poly g = eqs[0];
            for (std::size_t i = 1; i < eqs.size(); ++i) g = gcd(g, eqs[i]);
            if (g.is_constant()) throw DegenerateOrder();
            g = normalize(g);
            if (std::find(out_.begin(), out_.end(), g) == out_.end()) out_.push_back(g);
            return;
        }
        Var v = order_[k];
        std::vector<Poly> with, rest;
        for (auto& e : eqs) (e.contains(v) ? with : rest).push_back(e);
        if (!with.empty()) {
            auto piv = std::min_element(with.begin(), with.end(), [v](const Poly& a, const Poly& b) {
                if (a.degree(v) != b.degree(v)) return a.degree(v) < b.degree(v);
                return a.size() < b.size();
            });
            Poly pivot = *piv;
            with.erase(piv);
            Poly lc = leading_coeff(pivot, v);
            for (const auto& f : with) {
                if (!sys_.unbounded) {
                    unsigned dp = pivot.degree(v), df = f.degree(v);
                    if (dp + df > kMaxSylvester || dp * f.total_degree() + df * pivot.total_degree() > kMaxDegreeBound)
                        throw BudgetExceeded();
                }
                Poly r = resultant(pivot, f, v);
                if (r.is_zero()) throw DegenerateOrder();
                if (!sys_.unbounded && r.size() > kMaxTerms) throw BudgetExceeded();
                r = strip_factors_of(clean(r), lc);
                if (!r.is_constant()) rest.push_back(r);
            }
        }
        step(std::move(rest), k + 1, pts);
    }

    const EliminationSystem& sys_;
    std::vector<Var> order_;
    bool fold_ = false;
    std::vector<Poly> out_;
};

} // namespace

std::vector<Poly> eliminate_branches(const EliminationSystem& sys, const std::vector<Var>& order) {
    return Chain(sys, order).run();
}

Poly eliminate_in_order(const EliminationSystem& sys, const std::vector<Var>& order) {
    Poly r(1L);
    for (const auto& b : eliminate_branches(sys, order)) r = r * b;
    return clean(r);
}

Elimination eliminate(const EliminationSystem& sys) {
    std::vector<Var> order = sys.elimination_order;
    std::vector<std::vector<Var>> orders{order};
    std::vector<Var> perm = order;
    std::sort(perm.begin(), perm.end());
    do {
        if (perm != order) orders.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    int retries = 0;
    bool over_budget = false;
    std::optional<WorkLimit> total;
    if (!sys.unbounded) total.emplace(kEliminationWork);
    for (const auto& o : orders) {
        try {
            std::optional<WorkLimit> per;
            if (!sys.unbounded) per.emplace(kOrderWork);
            auto br = eliminate_branches(sys, o);
            Poly r(1L);
            for (const auto& b : br) r = r * b;
            return {clean(r), br, o, retries};
        } catch (const DegenerateOrder&) {
            ++retries;
        } catch (const BudgetExceeded&) {
            over_budget = true;
            ++retries;
        } catch (const WorkLimitExceeded&) {
            over_budget = true;
            ++retries;
        }
    }
    if (over_budget) throw BudgetExceeded();
    throw DegenerateOrder();
}

SampleGroup uw_samples(const VarietyComponent& c, std::size_t n, std::uint64_t seed) {
    SampleGroup g;
    g.source = c.id;
    SampleReport r = sample_component(c, n, seed);
    for (const auto& s : r.accepted) {
        try {
            UpperNormalized un = normalize_upper(s.rep);
            if (un.commutator > 1e-7 * (1 + std::abs(un.w) + std::abs(un.u))) continue;
            auto in_range = [](Complex z) { return std::abs(z) <= kEigenRange && std::abs(z) >= 1 / kEigenRange; };
            if (!in_range(un.u) || !in_range(un.w)) continue;
            g.points.push_back({un.u, un.w, s.point});
        } catch (const CentralMeridian&) {
        }
    }
    return g;
}

double relative_value(const Poly& p, Complex u, Complex w) {
    ComplexPoint at{};
    at[Var::u().index()] = u;
    at[Var::w().index()] = w;
    double sc = magnitude_scale(p, at);
    if (sc == 0) return 0;
    return std::abs(evaluate(p, at)) / sc;
}

std::vector<APolyFactor> filter_extraneous(const Poly& p, const std::vector<SampleGroup>& groups,
                                           const std::vector<Poly>& split_hints) {
    std::vector<Poly> hints = standard_hints();
    hints.insert(hints.end(), split_hints.begin(), split_hints.end());
    std::vector<Poly> factors = refine_by_candidates(split_factors(p), hints);

    std::vector<APolyFactor> kept;
    std::vector<Discard> discarded;
    for (const auto& f : factors) {
        double best = 0;
        std::string src;
        for (const auto& g : groups) {
            double fr = vanish_fraction(f, g);
            if (fr > best) {
                best = fr;
                src = g.source;
            }
        }
        if (best >= 0.9 && !only_in(f, Var::u())) {
            APolyFactor a;
            a.poly = f;
            a.source = src;
            a.support = best;
            kept.push_back(a);
        } else {
            discarded.push_back({f, discard_reason(f, best)});
        }
    }
    if (kept.empty()) throw LostCurve();
    for (auto& k : kept) k.filtered = discarded;
    return kept;
}

Poly x2_relation(const PretzelParams& params) {
    SymS y = sym_s();
    Poly u = U(), w = W(), u2 = u * u, lam = Lam();
    Poly q(Var::named("q"));
    OmegaTriple o1 = omega_triple(params.k(1), Var::s(1));
    OmegaTriple o2 = omega_triple(params.k(2), Var::s(2));
    Poly d = (o1.gamma - o1.beta) * (o2.gamma - o2.beta);
    // q (1 - c2) = c1 tr(X_i B3^-1), times w (u^2 - 1); c1 t = (w^2-1)(u^2+1)/(w(u^2-1)).
    Poly lhs = q * (w - 1) * (w + u2);
    Poly ct = (w * w - 1) * (u2 + 1);
    Poly first = lhs - ct * (q + (S(3) + 2 - lam) * o1.beta * o2.beta - d);
    Poly second = lhs - ct * ((y.sig1 - lam - S(3)) * o1.gamma * o2.gamma + d);
    Poly r = clean(resultant(first, second, q.variables()[0]));
    if (!r.contains(Var::lam())) return r;
    return clean(resultant(r, quadratic_relation(), Var::lam()));
}

APolyFactor x2_factor(const PretzelParams& params, const VarietyComponent& conic, std::size_t samples,
                      std::uint64_t seed) {
    APolyFactor out;
    out.source = conic.id;
    if (!conic.x2) throw std::invalid_argument("x2_factor: not a conic component");
    if (conic.x2->flagged()) {
        out.note = "empty factor: flagged conic (s=-2 anomaly)";
        return out;
    }
    Poly r = x2_relation(params);
    const auto& sv = conic.x2->s;
    // Rational constants first, then one primitive element for the rest.
    int n = 1;
    for (int j = 1; j <= 3; ++j) {
        const CosValue& cv = sv[static_cast<std::size_t>(j - 1)];
        if (cv.minpoly.degree(Var::s()) == 1) {
            auto co = coefficients(cv.minpoly, Var::s());
            Rational val = -co[0].constant_value() / co[1].constant_value();
            r = substitute(r, Var::s(j), val);
        } else {
            n = std::lcm(n, 2 * cv.den);
        }
    }
    if (n > 1) {
        Var c = Var::c();
        for (int j = 1; j <= 3; ++j) {
            const CosValue& cv = sv[static_cast<std::size_t>(j - 1)];
            if (!r.contains(Var::s(j))) continue;
            int a = cv.num * (n / (2 * cv.den));
            r = substitute(r, Var::s(j), lucas_poly(a, c));
        }
        r = clean(resultant(cos_minpoly(n, c), r, c));
    }
    r = clean(r);
    SampleGroup g = uw_samples(conic, samples, seed);
    auto kept = filter_extraneous(r, {g});
    out = kept.front();
    for (std::size_t i = 1; i < kept.size(); ++i) out.poly = out.poly * kept[i].poly;
    out.poly = normalize(out.poly);
    out.source = conic.id;
    bool trivial = !g.points.empty();
    for (const auto& q : g.points) trivial = trivial && std::abs(q.w - 1.0) < 1e-8;
    if (trivial) out.note = "longitude eigenvalue w = 1 on every sample";
    return out;
}

P33Route p33_route(int k3, P33Third third) {
    Poly u = U(), w = W(), u2 = u * u, u4 = u2 * u2, u6 = u4 * u2;
    Poly p(Var::p()), s3 = S(3);
    OmegaTriple o = omega_triple(k3, Var::s(3));
    P33Route r;
    // s3 = p^2 - (u^2+u^-2+2) p + 2(u^2+u^-2+1), times u^2.
    r.equations.push_back(u2 * s3 - u2 * p * p + (u4 + 2 * u2 + 1) * p - 2 * (u4 + u2 + 1));
    // (w+u^2) p = (wu^2+1) s3 - (w-1)(u^4-u^-2), times u^2.
    r.equations.push_back(u2 * (w + u2) * p - u2 * (w * u2 + 1) * s3 + (w - 1) * (u6 - 1));
    // Third trace equation rewritten, times u^2. The printed coefficient
    // exceeds (p - 1 - s3)(w + u^2) by 2(w + u^2).
    Poly coef = (w - 1) * (u2 - 1) * u2 * s3 + w * (1 - u2 - u6) + u6 - u4 - 1;
    if (third == P33Third::Printed) coef = coef + 2 * u2 * (w + u2);
    r.equations.push_back(coef * o.gamma + u2 * (w + u2) * o.beta);
    Poly e = clean(resultant(r.equations[1], r.equations[0], Var::p()));
    r.poly = normalize(clean(resultant(e, r.equations[2], Var::s(3))));
    return r;
}

std::pair<Complex, double> uw_identity(const CharPoint& p, Complex u, Complex w) {
    Complex lam = p.tau / p.t, t2 = p.t * p.t, s1 = p.sigma1();
    Complex a = (1.0 + w) * (u + 1.0 / u) * (s1 + 2.0 - 2.0 * lam);
    Complex b = (1.0 - w) * (u - 1.0 / u) * (s1 + 2.0 - 2.0 * t2);
    return {a - b, std::abs(a) + std::abs(b)};
}

std::pair<Complex, Complex> b3_trace_check(const Rep& rep, const CharPoint& p) {
    Operators ops = compute_operators(rep);
    const Mat2& b3 = ops.b(3);
    Complex q = b3.a + b3.d;
    Complex lam = p.tau / p.t, t2 = p.t * p.t;
    auto bj = [&](int j) { return omega_eval(rep.params.k(j), p.s(j)); };
    Complex theta = bj(1) * bj(2) / ((lam - 2.0 - p.s1) * (lam - 2.0 - p.s2));
    return {q, theta * (p.sigma1() + 2.0 - 2.0 * t2) * p.kappa() / t2};
}

APolyResult full_a_polynomial(const PretzelParams& params, const APolyOptions& opt) {
    APolyResult res;
    std::vector<SampleGroup> x3;
    VarietyComponent sin = build_x3_singular(params);
    if (sin.is_curve()) x3.push_back(uw_samples(sin, opt.samples, opt.seed));
    try {
        VarietyComponent reg = build_x3_regular(params);
        if (reg.is_curve()) x3.push_back(uw_samples(reg, opt.samples, opt.seed));
    } catch (const NoRegularChart&) {
        res.notes.push_back("no regular chart: X3 sampled on the singular curve only");
    }
    std::erase_if(x3, [](const SampleGroup& g) { return g.points.empty(); });
    if (x3.empty()) {
        res.notes.push_back("X3 has no curve: no hard factor");
    } else {
        EliminationSystem sys = build_system(params);
        sys.unbounded = opt.unbounded;
        for (const auto& g : x3)
            for (const auto& p : g.points) sys.guide.push_back(guide_point(p.point, p.u, p.w));
        Elimination el = eliminate(sys);
        res.order = el.order;
        res.retries = el.retries;
        std::vector<Poly> hints = el.branches;
        // A second order introduces different extraneous factors; gcds with
        // its results split products the first order left glued together.
        std::optional<WorkLimit> cross;
        if (!sys.unbounded) cross.emplace(kCrossWork);
        for (const auto& o : cross_orders()) {
            if (o == el.order) continue;
            try {
                std::optional<WorkLimit> per;
                if (!sys.unbounded) per.emplace(kOrderWork);
                auto br = eliminate_branches(sys, o);
                hints.insert(hints.end(), br.begin(), br.end());
                res.cross_order = o;
                bool splits = false;
                for (const auto& b : br) {
                    Poly g = gcd(el.poly, b);
                    splits = splits || (!g.is_constant() && normalize(g) != normalize(el.poly));
                }
                if (splits) break;
            } catch (const DegenerateOrder&) {
            } catch (const BudgetExceeded&) {
            } catch (const WorkLimitExceeded&) {
            }
        }
        cross.reset();
        res.hard = filter_extraneous(el.poly, x3, hints);
        res.discarded = res.hard.front().filtered;
    }
    if (opt.hard_only) return res;

    for (const auto& c : build_x2(params)) {
        APolyFactor f = x2_factor(params, c, 20, opt.seed);
        if (f.empty()) {
            res.notes.push_back(c.id + ": " + f.note);
            continue;
        }
        bool merged = false;
        for (auto& g : res.conics)
            if (g.poly == f.poly) {
                g.source += "+" + f.source;
                merged = true;
            }
        for (const auto& h : res.hard)
            if (h.poly == f.poly) {
                res.notes.push_back(c.id + ": factor coincides with the hard factor");
                merged = true;
            }
        if (!merged) res.conics.push_back(f);
    }
    return res;
}

} // namespace pretzelcv
