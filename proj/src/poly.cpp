#include "pretzelcv/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace pretzelcv {

namespace {

bool desc(const Term& a, const Term& b) { return b.mono < a.mono; }

bool integral(const std::vector<Term>& ts) {
    for (const auto& t : ts)
        if (t.coeff.get_den() != 1) return false;
    return true;
}

std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign_b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        auto c = a[i].mono <=> b[j].mono;
        if (c > 0) {
            out.push_back(a[i++]);
        } else if (c < 0) {
            out.push_back({b[j].mono, sign_b > 0 ? b[j].coeff : Rational(-b[j].coeff)});
            ++j;
        } else {
            Rational s = sign_b > 0 ? Rational(a[i].coeff + b[j].coeff) : Rational(a[i].coeff - b[j].coeff);
            if (s != 0) out.push_back({a[i].mono, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) out.push_back(a[i]);
    for (; j < b.size(); ++j) out.push_back({b[j].mono, sign_b > 0 ? b[j].coeff : Rational(-b[j].coeff)});
    return out;
}

} // namespace

Poly::Poly(long c) {
    if (c != 0) terms_.push_back({Monomial::one(), Rational(c)});
}

Poly::Poly(const Rational& c) {
    if (c != 0) terms_.push_back({Monomial::one(), c});
}

Poly::Poly(Var v) { terms_.push_back({Monomial::of(v), Rational(1)}); }

Poly Poly::monomial(const Rational& c, const Monomial& m) {
    Poly p;
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), desc);
    Poly p;
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
    return p;
}

Poly Poly::from_sorted(std::vector<Term> terms) {
    Poly p;
    p.terms_ = std::move(terms);
    return p;
}

Rational Poly::constant_value() const {
    if (terms_.empty()) return 0;
    if (terms_.size() != 1 || terms_[0].mono.deg != 0) throw std::logic_error("polynomial is not constant");
    return terms_[0].coeff;
}

Rational Poly::constant_term() const {
    if (!terms_.empty() && terms_.back().mono.deg == 0) return terms_.back().coeff;
    return 0;
}

unsigned Poly::degree(Var v) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.mono[v]);
    return d;
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.deg; }

std::uint32_t Poly::var_mask() const {
    std::uint32_t m = 0;
    for (const auto& t : terms_)
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (t.mono.exp[i]) m |= 1u << i;
    return m;
}

std::vector<Var> Poly::variables() const {
    std::vector<Var> out;
    auto m = var_mask();
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (m & (1u << i)) out.push_back(Var::at(i));
    return out;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Poly::from_sorted(merge(a.terms_, b.terms_, 1));
}

Poly operator-(const Poly& a, const Poly& b) {
    if (b.is_zero()) return a;
    return Poly::from_sorted(merge(a.terms_, b.terms_, -1));
}

namespace {

thread_local std::uint64_t g_work = 0;
thread_local std::uint64_t g_work_cap = UINT64_MAX;

std::uint64_t max_limbs(const std::vector<Term>& ts) {
    std::size_t m = 1;
    for (const auto& t : ts)
        m = std::max(m, mpz_size(t.coeff.get_num_mpz_t()) + mpz_size(t.coeff.get_den_mpz_t()));
    return m;
}

void charge_units(std::uint64_t units) {
    g_work += units;
    if (g_work > g_work_cap) throw WorkLimitExceeded();
}

void charge(const std::vector<Term>& a, const std::vector<Term>& b) {
    charge_units(a.size() * b.size() * (max_limbs(a) + max_limbs(b)));
}

} // namespace

std::uint64_t work_counter() { return g_work; }

WorkLimit::WorkLimit(std::uint64_t limb_products) : saved_(g_work_cap) {
    std::uint64_t cap = g_work + limb_products < g_work ? UINT64_MAX : g_work + limb_products;
    g_work_cap = std::min(g_work_cap, cap);
}

WorkLimit::~WorkLimit() { g_work_cap = saved_; }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1) return b.times_monomial(a.terms_[0].coeff, a.terms_[0].mono);
    if (b.size() == 1) return a.times_monomial(b.terms_[0].coeff, b.terms_[0].mono);
    charge(a.terms_, b.terms_);
    std::vector<Term> out;
    if (integral(a.terms_) && integral(b.terms_)) {
        std::unordered_map<Monomial, mpz_class, MonomialHash> acc;
        acc.reserve(a.size() * b.size() / 2 + 8);
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) {
                auto& slot = acc[x.mono * y.mono];
                mpz_addmul(slot.get_mpz_t(), x.coeff.get_num_mpz_t(), y.coeff.get_num_mpz_t());
            }
        out.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (c != 0) out.push_back({m, Rational(c)});
    } else {
        std::unordered_map<Monomial, Rational, MonomialHash> acc;
        acc.reserve(a.size() * b.size() / 2 + 8);
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_) acc[x.mono * y.mono] += x.coeff * y.coeff;
        out.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (c != 0) out.push_back({m, std::move(c)});
    }
    std::sort(out.begin(), out.end(), desc);
    return Poly::from_sorted(std::move(out));
}

Poly Poly::scaled(const Rational& c) const {
    if (c == 0) return {};
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Poly Poly::times_monomial(const Rational& c, const Monomial& m) const {
    if (c == 0) return {};
    Poly r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly result(1L), base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

// ---------------------------------------------------------------------------

std::vector<Poly> coefficients(const Poly& p, Var v) {
    unsigned d = p.degree(v);
    std::vector<std::vector<Term>> buckets(p.is_zero() ? 0 : d + 1);
    for (const auto& t : p.terms()) {
        unsigned e = t.mono[v];
        buckets[e].push_back({t.mono.with(v, 0), t.coeff});
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(Poly::from_sorted(std::move(b)));
    return out;
}

Poly from_coefficients(const std::vector<Poly>& coeffs, Var v) {
    std::vector<Term> ts;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        for (const auto& t : coeffs[i].terms()) ts.push_back({t.mono * Monomial::of(v, static_cast<unsigned>(i)), t.coeff});
    return Poly::from_terms(std::move(ts));
}

Poly leading_coeff(const Poly& p, Var v) {
    if (p.is_zero()) return {};
    return coefficients(p, v).back();
}

Poly derivative(const Poly& p, Var v) {
    std::vector<Term> ts;
    for (const auto& t : p.terms()) {
        unsigned e = t.mono[v];
        if (e == 0) continue;
        ts.push_back({t.mono.with(v, e - 1), t.coeff * e});
    }
    return Poly::from_terms(std::move(ts));
}

Poly substitute(const Poly& p, Var v, const Poly& value) {
    if (!p.contains(v)) return p;
    auto cs = coefficients(p, v);
    Poly r = cs.back();
    for (std::size_t i = cs.size() - 1; i-- > 0;) r = r * value + cs[i];
    return r;
}

Poly substitute(const Poly& p, Var v, const Rational& value) {
    std::vector<Rational> powers{Rational(1)};
    std::vector<Term> ts;
    for (const auto& t : p.terms()) {
        unsigned e = t.mono[v];
        while (powers.size() <= e) powers.push_back(powers.back() * value);
        if (powers[e] == 0) continue;
        ts.push_back({t.mono.with(v, 0), t.coeff * powers[e]});
    }
    return Poly::from_terms(std::move(ts));
}

// ---------------------------------------------------------------------------

namespace {

template <class T, class Conv>
T eval_generic(const Poly& p, const std::array<T, kMaxVars>& at, Conv conv) {
    std::array<std::vector<T>, kMaxVars> powers;
    T sum{};
    for (const auto& t : p.terms()) {
        T term = conv(t.coeff);
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            unsigned e = t.mono.exp[i];
            if (!e) continue;
            auto& pw = powers[i];
            if (pw.empty()) pw.push_back(T(1));
            while (pw.size() <= e) pw.push_back(pw.back() * at[i]);
            term = term * pw[e];
        }
        sum = sum + term;
    }
    return sum;
}

} // namespace

Complex evaluate(const Poly& p, const ComplexPoint& at) {
    return eval_generic<Complex>(p, at, [](const Rational& q) { return Complex(q.get_d(), 0.0); });
}

double magnitude_scale(const Poly& p, const ComplexPoint& at) {
    ComplexPoint mags;
    for (std::size_t i = 0; i < kMaxVars; ++i) mags[i] = Complex(std::abs(at[i]), 0.0);
    return eval_generic<Complex>(p, mags, [](const Rational& q) { return Complex(std::abs(q.get_d()), 0.0); }).real();
}

Rational evaluate_exact(const Poly& p, const std::array<Rational, kMaxVars>& at) {
    return eval_generic<Rational>(p, at, [](const Rational& q) { return q; });
}

// ---------------------------------------------------------------------------

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return Poly();
    if (b.is_constant()) return a.scaled(Rational(1) / b.constant_value());
    const auto& bl = b.terms().front();
    const auto& bt = b.terms().back();
    if (!bt.mono.divides(a.terms().back().mono) || !bl.mono.divides(a.terms().front().mono)) return std::nullopt;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        unsigned db = 0, da = 0;
        for (const auto& t : b.terms()) db = std::max<unsigned>(db, t.mono.exp[i]);
        if (!db) continue;
        for (const auto& t : a.terms()) da = std::max<unsigned>(da, t.mono.exp[i]);
        if (db > da) return std::nullopt;
    }
    if (b.size() == 1) {
        std::vector<Term> q;
        q.reserve(a.size());
        Rational inv = Rational(1) / bl.coeff;
        for (const auto& t : a.terms()) {
            if (!bl.mono.divides(t.mono)) return std::nullopt;
            q.push_back({bl.mono.quotient_of(t.mono), t.coeff * inv});
        }
        return Poly::from_sorted(std::move(q));
    }
    std::vector<Term> rem = a.terms();
    std::vector<Term> quot;
    Rational inv = Rational(1) / bl.coeff;
    std::vector<Term> sub;
    const std::uint64_t b_limbs = max_limbs(b.terms());
    while (!rem.empty()) {
        const auto& lt = rem.front();
        if (!bl.mono.divides(lt.mono)) return std::nullopt;
        Monomial qm = bl.mono.quotient_of(lt.mono);
        Rational qc = lt.coeff * inv;
        charge_units((rem.size() + b.size()) *
                     (b_limbs + mpz_size(qc.get_num_mpz_t()) + mpz_size(qc.get_den_mpz_t())));
        sub.clear();
        sub.reserve(b.size());
        for (const auto& t : b.terms()) sub.push_back({t.mono * qm, t.coeff * qc});
        rem = merge(rem, sub, -1);
        quot.push_back({qm, std::move(qc)});
    }
    return Poly::from_sorted(std::move(quot));
}

Poly divide(const Poly& a, const Poly& b) {
    auto q = divide_exact(a, b);
    if (!q) throw std::logic_error("inexact polynomial division");
    return *std::move(q);
}

bool divides(const Poly& b, const Poly& a) { return divide_exact(a, b).has_value(); }

// ---------------------------------------------------------------------------
// Dense representation in one main variable: index i holds the coefficient of v^i.

namespace {

using UPoly = std::vector<Poly>;

void trim(UPoly& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int udeg(const UPoly& a) { return static_cast<int>(a.size()) - 1; }

UPoly to_u(const Poly& p, Var v) {
    auto c = coefficients(p, v);
    trim(c);
    return c;
}

UPoly uscale(const UPoly& a, const Poly& c) {
    UPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    trim(r);
    return r;
}

UPoly udivide(const UPoly& a, const Poly& c) {
    if (c.is_constant() && c.constant_value() == 1) return a;
    UPoly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = divide(a[i], c);
    return r;
}

UPoly prem(UPoly a, const UPoly& b) {
    int n = udeg(b);
    int m = udeg(a);
    if (m < n) return a;
    const Poly& lb = b.back();
    int e = m - n + 1;
    while (!a.empty() && udeg(a) >= n) {
        int d = udeg(a) - n;
        Poly la = a.back();
        for (auto& c : a) c = c * lb;
        for (int i = 0; i <= n; ++i) a[i + d] = a[i + d] - la * b[i];
        a.pop_back();
        trim(a);
        --e;
    }
    if (e > 0 && !a.empty()) {
        Poly f = lb.pow(static_cast<unsigned>(e));
        a = uscale(a, f);
    }
    return a;
}

Poly from_u(const UPoly& a, Var v) { return from_coefficients(a, v); }

constexpr std::uint64_t kPrime = (1ull << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % kPrime);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulmod(r, a);
        a = mulmod(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }

std::optional<std::uint64_t> rat_mod(const Rational& q) {
    mpz_class n = q.get_num() % mpz_class(static_cast<unsigned long>(kPrime));
    if (n < 0) n += static_cast<unsigned long>(kPrime);
    mpz_class d = q.get_den() % mpz_class(static_cast<unsigned long>(kPrime));
    if (d == 0) return std::nullopt;
    return mulmod(n.get_ui(), invmod(d.get_ui()));
}

struct ModPoint {
    std::array<std::uint64_t, kMaxVars> val{};
    explicit ModPoint(std::uint64_t seed) {
        std::uint64_t x = seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull;
        for (auto& v : val) {
            x ^= x >> 29;
            x *= 0xBF58476D1CE4E5B9ull;
            x ^= x >> 32;
            v = x % kPrime;
        }
    }
};

std::optional<std::vector<std::uint64_t>> eval_mod(const Poly& p, Var v, const ModPoint& pt) {
    std::vector<std::uint64_t> out(p.degree(v) + 1, 0);
    for (const auto& t : p.terms()) {
        auto c = rat_mod(t.coeff);
        if (!c) return std::nullopt;
        std::uint64_t x = *c;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (i != v.index() && t.mono.exp[i]) x = mulmod(x, powmod(pt.val[i], t.mono.exp[i]));
        auto& slot = out[t.mono[v]];
        slot = (slot + x) % kPrime;
    }
    return out;
}

int gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
    auto tr = [](std::vector<std::uint64_t>& x) {
        while (!x.empty() && x.back() == 0) x.pop_back();
    };
    tr(a);
    tr(b);
    while (!b.empty()) {
        if (a.size() < b.size()) std::swap(a, b);
        std::uint64_t inv = invmod(b.back());
        while (a.size() >= b.size() && !a.empty()) {
            std::uint64_t f = mulmod(a.back(), inv);
            std::size_t shift = a.size() - b.size();
            for (std::size_t i = 0; i < b.size(); ++i)
                a[i + shift] = (a[i + shift] + kPrime - mulmod(f, b[i])) % kPrime;
            tr(a);
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

/// Upper bound on deg_v gcd(a, b) from one modular specialization, or -1 when
/// the specialization is unlucky for the leading coefficients.
int modular_gcd_degree_bound(const Poly& a, const Poly& b, Var v, std::uint64_t seed) {
    ModPoint pt(seed);
    auto ea = eval_mod(a, v, pt);
    auto eb = eval_mod(b, v, pt);
    if (!ea || !eb) return -1;
    if (ea->back() == 0 || eb->back() == 0) return -1;
    return gcd_degree_mod(*ea, *eb);
}

std::uint64_t g_mod_seed = 1;

std::vector<std::uint64_t> derivative_mod(const std::vector<std::uint64_t>& a) {
    std::vector<std::uint64_t> d;
    for (std::size_t j = 1; j < a.size(); ++j) d.push_back(mulmod(a[j], j % kPrime));
    return d;
}

/// Image of p in v at pt, only when it keeps deg_v p.
std::optional<std::vector<std::uint64_t>> full_image(const Poly& p, Var v, const ModPoint& pt) {
    auto e = eval_mod(p, v, pt);
    if (!e || e->back() == 0) return std::nullopt;
    return e;
}

// The image tests below never claim more than is true: a factor involving v
// keeps its degree in any image that keeps the degree of the product, so it
// shows up as a common or repeated root.

/// True when a and b certainly have no common nonconstant factor.
bool coprime_by_images(const Poly& a, const Poly& b) {
    std::uint32_t common = a.var_mask() & b.var_mask();
    if (!common) return true;
    ModPoint pt(g_mod_seed++);
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (!(common & (1u << i))) continue;
        Var v = Var::at(i);
        auto ea = full_image(a, v, pt), eb = full_image(b, v, pt);
        if (!ea || !eb || gcd_degree_mod(*ea, *eb) > 0) return false;
    }
    return true;
}

/// True when p certainly has no repeated nonconstant factor.
bool squarefree_by_images(const Poly& p) {
    ModPoint pt(g_mod_seed++);
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (!(p.var_mask() & (1u << i))) continue;
        Var v = Var::at(i);
        auto e = full_image(p, v, pt);
        if (!e || gcd_degree_mod(*e, derivative_mod(*e)) > 0) return false;
    }
    return true;
}

/// True when content(p, v) is certainly constant: two images that differ only
/// in the value of v are coprime in every other variable.
bool trivial_content_by_images(const Poly& p, Var v) {
    ModPoint pt(g_mod_seed++), other(g_mod_seed++);
    ModPoint q = pt;
    q.val[v.index()] = other.val[v.index()];
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (!(p.var_mask() & (1u << i)) || i == v.index()) continue;
        Var y = Var::at(i);
        auto e1 = full_image(p, y, pt), e2 = full_image(p, y, q);
        if (!e1 || !e2 || gcd_degree_mod(*e1, *e2) > 0) return false;
    }
    return true;
}

Poly subresultant_gcd(UPoly a, UPoly b, Var v) {
    if (udeg(a) < udeg(b)) std::swap(a, b);
    Poly g(1L), h(1L);
    while (true) {
        int delta = udeg(a) - udeg(b);
        UPoly r = prem(a, b);
        if (r.empty()) return primitive_part(from_u(b, v), v);
        if (udeg(r) == 0) return Poly(1L);
        a = std::move(b);
        Poly div = g * h.pow(static_cast<unsigned>(delta));
        b = udivide(r, div);
        g = a.back();
        if (delta == 0) {
        } else if (delta == 1) {
            h = g;
        } else {
            h = divide(g.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
        }
    }
}

Poly monomial_gcd_with(const Monomial& m, const Poly& f) {
    Monomial g = m;
    for (const auto& t : f.terms())
        for (std::size_t i = 0; i < kMaxVars; ++i) g.exp[i] = std::min(g.exp[i], t.mono.exp[i]);
    g.deg = 0;
    for (auto e : g.exp) g.deg += e;
    return Poly::monomial(1, g);
}

Var var_at(std::size_t i) { return Var::at(i); }

} // namespace

Poly pseudo_remainder(const Poly& a, const Poly& b, Var v) {
    if (b.is_zero()) throw std::domain_error("pseudo-remainder by zero");
    return from_u(prem(to_u(a, v), to_u(b, v)), v);
}

Rational rational_content(const Poly& p) {
    if (p.is_zero()) return 0;
    mpz_class g = 0, l = 1;
    for (const auto& t : p.terms()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    Rational c(g, l);
    c.canonicalize();
    return abs(c);
}

Poly normalize(const Poly& p) {
    if (p.is_zero()) return p;
    Rational c = rational_content(p);
    if (p.leading_coeff() < 0) c = -c;
    if (c == 1) return p;
    return p.scaled(Rational(1) / c);
}

Poly content(const Poly& p, Var v) {
    if (p.is_zero()) return {};
    if (p.contains(v) && trivial_content_by_images(p, v)) return Poly(1L);
    auto cs = coefficients(p, v);
    std::vector<const Poly*> nz;
    for (const auto& c : cs)
        if (!c.is_zero()) nz.push_back(&c);
    std::sort(nz.begin(), nz.end(), [](const Poly* a, const Poly* b) { return a->size() < b->size(); });
    Poly g = normalize(*nz[0]);
    for (std::size_t i = 1; i < nz.size() && !g.is_constant(); ++i) g = gcd(g, *nz[i]);
    return g.is_constant() ? Poly(1L) : g;
}

Poly primitive_part(const Poly& p, Var v) {
    if (p.is_zero()) return p;
    return normalize(divide(p, content(p, v)));
}

Poly gcd(const Poly& a, const Poly& b) {
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);
    if (a.is_constant() || b.is_constant()) return Poly(1L);
    if (a.size() == 1) return monomial_gcd_with(a.leading_term().mono, b);
    if (b.size() == 1) return monomial_gcd_with(b.leading_term().mono, a);
    if (a == b) return normalize(a);
    if (coprime_by_images(a, b)) return Poly(1L);

    std::uint32_t ma = a.var_mask(), mb = b.var_mask();
    std::uint32_t only = ma ^ mb;
    if (only) {
        std::size_t i = static_cast<std::size_t>(__builtin_ctz(only));
        Var v = var_at(i);
        if (ma & (1u << i)) return gcd(content(a, v), b);
        return gcd(a, content(b, v));
    }

    Var v;
    unsigned best = ~0u;
    for (std::size_t i = 0; i < kMaxVars; ++i)
        if (ma & (1u << i)) {
            Var c = var_at(i);
            unsigned d = std::max(a.degree(c), b.degree(c));
            if (d < best) {
                best = d;
                v = c;
            }
        }

    Poly ca = content(a, v), cb = content(b, v);
    Poly pa = divide(a, ca), pb = divide(b, cb);
    Poly g0 = gcd(ca, cb);

    int bound = modular_gcd_degree_bound(pa, pb, v, g_mod_seed++);
    if (bound == 0) return normalize(g0);
    if (bound > 0) {
        // Cheap exits: one side may divide the other.
        if (static_cast<int>(pb.degree(v)) == bound) {
            if (divides(pb, pa)) return normalize(g0 * pb);
        }
        if (static_cast<int>(pa.degree(v)) == bound) {
            if (divides(pa, pb)) return normalize(g0 * pa);
        }
    }
    Poly g = subresultant_gcd(to_u(pa, v), to_u(pb, v), v);
    return normalize(g0 * g);
}

Poly squarefree_part(const Poly& p) {
    if (p.is_zero()) return p;
    if (p.is_constant()) return Poly(1L);
    if (squarefree_by_images(p)) return normalize(p);
    Poly g = p;
    for (std::size_t i = 0; i < kMaxVars && !g.is_constant(); ++i) {
        if (!(p.var_mask() & (1u << i))) continue;
        g = gcd(g, derivative(p, var_at(i)));
    }
    return normalize(divide(p, g));
}

Poly squarefree_primitive(const Poly& p, Var v) {
    if (p.is_zero()) throw std::invalid_argument("squarefree_primitive of zero polynomial");
    if (!p.contains(v)) return Poly(1L);
    Poly pp = divide(p, content(p, v));
    Poly g = gcd(pp, derivative(pp, v));
    return normalize(divide(pp, g));
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p, Var v) {
    std::vector<std::pair<Poly, int>> out;
    Poly d = derivative(p, v);
    Poly a0 = gcd(p, d);
    Poly b = divide(p, a0);
    Poly c = divide(d, a0);
    Poly dd = c - derivative(b, v);
    int i = 1;
    while (b.contains(v)) {
        Poly a = gcd(b, dd);
        if (a.contains(v)) out.emplace_back(a, i);
        b = divide(b, a);
        c = divide(dd, a);
        dd = c - derivative(b, v);
        ++i;
    }
    return out;
}


namespace {

void add_distinct(std::vector<Poly>& out, const Poly& f) {
    if (f.is_constant()) return;
    Poly n = normalize(f);
    for (const auto& g : out)
        if (g == n) return;
    out.push_back(std::move(n));
}

std::vector<Poly> coprime_basis(std::vector<Poly> fs) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < fs.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < fs.size() && !changed; ++j) {
                Poly g = gcd(fs[i], fs[j]);
                if (g.is_constant()) continue;
                Poly fi = divide(fs[i], g), fj = divide(fs[j], g);
                std::vector<Poly> next;
                for (std::size_t k = 0; k < fs.size(); ++k)
                    if (k != i && k != j) next.push_back(fs[k]);
                add_distinct(next, g);
                add_distinct(next, fi);
                add_distinct(next, fj);
                fs = std::move(next);
                changed = true;
            }
    }
    return fs;
}

} // namespace

std::vector<Poly> split_factors(const Poly& p) {
    if (p.is_zero()) throw std::invalid_argument("split_factors of zero polynomial");
    std::vector<Poly> out;
    Poly rest = p;
    {
        Monomial m = rest.terms().front().mono;
        for (const auto& t : rest.terms())
            for (std::size_t i = 0; i < kMaxVars; ++i) m.exp[i] = std::min(m.exp[i], t.mono.exp[i]);
        m.deg = 0;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            m.deg += m.exp[i];
            if (m.exp[i]) add_distinct(out, Poly(var_at(i)));
        }
        if (m.deg) rest = divide(rest, Poly::monomial(1, m));
    }
    std::vector<Poly> work{rest};
    while (!work.empty()) {
        Poly f = std::move(work.back());
        work.pop_back();
        if (f.is_constant()) continue;
        bool split = false;
        auto mask = f.var_mask();
        for (std::size_t i = 0; i < kMaxVars && !split; ++i) {
            if (!(mask & (1u << i))) continue;
            Poly c = content(f, var_at(i));
            if (!c.is_constant()) {
                work.push_back(divide(f, c));
                work.push_back(c);
                split = true;
            }
        }
        if (split) continue;
        if (squarefree_by_images(f)) {
            add_distinct(out, f);
            continue;
        }
        Var v = var_at(static_cast<std::size_t>(__builtin_ctz(mask)));
        auto sq = squarefree_decomposition(f, v);
        if (sq.size() == 1 && sq[0].second == 1) {
            add_distinct(out, f);
        } else {
            for (auto& [g, mult] : sq) work.push_back(g);
        }
    }
    return coprime_basis(std::move(out));
}

std::vector<Poly> refine_by_candidates(std::vector<Poly> factors, const std::vector<Poly>& candidates) {
    std::vector<Poly> out;
    std::vector<Poly> work = std::move(factors);
    while (!work.empty()) {
        Poly f = std::move(work.back());
        work.pop_back();
        if (f.is_constant()) continue;
        bool split = false;
        for (const auto& c : candidates) {
            if (c.is_constant()) continue;
            Poly g = gcd(f, c);
            if (g.is_constant() || g.total_degree() == f.total_degree()) continue;
            work.push_back(g);
            work.push_back(divide(f, g));
            split = true;
            break;
        }
        if (!split) add_distinct(out, f);
    }
    return coprime_basis(std::move(out));
}

// ---------------------------------------------------------------------------

namespace {

void check_eliminable(const Poly& f, const Poly& g, Var v) {
    if (!f.contains(v) || !g.contains(v))
        throw NotEliminable("not eliminable: input has degree zero in " + v.name());
}

/// Res(f, g) when f is linear in v: lc(f)^deg g * g(-b/a).
Poly resultant_linear_first(const UPoly& f, const UPoly& g) {
    const Poly& a = f[1];
    Poly mb = -f[0];
    int n = udeg(g);
    Poly r;
    Poly bp(1L);
    std::vector<Poly> apow{Poly(1L)};
    for (int i = 1; i <= n; ++i) apow.push_back(apow.back() * a);
    for (int i = 0; i <= n; ++i) {
        if (!g[i].is_zero()) r = r + g[i] * bp * apow[n - i];
        if (i < n) bp = bp * mb;
    }
    return r;
}

} // namespace

Poly resultant_subresultant(const Poly& f, const Poly& g, Var v) {
    check_eliminable(f, g, v);
    UPoly a = to_u(f, v), b = to_u(g, v);
    Poly sign(1L);
    if (udeg(a) < udeg(b)) {
        if ((udeg(a) % 2) && (udeg(b) % 2)) sign = Poly(-1L);
        std::swap(a, b);
    }
    Poly gg(1L), h(1L);
    int s = 1;
    while (true) {
        int delta = udeg(a) - udeg(b);
        if ((udeg(a) % 2) && (udeg(b) % 2)) s = -s;
        UPoly r = prem(a, b);
        a = std::move(b);
        if (r.empty()) return {};
        b = udivide(r, gg * h.pow(static_cast<unsigned>(delta)));
        gg = a.back();
        if (delta == 1) {
            h = gg;
        } else if (delta > 1) {
            h = divide(gg.pow(static_cast<unsigned>(delta)), h.pow(static_cast<unsigned>(delta - 1)));
        }
        if (udeg(b) <= 0) break;
    }
    int da = udeg(a);
    if (da == 0) return sign * Poly(static_cast<long>(s)) * h;
    Poly res = divide(b[0].pow(static_cast<unsigned>(da)), h.pow(static_cast<unsigned>(da - 1)));
    return sign * Poly(static_cast<long>(s)) * res;
}

Poly resultant_bareiss(const Poly& f, const Poly& g, Var v) {
    check_eliminable(f, g, v);
    UPoly a = to_u(f, v), b = to_u(g, v);
    int m = udeg(a), n = udeg(b);
    int N = m + n;
    std::vector<std::vector<Poly>> M(N, std::vector<Poly>(N));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) M[r][r + (m - i)] = a[i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) M[n + r][r + (n - i)] = b[i];
    int sign = 1;
    Poly prev(1L);
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k].is_zero()) {
            int piv = -1;
            for (int r = k + 1; r < N; ++r)
                if (!M[r][k].is_zero()) {
                    piv = r;
                    break;
                }
            if (piv < 0) return {};
            std::swap(M[k], M[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                Poly x = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                M[i][j] = divide(x, prev);
            }
            M[i][k] = Poly();
        }
        prev = M[k][k];
    }
    return sign < 0 ? -M[N - 1][N - 1] : M[N - 1][N - 1];
}

Poly resultant(const Poly& f, const Poly& g, Var v) {
    check_eliminable(f, g, v);
    UPoly a = to_u(f, v), b = to_u(g, v);
    if (udeg(a) == 1) return resultant_linear_first(a, b);
    if (udeg(b) == 1) {
        Poly r = resultant_linear_first(b, a);
        return (udeg(a) % 2) ? -r : r;
    }
    return resultant_subresultant(f, g, v);
}

// ---------------------------------------------------------------------------

std::string to_string(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : p.terms()) {
        bool neg = t.coeff < 0;
        Rational mag = abs(t.coeff);
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (t.mono.deg == 0 || mag != 1) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            unsigned e = t.mono.exp[i];
            if (!e) continue;
            if (wrote) os << "*";
            os << var_at(i).name();
            if (e > 1) os << "^" << e;
            wrote = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Poly parse() {
        Poly r = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return r;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("cannot parse polynomial at offset " + std::to_string(pos_) + ": " + why);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Poly expr() {
        Poly r;
        if (eat('-')) r = -term();
        else {
            eat('+');
            r = term();
        }
        while (true) {
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else return r;
        }
    }

    Poly term() {
        Poly r = power();
        while (true) {
            if (eat('*')) {
                r = r * power();
            } else if (eat('/')) {
                Poly d = power();
                if (!d.is_constant() || d.is_zero()) fail("division by a non-constant");
                r = r.scaled(Rational(1) / d.constant_value());
            } else {
                return r;
            }
        }
    }

    Poly power() {
        Poly b = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (start == pos_) fail("expected exponent");
            b = b.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
        }
        return b;
    }

    Poly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly r = expr();
            if (!eat(')')) fail("expected ')'");
            return r;
        }
        if (c == '-') {
            ++pos_;
            return -power();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Poly(Rational(mpz_class(std::string(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            return Poly(Var::named(s_.substr(start, pos_ - start)));
        }
        fail(std::string("unexpected '") + c + "'");
    }
};

} // namespace

Poly parse_poly(std::string_view text) { return Parser(text).parse(); }

} // namespace pretzelcv
