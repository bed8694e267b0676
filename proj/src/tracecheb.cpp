#include "pretzelcv/tracecheb.hpp"

#include <cmath>
#include <numeric>

#include "pretzelcv/roots.hpp"

namespace pretzelcv {

Poly omega_poly(int k, Var t) {
    if (k < 0) return -omega_poly(-k, t);
    if (k == 0) return {};
    Poly prev, cur(1L), x(t);
    for (int i = 1; i < k; ++i) {
        Poly next = x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Complex omega_eval(int k, Complex t) {
    if (k < 0) return -omega_eval(-k, t);
    if (k == 0) return 0.0;
    Complex disc = std::sqrt(t * t - 4.0);
    Complex a = (t + disc) / 2.0;
    if (t == Complex(2.0, 0.0) || t == Complex(-2.0, 0.0)) {
        double s = t.real() > 0 ? 1.0 : -1.0;
        return Complex(static_cast<double>(k) * std::pow(s, k - 1), 0.0);
    }
    // Close to a = +-1 the quotient cancels badly; the recurrence is the same function there.
    if (std::abs(a - 1.0 / a) < 1e-4) {
        Complex prev = 0.0, cur = 1.0;
        for (int i = 1; i < k; ++i) {
            Complex next = t * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    return (std::pow(a, k) - std::pow(a, -k)) / (a - 1.0 / a);
}

OmegaTriple omega_triple(int k, Var s) {
    return {omega_poly(k - 1, s), omega_poly(k, s), omega_poly(k + 1, s), k};
}

RationalFn omega_compose(int k, const RationalFn& r) {
    if (k < 0) return -omega_compose(-k, r);
    if (k == 0) return RationalFn();
    // G_j = den^(j-1) omega_j(num/den): G_1 = 1, G_2 = num, G_{j+1} = num G_j - den^2 G_{j-1}.
    const Poly& p = r.num();
    const Poly& q = r.den();
    Poly q2 = q * q;
    Poly prev, cur(1L);
    for (int j = 1; j < k; ++j) {
        Poly next = p * cur - (j == 1 ? Poly() : q2 * prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return RationalFn(cur, q.pow(static_cast<unsigned>(k - 1)));
}

Poly lucas_poly(int m, Var x) {
    m = std::abs(m);
    if (m == 0) return Poly(2L);
    Poly prev(2L), cur(x), xx(x);
    for (int i = 1; i < m; ++i) {
        Poly next = xx * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Poly cyclotomic(int n, Var z) {
    if (n < 1) throw std::invalid_argument("cyclotomic index must be positive");
    Poly num = Poly(z).pow(static_cast<unsigned>(n)) - 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) num = divide(num, cyclotomic(d, z));
    return num;
}

Poly cos_minpoly(int n, Var x) {
    if (n < 1) throw std::invalid_argument("cos_minpoly index must be positive");
    if (n == 1) return Poly(x) - 2;
    if (n == 2) return Poly(x) + 2;
    Var z = Var::named("z");
    auto c = coefficients(cyclotomic(n, z), z);
    int m = static_cast<int>(c.size() - 1) / 2;
    Poly out = c[m];
    for (int i = 1; i <= m; ++i) out = out + lucas_poly(i, x) * c[m + i];
    return normalize(out);
}

CosValue two_cos_pi(int num, int den, Var x) {
    if (den <= 0) throw std::invalid_argument("two_cos_pi needs a positive denominator");
    CosValue cv;
    int g = std::gcd(std::abs(num), den);
    cv.num = num / g;
    cv.den = den / g;
    cv.value = 2.0 * std::cos(M_PI * static_cast<double>(cv.num) / static_cast<double>(cv.den));
    int N = 2 * cv.den;
    int j = ((cv.num % N) + N) % N;
    int gg = std::gcd(j, N);
    cv.minpoly = cos_minpoly(N / gg, x);
    std::string angle = cv.num == 0 ? "0" : (cv.num == 1 ? std::string("pi") : std::to_string(cv.num) + "pi");
    cv.label = cv.den == 1 ? "2cos(" + angle + ")" : "2cos(" + angle + "/" + std::to_string(cv.den) + ")";
    return cv;
}

namespace {

void fill_numeric(TraceRootSet& rs, Var s) {
    if (rs.defining.contains(s)) rs.numeric = real_roots(rs.defining, 1e-9);
}

} // namespace

TraceRootSet gamma_eq_beta_roots(int k, Var s) {
    TraceRootSet rs;
    rs.k = k;
    rs.defining = omega_poly(k + 1, s) - omega_poly(k, s);
    int kk = k >= 0 ? k : -k - 1;
    int m = 2 * kk + 1;
    for (int h = 0; h <= kk; ++h) {
        CosValue cv = two_cos_pi(2 * h + 1, m, s);
        bool on = rs.defining.contains(s) && divides(cv.minpoly, rs.defining);
        if (on) rs.roots.push_back(cv);
        rs.candidates.push_back({cv, on});
    }
    fill_numeric(rs, s);
    return rs;
}

TraceRootSet gamma_eq_minus_beta_roots(int k, Var s) {
    TraceRootSet rs;
    rs.k = k;
    rs.defining = omega_poly(k + 1, s) + omega_poly(k, s);
    int kk = k >= 0 ? k : -k - 1;
    int m = 2 * kk + 1;
    for (int h = 1; h <= kk; ++h) {
        CosValue cv = two_cos_pi(2 * h, m, s);
        if (divides(cv.minpoly, rs.defining)) rs.roots.push_back(cv);
    }
    fill_numeric(rs, s);
    return rs;
}

} // namespace pretzelcv
