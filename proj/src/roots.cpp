#include "pretzelcv/roots.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace pretzelcv {

namespace {

namespace mp = boost::multiprecision;
using Float128 = mp::number<mp::cpp_bin_float<128, mp::digit_base_2>, mp::et_off>;
using Float256 = mp::number<mp::cpp_bin_float<256, mp::digit_base_2>, mp::et_off>;

template <class R>
struct Cx {
    R re{}, im{};
    Cx() = default;
    Cx(R r, R i) : re(std::move(r)), im(std::move(i)) {}
    Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
    Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
    Cx operator*(const Cx& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    Cx operator/(const Cx& o) const {
        R d = o.re * o.re + o.im * o.im;
        return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
    }
    R norm() const { return re * re + im * im; }
};

template <class R>
R from_rational(const Rational& q) {
    if constexpr (std::is_same_v<R, double>) {
        return q.get_d();
    } else {
        R n(q.get_num().get_str());
        R d(q.get_den().get_str());
        return n / d;
    }
}

template <class R>
double to_double(const R& x) {
    if constexpr (std::is_same_v<R, double>) return x;
    else return x.template convert_to<double>();
}

using std::sqrt;
using std::abs;
using std::cos;
using std::sin;
using std::pow;
using mp::sqrt;
using mp::abs;
using mp::cos;
using mp::sin;
using mp::pow;

/// Aberth-Ehrlich iteration on a squarefree polynomial with coefficients a[0..n].
template <class R>
void aberth(const std::vector<Rational>& coeffs, unsigned bits, RootSet& out) {
    const std::size_t n = coeffs.size() - 1;
    std::vector<R> a(n + 1);
    for (std::size_t i = 0; i <= n; ++i) a[i] = from_rational<R>(coeffs[i]);

    // Fujiwara bound on root moduli, used for the initial circle.
    double bound = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = std::abs(to_double(a[i] / a[n]));
        if (r == 0) continue;
        double k = static_cast<double>(n - i);
        bound = std::max(bound, std::pow(i == 0 ? r / 2 : r, 1.0 / k));
    }
    bound = 2 * std::max(bound, 1e-3);

    std::vector<Cx<R>> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        double ang = 2 * M_PI * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = Cx<R>(R(bound * std::cos(ang)), R(bound * std::sin(ang)));
    }

    R eps = pow(R(2), -static_cast<int>(bits) + 4);
    std::vector<bool> done(n, false);
    auto eval = [&](const Cx<R>& x, Cx<R>& p, Cx<R>& dp) {
        p = Cx<R>(a[n], R(0));
        dp = Cx<R>(R(0), R(0));
        for (std::size_t i = n; i-- > 0;) {
            dp = dp * x + p;
            p = p * x + Cx<R>(a[i], R(0));
        }
    };

    const int max_iter = 100 + 20 * static_cast<int>(bits);
    for (int it = 0; it < max_iter; ++it) {
        bool all = true;
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k]) continue;
            Cx<R> p, dp;
            eval(z[k], p, dp);
            if (p.norm() == 0) {
                done[k] = true;
                continue;
            }
            Cx<R> ratio = p / dp;
            Cx<R> sum(R(0), R(0));
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) sum = sum + Cx<R>(R(1), R(0)) / (z[k] - z[j]);
            Cx<R> corr = ratio / (Cx<R>(R(1), R(0)) - ratio * sum);
            z[k] = z[k] - corr;
            if (corr.norm() <= eps * eps * (z[k].norm() + eps)) done[k] = true;
            else all = false;
        }
        if (all) break;
    }

    for (std::size_t k = 0; k < n; ++k) {
        Cx<R> p, dp;
        eval(z[k], p, dp);
        R mod = sqrt(z[k].norm());
        R scale(0), pw(1);
        for (std::size_t i = 0; i <= n; ++i) {
            scale += abs(a[i]) * pw;
            pw *= mod;
        }
        out.roots.emplace_back(to_double(z[k].re), to_double(z[k].im));
        out.relative_residual.push_back(to_double(sqrt(p.norm()) / scale));
    }
}

void solve_squarefree(const std::vector<Rational>& c, unsigned bits, RootSet& out) {
    const std::size_t n = c.size() - 1;
    if (n == 1) {
        out.roots.emplace_back(Rational(-c[0] / c[1]).get_d(), 0.0);
        out.relative_residual.push_back(0.0);
        return;
    }
    if (bits <= 53) aberth<double>(c, bits, out);
    else if (bits <= 128) aberth<Float128>(c, bits, out);
    else aberth<Float256>(c, bits, out);
}

} // namespace

namespace {
std::atomic<unsigned> g_working_bits{kDefaultPrecisionBits};
}

unsigned working_precision() { return g_working_bits.load(); }

void set_working_precision(unsigned bits) {
    if (bits < 24 || bits > 256) throw std::invalid_argument("precision must lie in [24, 256] bits");
    g_working_bits.store(bits);
}

RootSet complex_roots(const Poly& p, unsigned precision_bits) {
    if (precision_bits == 0) precision_bits = working_precision();
    if (p.is_zero()) throw std::invalid_argument("complex_roots of zero polynomial");
    auto vars = p.variables();
    if (vars.size() > 1) throw std::invalid_argument("complex_roots needs a univariate polynomial");
    if (vars.empty()) throw std::invalid_argument("complex_roots needs degree at least 1");
    if (precision_bits < 24 || precision_bits > 256) throw std::invalid_argument("precision must lie in [24, 256] bits");
    Var v = vars[0];

    RootSet out;
    out.precision_bits = precision_bits;
    Poly rest = p;
    unsigned zeros = p.terms().back().mono[v];
    for (unsigned i = 0; i < zeros; ++i) {
        out.roots.emplace_back(0.0, 0.0);
        out.relative_residual.push_back(0.0);
    }
    if (zeros) rest = divide(rest, Poly::monomial(1, Monomial::of(v, zeros)));
    if (rest.contains(v)) {
        for (auto& [f, mult] : squarefree_decomposition(rest, v)) {
            auto cs = coefficients(f, v);
            std::vector<Rational> c;
            for (auto& x : cs) c.push_back(x.constant_value());
            RootSet part;
            solve_squarefree(c, precision_bits, part);
            for (int m = 0; m < mult; ++m) {
                out.roots.insert(out.roots.end(), part.roots.begin(), part.roots.end());
                out.relative_residual.insert(out.relative_residual.end(), part.relative_residual.begin(),
                                             part.relative_residual.end());
            }
        }
    }
    double bound = std::ldexp(1.0, -static_cast<int>(precision_bits) / 2);
    for (double r : out.relative_residual)
        if (!(r <= bound)) throw RootFindingError("root refinement did not converge", out);
    return out;
}

std::vector<Complex> roots_of(const Poly& p, unsigned precision_bits) {
    return complex_roots(p, precision_bits).roots;
}

std::vector<double> real_roots(const Poly& p, double tol, unsigned precision_bits) {
    std::vector<double> out;
    for (auto z : roots_of(p, precision_bits))
        if (std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z))) out.push_back(z.real());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace pretzelcv
