#include "pretzelcv/slc2.hpp"

#include <algorithm>
#include <cmath>

#include "pretzelcv/rational_fn.hpp"
#include "pretzelcv/tracecheb.hpp"

namespace pretzelcv {

Mat2 mat_pow(const Mat2& x, int k) {
    Complex t = x.trace();
    return omega_eval(k, t) * x - omega_eval(k - 1, t) * Mat2::identity();
}

Mat2 mat_pow_naive(const Mat2& x, int k) {
    Mat2 base = k < 0 ? x.inverse() : x;
    Mat2 r = Mat2::identity();
    for (int i = 0; i < std::abs(k); ++i) r = r * base;
    return r;
}

// ---------------------------------------------------------------------------

Complex nu0(const FiveTuple& f, Nu0Reading reading) {
    Complex lin = reading == Nu0Reading::Symmetric ? f.t12 + f.t23 + f.t13 : f.t13 + f.t23 + f.t13;
    return f.t * f.t * (3.0 - lin) + f.t12 * f.t12 + f.t23 * f.t23 + f.t13 * f.t13 + f.t12 * f.t23 * f.t13 - 4.0;
}

Complex nu1(const FiveTuple& f) { return f.t * (f.t12 + f.t23 + f.t13) - f.t * f.t * f.t; }

Complex five_tuple_residual(const FiveTuple& f, Nu0Reading reading) {
    return f.t123 * f.t123 - nu1(f) * f.t123 + nu0(f, reading);
}

double five_tuple_scale(const FiveTuple& f) {
    double t2 = std::norm(f.t);
    double a12 = std::abs(f.t12), a23 = std::abs(f.t23), a13 = std::abs(f.t13), r = std::abs(f.t123);
    return 1.0 + r * r + r * (std::sqrt(t2) * (a12 + a23 + a13) + t2 * std::sqrt(t2)) +
           t2 * (3 + a12 + a23 + a13) + a12 * a12 + a23 * a23 + a13 * a13 + a12 * a23 * a13 + 4;
}

FiveTuple five_tuple_from_charpoint(const CharPoint& p) {
    Complex t2 = p.t * p.t;
    return {p.t, t2 - p.s3, t2 - p.s1, t2 - p.s2, p.t * t2 + p.t - p.tau};
}

FiveTuple five_tuple_of(const Triple& x) {
    const Mat2 &x1 = x[0], &x2 = x[1], &x3 = x[2];
    return {x1.trace(), (x1 * x2).trace(), (x2 * x3).trace(), (x3 * x1).trace(), (x1 * x2 * x3).trace()};
}

CharPoint charpoint_of(const Triple& x) {
    CharPoint p;
    p.t = x[0].trace();
    for (int j = 1; j <= 3; ++j) p.s(j) = (X(x, jp(j)) * X(x, jm(j)).inverse()).trace();
    p.tau = p.t * p.t * p.t + p.t - (x[0] * x[1] * x[2]).trace();
    return p;
}

Complex eigen_branch(Complex t) {
    Complex disc = std::sqrt(t * t - 4.0);
    Complex z1 = (t + disc) / 2.0, z2 = (t - disc) / 2.0;
    double m1 = std::abs(z1), m2 = std::abs(z2);
    if (std::abs(m1 - m2) <= 1e-12 * std::max(1.0, m1)) return z1.imag() >= z2.imag() ? z1 : z2;
    return m1 > m2 ? z1 : z2;
}

namespace {

/// Solves a 4x4 complex system by Gaussian elimination with partial pivoting.
/// Returns false when a pivot falls below tol relative to the largest entry.
bool solve4(std::array<std::array<Complex, 5>, 4> m, std::array<Complex, 4>& x, double tol) {
    double big = 0;
    for (auto& row : m)
        for (int j = 0; j < 4; ++j) big = std::max(big, std::abs(row[j]));
    if (big == 0) return false;
    for (int col = 0; col < 4; ++col) {
        int piv = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) <= tol * big) return false;
        std::swap(m[col], m[piv]);
        for (int r = col + 1; r < 4; ++r) {
            Complex f = m[r][col] / m[col][col];
            for (int j = col; j < 5; ++j) m[r][j] -= f * m[col][j];
        }
    }
    for (int r = 3; r >= 0; --r) {
        Complex s = m[r][4];
        for (int j = r + 1; j < 4; ++j) s -= m[r][j] * x[j];
        x[r] = s / m[r][r];
    }
    return true;
}

/// Trace of pair (i, j) read off the five-tuple.
Complex pair_trace(const FiveTuple& f, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i == 1 && j == 2) return f.t12;
    if (i == 2 && j == 3) return f.t23;
    return f.t13;
}

} // namespace

Triple reconstruct(const FiveTuple& f, const ReconstructOptions& opt) {
    double scale = five_tuple_scale(f);
    if (std::abs(five_tuple_residual(f)) > opt.character_tol * scale)
        throw ReconstructionError(ReconstructionError::Kind::NotACharacter,
                                  "not a character: five-tuple relation fails");

    const Complex t = f.t;
    // Pair (c+1, c+2) with the third index c; c = 3 gives the pair (X1, X2).
    int best_c = 0;
    double best = -1;
    for (int c : {3, 1, 2}) {
        Complex tab = pair_trace(f, jp(c), jm(c));
        double sc = std::abs((tab - 2.0) * (tab + 2.0 - t * t));
        double ref = 1.0 + std::norm(tab) + std::norm(t) * (1.0 + std::abs(tab));
        double rel = sc / ref;
        if (rel > best * (1 + 1e-9) + 1e-300) {
            best = rel;
            best_c = c;
        }
        if (c == 3 && rel > 1e-3) break;
    }
    if (best <= opt.reducible_tol)
        throw ReconstructionError(ReconstructionError::Kind::ReducibleConfiguration,
                                  "reducible configuration: every pair shares an eigenvector");

    const int ia = jp(best_c), ib = jm(best_c);
    Complex u = eigen_branch(t);
    Complex tab = pair_trace(f, ia, ib);
    Mat2 A{u, 1.0, 0.0, 1.0 / u};
    Mat2 B{1.0 / u, 0.0, tab - 2.0, u};
    Mat2 AB = A * B;

    // tr(M Z) = M.a Z.a + M.b Z.c + M.c Z.b + M.d Z.d, unknowns (Z.a, Z.b, Z.c, Z.d).
    auto row = [](const Mat2& m, Complex rhs) {
        return std::array<Complex, 5>{m.a, m.c, m.b, m.d, rhs};
    };
    std::array<std::array<Complex, 5>, 4> sys{row(Mat2::identity(), t), row(A, pair_trace(f, ia, best_c)),
                                              row(B, pair_trace(f, ib, best_c)), row(AB, f.t123)};
    std::array<Complex, 4> z{};
    if (!solve4(sys, z, 1e-13))
        throw ReconstructionError(ReconstructionError::Kind::ReducibleConfiguration,
                                  "reducible configuration: singular trace system");
    Mat2 Z{z[0], z[1], z[2], z[3]};
    if (std::abs(Z.det() - 1.0) > opt.character_tol * (1.0 + Z.norm() * Z.norm()))
        throw ReconstructionError(ReconstructionError::Kind::NotACharacter, "not a character: det X_c != 1");

    Triple out;
    out[static_cast<std::size_t>(ia - 1)] = A;
    out[static_cast<std::size_t>(ib - 1)] = B;
    out[static_cast<std::size_t>(best_c - 1)] = Z;
    return out;
}

double irreducibility_score(const Triple& x) {
    std::vector<Mat2> words{Mat2::identity(), x[0], x[1], x[2]};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) words.push_back(x[i] * x[j]);
    std::vector<std::array<Complex, 4>> vs;
    for (const auto& w : words) vs.push_back({w.a, w.b, w.c, w.d});
    auto nrm = [](const std::array<Complex, 4>& v) {
        double s = 0;
        for (auto c : v) s += std::norm(c);
        return std::sqrt(s);
    };
    double first = 0, fourth = 0;
    for (int step = 0; step < 4; ++step) {
        std::size_t piv = 0;
        double pn = -1;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            double n = nrm(vs[i]);
            if (n > pn) {
                pn = n;
                piv = i;
            }
        }
        if (step == 0) first = pn;
        if (step == 3) fourth = pn;
        if (pn == 0) return 0;
        auto q = vs[piv];
        for (auto& c : q) c /= pn;
        for (auto& v : vs) {
            Complex dot = 0;
            for (int k = 0; k < 4; ++k) dot += std::conj(q[k]) * v[k];
            for (int k = 0; k < 4; ++k) v[k] -= dot * q[k];
        }
    }
    return first == 0 ? 0 : fourth / first;
}

// ---------------------------------------------------------------------------

Operators compute_operators(const Rep& rep) {
    Operators op;
    const auto& P = rep.params;
    for (int j = 1; j <= 3; ++j) op.Y[j - 1] = rep.X(jp(j)) * rep.X(jm(j)).inverse();
    for (int j = 1; j <= 3; ++j) {
        const Mat2& y = op.y(j);
        int k = P.k(j);
        op.A[j - 1] = mat_pow(y, k) * rep.X(jp(j)) * mat_pow(y, -k) * rep.X(jm(j));
    }
    for (int j = 1; j <= 3; ++j)
        op.B[j - 1] = mat_pow(op.y(jp(j)), -P.k(jp(j))) * mat_pow(op.y(jm(j)), P.k(jm(j)) + 1);
    for (int j = 1; j <= 3; ++j) op.L[j - 1] = op.b(jp(j)) * op.b(j) * op.b(jm(j));
    return op;
}

Mat2 b_four_term(const Rep& rep, int j) {
    const auto& P = rep.params;
    Mat2 yj = rep.X(jp(j)) * rep.X(jm(j)).inverse();
    Mat2 yp = rep.X(jp(jp(j))) * rep.X(jm(jp(j))).inverse();
    Mat2 ym = rep.X(jp(jm(j))) * rep.X(jm(jm(j))).inverse();
    Complex sp = yp.trace(), sm = ym.trace();
    Complex bp = omega_eval(P.k(jp(j)), sp), gp = omega_eval(P.k(jp(j)) + 1, sp);
    Complex bm = omega_eval(P.k(jm(j)), sm), gm = omega_eval(P.k(jm(j)) + 1, sm);
    return (-bp * gm) * yj.inverse() + (bp * bm) * yp + (gp * gm) * ym - (gp * bm) * Mat2::identity();
}

RelationCheck check_relations(const Rep& rep) {
    RelationCheck rc;
    std::array<Mat2, 3> A;
    for (int j = 1; j <= 3; ++j) {
        Mat2 y = rep.X(jp(j)) * rep.X(jm(j)).inverse();
        int k = rep.params.k(j);
        Mat2 yk = mat_pow(y, k), ymk = mat_pow(y, -k);
        A[j - 1] = yk * rep.X(jp(j)) * ymk * rep.X(jm(j));
        rc.scale = std::max(rc.scale, yk.norm() * rep.X(jp(j)).norm() * ymk.norm() * rep.X(jm(j)).norm());
    }
    for (int j = 0; j < 3; ++j) rc.residual = std::max(rc.residual, (A[j] - A[(j + 1) % 3]).norm());
    return rc;
}

double verify_relations(const Rep& rep) { return check_relations(rep).residual; }

UpperNormalized normalize_upper(const Rep& rep) {
    const Mat2& x1 = rep.X(1);
    double sc = 1e-12 * (1.0 + x1.norm());
    if ((x1 - Mat2::identity()).norm() <= sc || (x1 + Mat2::identity()).norm() <= sc) throw CentralMeridian();

    UpperNormalized out;
    Operators before = compute_operators(rep);
    out.commutator = (before.l(1) * x1 - x1 * before.l(1)).norm();

    Complex u = eigen_branch(x1.trace());
    // Eigenvector from whichever row of X1 - uI is larger.
    Complex r1a = x1.a - u, r1b = x1.b, r2a = x1.c, r2b = x1.d - u;
    Complex v0, v1;
    if (std::norm(r1a) + std::norm(r1b) >= std::norm(r2a) + std::norm(r2b)) {
        v0 = r1b;
        v1 = -r1a;
    } else {
        v0 = -r2b;
        v1 = r2a;
    }
    double n = std::sqrt(std::norm(v0) + std::norm(v1));
    v0 /= n;
    v1 /= n;
    Mat2 P{v0, -std::conj(v1), v1, std::conj(v0)};
    Mat2 Pi = P.inverse();

    out.rep = rep;
    for (auto& m : out.rep.x) m = Pi * m * P;
    Mat2& nx1 = out.rep.x[0];
    nx1.c = 0;
    out.u = nx1.a;
    Operators after = compute_operators(out.rep);
    out.w = after.l(1).a;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct UpperSym {
    RationalFn diag, corner;  // U(diag, corner), lower-right 1/diag
};

UpperSym mul(const UpperSym& x, const UpperSym& y) {
    // U(x1, y1) U(x2, y2) = U(x1 x2, x1 y2 + y1 / x2)
    return {x.diag * y.diag, x.diag * y.corner + x.corner / y.diag};
}

} // namespace

ReducibleLocus reducible_locus(const PretzelParams& params) {
    const Var u = Var::u();
    const Var a2 = Var::named("a2"), a3 = Var::named("a3");
    RationalFn U{Poly(u)}, one{Poly(1L)};
    std::array<RationalFn, 4> a{RationalFn(), one, RationalFn(Poly(a2)), RationalFn(Poly(a3))};

    // X_j = U(u, a_j); Y_j = X_{j+} X_{j-}^{-1} = U(1, u (a_{j+} - a_{j-})).
    std::array<RationalFn, 4> corner;
    for (int j = 1; j <= 3; ++j) {
        RationalFn d = U * (a[jp(j)] - a[jm(j)]);
        int k = params.k(j);
        UpperSym yk{one, RationalFn(Poly(static_cast<long>(k))) * d};
        UpperSym ymk{one, RationalFn(Poly(static_cast<long>(-k))) * d};
        UpperSym xp{U, a[jp(j)]}, xm{U, a[jm(j)]};
        corner[j] = mul(mul(mul(yk, xp), ymk), xm).corner;
    }
    // Rows: A1 = A3 and A1 = A2; columns: coefficients of a2 and a3 (the system is affine).
    auto coeff = [&](const RationalFn& e, Var v) {
        return RationalFn(derivative(e.num(), v), e.den());
    };
    RationalFn e1 = corner[1] - corner[3], e2 = corner[1] - corner[2];
    RationalFn m00 = coeff(e1, a2), m01 = coeff(e1, a3), m10 = coeff(e2, a2), m11 = coeff(e2, a3);
    for (const auto* m : {&m00, &m01, &m10, &m11})
        if (m->num().contains(a2) || m->num().contains(a3)) throw std::logic_error("reducible system is not affine");

    const long k1 = params.k1, k2 = params.k2, k3 = params.k3;
    RationalFn ui = RationalFn(Poly(1L), Poly(u));
    auto c = [](long v) { return RationalFn(Poly(v)); };
    RationalFn d00 = c(k1 + k3 + 1) * (ui - U);
    RationalFn d01 = c(k1 + 1) * U - c(k1) * ui;
    RationalFn d10 = c(k1 + 1) * ui - c(k1) * U;
    RationalFn d11 = c(k1 + k2 + 1) * (U - ui);

    ReducibleLocus out;
    RationalFn det = m00 * m11 - m01 * m10;
    out.det = det.num();
    out.clearing_power = static_cast<int>(det.den().degree(u));
    RationalFn ddet = d00 * d11 - d01 * d10;
    out.displayed_det = ddet.num();
    out.matches_display = m00 == d00 && m01 == d01 && m10 == d10 && m11 == d11;
    return out;
}

std::array<std::array<Complex, 2>, 2> reducible_system(const PretzelParams& params, Complex u) {
    auto P = [&](int j) { return (params.k(j) + 1.0) / u - static_cast<double>(params.k(j)) * u; };
    auto Q = [&](int j) { return (params.k(j) + 1.0) * u - static_cast<double>(params.k(j)) / u; };
    return {{{P(1) - Q(3), Q(1)}, {P(1), Q(1) - P(2)}}};
}

bool reducible_degenerate(Complex u, double tol) {
    return std::abs(u - 1.0) <= tol || std::abs(u + 1.0) <= tol;
}

} // namespace pretzelcv
