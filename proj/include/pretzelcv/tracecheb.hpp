#pragma once

#include <string>
#include <vector>

#include "pretzelcv/poly.hpp"
#include "pretzelcv/rational_fn.hpp"

namespace pretzelcv {

/// omega_k(t) with omega_0 = 0, omega_1 = 1, omega_{k+1} = t omega_k - omega_{k-1}
/// and omega_{-k} = -omega_k. Integer coefficients, degree |k|-1.
Poly omega_poly(int k, Var t = Var::t());

/// omega_k at a complex point, through a + 1/a = t (k a^(k-1) when a = +-1).
Complex omega_eval(int k, Complex t);

/// omega_{k-1}, omega_k, omega_{k+1} in one variable.
struct OmegaTriple {
    Poly alpha, beta, gamma;
    int k = 0;
};
OmegaTriple omega_triple(int k, Var s);

/// omega_k(r) for a reduced rational function r; the denominator is den(r)^(|k|-1).
RationalFn omega_compose(int k, const RationalFn& r);

/// Vieta-Lucas polynomial V_m with V_m(z + 1/z) = z^m + z^-m.
Poly lucas_poly(int m, Var x);

/// Cyclotomic polynomial Phi_n.
Poly cyclotomic(int n, Var z);

/// Minimal polynomial over Q of 2 cos(2 pi j / n) for gcd(j, n) = 1.
Poly cos_minpoly(int n, Var x);

/// A real algebraic number 2 cos(pi * num / den) with its minimal polynomial.
struct CosValue {
    int num = 0, den = 1;
    double value = 0;
    Poly minpoly;
    std::string label;
};
CosValue two_cos_pi(int num, int den, Var x = Var::s());

struct TraceRoot {
    CosValue root;
    /// Whether the root lies on the zero set of the defining polynomial.
    bool satisfies_defining = true;
};

/// Root data of omega_{k+1}(s) -+ omega_k(s).
struct TraceRootSet {
    int k = 0;
    Poly defining;
    /// Roots of the defining polynomial, each with its cosine label.
    std::vector<CosValue> roots;
    /// Numeric roots of the defining polynomial from the root finder.
    std::vector<double> numeric;
    /// Listed candidate set, flagged by membership in the zero set.
    std::vector<TraceRoot> candidates;
};

/// gamma = beta: defining polynomial omega_{k+1} - omega_k. The candidate set is
/// {2cos((2h+1)pi/(2k+1)) : h = 0..k}; for negative k the same list is formed
/// with k replaced by -k-1, which has the same |2k+1|. The member h = k is
/// s = -2, which is never a zero of the polynomial and is flagged.
TraceRootSet gamma_eq_beta_roots(int k, Var s = Var::s());

/// gamma = -beta: defining polynomial omega_{k+1} + omega_k, no candidate list.
TraceRootSet gamma_eq_minus_beta_roots(int k, Var s = Var::s());

} // namespace pretzelcv
