#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "pretzelcv/var.hpp"

namespace pretzelcv {

using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

struct Term {
    Monomial mono;
    Rational coeff;
};

/// Work done by polynomial products in this thread, in coefficient-limb
/// products. Monotone; compare two readings.
std::uint64_t work_counter();

class WorkLimitExceeded : public std::runtime_error {
public:
    WorkLimitExceeded() : std::runtime_error("work limit exceeded") {}
};

/// While alive, products in this thread throw WorkLimitExceeded once more
/// than `limb_products` of work is done. Nested limits keep the tighter one.
class WorkLimit {
public:
    explicit WorkLimit(std::uint64_t limb_products);
    ~WorkLimit();
    WorkLimit(const WorkLimit&) = delete;
    WorkLimit& operator=(const WorkLimit&) = delete;

private:
    std::uint64_t saved_;
};

/// Sparse multivariate polynomial over Q.
///
/// Terms are kept sorted by strictly decreasing graded-lex monomial order and
/// no stored coefficient is zero. Values are immutable once built; every
/// operation returns a fresh polynomial.
class Poly {
public:
    Poly() = default;
    Poly(long c);  // NOLINT(google-explicit-constructor)
    Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
    Poly(Var v);  // NOLINT(google-explicit-constructor)

    static Poly monomial(const Rational& c, const Monomial& m);
    /// Combines like terms and drops zeros; input order is irrelevant.
    static Poly from_terms(std::vector<Term> terms);
    /// Trusted constructor: terms must already be sorted, distinct and nonzero.
    static Poly from_sorted(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.deg == 0); }
    /// Value of a constant polynomial (zero for the zero polynomial).
    Rational constant_value() const;
    /// Coefficient of the constant monomial.
    Rational constant_term() const;

    const Term& leading_term() const { return terms_.front(); }
    const Rational& leading_coeff() const { return terms_.front().coeff; }

    unsigned degree(Var v) const;
    unsigned total_degree() const;
    bool contains(Var v) const { return degree(v) > 0; }
    std::vector<Var> variables() const;
    /// Bit mask of variable indices that occur.
    std::uint32_t var_mask() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const Rational& c) const;
    Poly times_monomial(const Rational& c, const Monomial& m) const;
    Poly pow(unsigned e) const;

    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    std::vector<Term> terms_;
};

inline Poly operator+(const Poly& a, long b) { return a + Poly(b); }
inline Poly operator-(const Poly& a, long b) { return a - Poly(b); }
inline Poly operator*(long a, const Poly& b) { return Poly(a) * b; }
inline Poly operator-(long a, const Poly& b) { return Poly(a) - b; }

// ---------------------------------------------------------------------------
// Univariate views over a main variable with polynomial coefficients.

/// Coefficients of p as a polynomial in v: result[i] multiplies v^i.
std::vector<Poly> coefficients(const Poly& p, Var v);
Poly from_coefficients(const std::vector<Poly>& coeffs, Var v);
/// Leading coefficient of p viewed as a polynomial in v.
Poly leading_coeff(const Poly& p, Var v);

Poly derivative(const Poly& p, Var v);
Poly substitute(const Poly& p, Var v, const Poly& value);
/// Substitutes a rational constant for v.
Poly substitute(const Poly& p, Var v, const Rational& value);

// ---------------------------------------------------------------------------
// Evaluation.

/// Assignment of complex values indexed by variable.
using ComplexPoint = std::array<Complex, kMaxVars>;

Complex evaluate(const Poly& p, const ComplexPoint& at);
/// Sum of |coeff * monomial| at the point; the natural scale for residuals.
double magnitude_scale(const Poly& p, const ComplexPoint& at);
Rational evaluate_exact(const Poly& p, const std::array<Rational, kMaxVars>& at);

// ---------------------------------------------------------------------------
// Division, gcd and normalization.

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);
/// Exact quotient; throws std::logic_error when b does not divide a.
Poly divide(const Poly& a, const Poly& b);
bool divides(const Poly& b, const Poly& a);

/// Pseudo-remainder of a by b viewed in v: lc(b)^(deg a - deg b + 1) a mod b.
Poly pseudo_remainder(const Poly& a, const Poly& b, Var v);

/// Positive rational c such that p / c has coprime integer coefficients.
Rational rational_content(const Poly& p);
/// Integer-primitive associate of p with positive leading coefficient.
Poly normalize(const Poly& p);

/// Greatest common divisor in Q[vars], normalized. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// gcd of the coefficients of p viewed as a polynomial in v.
Poly content(const Poly& p, Var v);
Poly primitive_part(const Poly& p, Var v);

/// Squarefree part of p over all variables, normalized.
Poly squarefree_part(const Poly& p);

/// Primitive squarefree part of p with respect to v (content in v removed),
/// integer coefficients, positive leading coefficient. Throws on zero input.
Poly squarefree_primitive(const Poly& p, Var v);

/// Yun decomposition of p, assumed primitive in v: pairs (a_i, i) with
/// p = const * prod a_i^i and each a_i squarefree.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p, Var v);

/// Distinct nonconstant normalized factors found by monomial extraction,
/// content splitting in every variable and squarefree decomposition. The
/// product equals squarefree_part(p) up to a constant. This is not an
/// irreducible factorization.
std::vector<Poly> split_factors(const Poly& p);

/// Refines a factor list by splitting each entry along its gcd with every
/// candidate.
std::vector<Poly> refine_by_candidates(std::vector<Poly> factors, const std::vector<Poly>& candidates);

// ---------------------------------------------------------------------------
// Resultants.

class NotEliminable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Sylvester resultant in v with the convention
///   Res(f, g) = lc(f)^deg(g) * prod g(alpha_i)   over the roots alpha_i of f,
/// i.e. the Sylvester determinant with the rows of f first.
/// Throws NotEliminable when either input has degree zero in v.
Poly resultant(const Poly& f, const Poly& g, Var v);
/// Fraction-free Bareiss determinant of the Sylvester matrix.
Poly resultant_bareiss(const Poly& f, const Poly& g, Var v);
/// Subresultant polynomial remainder sequence.
Poly resultant_subresultant(const Poly& f, const Poly& g, Var v);

// ---------------------------------------------------------------------------
// Canonical text form: monomials in decreasing graded-lex order, explicit '*'
// products and '^' powers, e.g. "w*u^6 + 1" or "3/2*s1^2*lam - s2".

std::string to_string(const Poly& p);
Poly parse_poly(std::string_view text);

std::ostream& operator<<(std::ostream& os, const Poly& p);

} // namespace pretzelcv
