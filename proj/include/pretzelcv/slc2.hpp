#pragma once

#include <array>
#include <stdexcept>

#include "pretzelcv/params.hpp"
#include "pretzelcv/poly.hpp"

namespace pretzelcv {

/// 2x2 complex matrix, row-major.
struct Mat2 {
    Complex a{1}, b{0}, c{0}, d{1};

    static Mat2 identity() { return {}; }
    static Mat2 zero() { return {0, 0, 0, 0}; }
    /// U(x, y) = [[x, y], [0, 1/x]].
    static Mat2 upper(Complex x, Complex y) { return {x, y, 0, 1.0 / x}; }
    /// V(x, y) = [[x, 0], [y, 1/x]].
    static Mat2 lower(Complex x, Complex y) { return {x, 0, y, 1.0 / x}; }

    Complex trace() const { return a + d; }
    Complex det() const { return a * d - b * c; }
    Mat2 inverse() const {
        Complex dt = det();
        return {d / dt, -b / dt, -c / dt, a / dt};
    }
    double norm() const { return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d)); }

    Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    friend Mat2 operator*(Complex s, const Mat2& m) { return {s * m.a, s * m.b, s * m.c, s * m.d}; }
};

/// X^k = omega_k(tr X) X - omega_{k-1}(tr X) I, valid for det X = 1.
Mat2 mat_pow(const Mat2& x, int k);
/// X^k by repeated multiplication (inverse for negative k).
Mat2 mat_pow_naive(const Mat2& x, int k);

using Triple = std::array<Mat2, 3>;

/// Xj addressed by j in {1, 2, 3}.
inline const Mat2& X(const Triple& tr, int j) { return tr[static_cast<std::size_t>(j - 1)]; }

struct Rep {
    Triple x;
    PretzelParams params;
    const Mat2& X(int j) const { return x[static_cast<std::size_t>(j - 1)]; }
};

struct FiveTuple {
    Complex t, t12, t23, t13, t123;
};

enum class Nu0Reading {
    /// t^2 (3 - t12 - t23 - t13) + ...
    Symmetric,
    /// t^2 (3 - t13 - t23 - t13) + ..., the variant with t13 repeated.
    RepeatedT13,
};

Complex nu0(const FiveTuple& f, Nu0Reading reading = Nu0Reading::Symmetric);
Complex nu1(const FiveTuple& f);
/// t123^2 - nu1 t123 + nu0.
Complex five_tuple_residual(const FiveTuple& f, Nu0Reading reading = Nu0Reading::Symmetric);
/// Magnitude of the terms of the residual, for relative comparison.
double five_tuple_scale(const FiveTuple& f);

FiveTuple five_tuple_from_charpoint(const CharPoint& p);
FiveTuple five_tuple_of(const Triple& x);
CharPoint charpoint_of(const Triple& x);

class ReconstructionError : public std::runtime_error {
public:
    enum class Kind { ReducibleConfiguration, NotACharacter };
    ReconstructionError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct ReconstructOptions {
    /// Relative tolerance on the five-tuple residual and on det X_c = 1.
    double character_tol = 1e-8;
    /// Relative threshold below which a pair is treated as sharing an eigenvector.
    double reducible_tol = 1e-10;
};

/// Rebuilds (X1, X2, X3) from its five-tuple, unique up to conjugacy for
/// irreducible data. Two of the matrices are put in the normal form
/// A = [[u, 1], [0, 1/u]], B = [[1/u, 0], [tr(AB) - 2, u]] (u the eigenvalue with
/// |u| >= 1, ties to Im u >= 0) and the third is solved from the four linear
/// trace conditions. The pair is the one farthest from sharing an eigenvector;
/// when X1, X2 qualify they are used, so X1 is upper triangular.
Triple reconstruct(const FiveTuple& f, const ReconstructOptions& opt = {});

/// Fourth normalized Gram-Schmidt residual of the words of length <= 2 in the
/// triple. Vanishes (up to rounding) when the triple has a common eigenvector.
double irreducibility_score(const Triple& x);

/// Eigenvalue branch used throughout: root of z^2 - t z + 1 with |z| >= 1,
/// ties broken towards nonnegative imaginary part.
Complex eigen_branch(Complex t);

struct Operators {
    std::array<Mat2, 3> Y, A, B, L;
    const Mat2& y(int j) const { return Y[static_cast<std::size_t>(j - 1)]; }
    const Mat2& a(int j) const { return A[static_cast<std::size_t>(j - 1)]; }
    const Mat2& b(int j) const { return B[static_cast<std::size_t>(j - 1)]; }
    const Mat2& l(int j) const { return L[static_cast<std::size_t>(j - 1)]; }
};

/// Y_j = X_{j+} X_{j-}^{-1}, A_j = Y_j^{k_j} X_{j+} Y_j^{-k_j} X_{j-},
/// B_j = Y_{j+}^{-k_{j+}} Y_{j-}^{k_{j-}+1}, L_j = B_{j+} B_j B_{j-}.
Operators compute_operators(const Rep& rep);

/// B_j through its four-term expansion in Y_j^{-1}, Y_{j+}, Y_{j-}, I.
Mat2 b_four_term(const Rep& rep, int j);

struct RelationCheck {
    /// max_j |A_j - A_{j+1}|_F
    double residual = 0;
    /// max_j of |Y^k| |X+| |Y^-k| |X-|, the size of the products forming A_j
    double scale = 0;
    bool accepted(double tol) const { return residual <= tol * (1.0 + scale); }
};

RelationCheck check_relations(const Rep& rep);
double verify_relations(const Rep& rep);

class CentralMeridian : public std::domain_error {
public:
    CentralMeridian() : std::domain_error("central meridian: X1 = +-I") {}
};

struct UpperNormalized {
    Rep rep;
    /// Upper-left entries of X1 and L1 after conjugation.
    Complex u, w;
    /// |[L1, X1]|_F before conjugation.
    double commutator = 0;
};

/// Conjugates the triple so X1 is upper triangular with eigen_branch(tr X1) in
/// the upper-left corner, and reads off the meridian and longitude eigenvalues.
UpperNormalized normalize_upper(const Rep& rep);

struct ReducibleLocus {
    /// Laurent-cleared determinant of the reducibility system, integer polynomial in u.
    Poly det;
    /// Multiplier u^e that cleared the Laurent denominators.
    int clearing_power = 0;
    /// The same determinant built from the displayed system (k1 in both
    /// equations), kept for comparison.
    Poly displayed_det;
    /// Whether the independently derived coefficient matrix equals the displayed one.
    bool matches_display = false;
};

/// Determinant of the 2x2 linear system in (a2 - 1, a3 - 1) whose nontrivial
/// solutions give non-abelian reducible representations with X1 = U(u, 1),
/// Xj = U(u, a_j).
ReducibleLocus reducible_locus(const PretzelParams& params);

/// The 2x2 coefficient matrix at a numeric u (rows: A1 = A3, A1 = A2).
std::array<std::array<Complex, 2>, 2> reducible_system(const PretzelParams& params, Complex u);

/// At u = +-1 (parabolic meridian) the diagonal of the system vanishes, the
/// k-dependence drops out and the determinant is -u^e: no non-abelian
/// reducible representation has a parabolic meridian. Callers treat these u
/// separately instead of reading the polynomial.
bool reducible_degenerate(Complex u, double tol = 1e-12);

} // namespace pretzelcv
