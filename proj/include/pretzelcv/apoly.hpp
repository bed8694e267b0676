#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pretzelcv/params.hpp"
#include "pretzelcv/poly.hpp"
#include "pretzelcv/variety.hpp"

namespace pretzelcv {

/// The trace equations for lambda and s_j, the quadratic relation with
/// t = u + 1/u, and the meridian-longitude relation, all cleared of u^-1.
struct EliminationSystem {
    PretzelParams params;
    std::vector<Poly> equations;
    /// Names of the equations, parallel to `equations`.
    std::vector<std::string> labels;
    /// Power of u each equation was multiplied by.
    std::vector<int> clearing_powers;
    std::vector<Var> elimination_order;
    /// Verified points in (s1, s2, s3, lam, u, w). When present, factors of
    /// intermediate resultants that vanish at none of them are dropped.
    std::vector<ComplexPoint> guide;
    /// Lifts the degree budget.
    bool unbounded = false;
};

/// Per-resultant budget: Sylvester dimension, deg_v(f) tdeg(g) + deg_v(g) tdeg(f),
/// and the number of terms in the result.
inline constexpr unsigned kMaxSylvester = 10;
inline constexpr unsigned kMaxDegreeBound = 100;
inline constexpr std::size_t kMaxTerms = 1000;
/// Work caps (see WorkLimit) for one order, for all orders of one
/// elimination, and for the splitting pass.
inline constexpr std::uint64_t kOrderWork = 400'000'000;
inline constexpr std::uint64_t kEliminationWork = 1'600'000'000;
inline constexpr std::uint64_t kCrossWork = 800'000'000;

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded() : std::runtime_error("degree budget exceeded") {}
};

EliminationSystem build_system(const PretzelParams& params);

/// Guide point for a verified sample.
ComplexPoint guide_point(const CharPoint& p, Complex u, Complex w);

class DegenerateOrder : public std::runtime_error {
public:
    DegenerateOrder() : std::runtime_error("degenerate order, retry with permuted order") {}
};

struct Elimination {
    Poly poly;
    /// One result per branch of the guided chain.
    std::vector<Poly> branches;
    std::vector<Var> order;
    /// Orders tried before this one succeeded.
    int retries = 0;
};

/// One polynomial in (u, w) per branch of the guided resultant chain.
/// Throws DegenerateOrder on a zero resultant.
std::vector<Poly> eliminate_branches(const EliminationSystem& sys, const std::vector<Var>& order);
/// Squarefree product of the branch results.
Poly eliminate_in_order(const EliminationSystem& sys, const std::vector<Var>& order);
/// Resultant chain in sys.elimination_order, then every other order. Throws
/// DegenerateOrder or BudgetExceeded when no order succeeds.
Elimination eliminate(const EliminationSystem& sys);

/// Meridian and longitude eigenvalues at a verified representation.
struct UWPoint {
    Complex u, w;
    CharPoint point;
};

/// Verified samples of one component (or one part of it).
struct SampleGroup {
    std::string source;
    std::vector<UWPoint> points;
};

/// Eigenvalues of modulus outside [1/kEigenRange, kEigenRange] are read off
/// with too little relative accuracy to test vanishing.
inline constexpr double kEigenRange = 1e3;

/// Samples c and reads (u, w) off each verified representation; points with a
/// central meridian, a longitude not commuting with it, or an eigenvalue out
/// of range are skipped.
SampleGroup uw_samples(const VarietyComponent& c, std::size_t n, std::uint64_t seed);

struct Discard {
    Poly factor;
    std::string reason;
};

struct APolyFactor {
    Poly poly;
    std::string source;
    /// Extraneous factors removed on the way, with reasons.
    std::vector<Discard> filtered;
    /// Fraction of the source samples at which the factor vanishes.
    double support = 0;
    /// An empty factor: the component gave no polynomial.
    bool empty() const { return poly.is_zero(); }
    std::string note;
};

class LostCurve : public std::runtime_error {
public:
    LostCurve() : std::runtime_error("elimination lost the curve") {}
};

/// |p(u, w)| relative to the size of its terms at the point.
double relative_value(const Poly& p, Complex u, Complex w);

inline constexpr double kVanishTol = 1e-7;

/// Splits p into squarefree candidate factors and keeps those vanishing at
/// >= 90% of the samples of some group. Throws LostCurve when none survive.
std::vector<APolyFactor> filter_extraneous(const Poly& p, const std::vector<SampleGroup>& groups,
                                           const std::vector<Poly>& split_hints = {});

/// The factor contributed by one conic; empty for a flagged conic.
APolyFactor x2_factor(const PretzelParams& params, const VarietyComponent& conic, std::size_t samples = 20,
                      std::uint64_t seed = 1);

/// The conic relation before the algebraic constants are eliminated: a
/// polynomial in u, w and s1, s2, s3.
Poly x2_relation(const PretzelParams& params);

struct APolyOptions {
    std::size_t samples = 50;
    std::uint64_t seed = 1;
    bool hard_only = false;
    bool unbounded = false;
};

struct APolyResult {
    /// Factor(s) from the three-dimensional-trace part.
    std::vector<APolyFactor> hard;
    /// Factors from the conics, merged where they coincide.
    std::vector<APolyFactor> conics;
    std::vector<Discard> discarded;
    std::vector<Var> order;
    /// Second order used to split glued factors; empty when none succeeded.
    std::vector<Var> cross_order;
    int retries = 0;
    std::vector<std::string> notes;
};

APolyResult full_a_polynomial(const PretzelParams& params, const APolyOptions& opt = {});

/// Form of the rewritten third trace equation in the (1, 1, k3) route:
/// as printed, with coefficient of gamma3
///   (w-1)(u^2-1)s3 + w(u^-2+1-u^4) + u^4+u^2-u^-2,
/// or as re-derived from the trace equation, (p-1-s3)(w+u^2) with p = s1+s2.
enum class P33Third { Printed, Derived };

/// The route for (1, 1, k3), valid where s1 != s2: lambda = s1+s2+1,
/// s3 = s1 s2 + 1, then eliminate p = s1 + s2 and s3.
struct P33Route {
    std::vector<Poly> equations;  // in p, s3, u, w
    Poly poly;
};
P33Route p33_route(int k3, P33Third third = P33Third::Derived);

/// (1+w)(u+1/u)(sigma1+2-2 lambda) - (1-w)(u-1/u)(sigma1+2-2t^2) and its term scale.
std::pair<Complex, double> uw_identity(const CharPoint& p, Complex u, Complex w);

/// q = tr(B3) read from matrices, and theta (sigma1+2-2t^2) kappa / t^2 from traces.
std::pair<Complex, Complex> b3_trace_check(const Rep& rep, const CharPoint& p);

} // namespace pretzelcv
