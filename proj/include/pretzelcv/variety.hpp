#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pretzelcv/params.hpp"
#include "pretzelcv/rational_fn.hpp"
#include "pretzelcv/slc2.hpp"
#include "pretzelcv/tracecheb.hpp"

namespace pretzelcv {

enum class ComponentKind { X0_1, X0_2, X1, X2Conic, X3Sin, X3Reg };

/// "X0_1", "X0_2", "X1", "X2_conic", "X3_sin", "X3_reg".
const char* kind_name(ComponentKind k);

inline constexpr double kOracleTol = 1e-9;

/// Outcome of rebuilding matrices from a character point and checking the
/// Wirtinger relations.
struct OracleResult {
    CharPoint point;
    Rep rep;
    RelationCheck check;
    bool accepted = false;
    /// Empty when accepted; otherwise why the point was rejected.
    std::string failure;
};

OracleResult check_point(const PretzelParams& params, const CharPoint& p, double tol = kOracleTol);

/// Which statement of the t = 0, delta = 0 family is enumerated:
/// cos((2k_j+1) theta_j) equal and != -1, or cos((k_j+1) theta_j) equal and != +-1.
enum class X02Wording { OddMultiple, ShiftedMultiple };

struct Rejection {
    CharPoint point;
    std::string reason;
};

/// Regular chart of the three-dimensional-trace curve: (s_{l+}, s_{l-}) free.
struct X3Chart {
    int chart = 0;
    Var plus, minus;
    /// gamma_{l-} beta_{l+} - gamma_{l+} beta_{l-}.
    Poly pivot;
    /// Curve in (s_{l+}, s_{l-}) after dropping factors on excluded loci.
    Poly curve;
    /// The cleared equation before any factor was dropped.
    Poly raw_curve;
    RationalFn lambda, s_chart;
    /// t^2 as the quotient of (s+2)(gamma-beta)^2 differences.
    RationalFn t2;
    /// t^2 from the quadratic relation in lambda; used when s_{l+} = s_{l-}.
    RationalFn t2_fallback;
    std::vector<std::string> notes;
};

/// s1 = s2 = s3 = s curve when all k_j are equal.
struct X3SingularCurve {
    RationalFn lambda;  // in Var s
    RationalFn t2;
};

struct X2Data {
    std::array<CosValue, 3> s;
    /// False where the listed value is not a zero of omega_{k+1} - omega_k (s = -2).
    std::array<bool, 3> on_defining{true, true, true};
    /// tau^2 - t(sigma1+2) tau + t^2 (sigma2+4) - delta; rational s substituted,
    /// the rest left in the s variables.
    Poly conic;
    bool flagged() const { return !(on_defining[0] && on_defining[1] && on_defining[2]); }
};

struct VarietyComponent {
    ComponentKind kind = ComponentKind::X0_1;
    PretzelParams params;
    std::string id;
    /// Verified points of a finite component.
    std::vector<CharPoint> points;
    /// Candidates the oracle turned down, with reasons.
    std::vector<Rejection> rejected;
    std::optional<X2Data> x2;
    std::optional<X3Chart> chart;
    std::vector<X3Chart> other_charts;
    std::optional<X3SingularCurve> sin_curve;
    std::vector<std::string> notes;

    bool is_curve() const {
        return kind == ComponentKind::X2Conic || (kind == ComponentKind::X3Reg && chart && !chart->curve.is_constant()) ||
               (kind == ComponentKind::X3Sin && sin_curve.has_value());
    }
};

struct X0Report {
    std::vector<VarietyComponent> components;  // X0_1 then X0_2
    /// Verified and total candidate counts per wording of X0_2.
    std::size_t odd_candidates = 0, odd_verified = 0;
    std::size_t shifted_candidates = 0, shifted_verified = 0;
    std::size_t singular_lattices = 0;
};

X0Report build_x0(const PretzelParams& params, double tol = kOracleTol);
/// Candidates of one wording of X0_2, before the oracle.
std::vector<CharPoint> x02_candidates(const PretzelParams& params, X02Wording wording, std::size_t* singular = nullptr);

VarietyComponent build_x1(const PretzelParams& params, double tol = kOracleTol);
std::vector<VarietyComponent> build_x2(const PretzelParams& params);
VarietyComponent build_x3_singular(const PretzelParams& params, double tol = kOracleTol);

class NoRegularChart : public std::runtime_error {
public:
    NoRegularChart() : std::runtime_error("no regular chart") {}
};

/// Chart l in {1, 2, 3}; 0 picks the chart whose curve has the lowest total
/// degree (ties to the smaller index) and keeps the others in other_charts.
VarietyComponent build_x3_regular(const PretzelParams& params, int chart = 0);
/// Raw chart data without sampling-based factor filtering.
X3Chart x3_chart(const PretzelParams& params, int chart);

/// Every component; X3_reg omitted (with a note on X3_sin) when no chart exists.
std::vector<VarietyComponent> build_all(const PretzelParams& params, double tol = kOracleTol);

struct Sample {
    CharPoint point;
    Rep rep;
    RelationCheck check;
    bool accepted = false;
    std::string failure;
    /// Slice value (t for conics, s_{l+} for charts, s for the singular curve).
    Complex slice;
};

struct SampleReport {
    std::vector<Sample> accepted;
    std::vector<Sample> rejected;
    std::string diagnostic;
};

/// Deterministic sample of up to n points, each rebuilt and checked.
SampleReport sample_component(const VarietyComponent& c, std::size_t n, std::uint64_t seed, double tol = kOracleTol);

/// Points of the X3 curve above a slice value of s_{l+}, before the oracle.
std::vector<CharPoint> chart_points(const PretzelParams& params, const X3Chart& chart, Complex slice,
                                    std::vector<Rejection>* skipped = nullptr);

/// kappa - delta.
Complex kappa_minus_delta(const CharPoint& p);

} // namespace pretzelcv
