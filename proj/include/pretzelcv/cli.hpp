#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pretzelcv/params.hpp"
#include "pretzelcv/poly.hpp"

namespace pretzelcv {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitDegenerate = 3 };

struct RunConfig {
    PretzelParams params;
    double tolerance = 1e-9;
    unsigned precision_bits = 128;
    std::size_t samples = 50;
    std::uint64_t seed = 1;
    /// Empty for stdout.
    std::string output;
    bool json = false;
};

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws UsageError unless tolerance > 0, samples >= 1 and the precision is in [24, 256].
void validate(const RunConfig& cfg);

/// PRETZELCV_PRECISION if set and numeric, else 128.
unsigned default_precision();

struct SuiteResult {
    std::string name;
    bool passed = true;
    std::size_t checks = 0;
    double max_residual = 0;
    double bound = 0;
    std::vector<std::string> notes;
};

/// Odd symmetry, recurrence and the determinant identity of the omega
/// polynomials exactly for |k| <= 12, then matrix powers against repeated
/// products on random SL(2,C) matrices.
SuiteResult omega_suite(std::size_t matrices, std::uint64_t seed);
/// Inverse, XYX and anticommutator identities on random pairs.
SuiteResult trace_identity_suite(std::size_t pairs, std::uint64_t seed);
/// Random triples with a common trace, to five traces, reconstructed and read back.
SuiteResult roundtrip_suite(std::size_t trials, std::uint64_t seed);
/// Every emitted point and `samples` points per curve through the relation
/// oracle. Flagged conics are expected to be rejected and are not failures.
SuiteResult component_suite(const PretzelParams& params, std::size_t samples, std::uint64_t seed, double tol);
/// The meridian-longitude identity at verified points of the three-dimensional-trace part.
SuiteResult uw_suite(const PretzelParams& params, std::size_t samples, std::uint64_t seed);

struct AnomalyEntry {
    std::string id;
    std::string question;
    std::string finding;
    std::string resolution;
    bool resolved_by_oracle = false;
};

/// Every known discrepancy between the stated formulas and what the oracle
/// accepts, with the evidence found for these parameters.
std::vector<AnomalyEntry> anomaly_ledger(const PretzelParams& params, std::uint64_t seed);

struct CommandOutput {
    std::string text;
    int exit_code = kExitOk;
};

CommandOutput cmd_components(const RunConfig& cfg);
CommandOutput cmd_apoly(const RunConfig& cfg, bool hard_only);
CommandOutput cmd_verify(const RunConfig& cfg);

/// Canonical text, term list, and for polynomials in u and w the coefficient
/// matrix indexed [u degree][w degree], as a JSON string.
std::string poly_json(const Poly& p);

} // namespace pretzelcv
