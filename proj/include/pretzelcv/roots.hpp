#pragma once

#include <stdexcept>
#include <vector>

#include "pretzelcv/poly.hpp"

namespace pretzelcv {

inline constexpr unsigned kDefaultPrecisionBits = 128;

/// Precision used when a call passes 0 bits. Process-wide; starts at 128.
unsigned working_precision();
/// Throws std::invalid_argument outside [24, 256].
void set_working_precision(unsigned bits);

struct RootSet {
    /// Roots repeated according to multiplicity, rounded to double.
    std::vector<Complex> roots;
    /// |p(r)| / (sum |a_i| |r|^i) at each root, measured in working precision.
    std::vector<double> relative_residual;
    unsigned precision_bits = kDefaultPrecisionBits;
};

class RootFindingError : public std::runtime_error {
public:
    RootFindingError(const std::string& what, RootSet partial)
        : std::runtime_error(what), partial_(std::move(partial)) {}
    const RootSet& partial() const { return partial_; }

private:
    RootSet partial_;
};

/// All complex roots of a univariate polynomial.
///
/// The input is first split exactly into squarefree parts (Yun), then each
/// part is solved by Aberth-Ehrlich iteration at the requested working
/// precision (53 uses hardware doubles, up to 128 and 256 bits use software
/// floats). Roots of a part of multiplicity m are repeated m times.
/// Throws RootFindingError when some root misses the residual bound
/// 2^(-precision/2) after the iteration cap.
RootSet complex_roots(const Poly& p, unsigned precision_bits = 0);

/// Convenience: just the roots.
std::vector<Complex> roots_of(const Poly& p, unsigned precision_bits = 0);

/// Real roots (|imag| below tol relative to modulus), sorted ascending.
std::vector<double> real_roots(const Poly& p, double tol = 1e-9, unsigned precision_bits = 0);

} // namespace pretzelcv
