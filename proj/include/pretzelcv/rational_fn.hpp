#pragma once

#include "pretzelcv/poly.hpp"

namespace pretzelcv {

/// Quotient num/den of polynomials, kept reduced: gcd(num, den) = 1, den is
/// integer-primitive with positive leading coefficient.
class RationalFn {
public:
    RationalFn() : den_(1L) {}
    RationalFn(const Poly& p) : num_(p), den_(1L) {}  // NOLINT(google-explicit-constructor)
    RationalFn(const Poly& num, const Poly& den);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RationalFn operator-() const;
    friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
    friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
    friend bool operator==(const RationalFn& a, const RationalFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    RationalFn pow(unsigned e) const;

    /// Throws std::domain_error when the denominator vanishes at the point.
    Complex evaluate(const ComplexPoint& at) const;

private:
    Poly num_, den_;
};

/// p with v replaced by r, reduced.
RationalFn substitute(const Poly& p, Var v, const RationalFn& r);

std::string to_string(const RationalFn& r);

} // namespace pretzelcv
