#include "pretzelcv/rational_fn.hpp"

namespace pretzelcv {

RationalFn::RationalFn(const Poly& num, const Poly& den) {
    if (den.is_zero()) throw std::domain_error("rational function with zero denominator");
    if (num.is_zero()) {
        den_ = Poly(1L);
        return;
    }
    Poly g = gcd(num, den);
    Poly n = divide(num, g), d = divide(den, g);
    Rational c = rational_content(d);
    if (d.leading_coeff() < 0) c = -c;
    num_ = n.scaled(Rational(1) / c);
    den_ = d.scaled(Rational(1) / c);
}

RationalFn RationalFn::operator-() const {
    RationalFn r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
    return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational function");
    return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFn RationalFn::pow(unsigned e) const {
    RationalFn r;
    r.num_ = num_.pow(e);
    r.den_ = den_.pow(e);
    return r;
}

Complex RationalFn::evaluate(const ComplexPoint& at) const {
    Complex d = pretzelcv::evaluate(den_, at);
    if (d == Complex(0.0, 0.0)) throw std::domain_error("pole of rational function");
    return pretzelcv::evaluate(num_, at) / d;
}

RationalFn substitute(const Poly& p, Var v, const RationalFn& r) {
    if (!p.contains(v)) return RationalFn(p);
    auto cs = coefficients(p, v);
    unsigned d = static_cast<unsigned>(cs.size() - 1);
    std::vector<Poly> npow{Poly(1L)}, dpow{Poly(1L)};
    for (unsigned i = 1; i <= d; ++i) {
        npow.push_back(npow.back() * r.num());
        dpow.push_back(dpow.back() * r.den());
    }
    Poly num;
    for (unsigned i = 0; i <= d; ++i)
        if (!cs[i].is_zero()) num = num + cs[i] * npow[i] * dpow[d - i];
    return RationalFn(num, dpow[d]);
}

std::string to_string(const RationalFn& r) {
    if (r.den().is_constant() && r.den().constant_value() == 1) return to_string(r.num());
    return "(" + to_string(r.num()) + ")/(" + to_string(r.den()) + ")";
}

} // namespace pretzelcv
