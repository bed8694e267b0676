#pragma once

#include <array>
#include <complex>
#include <string>

namespace pretzelcv {

/// P(2k1+1, 2k2+1, 2k3+1).
struct PretzelParams {
    int k1 = 0, k2 = 0, k3 = 0;

    int k(int j) const { return j == 1 ? k1 : (j == 2 ? k2 : k3); }
    bool all_equal() const { return k1 == k2 && k2 == k3; }
    bool nonnegative() const { return k1 >= 0 && k2 >= 0 && k3 >= 0; }
    std::string label() const {
        return "(" + std::to_string(k1) + "," + std::to_string(k2) + "," + std::to_string(k3) + ")";
    }
    friend bool operator==(const PretzelParams&, const PretzelParams&) = default;
};

/// Cyclic successor and predecessor on {1, 2, 3}.
inline int jp(int j) { return j % 3 + 1; }
inline int jm(int j) { return (j + 1) % 3 + 1; }

/// (t, s1, s2, s3, tau): t the common meridian trace, s_j = tr(X_{j+} X_{j-}^{-1}),
/// tau = t^3 + t - tr(X1 X2 X3).
struct CharPoint {
    std::complex<double> t, s1, s2, s3, tau;

    std::complex<double> s(int j) const { return j == 1 ? s1 : (j == 2 ? s2 : s3); }
    std::complex<double>& s(int j) { return j == 1 ? s1 : (j == 2 ? s2 : s3); }
    std::complex<double> sigma1() const { return s1 + s2 + s3; }
    std::complex<double> sigma2() const { return s1 * s2 + s2 * s3 + s3 * s1; }
    std::complex<double> sigma3() const { return s1 * s2 * s3; }
    std::complex<double> delta() const { return 4.0 + sigma3() + 2.0 * sigma2() - sigma1() * sigma1(); }
    std::complex<double> kappa() const {
        return tau * tau - t * (sigma1() + 2.0) * tau + t * t * (sigma2() + 4.0);
    }
};

} // namespace pretzelcv
