#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace pretzelcv {

inline constexpr std::size_t kMaxVars = 24;

/// A polynomial indeterminate. Variables live in a process-wide registry whose
/// index order is the global variable order used by every monomial ordering.
///
/// The first entries are fixed: w, u, t, tau, lam, s1, s2, s3, s, v, c, p.
/// Further names are appended on first use, up to kMaxVars in total.
class Var {
public:
    Var() = default;

    static Var named(std::string_view name);
    /// Variable at a registry index; throws when the index is not registered.
    static Var at(std::size_t index);

    static Var w() { return Var(0); }
    static Var u() { return Var(1); }
    static Var t() { return Var(2); }
    static Var tau() { return Var(3); }
    static Var lam() { return Var(4); }
    /// s_j for j in {1,2,3}.
    static Var s(int j);
    static Var s() { return Var(8); }
    static Var v() { return Var(9); }
    static Var c() { return Var(10); }
    static Var p() { return Var(11); }

    std::uint8_t index() const { return index_; }
    std::string name() const;

    auto operator<=>(const Var&) const = default;

private:
    explicit Var(std::uint8_t i) : index_(i) {}
    std::uint8_t index_ = 0;
};

/// Exponent vector over the global variable order, with cached total degree.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> exp{};
    std::uint32_t deg = 0;

    static Monomial one() { return {}; }
    static Monomial of(Var v, unsigned e = 1) {
        Monomial m;
        m.exp[v.index()] = static_cast<std::uint16_t>(e);
        m.deg = e;
        return m;
    }

    unsigned operator[](Var v) const { return exp[v.index()]; }

    Monomial operator*(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(exp[i] + o.exp[i]);
        r.deg = deg + o.deg;
        return r;
    }

    bool divides(const Monomial& o) const {
        if (deg > o.deg) return false;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exp[i] > o.exp[i]) return false;
        return true;
    }

    /// Requires divides(o).
    Monomial quotient_of(const Monomial& o) const {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r.exp[i] = static_cast<std::uint16_t>(o.exp[i] - exp[i]);
        r.deg = o.deg - deg;
        return r;
    }

    Monomial with(Var v, unsigned e) const {
        Monomial r = *this;
        r.deg = r.deg - r.exp[v.index()] + e;
        r.exp[v.index()] = static_cast<std::uint16_t>(e);
        return r;
    }

    bool operator==(const Monomial& o) const { return deg == o.deg && exp == o.exp; }

    /// Graded lexicographic comparison over the global variable order.
    std::strong_ordering operator<=>(const Monomial& o) const {
        if (deg != o.deg) return deg <=> o.deg;
        for (std::size_t i = 0; i < kMaxVars; ++i)
            if (exp[i] != o.exp[i]) return exp[i] <=> o.exp[i];
        return std::strong_ordering::equal;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto e : m.exp) {
            h ^= e;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace pretzelcv
