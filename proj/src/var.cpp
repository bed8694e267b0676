#include "pretzelcv/var.hpp"

#include <mutex>
#include <stdexcept>
#include <vector>

namespace pretzelcv {

namespace {

struct Registry {
    std::mutex mu;
    std::vector<std::string> names{"w", "u", "t", "tau", "lam", "s1", "s2", "s3", "s", "v", "c", "p"};
};

Registry& registry() {
    static Registry r;
    return r;
}

} // namespace

Var Var::named(std::string_view name) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    for (std::size_t i = 0; i < r.names.size(); ++i)
        if (r.names[i] == name) return Var(static_cast<std::uint8_t>(i));
    if (name.empty()) throw std::invalid_argument("empty variable name");
    if (r.names.size() >= kMaxVars) throw std::length_error("variable registry full");
    r.names.emplace_back(name);
    return Var(static_cast<std::uint8_t>(r.names.size() - 1));
}

Var Var::at(std::size_t index) {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    if (index >= r.names.size()) throw std::out_of_range("unregistered variable index");
    return Var(static_cast<std::uint8_t>(index));
}

Var Var::s(int j) {
    if (j < 1 || j > 3) throw std::out_of_range("s_j needs j in 1..3");
    return Var(static_cast<std::uint8_t>(4 + j));
}

std::string Var::name() const {
    auto& r = registry();
    std::lock_guard lock(r.mu);
    return r.names.at(index_);
}

} // namespace pretzelcv
