#ifndef CHAOSKIT_COMBINATORICS_HPP
#define CHAOSKIT_COMBINATORICS_HPP

#include <array>
#include <cstdint>

#include "chaoskit/errors.hpp"

namespace chaoskit {

// All chaos orders are capped here.  Factorials up to 64! (~1.3e89) stay well
// inside double range; beyond the cap they would also start to lose the
// precision the exact-arithmetic contracts assume.
inline constexpr int kMaxOrder = 64;

namespace detail {
inline const std::array<double, kMaxOrder + 1>& factorial_table() {
    static const auto table = [] {
        std::array<double, kMaxOrder + 1> t{};
        t[0] = 1.0;
        for (int i = 1; i <= kMaxOrder; ++i) t[i] = t[i - 1] * static_cast<double>(i);
        return t;
    }();
    return table;
}
}  // namespace detail

inline double factorial(int n) {
    if (n < 0 || n > kMaxOrder) throw CapExceeded("factorial: order out of [0,64]");
    return detail::factorial_table()[static_cast<std::size_t>(n)];
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    // multiplicative form keeps intermediate values small
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

// (2k-1)!! for odd moments of the standard normal: E[X^{2k}] = (2k-1)!!.
inline double double_factorial_odd(int m) {
    if (m < -1) throw std::invalid_argument("double_factorial_odd: m < -1");
    double r = 1.0;
    for (int i = m; i >= 2; i -= 2) r *= static_cast<double>(i);
    return r;
}

}  // namespace chaoskit

#endif
