#pragma once

#include <vector>

#include "perfectoid/core/rational.hpp"

namespace perfectoid::oracle {

/// Phi_{p^n} = (x^{p^n} - 1) / (x^{p^{n-1}} - 1) by long division over Z.
inline std::vector<Integer> cyclotomic_prime_power(std::uint32_t p, int n) {
    const std::size_t big = static_cast<std::size_t>(ipow(Integer(p), static_cast<unsigned long>(n)).get_ui());
    const std::size_t small = big / p;
    std::vector<Integer> num(big + 1, 0), quot(big - small + 1, 0);
    num[big] = 1;
    num[0] = -1;
    // divisor x^small - 1 is monic
    for (std::size_t k = big; k + 1 > small; --k) {
        Integer c = num[k];
        if (c == 0) continue;
        quot[k - small] = c;
        num[k] -= c;
        num[k - small] += c;
    }
    for (const auto& r : num) require(r == 0, ErrorCode::NotDivisible, "cyclotomic division left a remainder");
    return quot;
}

/// v(1 - zeta) for a primitive p^n-th root of unity zeta: the conjugates
/// 1 - zeta^a share one valuation and their product is Phi_{p^n}(1).
inline Rational cyclotomic_gap(std::uint32_t p, int n) {
    auto phi = cyclotomic_prime_power(p, n);
    Integer at_one = 0;
    for (const auto& c : phi) at_one += c;
    const long degree = static_cast<long>(phi.size()) - 1;
    return make_rational(Integer(vp(at_one, p)), Integer(degree));
}

}  // namespace perfectoid::oracle
