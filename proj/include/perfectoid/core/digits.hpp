#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "perfectoid/core/error.hpp"
#include "perfectoid/core/pexp.hpp"

namespace perfectoid {

/// Exponents of the variables T, S, U (at most three).
using MExp = std::vector<PExp>;

inline constexpr char kVariableNames[] = {'T', 'S', 'U'};
inline constexpr int kMaxVariables = 3;

/// Prime, number of variables and which of them may carry negative exponents.
struct Signature {
    std::uint32_t p = 2;
    int d = 0;
    std::vector<bool> laurent;

    Signature() = default;
    Signature(std::uint32_t prime, int vars, std::vector<bool> flags = {})
        : p(prime), d(vars), laurent(std::move(flags)) {
        if (vars < 0 || vars > kMaxVariables) fail(ErrorCode::DomainMismatch, "at most three variables");
        if (laurent.empty()) laurent.assign(static_cast<std::size_t>(vars), false);
        if (static_cast<int>(laurent.size()) != vars) fail(ErrorCode::DomainMismatch, "laurent flag count");
    }

    MExp zero_m() const { return MExp(static_cast<std::size_t>(d), PExp::integer(p, 0)); }

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Lexicographic (q, m) key of a digit.
struct DigitKey {
    PExp q;
    MExp m;

    friend bool operator==(const DigitKey&, const DigitKey&) = default;
    friend bool operator<(const DigitKey& a, const DigitKey& b) {
        if (a.q != b.q) return a.q < b.q;
        return a.m < b.m;
    }
};

struct Digit {
    DigitKey key;
    std::uint32_t value = 0;  // in 1..p-1

    friend bool operator==(const Digit&, const Digit&) = default;
};

inline int max_den_exp(const DigitKey& k) {
    int e = k.q.den_exp();
    for (const auto& x : k.m) e = std::max(e, x.den_exp());
    return e;
}

inline MExp add_m(const MExp& a, const MExp& b) {
    MExp out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline bool m_is_zero(const MExp& m) {
    return std::all_of(m.begin(), m.end(), [](const PExp& e) { return e.is_zero(); });
}

/// Renders "c*base^(q)*T^(m)..." in the CLI grammar; `base` is 'p' or 't'.
inline std::string render_monomial(std::uint32_t c, const PExp& q, const MExp& m, char base) {
    std::vector<std::string> factors;
    bool unit = q.is_zero() && m_is_zero(m);
    if (c != 1 || unit) factors.push_back(std::to_string(c));
    if (!q.is_zero()) factors.push_back(std::string(1, base) + "^(" + q.str() + ")");
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j].is_zero()) continue;
        factors.push_back(std::string(1, kVariableNames[j]) + "^(" + m[j].str() + ")");
    }
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += "*";
        out += factors[i];
    }
    return out;
}

inline std::string render_digits(const std::vector<Digit>& digits, char base) {
    if (digits.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i) out += " + ";
        out += render_monomial(digits[i].value, digits[i].key.q, digits[i].key.m, base);
    }
    return out;
}

inline std::uint32_t mod_p(std::int64_t v, std::uint32_t p) {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
}

}  // namespace perfectoid
