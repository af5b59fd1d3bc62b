#pragma once

#include <string>

#include "perfectoid/core/error.hpp"
#include "perfectoid/core/rational.hpp"

namespace perfectoid {

/// The real number factor^{1/root} * p^{-v}, or zero. Comparisons raise
/// both sides to a common integer power, so no floating point is involved.
struct NormValue {
    std::uint32_t p = 2;
    bool zero = false;
    Rational v = 0;
    Rational factor = 1;
    unsigned long root = 1;

    static NormValue make_zero(std::uint32_t p) {
        NormValue n;
        n.p = p;
        n.zero = true;
        return n;
    }
    static NormValue from_valuation(std::uint32_t p, const ExtRational& v) {
        if (v.is_inf()) return make_zero(p);
        NormValue n;
        n.p = p;
        n.v = v.value();
        return n;
    }
    static NormValue make(std::uint32_t p, const Rational& v, const Rational& factor, unsigned long root = 1) {
        require(factor > 0, ErrorCode::DomainMismatch, "norm factor must be positive");
        NormValue n;
        n.p = p;
        n.v = v;
        n.factor = factor;
        n.root = root;
        n.simplify();
        return n;
    }

    ExtRational valuation() const { return zero ? ExtRational::infinity() : ExtRational(v); }
    bool pure() const { return zero || factor == 1; }

    void simplify() {
        if (zero || root == 1) return;
        if (factor == 1) {
            root = 1;
            return;
        }
        for (unsigned long k = root; k > 1; --k) {
            if (root % k) continue;
            Integer a, b;
            if (mpz_root(a.get_mpz_t(), factor.get_num_mpz_t(), k) && mpz_root(b.get_mpz_t(), factor.get_den_mpz_t(), k)) {
                factor = make_rational(a, b);
                root /= k;
                return;
            }
        }
    }

    std::string str() const {
        if (zero) return "0";
        std::string out;
        if (factor != 1) out = root == 1 ? to_string(factor) : "(" + to_string(factor) + ")^(1/" + std::to_string(root) + ")";
        if (v != 0 || out.empty()) {
            if (!out.empty()) out += "*";
            out += std::to_string(p) + "^(" + to_string(Rational(-v)) + ")";
        }
        return out;
    }
};

/// Sign of a - b.
inline int compare(const NormValue& a, const NormValue& b) {
    if (a.zero || b.zero) return (!a.zero) - (!b.zero);
    const unsigned long L = a.root * b.root;
    // a^L / b^L = X * p^e with X = fa^{rb} / fb^{ra}, e = (vb - va) L.
    Rational e = (b.v - a.v) * Rational(static_cast<long>(L));
    Integer xn = ipow(a.factor.get_num(), b.root) * ipow(b.factor.get_den(), a.root);
    Integer xd = ipow(a.factor.get_den(), b.root) * ipow(b.factor.get_num(), a.root);
    const unsigned long d = e.get_den().get_ui();
    Integer lhs = ipow(xn, d), rhs = ipow(xd, d);
    const Integer& n = e.get_num();
    Integer pp = ipow(Integer(a.p), Integer(abs(n)).get_ui());
    if (n > 0) lhs *= pp;
    if (n < 0) rhs *= pp;
    return cmp(lhs, rhs) < 0 ? -1 : (cmp(lhs, rhs) > 0 ? 1 : 0);
}

inline bool operator==(const NormValue& a, const NormValue& b) { return compare(a, b) == 0; }
inline bool operator<(const NormValue& a, const NormValue& b) { return compare(a, b) < 0; }
inline bool operator<=(const NormValue& a, const NormValue& b) { return compare(a, b) <= 0; }
inline bool operator>(const NormValue& a, const NormValue& b) { return compare(a, b) > 0; }

inline NormValue max(const NormValue& a, const NormValue& b) { return a < b ? b : a; }
inline NormValue min(const NormValue& a, const NormValue& b) { return a < b ? a : b; }

inline NormValue operator*(const NormValue& a, const NormValue& b) {
    if (a.zero || b.zero) return NormValue::make_zero(a.p);
    return NormValue::make(a.p, a.v + b.v, Rational(ipow(a.factor.get_num(), b.root) * ipow(b.factor.get_num(), a.root)) /
                                               Rational(ipow(a.factor.get_den(), b.root) * ipow(b.factor.get_den(), a.root)),
                           a.root * b.root);
}

inline NormValue pow(const NormValue& a, unsigned long n) {
    if (a.zero) return n ? a : NormValue::make(a.p, 0, 1);
    return NormValue::make(a.p, a.v * Rational(static_cast<long>(n)), rpow(a.factor, n), a.root);
}

inline NormValue nth_root(const NormValue& a, unsigned long n) {
    require(n > 0, ErrorCode::Usage, "zeroth root");
    if (a.zero) return a;
    return NormValue::make(a.p, a.v / Rational(static_cast<long>(n)), a.factor, a.root * n);
}

}  // namespace perfectoid
