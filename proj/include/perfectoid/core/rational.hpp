#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "perfectoid/core/error.hpp"

namespace perfectoid {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "a" or "a/b" with optional sign on a.
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        require(den > 0, ErrorCode::SyntaxError, "non-positive denominator in '" + s + "'");
        return make_rational(num, den);
    } catch (const std::invalid_argument&) {
        fail(ErrorCode::SyntaxError, "not a rational: '" + s + "'");
    }
}

inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Integer floor_of(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer ceil_of(const Rational& r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer ipow(const Integer& base, unsigned long e) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline Rational rpow(const Rational& base, unsigned long e) {
    return make_rational(ipow(base.get_num(), e), ipow(base.get_den(), e));
}

/// p-adic valuation of a nonzero integer.
inline long vp(const Integer& n, unsigned p) {
    if (n == 0) fail(ErrorCode::DomainMismatch, "vp of zero");
    Integer m = abs(n);
    long v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++v;
    }
    return v;
}

inline long vp(const Rational& r, unsigned p) { return vp(r.get_num(), p) - vp(r.get_den(), p); }

/// A rational number or +infinity. Used for valuations (v(0) = +inf),
/// log-radii of type-1 points and unbounded interval endpoints.
class ExtRational {
public:
    ExtRational() : inf_(true) {}
    ExtRational(const Rational& r) : inf_(false), value_(r) {}  // NOLINT(implicit)
    ExtRational(long n) : inf_(false), value_(n) {}             // NOLINT(implicit)

    static ExtRational infinity() { return ExtRational(); }

    bool is_inf() const { return inf_; }
    const Rational& value() const {
        if (inf_) fail(ErrorCode::DomainMismatch, "value() of infinity");
        return value_;
    }

    friend bool operator==(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ || b.inf_) return a.inf_ == b.inf_;
        return a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ && b.inf_) return std::strong_ordering::equal;
        if (a.inf_) return std::strong_ordering::greater;
        if (b.inf_) return std::strong_ordering::less;
        int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend ExtRational operator+(const ExtRational& a, const ExtRational& b) {
        if (a.inf_ || b.inf_) return infinity();
        return ExtRational(Rational(a.value_ + b.value_));
    }
    friend ExtRational operator*(const ExtRational& a, const Rational& k) {
        if (a.inf_) {
            if (sgn(k) <= 0) fail(ErrorCode::DomainMismatch, "infinity times non-positive");
            return infinity();
        }
        return ExtRational(Rational(a.value_ * k));
    }

    std::string str() const { return inf_ ? std::string("inf") : to_string(value_); }

private:
    bool inf_;
    Rational value_;
};

inline ExtRational min(const ExtRational& a, const ExtRational& b) { return a < b ? a : b; }
inline ExtRational max(const ExtRational& a, const ExtRational& b) { return a < b ? b : a; }

inline ExtRational parse_ext_rational(std::string_view text) {
    if (text == "inf" || text == "oo" || text == "infinity") return ExtRational::infinity();
    return ExtRational(parse_rational(text));
}

inline std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << r.str(); }

}  // namespace perfectoid
