#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

#include "perfectoid/core/error.hpp"
#include "perfectoid/core/rational.hpp"

namespace perfectoid {

inline std::int64_t checked_pow(std::uint32_t p, int e) {
    __int128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= p;
        if (r > INT64_MAX) fail(ErrorCode::Overflow, "p^e does not fit in 64 bits");
    }
    return static_cast<std::int64_t>(r);
}

inline std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) fail(ErrorCode::Overflow, "exponent arithmetic overflow");
    return static_cast<std::int64_t>(v);
}

/// An element of Z[1/p]: num / p^den_exp, normalized so that den_exp = 0 or
/// p does not divide num. Every digit exponent in the library is a PExp.
class PExp {
public:
    PExp() = default;
    PExp(std::uint32_t p, std::int64_t num, int den_exp = 0) : num_(num), den_exp_(den_exp), p_(p) {
        if (den_exp < 0) fail(ErrorCode::InvalidExponent, "negative denominator exponent");
        normalize();
    }

    static PExp integer(std::uint32_t p, std::int64_t n) { return PExp(p, n, 0); }

    /// Exact conversion of a rational whose denominator is a power of p.
    static PExp from_rational(std::uint32_t p, const Rational& r) {
        Integer den = r.get_den();
        int e = 0;
        while (den != 1) {
            if (!mpz_divisible_ui_p(den.get_mpz_t(), p))
                fail(ErrorCode::InvalidExponent, to_string(r) + " is not in Z[1/" + std::to_string(p) + "]");
            mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
            ++e;
        }
        if (!r.get_num().fits_slong_p()) fail(ErrorCode::Overflow, "exponent numerator too large");
        return PExp(p, r.get_num().get_si(), e);
    }

    std::int64_t num() const { return num_; }
    int den_exp() const { return den_exp_; }
    std::uint32_t prime() const { return p_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_exp_ == 0; }
    int sign() const { return (num_ > 0) - (num_ < 0); }

    Rational to_rational() const {
        return make_rational(Integer(static_cast<long>(num_)), ipow(Integer(p_), static_cast<unsigned long>(den_exp_)));
    }

    /// Numerator when written over p^depth (requires den_exp <= depth).
    std::int64_t scaled(int depth) const {
        if (den_exp_ > depth) fail(ErrorCode::DepthExceeded, "exponent finer than requested grid");
        return narrow(static_cast<__int128>(num_) * checked_pow(p_, depth - den_exp_));
    }

    PExp operator-() const { return PExp(p_, -num_, den_exp_); }

    friend PExp operator+(const PExp& a, const PExp& b) {
        std::uint32_t p = a.p_ ? a.p_ : b.p_;
        int e = std::max(a.den_exp_, b.den_exp_);
        __int128 s = static_cast<__int128>(a.num_) * checked_pow(p, e - a.den_exp_) +
                     static_cast<__int128>(b.num_) * checked_pow(p, e - b.den_exp_);
        return PExp(p, narrow(s), e);
    }
    friend PExp operator-(const PExp& a, const PExp& b) { return a + (-b); }
    friend PExp operator*(const PExp& a, const PExp& b) {
        std::uint32_t p = a.p_ ? a.p_ : b.p_;
        return PExp(p, narrow(static_cast<__int128>(a.num_) * b.num_), a.den_exp_ + b.den_exp_);
    }
    PExp times_int(std::int64_t k) const { return PExp(p_, narrow(static_cast<__int128>(num_) * k), den_exp_); }
    PExp times_p() const {
        if (den_exp_ > 0) return PExp(p_, num_, den_exp_ - 1);
        return PExp(p_, narrow(static_cast<__int128>(num_) * p_), 0);
    }
    PExp div_p() const { return PExp(p_, num_, den_exp_ + 1); }

    friend bool operator==(const PExp& a, const PExp& b) { return a.num_ == b.num_ && a.den_exp_ == b.den_exp_; }
    friend std::strong_ordering operator<=>(const PExp& a, const PExp& b) {
        if (a.den_exp_ == b.den_exp_) return a.num_ <=> b.num_;
        std::uint32_t p = a.p_ ? a.p_ : b.p_;
        int e = std::max(a.den_exp_, b.den_exp_);
        __int128 x = static_cast<__int128>(a.num_) * checked_pow(p, e - a.den_exp_);
        __int128 y = static_cast<__int128>(b.num_) * checked_pow(p, e - b.den_exp_);
        return x <=> y;
    }

    /// Exact comparison against an arbitrary rational.
    int compare(const Rational& r) const {
        if (r.get_num().fits_slong_p() && r.get_den().fits_slong_p() && den_exp_ <= 25) {
            __int128 lhs = static_cast<__int128>(num_) * r.get_den().get_si();
            __int128 pe = checked_pow(p_ ? p_ : 2, den_exp_);
            __int128 rhs = static_cast<__int128>(r.get_num().get_si()) * pe;
            return (lhs > rhs) - (lhs < rhs);
        }
        return cmp(to_rational(), r);
    }
    bool less_than(const ExtRational& r) const { return r.is_inf() || compare(r.value()) < 0; }

    std::string str() const {
        if (den_exp_ == 0) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(checked_pow(p_, den_exp_));
    }

    std::size_t hash() const {
        return std::hash<std::int64_t>{}(num_) * 1000003u ^ std::hash<int>{}(den_exp_);
    }

private:
    void normalize() {
        if (num_ == 0) {
            den_exp_ = 0;
            return;
        }
        while (den_exp_ > 0 && num_ % static_cast<std::int64_t>(p_) == 0) {
            num_ /= static_cast<std::int64_t>(p_);
            --den_exp_;
        }
    }

    std::int64_t num_ = 0;
    int den_exp_ = 0;
    std::uint32_t p_ = 0;
};

}  // namespace perfectoid

template <>
struct std::hash<perfectoid::PExp> {
    std::size_t operator()(const perfectoid::PExp& e) const noexcept { return e.hash(); }
};
