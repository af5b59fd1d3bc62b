#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perfectoid/core/digits.hpp"
#include "perfectoid/core/error.hpp"
#include "perfectoid/core/pexp.hpp"
#include "perfectoid/core/rational.hpp"

namespace perfectoid::charp {

enum class ArithOp { Add, Mul };
enum class Direction { Forward, Inverse };

/// Element of the perfect characteristic-p digit algebra
/// F_p[t^{1/p^inf}][T^{1/p^inf}, ...] truncated at t-precision N_t.
///
/// Digits are stored sorted by (q, m) with no zeros, so structural equality
/// is semantic equality.
class TiltSeries {
public:
    TiltSeries() = default;

    static TiltSeries zero(const Signature& sig, ExtRational precision = ExtRational::infinity(), int depth = 8) {
        TiltSeries x;
        x.sig_ = sig;
        x.precision_ = std::move(precision);
        x.depth_ = depth;
        return x;
    }

    static TiltSeries constant(const Signature& sig, std::int64_t c, ExtRational precision = ExtRational::infinity(),
                               int depth = 8) {
        return monomial(sig, c, PExp::integer(sig.p, 0), sig.zero_m(), std::move(precision), depth);
    }

    static TiltSeries monomial(const Signature& sig, std::int64_t c, const PExp& q, const MExp& m,
                               ExtRational precision = ExtRational::infinity(), int depth = 8) {
        std::map<DigitKey, std::int64_t> acc;
        acc[DigitKey{q, m}] = c;
        return from_map(sig, acc, std::move(precision), depth);
    }

    /// Builds the canonical form from raw (possibly unreduced) coefficients.
    static TiltSeries from_map(const Signature& sig, const std::map<DigitKey, std::int64_t>& acc,
                               ExtRational precision, int depth) {
        TiltSeries x = zero(sig, std::move(precision), depth);
        for (const auto& [key, raw] : acc) {
            std::uint32_t c = mod_p(raw, sig.p);
            if (c == 0) continue;
            if (!key.q.less_than(x.precision_)) continue;
            x.check_key(key);
            x.digits_.push_back(Digit{key, c});
        }
        return x;
    }

    const Signature& signature() const { return sig_; }
    std::uint32_t prime() const { return sig_.p; }
    const std::vector<Digit>& digits() const { return digits_; }
    const ExtRational& precision() const { return precision_; }
    int depth() const { return depth_; }
    bool is_zero() const { return digits_.empty(); }

    int max_den_exp() const {
        int e = 0;
        for (const auto& d : digits_) e = std::max(e, perfectoid::max_den_exp(d.key));
        return e;
    }

    /// Unit of the t-adically complete ring: the q = 0 part is one monomial
    /// c*T^m, invertible in the variables (m = 0 unless Laurent).
    bool is_unit() const {
        std::vector<const Digit*> head;
        for (const auto& d : digits_)
            if (d.key.q.is_zero()) head.push_back(&d);
        if (head.size() != 1) return false;
        const MExp& m = head.front()->key.m;
        for (int j = 0; j < sig_.d; ++j)
            if (!m[static_cast<std::size_t>(j)].is_zero() && !sig_.laurent[static_cast<std::size_t>(j)]) return false;
        return true;
    }

    TiltSeries truncated(const ExtRational& n) const {
        TiltSeries out = *this;
        out.precision_ = min(precision_, n);
        std::erase_if(out.digits_, [&](const Digit& d) { return !d.key.q.less_than(out.precision_); });
        return out;
    }

    TiltSeries with_depth(int depth) const {
        require(max_den_exp() <= depth, ErrorCode::DepthExceeded, "element finer than depth budget");
        TiltSeries out = *this;
        out.depth_ = depth;
        return out;
    }

    std::string str() const { return render_digits(digits_, 't'); }

    friend bool operator==(const TiltSeries& a, const TiltSeries& b) {
        return a.sig_ == b.sig_ && a.digits_ == b.digits_ && a.precision_ == b.precision_;
    }

    /// Equality of the images modulo t^{min precision}.
    friend bool equal_at_shared_precision(const TiltSeries& a, const TiltSeries& b) {
        ExtRational n = min(a.precision_, b.precision_);
        return a.truncated(n).digits_ == b.truncated(n).digits_;
    }

private:
    void check_key(const DigitKey& key) const {
        if (key.q.sign() < 0) fail(ErrorCode::DomainMismatch, "tilt exponents must be >= 0");
        if (static_cast<int>(key.m.size()) != sig_.d) fail(ErrorCode::DomainMismatch, "variable count mismatch");
        for (int j = 0; j < sig_.d; ++j)
            if (key.m[static_cast<std::size_t>(j)].sign() < 0 && !sig_.laurent[static_cast<std::size_t>(j)])
                fail(ErrorCode::DomainMismatch, "negative exponent on a non-Laurent variable");
        if (perfectoid::max_den_exp(key) > depth_)
            fail(ErrorCode::DepthExceeded, "exponent denominator exceeds depth budget " + std::to_string(depth_));
    }

    Signature sig_;
    std::vector<Digit> digits_;
    ExtRational precision_ = ExtRational::infinity();
    int depth_ = 8;
};

inline void require_compatible(const TiltSeries& a, const TiltSeries& b) {
    require(a.signature() == b.signature(), ErrorCode::DomainMismatch, "incompatible tilt signatures");
}

inline TiltSeries tilt_ring_arith(const TiltSeries& a, const TiltSeries& b, ArithOp op) {
    require_compatible(a, b);
    ExtRational prec = min(a.precision(), b.precision());
    int depth = std::max(a.depth(), b.depth());
    std::map<DigitKey, std::int64_t> acc;
    if (op == ArithOp::Add) {
        for (const auto& d : a.digits()) acc[d.key] += d.value;
        for (const auto& d : b.digits()) acc[d.key] += d.value;
    } else {
        const std::int64_t p = a.prime();
        for (const auto& x : a.digits()) {
            if (!x.key.q.less_than(prec)) break;
            for (const auto& y : b.digits()) {
                PExp q = x.key.q + y.key.q;
                if (!q.less_than(prec)) break;
                auto& slot = acc[DigitKey{q, add_m(x.key.m, y.key.m)}];
                slot = (slot + static_cast<std::int64_t>(x.value) * y.value) % p;
            }
        }
    }
    return TiltSeries::from_map(a.signature(), acc, prec, depth);
}

inline TiltSeries operator+(const TiltSeries& a, const TiltSeries& b) { return tilt_ring_arith(a, b, ArithOp::Add); }
inline TiltSeries operator*(const TiltSeries& a, const TiltSeries& b) { return tilt_ring_arith(a, b, ArithOp::Mul); }

inline TiltSeries scale(const TiltSeries& a, std::int64_t c) {
    std::map<DigitKey, std::int64_t> acc;
    for (const auto& d : a.digits()) acc[d.key] = static_cast<std::int64_t>(d.value) * c;
    return TiltSeries::from_map(a.signature(), acc, a.precision(), a.depth());
}

inline TiltSeries operator-(const TiltSeries& a) { return scale(a, -1); }
inline TiltSeries operator-(const TiltSeries& a, const TiltSeries& b) { return a + (-b); }

/// Frobenius x -> x^p multiplies every exponent by p; the inverse divides.
/// Digits are untouched because Frobenius fixes F_p.
inline TiltSeries tilt_frobenius(const TiltSeries& a, Direction dir) {
    std::map<DigitKey, std::int64_t> acc;
    for (const auto& d : a.digits()) {
        DigitKey k = d.key;
        if (dir == Direction::Forward) {
            k.q = k.q.times_p();
            for (auto& e : k.m) e = e.times_p();
        } else {
            k.q = k.q.div_p();
            for (auto& e : k.m) e = e.div_p();
            if (max_den_exp(k) > a.depth())
                fail(ErrorCode::DepthExceeded, "inverse Frobenius needs depth " + std::to_string(max_den_exp(k)) +
                                                   " > budget " + std::to_string(a.depth()));
        }
        acc[k] = d.value;
    }
    ExtRational prec = a.precision();
    if (!prec.is_inf()) {
        Rational n = prec.value();
        prec = dir == Direction::Forward ? ExtRational(Rational(n * a.prime())) : ExtRational(Rational(n / a.prime()));
    }
    return TiltSeries::from_map(a.signature(), acc, prec, a.depth());
}

inline TiltSeries frobenius_power(TiltSeries a, int n) {
    Direction dir = n >= 0 ? Direction::Forward : Direction::Inverse;
    for (int i = 0; i < std::abs(n); ++i) a = tilt_frobenius(a, dir);
    return a;
}

/// t-adic valuation normalized v(t) = 1. `exact` is empty when the element
/// is zero at finite precision; then only `at_least` is known.
struct TiltValuation {
    std::optional<ExtRational> exact;
    ExtRational at_least;

    bool indeterminate() const { return !exact.has_value(); }
    std::string str() const { return exact ? exact->str() : ">= " + at_least.str(); }
};

inline TiltValuation tilt_valuation(const TiltSeries& a) {
    if (a.is_zero()) {
        if (a.precision().is_inf()) return {ExtRational::infinity(), ExtRational::infinity()};
        return {std::nullopt, a.precision()};
    }
    ExtRational v(a.digits().front().key.q.to_rational());
    return {v, v};
}

/// The colimit perfection restricted to this family: these rings are
/// already perfect, so it is the identity.
inline TiltSeries perfection(const TiltSeries& a) { return a; }

inline TiltSeries pow(const TiltSeries& a, std::uint64_t n) {
    TiltSeries result = TiltSeries::constant(a.signature(), 1, a.precision(), a.depth());
    TiltSeries base = a;
    std::uint64_t p = a.prime();
    // Write n in base p: x^{c p^k} = (frob^k x)^c costs no multiplications for the p-power part.
    while (n > 0) {
        std::uint64_t c = n % p;
        for (std::uint64_t i = 0; i < c; ++i) result = result * base;
        n /= p;
        if (n > 0) base = tilt_frobenius(base, Direction::Forward);
    }
    return result;
}

}  // namespace perfectoid::charp
