#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "perfectoid/char0/cone.hpp"
#include "perfectoid/core/digits.hpp"
#include "perfectoid/core/error.hpp"
#include "perfectoid/core/pexp.hpp"
#include "perfectoid/core/rational.hpp"

namespace perfectoid::char0 {

enum class ArithOp { Add, Mul };

/// Element of a cone algebra over Z_p[p^{1/p^inf}]: a finite sum of digits
/// c * p^q * T^m with c in 1..p-1, known modulo the lattice ideal of
/// weight >= N_v.
///
/// Base-p carries go from (q, m) to (q + 1, m), which is valid because p is
/// the monomial p^1 in this model. Truncation uses the lattice weight
/// q + g(m); for cones with g = 0 this is the plain q < N_v cut.
class UntiltSeries {
public:
    UntiltSeries() = default;

    static UntiltSeries zero(const Cone& cone, ExtRational precision = ExtRational::infinity(), int depth = 8) {
        UntiltSeries x;
        x.cone_ = cone;
        x.sig_ = cone.signature();
        x.precision_ = std::move(precision);
        x.depth_ = depth;
        return x;
    }

    static UntiltSeries constant(const Cone& cone, std::int64_t c, ExtRational precision = ExtRational::infinity(),
                                 int depth = 8) {
        return monomial(cone, c, PExp::integer(cone.prime(), 0), cone.signature().zero_m(), std::move(precision), depth);
    }

    static UntiltSeries monomial(const Cone& cone, std::int64_t c, const PExp& q, const MExp& m,
                                 ExtRational precision = ExtRational::infinity(), int depth = 8) {
        std::map<DigitKey, std::int64_t> acc;
        acc[DigitKey{q, m}] = c;
        return from_map(cone, std::move(acc), std::move(precision), depth);
    }

    /// Carry-normalizes raw integer coefficients. Negative values produce
    /// chains of (p-1) digits that end at the precision cut.
    static UntiltSeries from_map(const Cone& cone, std::map<DigitKey, std::int64_t> acc, ExtRational precision,
                                 int depth) {
        UntiltSeries x = zero(cone, std::move(precision), depth);
        const std::int64_t p = cone.prime();
        std::map<MExp, Rational> support_cache;
        for (auto it = acc.begin(); it != acc.end(); it = acc.erase(it)) {
            const DigitKey& key = it->first;
            std::int64_t v = it->second;
            if (v == 0) continue;
            x.check_key(key);
            if (!x.below_precision(key, support_cache)) continue;
            std::int64_t r = v % p;
            if (r < 0) r += p;
            std::int64_t carry = (v - r) / p;
            if (r) x.digits_.push_back(Digit{key, static_cast<std::uint32_t>(r)});
            if (carry) {
                DigitKey next{key.q + PExp::integer(cone.prime(), 1), key.m};
                if (carry < 0 && x.precision_.is_inf())
                    fail(ErrorCode::PrecisionIndeterminate, "negative value needs a finite precision");
                acc[next] += carry;
            }
        }
        return x;
    }

    const Cone& cone() const { return cone_; }
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

    UntiltSeries truncated(const ExtRational& n) const {
        UntiltSeries out = *this;
        out.precision_ = min(precision_, n);
        std::map<MExp, Rational> cache;
        std::erase_if(out.digits_, [&](const Digit& d) { return !out.below_precision(d.key, cache); });
        return out;
    }

    UntiltSeries with_depth(int depth) const {
        require(max_den_exp() <= depth, ErrorCode::DepthExceeded, "element finer than depth budget");
        UntiltSeries out = *this;
        out.depth_ = depth;
        return out;
    }

    /// Same digits viewed in a larger cone (a region contained in this one's).
    UntiltSeries in_cone(const Cone& bigger) const {
        std::map<DigitKey, std::int64_t> acc;
        for (const auto& d : digits_) acc[d.key] = d.value;
        return from_map(bigger, std::move(acc), precision_, depth_);
    }

    std::string str() const { return render_digits(digits_, 'p'); }

    friend bool operator==(const UntiltSeries& a, const UntiltSeries& b) {
        return a.cone_ == b.cone_ && a.digits_ == b.digits_ && a.precision_ == b.precision_;
    }

    friend bool equal_at_shared_precision(const UntiltSeries& a, const UntiltSeries& b) {
        ExtRational n = min(a.precision_, b.precision_);
        return a.truncated(n).digits_ == b.truncated(n).digits_;
    }

private:
    bool below_precision(const DigitKey& key, std::map<MExp, Rational>& cache) const {
        if (precision_.is_inf()) return true;
        if (cone_.trivial_support()) return key.q.less_than(precision_);
        auto it = cache.find(key.m);
        if (it == cache.end()) it = cache.emplace(key.m, cone_.support(key.m)).first;
        return key.q.to_rational() + it->second < precision_.value();
    }

    void check_key(const DigitKey& key) const {
        if (static_cast<int>(key.m.size()) != sig_.d) fail(ErrorCode::DomainMismatch, "variable count mismatch");
        if (!cone_.contains(key.q, key.m))
            fail(ErrorCode::DomainMismatch, "digit " + render_monomial(1, key.q, key.m, 'p') + " outside the cone");
        if (perfectoid::max_den_exp(key) > depth_)
            fail(ErrorCode::DepthExceeded, "exponent denominator exceeds depth budget " + std::to_string(depth_));
    }

    Cone cone_;
    Signature sig_;
    std::vector<Digit> digits_;
    ExtRational precision_ = ExtRational::infinity();
    int depth_ = 8;
};

inline UntiltSeries untilt_ring_arith(const UntiltSeries& a, const UntiltSeries& b, ArithOp op) {
    require(a.prime() == b.prime() && a.signature().d == b.signature().d, ErrorCode::DomainMismatch,
            "incompatible untilt signatures");
    Cone cone = a.cone() == b.cone() ? a.cone() : meet_regions(a.cone(), b.cone());
    ExtRational prec = min(a.precision(), b.precision());
    int depth = std::max(a.depth(), b.depth());
    std::map<DigitKey, std::int64_t> acc;
    if (op == ArithOp::Add) {
        for (const auto& d : a.digits()) acc[d.key] += d.value;
        for (const auto& d : b.digits()) acc[d.key] += d.value;
    } else {
        const bool plain = cone.trivial_support();
        for (const auto& x : a.digits()) {
            if (plain && !x.key.q.less_than(prec)) break;
            for (const auto& y : b.digits()) {
                PExp q = x.key.q + y.key.q;
                if (plain && !q.less_than(prec)) break;
                acc[DigitKey{q, add_m(x.key.m, y.key.m)}] += static_cast<std::int64_t>(x.value) * y.value;
            }
        }
    }
    return UntiltSeries::from_map(cone, std::move(acc), prec, depth);
}

inline UntiltSeries operator+(const UntiltSeries& a, const UntiltSeries& b) {
    return untilt_ring_arith(a, b, ArithOp::Add);
}
inline UntiltSeries operator*(const UntiltSeries& a, const UntiltSeries& b) {
    return untilt_ring_arith(a, b, ArithOp::Mul);
}

inline UntiltSeries scale(const UntiltSeries& a, std::int64_t c) {
    std::map<DigitKey, std::int64_t> acc;
    for (const auto& d : a.digits()) acc[d.key] = static_cast<std::int64_t>(d.value) * c;
    return UntiltSeries::from_map(a.cone(), std::move(acc), a.precision(), a.depth());
}

inline UntiltSeries operator-(const UntiltSeries& a) { return scale(a, -1); }
inline UntiltSeries operator-(const UntiltSeries& a, const UntiltSeries& b) {
    std::map<DigitKey, std::int64_t> acc;
    for (const auto& d : a.digits()) acc[d.key] += d.value;
    for (const auto& d : b.digits()) acc[d.key] -= d.value;
    Cone cone = a.cone() == b.cone() ? a.cone() : meet_regions(a.cone(), b.cone());
    return UntiltSeries::from_map(cone, std::move(acc), min(a.precision(), b.precision()), std::max(a.depth(), b.depth()));
}

inline UntiltSeries pow(const UntiltSeries& a, std::uint64_t n) {
    UntiltSeries result = UntiltSeries::constant(a.cone(), 1, a.precision(), a.depth());
    UntiltSeries base = a;
    while (n) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

/// v = min over digits of q + g(m); infinity for zero.
inline ExtRational lattice_norm(const UntiltSeries& x) {
    ExtRational v = ExtRational::infinity();
    for (const auto& d : x.digits()) v = min(v, ExtRational(x.cone().weight(d.key.q, d.key.m)));
    return v;
}

}  // namespace perfectoid::char0
