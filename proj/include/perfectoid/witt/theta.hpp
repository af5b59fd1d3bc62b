#pragma once

#include <map>

#include "perfectoid/char0/bridge.hpp"
#include "perfectoid/char0/untilt_series.hpp"
#include "perfectoid/witt/witt_vector.hpp"

namespace perfectoid::witt {

/// theta(sum [a_i] p^i) = sum a_i^sharp p^i, computed modulo p^N.
inline char0::UntiltSeries theta(const WittRing<TiltRing>& w, const WittVec<TiltRing>& x, const Rational& n_target) {
    const auto& sig = w.base().signature();
    char0::Cone cone = char0::standard_cone(sig);
    auto digits = w.teich_expansion(x);
    auto acc = char0::UntiltSeries::zero(cone, ExtRational(n_target), w.base().depth());
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (Rational(static_cast<long>(i)) >= n_target) break;
        if (digits[i].is_zero()) continue;
        // p^i * y only needs y modulo p^{N-i}.
        Rational shift(static_cast<long>(i));
        auto y = char0::sharp(digits[i], n_target - shift);
        std::map<DigitKey, std::int64_t> shifted;
        for (const auto& d : y.digits())
            shifted[DigitKey{d.key.q + PExp::integer(sig.p, static_cast<std::int64_t>(i)), d.key.m}] = d.value;
        acc = acc + char0::UntiltSeries::from_map(cone, std::move(shifted), ExtRational(n_target), w.base().depth());
    }
    return acc;
}

}  // namespace perfectoid::witt
