#pragma once

#include <map>

#include "perfectoid/berkovich/domain.hpp"
#include "perfectoid/char0/untilt_series.hpp"
#include "perfectoid/charp/tilt_series.hpp"
#include "perfectoid/core/random.hpp"

namespace perfectoid::verify {

/// Exponent a / p^r with 0 <= a < bound * p^r and r <= depth.
inline PExp random_exponent(Rng& rng, std::uint32_t p, int depth, std::int64_t bound, bool allow_negative = false) {
    int r = static_cast<int>(rng.uniform(0, depth));
    std::int64_t scale = checked_pow(p, r);
    std::int64_t lo = allow_negative ? -bound * scale + 1 : 0;
    return PExp(p, rng.uniform(lo, bound * scale - 1), r);
}

inline charp::TiltSeries random_tilt(Rng& rng, const Signature& sig, int terms, int depth, ExtRational precision,
                                     std::int64_t q_bound = 2, std::int64_t m_bound = 2) {
    std::map<DigitKey, std::int64_t> acc;
    for (int i = 0; i < terms; ++i) {
        MExp m;
        for (int j = 0; j < sig.d; ++j)
            m.push_back(random_exponent(rng, sig.p, depth, m_bound, sig.laurent[static_cast<std::size_t>(j)]));
        acc[DigitKey{random_exponent(rng, sig.p, depth, q_bound), m}] += rng.uniform(1, sig.p - 1);
    }
    return charp::TiltSeries::from_map(sig, acc, std::move(precision), depth);
}

/// Random element of a unit-disk or unit-circle cone with q >= 0.
inline char0::UntiltSeries random_untilt(Rng& rng, const char0::Cone& cone, int terms, int depth, ExtRational precision,
                                         std::int64_t q_bound = 3, std::int64_t m_bound = 2) {
    std::map<DigitKey, std::int64_t> acc;
    const auto sig = cone.signature();
    for (int i = 0; i < terms; ++i) {
        MExp m;
        for (int j = 0; j < sig.d; ++j) {
            PExp e = cone.integral() ? PExp::integer(sig.p, rng.uniform(0, m_bound))
                                     : random_exponent(rng, sig.p, depth, m_bound, sig.laurent[static_cast<std::size_t>(j)]);
            m.push_back(e);
        }
        PExp q = random_exponent(rng, sig.p, depth, q_bound);
        // Push q up so the digit lands inside the cone.
        Rational need = -cone.support(m);
        if (q.to_rational() < need) q = q + PExp::from_rational(sig.p, Rational(ceil_of(need)));
        acc[DigitKey{q, m}] += rng.uniform(1, sig.p - 1);
    }
    return char0::UntiltSeries::from_map(cone, std::move(acc), std::move(precision), depth);
}

/// c p^q with c a small nonzero integer and q on the grid 1/p^depth in [0, 2).
inline field::KElem random_scalar(Rng& rng, std::uint32_t p, int depth) {
    std::int64_t c = rng.uniform(1, 2 * p);
    if (rng.coin()) c = -c;
    return field::KElem::monomial(p, Rational(static_cast<long>(c)), random_exponent(rng, p, depth, 2));
}

/// One-variable polynomial with integer exponents in [0, deg].
inline field::KPoly random_kpoly(Rng& rng, std::uint32_t p, int terms, int deg, int depth = 1) {
    field::KPoly f(p, 1);
    while (f.is_zero())
        for (int i = 0; i < terms; ++i)
            f.add_term(MExp{PExp::integer(p, rng.uniform(0, deg))}, random_scalar(rng, p, depth));
    return f;
}

/// Monomial c p^q T^m with m on the grid, possibly fractional.
inline field::KPoly random_kmonomial(Rng& rng, std::uint32_t p, int depth, bool fractional) {
    PExp m = fractional ? random_exponent(rng, p, depth, 3) : PExp::integer(p, rng.uniform(0, 3));
    return field::KPoly::monomial(p, random_scalar(rng, p, depth), MExp{m});
}

/// Rational domain with one or two numerators; a nonzero constant among the
/// generators witnesses the unit ideal.
inline berkovich::RationalDomainSpec random_domain(Rng& rng, std::uint32_t p) {
    berkovich::RationalDomainSpec V;
    const int n = static_cast<int>(rng.uniform(1, 2));
    for (int i = 0; i < n; ++i) V.numerators.push_back(random_kpoly(rng, p, static_cast<int>(rng.uniform(1, 2)), 2));
    V.denominator = random_kpoly(rng, p, static_cast<int>(rng.uniform(1, 2)), 2);
    auto c = field::KPoly::constant(p, 1, random_scalar(rng, p, 1));
    if (rng.coin()) V.denominator = c;
    else V.numerators.push_back(c);
    return V;
}

}  // namespace perfectoid::verify
