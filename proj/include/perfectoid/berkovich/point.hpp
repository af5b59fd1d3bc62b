#pragma once

#include <string>
#include <vector>

#include "perfectoid/core/error.hpp"
#include "perfectoid/core/norm_value.hpp"
#include "perfectoid/field/kfield.hpp"

namespace perfectoid::berkovich {

using field::KElem;
using field::KPoly;

/// Product of disk points: in each variable the closed disk |T_j - c_j| <= p^{-s_j}.
/// s = inf gives the classical point T_j = c_j.
struct SeminormPoint {
    std::uint32_t p = 2;
    std::vector<KElem> centers;
    std::vector<ExtRational> radii;

    static SeminormPoint gauss(std::uint32_t p, int d) {
        return SeminormPoint{p, std::vector<KElem>(static_cast<std::size_t>(d), KElem(p)),
                             std::vector<ExtRational>(static_cast<std::size_t>(d), ExtRational(0))};
    }
    static SeminormPoint single(const KElem& c, ExtRational s) {
        return SeminormPoint{c.prime(), {c}, {std::move(s)}};
    }

    int vars() const { return static_cast<int>(centers.size()); }

    /// v(T_j(x)) = min(v(c_j), s_j).
    ExtRational coordinate_valuation(int j) const {
        return min(centers[static_cast<std::size_t>(j)].valuation(), radii[static_cast<std::size_t>(j)]);
    }

    std::string str() const {
        std::string out = "(";
        for (int j = 0; j < vars(); ++j) {
            if (j) out += "; ";
            out += std::string(1, kVariableNames[j]) + ": center " + centers[static_cast<std::size_t>(j)].str() + ", s " +
                   radii[static_cast<std::size_t>(j)].str();
        }
        return out + ")";
    }
};

namespace detail {

inline ExtRational monomial_valuation(const KElem& c, const MExp& m, const SeminormPoint& x) {
    ExtRational v = c.valuation();
    for (int j = 0; j < x.vars(); ++j) {
        const auto& e = m[static_cast<std::size_t>(j)];
        if (e.is_zero()) continue;
        ExtRational vj = x.coordinate_valuation(j);
        if (vj.is_inf() && e.sign() < 0) fail(ErrorCode::PoleAtPoint, "negative power of a coordinate vanishing at the point");
        v = v + (vj.is_inf() ? vj : ExtRational(Rational(vj.value() * e.to_rational())));
    }
    return v;
}

}  // namespace detail

/// v(f(x)); the norm value is p^{-v}. Negative exponents are cleared by a
/// monomial factor first, then the polynomial is re-centered exactly.
inline ExtRational eval_valuation(const KPoly& f, const SeminormPoint& x) {
    require(f.vars() == x.vars(), ErrorCode::DomainMismatch, "point and polynomial have different variable counts");
    if (f.is_zero()) return ExtRational::infinity();
    if (f.terms().size() == 1) return detail::monomial_valuation(f.terms().begin()->second, f.terms().begin()->first, x);
    const std::uint32_t p = f.prime();
    const int d = f.vars();
    MExp low(static_cast<std::size_t>(d), PExp::integer(p, 0));
    for (const auto& [m, c] : f.terms())
        for (int j = 0; j < d; ++j) low[static_cast<std::size_t>(j)] = std::min(low[static_cast<std::size_t>(j)], m[static_cast<std::size_t>(j)]);
    KPoly g(p, d);
    for (const auto& [m, c] : f.terms()) {
        MExp shifted = m;
        for (int j = 0; j < d; ++j) shifted[static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(j)] - low[static_cast<std::size_t>(j)];
        g.add_term(shifted, c);
    }
    ExtRational shift = ExtRational(0);
    if (!m_is_zero(low)) {
        MExp neg = low;
        shift = detail::monomial_valuation(KElem(p, 1), neg, x);
    }
    for (int j = 0; j < d; ++j) {
        if (x.centers[static_cast<std::size_t>(j)].is_zero()) continue;
        for (const auto& [m, c] : g.terms())
            require(m[static_cast<std::size_t>(j)].is_integer(), ErrorCode::DomainMismatch,
                    "fractional exponents are evaluated only at points centered at 0");
    }
    KPoly h = field::taylor_shift(g, x.centers);
    ExtRational v = ExtRational::infinity();
    for (const auto& [m, c] : h.terms()) {
        ExtRational t = c.valuation();
        for (int j = 0; j < d; ++j) {
            const auto& e = m[static_cast<std::size_t>(j)];
            if (e.is_zero()) continue;
            const auto& s = x.radii[static_cast<std::size_t>(j)];
            t = t + (s.is_inf() ? s : ExtRational(Rational(s.value() * e.to_rational())));
        }
        v = min(v, t);
    }
    return v + shift;
}

inline NormValue eval_point(const KPoly& f, const SeminormPoint& x) {
    return NormValue::from_valuation(f.prime(), eval_valuation(f, x));
}

/// Deterministic points of the closed unit disk: centers 0 and p^{k/p^M}
/// (Teichmuller monomials) for k/p^M <= 2, log-radii on the grid (1/p^M)Z
/// up to 3, plus s = inf, plus the Gauss point.
inline std::vector<SeminormPoint> standard_grid(std::uint32_t p, int depth = 1, bool include_type1 = true) {
    std::vector<SeminormPoint> out{SeminormPoint::gauss(p, 1)};
    const std::int64_t step = checked_pow(p, depth);
    std::vector<KElem> centers{KElem(p)};
    for (std::int64_t k = 0; k <= 2 * step; ++k) centers.push_back(KElem::monomial(p, 1, PExp(p, k, depth)));
    std::vector<ExtRational> radii;
    for (std::int64_t k = 0; k <= 3 * step; ++k) radii.push_back(ExtRational(PExp(p, k, depth).to_rational()));
    if (include_type1) radii.push_back(ExtRational::infinity());
    for (const auto& c : centers)
        for (const auto& s : radii) {
            if (c.is_zero() && s == ExtRational(0)) continue;
            out.push_back(SeminormPoint::single(c, s));
        }
    return out;
}

}  // namespace perfectoid::berkovich
