#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perfectoid/berkovich/point.hpp"
#include "perfectoid/char0/bridge.hpp"
#include "perfectoid/charp/tilt_series.hpp"

namespace perfectoid::berkovich {

/// Disk point over the tilt: centers t^{a_j} (or 0), log-radii s_j.
struct TiltPoint {
    std::uint32_t p = 2;
    std::vector<std::optional<PExp>> centers;
    std::vector<ExtRational> radii;

    int vars() const { return static_cast<int>(centers.size()); }

    ExtRational coordinate_valuation(int j) const {
        const auto& c = centers[static_cast<std::size_t>(j)];
        ExtRational vc = c ? ExtRational(c->to_rational()) : ExtRational::infinity();
        return min(vc, radii[static_cast<std::size_t>(j)]);
    }
};

/// x^flat: a center p^a (a Teichmuller monomial) becomes t^a; radii are kept.
inline TiltPoint tilt_point(const SeminormPoint& x) {
    TiltPoint out{x.p, {}, x.radii};
    for (const auto& c : x.centers) {
        if (c.is_zero()) {
            out.centers.push_back(std::nullopt);
            continue;
        }
        // Stored as u p^q with q in [0, 1); Teichmuller means u is a power of p.
        bool teich = c.terms().size() == 1;
        PExp a;
        if (teich) {
            const auto& [q, u] = *c.terms().begin();
            const long k = vp(u, x.p);
            teich = k >= 0 && u == Rational(ipow(Integer(x.p), static_cast<unsigned long>(k)));
            a = q + PExp::integer(x.p, k);
        }
        require(teich, ErrorCode::DomainMismatch, "center " + c.str() + " is not a Teichmuller monomial");
        out.centers.push_back(a);
    }
    return out;
}

/// Characteristic-p evaluation: re-center with binomials mod p, then take the
/// minimum of t-valuation plus radius weight over the shifted terms.
inline ExtRational tilt_eval_valuation(const charp::TiltSeries& f, const TiltPoint& x) {
    const std::uint32_t p = f.prime();
    const int d = x.vars();
    require(f.signature().d == d, ErrorCode::DomainMismatch, "point and series have different variable counts");
    if (f.is_zero()) return ExtRational::infinity();
    if (f.digits().size() == 1) {
        const auto& k = f.digits().front().key;
        ExtRational v(k.q.to_rational());
        for (int j = 0; j < d; ++j) {
            const auto& e = k.m[static_cast<std::size_t>(j)];
            if (e.is_zero()) continue;
            ExtRational vj = x.coordinate_valuation(j);
            if (vj.is_inf() && e.sign() < 0) fail(ErrorCode::PoleAtPoint, "negative power of a vanishing coordinate");
            v = v + (vj.is_inf() ? vj : ExtRational(Rational(vj.value() * e.to_rational())));
        }
        return v;
    }
    MExp low = f.signature().zero_m();
    for (const auto& dg : f.digits())
        for (int j = 0; j < d; ++j) low[static_cast<std::size_t>(j)] = std::min(low[static_cast<std::size_t>(j)], dg.key.m[static_cast<std::size_t>(j)]);
    ExtRational shift(0);
    for (int j = 0; j < d; ++j) {
        const auto& e = low[static_cast<std::size_t>(j)];
        if (e.is_zero()) continue;
        ExtRational vj = x.coordinate_valuation(j);
        if (vj.is_inf()) fail(ErrorCode::PoleAtPoint, "negative power of a vanishing coordinate");
        shift = shift + ExtRational(Rational(vj.value() * e.to_rational()));
    }
    std::map<MExp, std::map<PExp, std::int64_t>> acc;
    for (const auto& dg : f.digits()) {
        std::vector<std::pair<DigitKey, std::int64_t>> terms{{DigitKey{dg.key.q, f.signature().zero_m()}, dg.value}};
        for (int j = 0; j < d; ++j) {
            const std::size_t jj = static_cast<std::size_t>(j);
            PExp e = dg.key.m[jj] - low[jj];
            std::vector<std::pair<DigitKey, std::int64_t>> next;
            if (!x.centers[jj]) {
                for (auto t : terms) {
                    t.first.m[jj] = e;
                    next.push_back(t);
                }
            } else {
                require(e.is_integer(), ErrorCode::DomainMismatch, "fractional exponents are evaluated only at points centered at 0");
                const std::int64_t n = e.num();
                Integer b = 1;
                for (std::int64_t i = 0; i <= n; ++i) {
                    std::int64_t bm = mod_p(Integer(b % p).get_si(), p);
                    if (bm)
                        for (auto t : terms) {
                            t.first.m[jj] = PExp::integer(p, i);
                            t.first.q = t.first.q + x.centers[jj]->times_int(n - i);
                            t.second = t.second * bm % static_cast<std::int64_t>(p);
                            next.push_back(t);
                        }
                    b = b * (n - i) / (i + 1);
                }
            }
            terms = std::move(next);
        }
        for (const auto& [k, c] : terms) acc[k.m][k.q] += c;
    }
    ExtRational v = ExtRational::infinity();
    for (const auto& [m, coeff] : acc) {
        ExtRational vc = ExtRational::infinity();
        for (const auto& [q, c] : coeff)
            if (mod_p(c, p) != 0) {
                vc = ExtRational(q.to_rational());
                break;
            }
        if (vc.is_inf()) continue;
        for (int j = 0; j < d; ++j) {
            const auto& e = m[static_cast<std::size_t>(j)];
            if (e.is_zero()) continue;
            const auto& s = x.radii[static_cast<std::size_t>(j)];
            vc = vc + (s.is_inf() ? s : ExtRational(Rational(s.value() * e.to_rational())));
        }
        v = min(v, vc);
    }
    return v + shift;
}

struct SharpCompat {
    ExtRational tilt_side;   // v(f(x^flat))
    ExtRational untilt_side; // v(f^sharp(x))
    bool equal = false;
    bool exact = true;       // false when f^sharp was only known modulo p^N
};

/// |f(x^flat)| against |f^sharp(x)|. Monomials sharpen by relabeling, so the
/// comparison is exact; otherwise f^sharp is taken modulo p^N and values at
/// or beyond N are identified.
inline SharpCompat sharp_compat(const charp::TiltSeries& f, const SeminormPoint& x, const Rational& n_target = 3) {
    SharpCompat out;
    out.tilt_side = tilt_eval_valuation(f, tilt_point(x));
    KPoly fs;
    if (f.digits().size() <= 1) {
        fs = KPoly(f.prime(), f.signature().d);
        for (const auto& dg : f.digits()) fs.add_term(dg.key.m, KElem::monomial(f.prime(), dg.value, dg.key.q));
        out.untilt_side = eval_valuation(fs, x);
        out.equal = out.tilt_side == out.untilt_side;
        return out;
    }
    out.exact = false;
    fs = KPoly::from_untilt(char0::sharp(f, n_target));
    out.untilt_side = eval_valuation(fs, x);
    ExtRational cap(n_target);
    out.equal = min(out.tilt_side, cap) == min(out.untilt_side, cap);
    return out;
}

}  // namespace perfectoid::berkovich
