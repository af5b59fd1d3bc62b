#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perfectoid/berkovich/domain.hpp"
#include "perfectoid/char0/bridge.hpp"

namespace perfectoid::berkovich {

enum class RootKind { Monomial, SharpImage };

/// An element together with the reason it has compatible p-power roots.
struct RootCertified {
    KPoly value;
    RootKind kind = RootKind::Monomial;
    std::optional<charp::TiltSeries> flat;  // for SharpImage: value = flat^sharp

    /// +-p^q T^m with the obvious roots (the sign only for odd p).
    static RootCertified monomial(const KPoly& f) {
        if (!f.is_zero() && !detail::has_chosen_roots(f))
            fail(ErrorCode::NoRootCertificate, f.str() + " is not a monomial with chosen p-power roots");
        return RootCertified{f, RootKind::Monomial, std::nullopt};
    }
};

struct ApproxPoint {
    SeminormPoint point;
    ExtRational lhs;    // v((f - g)(x))
    ExtRational bound;  // (1 - eps) v(w) + min(v(f(x)), c v(w))
    ExtRational margin; // lhs - bound; inf when f = g at x
    bool pass = false;
};

struct ApproxReport {
    std::vector<ApproxPoint> points;
    bool pass = true;
    ExtRational worst = ExtRational::infinity();
};

/// Checks |(f - g)(x)| <= |w|^{1-eps} max(|f(x)|, |w|^c) pointwise, with
/// v(w) = v_omega.
inline ApproxReport approx_verify(const KPoly& f, const RootCertified& g, const Rational& c, const Rational& eps,
                                  const std::vector<SeminormPoint>& points, const Rational& v_omega) {
    require(c > 0 && eps > 0, ErrorCode::Usage, "c and eps must be positive");
    ApproxReport rep;
    KPoly diff = f - g.value;
    for (const auto& x : points) {
        ApproxPoint ap;
        ap.point = x;
        ap.lhs = eval_valuation(diff, x);
        ap.bound = ExtRational(Rational((1 - eps) * v_omega)) + min(eval_valuation(f, x), ExtRational(Rational(c * v_omega)));
        ap.margin = ap.lhs.is_inf() ? ap.lhs : ExtRational(Rational(ap.lhs.value() - ap.bound.value()));
        ap.pass = ap.margin >= ExtRational(0);
        rep.pass = rep.pass && ap.pass;
        rep.worst = min(rep.worst, ap.margin);
        rep.points.push_back(ap);
    }
    return rep;
}

/// Flat of the digits of f with p-exponent at most c * v_omega, sharpened
/// back. Root-certified by construction; whether it approximates f is for
/// approx_verify to decide.
inline RootCertified candidate_sharp_lift(const char0::UntiltSeries& f, const Rational& c, const Rational& v_omega) {
    std::map<DigitKey, std::int64_t> kept;
    const Rational level = c * v_omega;
    for (const auto& d : f.digits())
        if (d.key.q.compare(level) <= 0) kept[d.key] = d.value;
    auto flat = charp::TiltSeries::from_map(f.signature(), kept, ExtRational::infinity(), f.depth());
    RootCertified out;
    out.kind = RootKind::SharpImage;
    out.flat = flat;
    if (flat.digits().size() <= 1) {
        out.value = KPoly(f.prime(), f.signature().d);
        for (const auto& d : flat.digits()) out.value.add_term(d.key.m, field::KElem::monomial(f.prime(), d.value, d.key.q));
        return out;
    }
    Rational n = level + 1;
    const int need = flat.max_den_exp() + char0::ceil_int(n);
    out.value = field::KPoly::from_untilt(char0::sharp(flat.with_depth(std::max(need, flat.depth())), n));
    return out;
}

}  // namespace perfectoid::berkovich
