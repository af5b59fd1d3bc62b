#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "perfectoid/char0/cone.hpp"
#include "perfectoid/char0/untilt_series.hpp"
#include "perfectoid/charp/tilt_series.hpp"
#include "perfectoid/core/error.hpp"

namespace perfectoid::char0 {

/// Unit disk in the non-Laurent variables, unit circle in the Laurent ones.
inline Cone standard_cone(const Signature& sig) {
    std::vector<RadiusInterval> vars;
    for (int j = 0; j < sig.d; ++j)
        vars.push_back(sig.laurent[static_cast<std::size_t>(j)] ? RadiusInterval{0, ExtRational(0)} : RadiusInterval{});
    return Cone(sig.p, vars);
}

/// Digit-wise relabel t -> p. On a single monomial this is the sharp map;
/// in general it is a lift of the reduction mod p.
inline UntiltSeries relabel_to_untilt(const charp::TiltSeries& x, const Cone& cone, ExtRational precision, int depth) {
    std::map<DigitKey, std::int64_t> acc;
    for (const auto& d : x.digits()) acc[d.key] = d.value;
    return UntiltSeries::from_map(cone, std::move(acc), std::move(precision), depth);
}

inline charp::TiltSeries relabel_to_tilt(const UntiltSeries& x, ExtRational precision, int depth) {
    std::map<DigitKey, std::int64_t> acc;
    for (const auto& d : x.digits()) acc[d.key] = d.value;
    return charp::TiltSeries::from_map(x.signature(), acc, std::move(precision), depth);
}

inline int ceil_int(const Rational& r) { return static_cast<int>(ceil_of(r).get_si()); }

/// x^sharp modulo p^N: relabel frob^{-n}(x) and raise to the p^n-th power,
/// n = ceil(N). Lifts that agree mod p have p^n-th powers agreeing mod
/// p^{n+1}, which covers p^N.
inline UntiltSeries sharp(const charp::TiltSeries& x, const Rational& n_target) {
    require(n_target > 0, ErrorCode::Usage, "sharp needs a positive target precision");
    const int n = ceil_int(n_target);
    const std::uint32_t p = x.prime();
    if (x.max_den_exp() + n > x.depth())
        fail(ErrorCode::DepthExceeded, "sharp to precision " + to_string(n_target) + " needs depth " +
                                           std::to_string(x.max_den_exp() + n) + " > budget " + std::to_string(x.depth()));
    if (!x.precision().is_inf()) {
        // frob^{-n} divides the t-precision by p^n; the relabel must still be right mod p.
        Rational scaled = x.precision().value() / Rational(ipow(Integer(p), static_cast<unsigned long>(n)));
        if (scaled < 1)
            fail(ErrorCode::PrecisionIndeterminate, "tilt precision " + x.precision().str() + " too small for " +
                                                        std::to_string(n) + " root extractions");
    }
    charp::TiltSeries y = charp::frobenius_power(x, -n);
    UntiltSeries z = relabel_to_untilt(y, standard_cone(x.signature()), ExtRational(n_target), x.depth());
    for (int i = 0; i < n; ++i) z = pow(z, p);
    return z;
}

struct SharpLimitStage {
    int stage = 0;
    UntiltSeries value;
    ExtRational valuation;  // lattice valuation, infinity if zero at precision
};

struct SharpLimitCertificate {
    UntiltSeries target;  // (a + b)^sharp
    std::vector<SharpLimitStage> stages;
    int stabilization_stage = 0;
    ExtRational v_a, v_b, v_sum;
    bool ultrametric = false;
};

/// Stage n: (sharp(a^{1/p^n}) + sharp(b^{1/p^n}))^{p^n}, which agrees with
/// (a + b)^sharp modulo p^{n+1}.
inline SharpLimitCertificate sharp_limit_check(const charp::TiltSeries& a, const charp::TiltSeries& b,
                                               const Rational& n_target) {
    const std::uint32_t p = a.prime();
    const int guaranteed = std::max(0, ceil_int(n_target) - 1);
    SharpLimitCertificate cert;
    cert.target = sharp(a + b, n_target);
    for (int n = 0; n <= guaranteed + 1; ++n) {
        UntiltSeries an = sharp(charp::frobenius_power(a, -n), n_target);
        UntiltSeries bn = sharp(charp::frobenius_power(b, -n), n_target);
        UntiltSeries s = an + bn;
        for (int i = 0; i < n; ++i) s = pow(s, p);
        cert.stages.push_back(SharpLimitStage{n, s, lattice_norm(s)});
    }
    const auto& last = cert.stages.back().value;
    const auto& prev = cert.stages[cert.stages.size() - 2].value;
    if (!(last.digits() == prev.digits()) || !(last.digits() == cert.target.digits()))
        fail(ErrorCode::NoStabilization, "limit stages " + std::to_string(guaranteed) + " and " +
                                             std::to_string(guaranteed + 1) + " disagree at precision");
    int first = static_cast<int>(cert.stages.size()) - 1;
    while (first > 0 && cert.stages[static_cast<std::size_t>(first - 1)].value.digits() == cert.target.digits()) --first;
    cert.stabilization_stage = first;
    cert.v_a = lattice_norm(sharp(a, n_target));
    cert.v_b = lattice_norm(sharp(b, n_target));
    cert.v_sum = lattice_norm(cert.target);
    // At finite precision a vanishing value only means v >= N.
    ExtRational cap(n_target);
    cert.ultrametric = min(cert.v_sum, cap) >= min(min(cert.v_a, cert.v_b), cap);
    return cert;
}

/// R/p -> R^flat/t: keep digits with q < 1 and relabel p -> t. Defined on
/// cones whose support function vanishes (unit disks and unit circles),
/// where p R is exactly the set of digits with q >= 1.
inline charp::TiltSeries bridge_reduce(const UntiltSeries& x) {
    require(x.cone().trivial_support(), ErrorCode::DomainMismatch, "reduction mod p needs a unit disk or circle cone");
    for (const auto& d : x.digits())
        require(d.key.q.sign() >= 0, ErrorCode::DomainMismatch, "negative p-exponent");
    return relabel_to_tilt(x.truncated(ExtRational(1)), min(x.precision(), ExtRational(1)), x.depth());
}

/// Inverse direction: a tilt element modulo t becomes a class modulo p.
inline UntiltSeries bridge_lift(const charp::TiltSeries& x) {
    ExtRational prec = min(x.precision(), ExtRational(1));
    return relabel_to_untilt(x.truncated(prec), standard_cone(x.signature()), prec, x.depth());
}

/// Relabels (q, m) -> (q/p, m/p) on the digits with q < 1. The result y
/// satisfies y^p = x mod p and is unique mod p^{1/p}.
inline UntiltSeries pth_root_mod_p(const UntiltSeries& x) {
    require(x.cone().trivial_support(), ErrorCode::DomainMismatch, "p-th root mod p needs a unit disk or circle cone");
    std::map<DigitKey, std::int64_t> acc;
    for (const auto& d : x.digits()) {
        if (!d.key.q.less_than(ExtRational(1))) continue;
        DigitKey k{d.key.q.div_p(), d.key.m};
        for (auto& e : k.m) e = e.div_p();
        if (max_den_exp(k) > x.depth())
            fail(ErrorCode::DepthExceeded, "p-th root needs depth " + std::to_string(max_den_exp(k)));
        acc[k] = d.value;
    }
    return UntiltSeries::from_map(x.cone(), std::move(acc), x.precision(), x.depth());
}

}  // namespace perfectoid::char0
