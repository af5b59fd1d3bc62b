#pragma once

#include <optional>
#include <string>
#include <vector>

#include "perfectoid/berkovich/point.hpp"
#include "perfectoid/char0/cone.hpp"
#include "perfectoid/char0/untilt_series.hpp"
#include "perfectoid/core/norm_value.hpp"
#include "perfectoid/field/kfield.hpp"

namespace perfectoid::banach {

using field::KElem;
using field::KPoly;

enum class NormKind { Gauss, Weighted, Lattice };

/// Gauss: sup over the cone's region. Weighted: |sum a_i T^i| = max |a_i|(i+1)
/// on one-variable polynomials. Lattice: the gauge of the cone's unit ball,
/// which on cone algebras coincides with the Gauss norm of the same region.
struct NormSpec {
    NormKind kind = NormKind::Gauss;
    char0::Cone cone;

    static NormSpec gauss(const char0::Cone& c) { return NormSpec{NormKind::Gauss, c}; }
    static NormSpec lattice(const char0::Cone& c) { return NormSpec{NormKind::Lattice, c}; }
    static NormSpec weighted(std::uint32_t p) { return NormSpec{NormKind::Weighted, char0::Cone::disk(p, 1, true)}; }

    std::uint32_t prime() const { return cone.prime(); }
    bool power_multiplicative() const { return kind != NormKind::Weighted; }

    std::string str() const {
        switch (kind) {
            case NormKind::Gauss: return "gauss " + cone.str();
            case NormKind::Lattice: return "lattice " + cone.str();
            case NormKind::Weighted: return "weighted (i+1)";
        }
        return "";
    }
};

inline NormValue norm_eval(const KPoly& f, const NormSpec& n) {
    const std::uint32_t p = n.prime();
    NormValue best = NormValue::make_zero(p);
    if (n.kind == NormKind::Weighted) {
        require(f.vars() == 1, ErrorCode::DomainMismatch, "the weighted norm is defined on one-variable series");
        for (const auto& [m, c] : f.terms()) {
            require(m[0].is_integer() && m[0].sign() >= 0, ErrorCode::DomainMismatch,
                    "the weighted norm needs non-negative integer exponents");
            best = max(best, NormValue::make(p, c.valuation().value(), Rational(m[0].num() + 1)));
        }
        return best;
    }
    require(f.vars() == n.cone.vars(), ErrorCode::DomainMismatch, "variable count mismatch");
    for (const auto& [m, c] : f.terms()) {
        require(n.cone.admissible_m(m), ErrorCode::DomainMismatch, "exponent not admissible on this region");
        best = max(best, NormValue::from_valuation(p, c.valuation() + ExtRational(n.cone.support(m))));
    }
    return best;
}

inline NormValue norm_eval(const char0::UntiltSeries& x, const NormSpec& n) {
    if (n.kind == NormKind::Lattice) {
        require(x.cone() == n.cone, ErrorCode::DomainMismatch, "element lives in a different cone");
        return NormValue::from_valuation(n.prime(), char0::lattice_norm(x));
    }
    return norm_eval(KPoly::from_untilt(x), n);
}

/// Certified enclosure lo <= rho(f) <= hi.
struct SpectralInterval {
    NormValue lo;
    NormValue hi;
    int hi_at = 1;  // n realizing the upper bound
    std::string lo_source;
};

/// hi = min_{n <= n_max} |f^n|^{1/n} (Fekete); lo from power-multiplicativity
/// or from |f(x)| at the supplied points.
inline SpectralInterval spectral_radius(const KPoly& f, const NormSpec& n, int n_max,
                                        const std::vector<berkovich::SeminormPoint>& points = {}) {
    require(n_max >= 1, ErrorCode::Usage, "n_max must be at least 1");
    const std::uint32_t p = n.prime();
    SpectralInterval out;
    if (f.is_zero()) {
        out.lo = out.hi = NormValue::make_zero(p);
        out.lo_source = "zero";
        return out;
    }
    if (n.power_multiplicative()) {
        out.hi = norm_eval(f, n);
        out.lo = out.hi;
        out.lo_source = "power-multiplicative";
        return out;
    }
    out.hi = norm_eval(f, n);
    KPoly power = f;
    for (int k = 2; k <= n_max; ++k) {
        power = power * f;
        NormValue r = nth_root(norm_eval(power, n), static_cast<unsigned long>(k));
        if (r < out.hi) {
            out.hi = r;
            out.hi_at = k;
        }
    }
    out.lo = NormValue::make_zero(p);
    out.lo_source = "trivial";
    for (const auto& x : points) {
        NormValue v = berkovich::eval_point(f, x);
        if (out.lo < v) {
            out.lo = v;
            out.lo_source = "point " + x.str();
        }
    }
    return out;
}

enum class Verdict { Yes, No, Unknown };

inline std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::Unknown: return "unknown";
    }
    return "";
}

struct PowerboundedReport {
    Verdict verdict = Verdict::Unknown;
    int witness_n = 0;
    NormValue witness_value;  // |f^n| at the witness
    NormValue bound;          // p^{m_budget}
    std::string certificate;
};

/// Yes: power-multiplicative norm with |f| <= 1. No: some n <= n_max with
/// |f^n| > p^{m_budget}.
inline PowerboundedReport is_powerbounded(const KPoly& f, const NormSpec& n, int n_max, int m_budget) {
    const std::uint32_t p = n.prime();
    PowerboundedReport out;
    out.bound = NormValue::make(p, Rational(-m_budget), 1);
    NormValue one = NormValue::make(p, 0, 1);
    NormValue base = norm_eval(f, n);
    if (n.power_multiplicative()) {
        if (base <= one) {
            out.verdict = Verdict::Yes;
            out.certificate = "power-multiplicative norm and |f| = " + base.str() + " <= 1";
            return out;
        }
        // |f^k| = |f|^k > p^m first at k = floor(m / (-v)) + 1.
        Rational k = Rational(m_budget) / Rational(-base.v);
        int w = static_cast<int>(floor_of(k).get_si()) + 1;
        if (w <= n_max) {
            out.verdict = Verdict::No;
            out.witness_n = w;
            out.witness_value = pow(base, static_cast<unsigned long>(w));
            out.certificate = "|f^n| = |f|^n exceeds p^" + std::to_string(m_budget);
        }
        return out;
    }
    KPoly power = f;
    for (int k = 1; k <= n_max; ++k) {
        if (k > 1) power = power * f;
        NormValue v = norm_eval(power, n);
        if (out.bound < v) {
            out.verdict = Verdict::No;
            out.witness_n = k;
            out.witness_value = v;
            out.certificate = "|f^" + std::to_string(k) + "| = " + v.str() + " > p^" + std::to_string(m_budget);
            return out;
        }
    }
    return out;
}

struct FiltrationReport {
    Verdict verdict = Verdict::Unknown;
    std::optional<SpectralInterval> interval;
    std::string reason;
};

/// Membership of f in the completed filtration piece for r = c p^{-s}:
/// r^{-n}|f^n| bounded. Decided from the spectral interval, or in closed form
/// for monomials under the weighted norm where |(aT^k)^n| = |a|^n (kn + 1).
inline FiltrationReport filtration_member(const KPoly& f, const NormValue& r, const NormSpec& n, int n_max,
                                          const std::vector<berkovich::SeminormPoint>& points = {}) {
    require(!r.zero, ErrorCode::Usage, "r must be positive");
    FiltrationReport out;
    if (n.kind == NormKind::Weighted && f.terms().size() == 1) {
        const auto& [m, a] = *f.terms().begin();
        NormValue abs_a = NormValue::from_valuation(n.prime(), a.valuation());
        const bool grows = !m[0].is_zero();
        if (abs_a < r || (abs_a == r && !grows)) {
            out.verdict = Verdict::Yes;
            out.reason = "r^-n |a|^n (kn+1) is bounded since |a| " + std::string(abs_a < r ? "<" : "=") + " r";
        } else {
            out.verdict = Verdict::No;
            out.reason = "r^-n |a|^n (kn+1) >= kn+1 is unbounded";
        }
        return out;
    }
    auto iv = spectral_radius(f, n, n_max, points);
    out.interval = iv;
    if (iv.hi <= r && (n.power_multiplicative() || iv.hi < r)) {
        out.verdict = Verdict::Yes;
        out.reason = "rho <= " + iv.hi.str() + " <= r";
    } else if (r < iv.lo) {
        out.verdict = Verdict::No;
        out.reason = "rho >= " + iv.lo.str() + " > r";
    } else {
        out.reason = "r lies inside the certified interval";
    }
    return out;
}

struct Algebra {
    NormSpec norm;
    bool completion_changed = false;
    std::string note;
};

/// Replaces the norm by the spectral one: Gauss on the same region. The
/// weighted algebra goes to the Gauss unit-disk algebra, whose completion
/// is different, and is flagged as such.
inline Algebra uniformize(const Algebra& a) {
    if (a.norm.kind == NormKind::Weighted) {
        return Algebra{NormSpec::gauss(char0::Cone::disk(a.norm.prime(), 1, true)), true,
                       "completion changes; Berkovich spectra agree"};
    }
    Algebra out = a;
    out.norm.kind = NormKind::Gauss;
    return out;
}

}  // namespace perfectoid::banach
