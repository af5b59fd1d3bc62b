#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "perfectoid/berkovich/point.hpp"
#include "perfectoid/char0/cone.hpp"

namespace perfectoid::berkovich {

/// {x : |f_j(x)| <= |g(x)| for all j, g(x) != 0}.
struct RationalDomainSpec {
    std::vector<KPoly> numerators;
    KPoly denominator;
    bool perfected = false;

    /// Unit ideal is witnessed when one generator is a nonzero constant.
    bool unit_witness() const {
        auto is_const = [](const KPoly& f) {
            return f.terms().size() == 1 && m_is_zero(f.terms().begin()->first);
        };
        if (is_const(denominator)) return true;
        return std::any_of(numerators.begin(), numerators.end(), is_const);
    }

    std::string str() const {
        std::string out = "V(";
        for (std::size_t i = 0; i < numerators.size(); ++i) out += (i ? ", " : "") + numerators[i].str();
        return out + "; " + denominator.str() + ")";
    }
};

struct Membership {
    bool member = false;
    ExtRational margin;  // min_j v(f_j(x)) - v(g(x)); negative when outside
    std::string detail;
};

/// margin = min_j v(f_j(x)) - v(g(x)). When g(x) = 0 but some f_j(x) != 0
/// the point is outside and the margin is set to -1.
inline Membership in_domain(const SeminormPoint& x, const RationalDomainSpec& V) {
    ExtRational vg = eval_valuation(V.denominator, x);
    Membership out;
    if (vg.is_inf()) {
        bool all_zero = true;
        for (const auto& f : V.numerators) all_zero = all_zero && eval_valuation(f, x).is_inf();
        if (all_zero) fail(ErrorCode::DegenerateDenominator, "all generators vanish at " + x.str());
        out.member = false;
        out.margin = ExtRational(-1);
        out.detail = "denominator vanishes";
        return out;
    }
    ExtRational margin = ExtRational::infinity();
    for (const auto& f : V.numerators) {
        ExtRational vf = eval_valuation(f, x);
        margin = min(margin, vf.is_inf() ? vf : ExtRational(Rational(vf.value() - vg.value())));
    }
    out.margin = margin;
    out.member = margin >= ExtRational(0);
    return out;
}

/// Intersection via all pairwise products. The denominators are included
/// among the factors so that each input inequality survives.
inline RationalDomainSpec domain_meet(const RationalDomainSpec& V, const RationalDomainSpec& W) {
    std::vector<KPoly> fv = V.numerators, fw = W.numerators;
    fv.push_back(V.denominator);
    fw.push_back(W.denominator);
    RationalDomainSpec out;
    out.denominator = V.denominator * W.denominator;
    out.perfected = V.perfected && W.perfected;
    for (std::size_t k = 0; k < fv.size(); ++k)
        for (std::size_t l = 0; l < fw.size(); ++l) {
            if (k + 1 == fv.size() && l + 1 == fw.size()) continue;
            KPoly prod = fv[k] * fw[l];
            if (prod.is_zero()) continue;
            if (std::find(out.numerators.begin(), out.numerators.end(), prod) == out.numerators.end())
                out.numerators.push_back(prod);
        }
    return out;
}

/// Closed s-interval [lo, hi] in the valuation of T (one variable), with
/// hi = inf possibly excluded.
struct SInterval {
    Rational lo = 0;
    ExtRational hi = ExtRational::infinity();
    bool hi_closed = true;

    bool contains(const ExtRational& s) const {
        if (s < ExtRational(lo)) return false;
        if (s.is_inf()) return hi.is_inf() && hi_closed;
        return s <= hi;
    }
    std::string str() const { return "[" + to_string(lo) + ", " + hi.str() + (hi_closed ? "]" : ")"); }
};

/// Reduces a one-variable domain with monomial generators to the s-interval
/// it cuts out in v(T(x)). Empty domains give nullopt.
inline std::optional<SInterval> domain_interval(const RationalDomainSpec& V) {
    auto mono = [](const KPoly& f) -> std::pair<ExtRational, Rational> {
        require(f.vars() == 1, ErrorCode::DomainMismatch, "interval reduction needs one variable");
        if (f.is_zero()) return {ExtRational::infinity(), Rational(0)};
        require(f.terms().size() == 1, ErrorCode::DomainMismatch, "interval reduction needs monomial generators");
        return {f.terms().begin()->second.valuation(), f.terms().begin()->first[0].to_rational()};
    };
    auto [cg, kg] = mono(V.denominator);
    require(!cg.is_inf(), ErrorCode::DegenerateDenominator, "zero denominator");
    SInterval I;
    ExtRational lo(0);
    ExtRational hi = ExtRational::infinity();
    // T = 0 lies in V iff g(0) != 0 and no f_j has a pole there.
    bool at_inf = kg == 0;
    for (const auto& f : V.numerators) {
        auto [cf, kf] = mono(f);
        if (cf.is_inf()) continue;
        // cf + kf s >= cg + kg s  <=>  (kf - kg) s >= cg - cf
        Rational a = kf - kg, b = cg.value() - cf.value();
        if (a > 0) lo = max(lo, ExtRational(Rational(b / a)));
        else if (a < 0) hi = min(hi, ExtRational(Rational(b / a)));
        else if (b > 0) return std::nullopt;
        if (kf < 0) at_inf = false;
    }
    if (hi < lo) return std::nullopt;
    I.lo = lo.value();
    I.hi = hi;
    I.hi_closed = !hi.is_inf() || at_inf;
    return I;
}

enum class CoverMode { Exact, Sampled };

struct CoverCertificate {
    bool pass = false;
    CoverMode mode = CoverMode::Exact;
    std::vector<SInterval> intervals;           // exact mode
    std::optional<ExtRational> witness_s;       // exact-mode gap point
    std::optional<SeminormPoint> witness_point; // sampled-mode uncovered point
    std::size_t grid_size = 0;
    std::string grid;
};

/// Points for sampled cover checks: Teichmuller-monomial centers and
/// log-radii a/b with b <= 12, 0 <= a/b <= 4, plus s = inf.
inline std::vector<SeminormPoint> cover_grid(std::uint32_t p, int depth = 1) {
    std::vector<Rational> ss;
    for (long b = 1; b <= 12; ++b)
        for (long a = 0; a <= 4 * b; ++a) ss.push_back(make_rational(a, b));
    std::sort(ss.begin(), ss.end());
    ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
    std::vector<KElem> centers{KElem(p)};
    const std::int64_t step = checked_pow(p, depth);
    for (std::int64_t k = 0; k <= 2 * step; ++k) centers.push_back(KElem::monomial(p, 1, PExp(p, k, depth)));
    std::vector<SeminormPoint> out;
    for (const auto& c : centers) {
        for (const auto& s : ss) out.push_back(SeminormPoint::single(c, ExtRational(s)));
        out.push_back(SeminormPoint::single(c, ExtRational::infinity()));
    }
    return out;
}

inline CoverCertificate cover_check(const std::vector<RationalDomainSpec>& domains, CoverMode mode, std::uint32_t p,
                                    int depth = 1) {
    CoverCertificate cert;
    cert.mode = mode;
    if (mode == CoverMode::Exact) {
        for (const auto& V : domains)
            if (auto I = domain_interval(V)) cert.intervals.push_back(*I);
        auto sorted = cert.intervals;
        std::sort(sorted.begin(), sorted.end(), [](const SInterval& a, const SInterval& b) { return a.lo < b.lo; });
        ExtRational reach(0);  // [0, reach] covered so far
        bool started = false;
        for (const auto& I : sorted) {
            if (!started) {
                if (I.lo > 0) break;
                started = true;
                reach = I.hi;
                continue;
            }
            if (reach.is_inf()) break;
            if (ExtRational(I.lo) > reach) break;
            reach = max(reach, I.hi);
        }
        if (!started) {
            cert.witness_s = ExtRational(0);
            return cert;
        }
        if (!reach.is_inf()) {
            Rational next = reach.value() + 1;
            for (const auto& I : sorted)
                if (ExtRational(I.lo) > reach) next = std::min(next, I.lo);
            cert.witness_s = ExtRational(Rational((reach.value() + next) / 2));
            return cert;
        }
        bool inf_covered = std::any_of(sorted.begin(), sorted.end(),
                                       [](const SInterval& I) { return I.contains(ExtRational::infinity()); });
        if (!inf_covered) {
            cert.witness_s = ExtRational::infinity();
            return cert;
        }
        cert.pass = true;
        return cert;
    }
    auto grid = cover_grid(p, depth);
    cert.grid_size = grid.size();
    cert.grid = "centers 0, p^(k/" + std::to_string(checked_pow(p, depth)) + ") for k/" +
                std::to_string(checked_pow(p, depth)) + " <= 2; s = a/b with b <= 12, s <= 4, and s = inf";
    for (const auto& x : grid) {
        bool covered = false;
        for (const auto& V : domains) {
            if (in_domain(x, V).member) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            cert.witness_point = x;
            return cert;
        }
    }
    cert.pass = true;
    return cert;
}

struct PerfectedDomain {
    RationalDomainSpec presentation;
    std::vector<std::string> roots;  // chosen p-power roots of the generators
    std::optional<char0::Cone> cone;
    std::size_t checked_points = 0;
};

namespace detail {

/// Monomial +-p^q T^m: roots are p^{q/p^k} T^{m/p^k} (times -1 for odd p).
inline bool has_chosen_roots(const KPoly& f) {
    if (f.terms().size() != 1) return false;
    const KElem& c = f.terms().begin()->second;
    if (c.terms().size() != 1) return false;
    const Rational& u = c.terms().begin()->second;
    Rational a = abs(u);
    if (a.get_den() != 1 && a.get_num() != 1) return false;
    // a must be a power of p; -1 has odd p-power roots only for odd p.
    Integer n = a.get_num() * a.get_den();
    while (n > 1 && mpz_divisible_ui_p(n.get_mpz_t(), f.prime())) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), f.prime());
    if (n != 1) return false;
    return u > 0 || f.prime() != 2;
}

}  // namespace detail

/// Perfected presentation of a domain whose generators carry chosen p-power
/// roots. For one-variable monomial domains the cone of the region is
/// returned as well and membership is rechecked on the standard grid.
inline PerfectedDomain perfected_domain(const RationalDomainSpec& V) {
    PerfectedDomain out;
    out.presentation = V;
    out.presentation.perfected = true;
    std::vector<KPoly> gens = V.numerators;
    gens.push_back(V.denominator);
    for (const auto& f : gens) {
        if (!detail::has_chosen_roots(f))
            fail(ErrorCode::NoRootsAvailable, f.str() + " has no chosen p-power roots; an approximation is needed");
        const auto& [m, c] = *f.terms().begin();
        const auto& [q, u] = *c.terms().begin();
        std::string root = "(" + f.str() + ")^(1/p^k) = (" + to_string(u) + ")^(1/p^k)";
        if (!q.is_zero()) root += "*p^(" + q.str() + "/p^k)";
        for (std::size_t j = 0; j < m.size(); ++j)
            if (!m[j].is_zero()) root += std::string("*") + kVariableNames[j] + "^(" + m[j].str() + "/p^k)";
        out.roots.push_back(root);
    }
    if (V.denominator.vars() == 1) {
        auto I = domain_interval(V);
        if (!I) fail(ErrorCode::EmptyIntersection, "empty rational domain");
        const std::uint32_t p = V.denominator.prime();
        out.cone = char0::Cone::single(p, I->lo, I->hi_closed ? I->hi : ExtRational::infinity());
        for (const auto& x : standard_grid(p, 1)) {
            ExtRational s = x.coordinate_valuation(0);
            bool by_region = I->contains(s);
            bool by_spec;
            try {
                by_spec = in_domain(x, V).member;
            } catch (const Error&) {
                by_spec = false;
            }
            require(by_region == by_spec, ErrorCode::DomainMismatch, "perfected region disagrees at " + x.str());
            ++out.checked_points;
        }
    }
    return out;
}

}  // namespace perfectoid::berkovich
