#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "perfectoid/core/digits.hpp"
#include "perfectoid/core/error.hpp"
#include "perfectoid/core/pexp.hpp"
#include "perfectoid/core/rational.hpp"

namespace perfectoid::char0 {

/// Log-radius interval [lo, hi] for one coordinate: the region
/// p^{-hi} <= |T| <= p^{-lo}. hi = inf means a disk (T may vanish).
struct RadiusInterval {
    Rational lo = 0;
    ExtRational hi = ExtRational::infinity();

    bool is_disk() const { return hi.is_inf(); }
    bool contains(const ExtRational& s) const { return ExtRational(lo) <= s && s <= hi; }
    bool contains(const RadiusInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    friend bool operator==(const RadiusInterval&, const RadiusInterval&) = default;

    std::string str() const { return "[" + to_string(lo) + ", " + hi.str() + "]"; }
};

/// Exponent cone of a toric region: digit (q, m) lies in the unit ball iff
/// q + g(m) >= 0 with g(m) = sum_j g_j(m_j), g_j(m) = m*lo_j (m >= 0) or m*hi_j (m < 0).
class Cone {
public:
    Cone() = default;
    Cone(std::uint32_t p, std::vector<RadiusInterval> vars, bool integral = false)
        : p_(p), vars_(std::move(vars)), integral_(integral) {
        for (const auto& v : vars_) {
            if (v.lo < 0) fail(ErrorCode::UnboundedRegion, "log-radius below 0 leaves the unit polydisk");
            if (!v.hi.is_inf() && v.hi.value() < v.lo) fail(ErrorCode::EmptyIntersection, "empty radius interval");
        }
        if (vars_.size() > static_cast<std::size_t>(kMaxVariables)) fail(ErrorCode::DomainMismatch, "at most three variables");
    }

    static Cone disk(std::uint32_t p, int d, bool integral = false) {
        return Cone(p, std::vector<RadiusInterval>(static_cast<std::size_t>(d)), integral);
    }
    static Cone single(std::uint32_t p, Rational lo, ExtRational hi, bool integral = false) {
        return Cone(p, {RadiusInterval{std::move(lo), std::move(hi)}}, integral);
    }

    std::uint32_t prime() const { return p_; }
    int vars() const { return static_cast<int>(vars_.size()); }
    const std::vector<RadiusInterval>& intervals() const { return vars_; }
    const RadiusInterval& interval(int j) const { return vars_[static_cast<std::size_t>(j)]; }
    bool integral() const { return integral_; }

    Signature signature() const {
        std::vector<bool> laurent;
        for (const auto& v : vars_) laurent.push_back(!v.is_disk());
        return Signature(p_, vars(), laurent);
    }

    /// Support function g(m); requires m admissible (m_j >= 0 on disks).
    Rational support(const MExp& m) const {
        Rational g = 0;
        for (std::size_t j = 0; j < vars_.size(); ++j) {
            if (m[j].is_zero()) continue;
            Rational mj = m[j].to_rational();
            if (m[j].sign() > 0) {
                if (vars_[j].lo != 0) g += mj * vars_[j].lo;
            } else {
                if (vars_[j].is_disk()) fail(ErrorCode::DomainMismatch, "negative exponent on a disk variable");
                g += mj * vars_[j].hi.value();
            }
        }
        return g;
    }

    /// True when g vanishes on every admissible exponent (unit disk or unit circle factors).
    bool trivial_support() const {
        for (const auto& v : vars_)
            if (v.lo != 0 || (!v.is_disk() && v.hi.value() != 0)) return false;
        return true;
    }

    bool admissible_m(const MExp& m) const {
        if (static_cast<int>(m.size()) != vars()) return false;
        for (std::size_t j = 0; j < vars_.size(); ++j) {
            if (integral_ && !m[j].is_integer()) return false;
            if (m[j].sign() < 0 && vars_[j].is_disk()) return false;
        }
        return true;
    }

    /// q + g(m): the lattice valuation of the monomial p^q T^m.
    Rational weight(const PExp& q, const MExp& m) const {
        require(admissible_m(m), ErrorCode::DomainMismatch, "exponent outside the cone's grid");
        return q.to_rational() + support(m);
    }

    bool contains(const PExp& q, const MExp& m) const {
        if (!admissible_m(m)) return false;
        return q.to_rational() + support(m) >= 0;
    }

    friend bool operator==(const Cone&, const Cone&) = default;

    std::string str() const {
        std::string out = integral_ ? "classical" : "perfectoid";
        for (std::size_t j = 0; j < vars_.size(); ++j)
            out += std::string(" ") + kVariableNames[j] + ":" + vars_[j].str();
        return out;
    }

private:
    std::uint32_t p_ = 2;
    std::vector<RadiusInterval> vars_;
    bool integral_ = false;
};

inline std::optional<RadiusInterval> intersect(const RadiusInterval& a, const RadiusInterval& b) {
    RadiusInterval r{a.lo > b.lo ? a.lo : b.lo, min(a.hi, b.hi)};
    if (!r.hi.is_inf() && r.hi.value() < r.lo) return std::nullopt;
    return r;
}

/// Cone of the region intersection; both inputs embed into it.
inline Cone meet_regions(const Cone& a, const Cone& b) {
    require(a.prime() == b.prime() && a.vars() == b.vars(), ErrorCode::DomainMismatch, "cones over different polydisks");
    std::vector<RadiusInterval> out;
    for (int j = 0; j < a.vars(); ++j) {
        auto r = intersect(a.interval(j), b.interval(j));
        if (!r) fail(ErrorCode::EmptyIntersection, "regions do not meet");
        out.push_back(*r);
    }
    return Cone(a.prime(), out, a.integral() && b.integral());
}

/// Completed tensor U (x)_Z W of toric localizations: the region intersection.
inline Cone cone_tensor(const Cone& u, const Cone& w, const Cone& z) {
    require(u.vars() == z.vars() && w.vars() == z.vars(), ErrorCode::DomainMismatch, "cones over different polydisks");
    for (int j = 0; j < z.vars(); ++j)
        require(z.interval(j).contains(u.interval(j)) && z.interval(j).contains(w.interval(j)), ErrorCode::DomainMismatch,
                "tensor factors must be subregions of the base");
    return meet_regions(u, w);
}

/// q (>= | >) round_r(beta . m + gamma), where round_r rounds up to the grid
/// (1/p^r)Z (r < 0 disables rounding).
struct HalfSpace {
    std::vector<Rational> beta;
    Rational gamma = 0;
    bool strict = false;
    int round_level = -1;

    friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
};

/// A finite conjunction of half-spaces in (q, m), with q in Z[1/p] and m
/// either integral or in Z[1/p], optionally restricted to m >= 0.
class ExponentSet {
public:
    ExponentSet() = default;
    ExponentSet(std::uint32_t p, int d, std::vector<HalfSpace> cons, std::vector<bool> m_nonneg, bool integral)
        : p_(p), d_(d), cons_(std::move(cons)), nonneg_(std::move(m_nonneg)), integral_(integral) {
        if (nonneg_.empty()) nonneg_.assign(static_cast<std::size_t>(d), false);
        if (cons_.empty()) fail(ErrorCode::UnboundedRegion, "no lower bound on q");
        for (const auto& h : cons_) {
            if (static_cast<int>(h.beta.size()) != d_) fail(ErrorCode::DomainMismatch, "constraint arity");
            if (h.gamma < 0) fail(ErrorCode::UnboundedRegion, "negative offset: not a cone over a region");
        }
    }

    static ExponentSet from_cone(const Cone& c) {
        std::vector<HalfSpace> cons;
        std::vector<bool> nonneg;
        for (int j = 0; j < c.vars(); ++j) nonneg.push_back(c.interval(j).is_disk());
        if (c.vars() == 0) {
            cons.push_back(HalfSpace{{}, 0, false, -1});
        } else {
            // -g(m) = max over sign patterns of -sum m_j s_j; one half-space per pattern.
            int patterns = 1 << c.vars();
            for (int mask = 0; mask < patterns; ++mask) {
                HalfSpace h;
                bool valid = true;
                for (int j = 0; j < c.vars(); ++j) {
                    bool use_hi = (mask >> j) & 1;
                    const auto& iv = c.interval(j);
                    if (use_hi && iv.is_disk()) {
                        valid = false;
                        break;
                    }
                    h.beta.push_back(use_hi ? Rational(-iv.hi.value()) : Rational(-iv.lo));
                }
                if (valid) cons.push_back(h);
            }
        }
        return ExponentSet(c.prime(), c.vars(), cons, nonneg, c.integral());
    }

    std::uint32_t prime() const { return p_; }
    int vars() const { return d_; }
    const std::vector<HalfSpace>& constraints() const { return cons_; }
    const std::vector<bool>& nonneg() const { return nonneg_; }
    bool integral() const { return integral_; }

    bool contains(const PExp& q, const MExp& m) const {
        for (int j = 0; j < d_; ++j) {
            const auto& mj = m[static_cast<std::size_t>(j)];
            if (integral_ && !mj.is_integer()) return false;
            if (nonneg_[static_cast<std::size_t>(j)] && mj.sign() < 0) return false;
        }
        Rational qr = q.to_rational();
        for (const auto& h : cons_) {
            Rational rhs = h.gamma;
            for (int j = 0; j < d_; ++j) rhs += h.beta[static_cast<std::size_t>(j)] * m[static_cast<std::size_t>(j)].to_rational();
            if (h.round_level >= 0) {
                Integer scale = ipow(Integer(p_), static_cast<unsigned long>(h.round_level));
                rhs = make_rational(ceil_of(Rational(rhs * scale)), scale);
            }
            int c = cmp(qr, rhs);
            if (h.strict ? c <= 0 : c < 0) return false;
        }
        return true;
    }

    /// Back to a toric cone when the constraints have that shape.
    std::optional<Cone> to_cone() const {
        std::vector<RadiusInterval> vars(static_cast<std::size_t>(d_));
        for (const auto& h : cons_)
            if (h.strict || h.gamma != 0 || h.round_level >= 0) return std::nullopt;
        for (int j = 0; j < d_; ++j) {
            std::optional<Rational> lo, hi;
            for (const auto& h : cons_) {
                Rational s = -h.beta[static_cast<std::size_t>(j)];
                if (!lo || s < *lo) lo = s;
                if (!hi || s > *hi) hi = s;
            }
            RadiusInterval iv{*lo, nonneg_[static_cast<std::size_t>(j)] ? ExtRational::infinity() : ExtRational(*hi)};
            if (iv.lo < 0) return std::nullopt;
            vars[static_cast<std::size_t>(j)] = iv;
        }
        Cone c(p_, vars, integral_);
        if (!(ExponentSet::from_cone(c).normalized() == normalized())) return std::nullopt;
        return c;
    }

    /// Canonical constraint order for structural comparison.
    ExponentSet normalized() const {
        ExponentSet out = *this;
        std::sort(out.cons_.begin(), out.cons_.end(), [](const HalfSpace& a, const HalfSpace& b) {
            if (a.beta != b.beta) return a.beta < b.beta;
            if (a.gamma != b.gamma) return a.gamma < b.gamma;
            if (a.strict != b.strict) return a.strict < b.strict;
            return a.round_level < b.round_level;
        });
        out.cons_.erase(std::unique(out.cons_.begin(), out.cons_.end()), out.cons_.end());
        return out;
    }

    friend bool operator==(const ExponentSet& a, const ExponentSet& b) {
        return a.p_ == b.p_ && a.d_ == b.d_ && a.cons_ == b.cons_ && a.nonneg_ == b.nonneg_ && a.integral_ == b.integral_;
    }

    std::string str() const {
        std::string out;
        for (std::size_t i = 0; i < cons_.size(); ++i) {
            const auto& h = cons_[i];
            if (i) out += " and ";
            std::string rhs;
            for (int j = 0; j < d_; ++j) {
                const auto& b = h.beta[static_cast<std::size_t>(j)];
                if (b == 0) continue;
                if (!rhs.empty()) rhs += " + ";
                rhs += to_string(b) + "*m" + std::to_string(j);
            }
            if (h.gamma != 0 || rhs.empty()) rhs += (rhs.empty() ? "" : " + ") + to_string(h.gamma);
            if (h.round_level >= 0) rhs = "ceil_" + std::to_string(h.round_level) + "(" + rhs + ")";
            out += std::string("q ") + (h.strict ? "> " : ">= ") + rhs;
        }
        for (int j = 0; j < d_; ++j)
            if (nonneg_[static_cast<std::size_t>(j)]) out += " and m" + std::to_string(j) + " >= 0";
        out += integral_ ? " (m integral)" : " (m in Z[1/p])";
        return out;
    }

private:
    std::uint32_t p_ = 2;
    int d_ = 0;
    std::vector<HalfSpace> cons_;
    std::vector<bool> nonneg_;
    bool integral_ = false;
};

enum class ClosureKind { Almost, Pic, Tic };

/// almost: topological closure. pic: z with p^k z in the set for all large
/// k. tic: {z : n z + c in the set for all n, some c}, the recession
/// saturation. All act constraint-wise on this shape.
inline ExponentSet cone_closure(const ExponentSet& s, ClosureKind kind) {
    std::vector<HalfSpace> out;
    for (const auto& h : s.constraints()) {
        HalfSpace r = h;
        switch (kind) {
            case ClosureKind::Almost:
                r.strict = false;
                break;
            case ClosureKind::Pic: {
                r.round_level = -1;
                r.gamma = 0;
                // Effective offset after moving to the grid: strict with rounding adds one grid step.
                Rational eff = h.gamma;
                if (h.strict && h.round_level >= 0)
                    eff += make_rational(Integer(1), ipow(Integer(s.prime()), static_cast<unsigned long>(h.round_level)));
                r.strict = h.strict ? eff >= 0 : eff > 0;
                break;
            }
            case ClosureKind::Tic:
                r.strict = false;
                r.gamma = 0;
                r.round_level = -1;
                break;
        }
        out.push_back(r);
    }
    return ExponentSet(s.prime(), s.vars(), out, s.nonneg(), s.integral()).normalized();
}

inline ExponentSet cone_closure(const Cone& c, ClosureKind kind) { return cone_closure(ExponentSet::from_cone(c), kind); }

}  // namespace perfectoid::char0
