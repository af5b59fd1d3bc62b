#pragma once

#include <map>
#include <string>
#include <vector>

#include "perfectoid/char0/untilt_series.hpp"
#include "perfectoid/core/digits.hpp"
#include "perfectoid/core/error.hpp"
#include "perfectoid/core/pexp.hpp"
#include "perfectoid/core/rational.hpp"

namespace perfectoid::field {

/// Element of Q(p^{1/p^M}) written as sum_q c_q p^q with rational c_q and
/// q in [0, 1). Because x^{p^M} - p is Eisenstein, the terms have pairwise
/// distinct valuations v_p(c_q) + q, so v(x) is the minimum of those.
class KElem {
public:
    KElem() = default;
    explicit KElem(std::uint32_t p) : p_(p) {}
    KElem(std::uint32_t p, const Rational& c) : p_(p) { add_term(PExp::integer(p, 0), c); }

    static KElem monomial(std::uint32_t p, const Rational& c, const PExp& q) {
        KElem x(p);
        x.add_term(q, c);
        return x;
    }

    std::uint32_t prime() const { return p_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<PExp, Rational>& terms() const { return terms_; }

    /// Adds c * p^q, folding the integer part of q into the coefficient.
    void add_term(const PExp& q, const Rational& c) {
        if (c == 0) return;
        Integer fl = floor_of(q.to_rational());
        PExp frac = q - PExp::integer(p_, fl.get_si());
        Rational coeff = c;
        if (fl > 0) coeff *= ipow(Integer(p_), fl.get_ui());
        if (fl < 0) coeff /= Rational(ipow(Integer(p_), static_cast<unsigned long>(-fl.get_si())));
        auto [it, fresh] = terms_.try_emplace(frac, coeff);
        if (!fresh) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    ExtRational valuation() const {
        ExtRational v = ExtRational::infinity();
        for (const auto& [q, c] : terms_) v = min(v, ExtRational(Rational(vp(c, p_) + q.to_rational())));
        return v;
    }

    /// Leading term c * p^q realizing the valuation (c a p-adic unit times p^k folded into q).
    std::pair<Rational, Rational> leading() const {
        require(!is_zero(), ErrorCode::DomainMismatch, "leading term of zero");
        const std::pair<const PExp, Rational>* best = nullptr;
        Rational bv;
        for (const auto& t : terms_) {
            Rational v = vp(t.second, p_) + t.first.to_rational();
            if (!best || v < bv) best = &t, bv = v;
        }
        return {best->second, best->first.to_rational()};
    }

    KElem operator-() const {
        KElem out = *this;
        for (auto& t : out.terms_) t.second = -t.second;
        return out;
    }
    friend KElem operator+(const KElem& a, const KElem& b) {
        KElem out = a;
        out.p_ = a.p_ ? a.p_ : b.p_;
        for (const auto& [q, c] : b.terms_) out.add_term(q, c);
        return out;
    }
    friend KElem operator-(const KElem& a, const KElem& b) { return a + (-b); }
    friend KElem operator*(const KElem& a, const KElem& b) {
        KElem out(a.p_ ? a.p_ : b.p_);
        for (const auto& [qa, ca] : a.terms_)
            for (const auto& [qb, cb] : b.terms_) out.add_term(qa + qb, ca * cb);
        return out;
    }
    KElem scaled(const Rational& c) const {
        KElem out(p_);
        for (const auto& [q, x] : terms_) out.add_term(q, x * c);
        return out;
    }

    friend bool operator==(const KElem& a, const KElem& b) { return a.terms_ == b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [q, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "(" + to_string(c) + ")";
            if (!q.is_zero()) out += "*p^(" + q.str() + ")";
        }
        return out;
    }

private:
    std::uint32_t p_ = 0;
    std::map<PExp, Rational> terms_;
};

/// Laurent polynomial over K in d variables with Z[1/p] exponents.
class KPoly {
public:
    KPoly() = default;
    KPoly(std::uint32_t p, int d) : p_(p), d_(d) {}

    static KPoly constant(std::uint32_t p, int d, const KElem& c) {
        KPoly f(p, d);
        f.add_term(MExp(static_cast<std::size_t>(d), PExp::integer(p, 0)), c);
        return f;
    }
    static KPoly monomial(std::uint32_t p, const KElem& c, const MExp& m) {
        KPoly f(p, static_cast<int>(m.size()));
        f.add_term(m, c);
        return f;
    }
    /// Coordinate T_j.
    static KPoly variable(std::uint32_t p, int d, int j) {
        MExp m(static_cast<std::size_t>(d), PExp::integer(p, 0));
        m[static_cast<std::size_t>(j)] = PExp::integer(p, 1);
        return monomial(p, KElem(p, 1), m);
    }

    /// Image of a digit expansion: digits sharing m are grouped into one coefficient.
    static KPoly from_untilt(const char0::UntiltSeries& x) {
        KPoly f(x.prime(), x.signature().d);
        for (const auto& d : x.digits()) f.add_term(d.key.m, KElem::monomial(x.prime(), Rational(d.value), d.key.q));
        return f;
    }

    std::uint32_t prime() const { return p_; }
    int vars() const { return d_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<MExp, KElem>& terms() const { return terms_; }

    void add_term(const MExp& m, const KElem& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    bool integer_exponents() const {
        for (const auto& [m, c] : terms_)
            for (const auto& e : m)
                if (!e.is_integer()) return false;
        return true;
    }

    friend KPoly operator+(const KPoly& a, const KPoly& b) {
        require(a.d_ == b.d_, ErrorCode::DomainMismatch, "variable count mismatch");
        KPoly out = a;
        for (const auto& [m, c] : b.terms_) out.add_term(m, c);
        return out;
    }
    KPoly operator-() const {
        KPoly out = *this;
        for (auto& t : out.terms_) t.second = -t.second;
        return out;
    }
    friend KPoly operator-(const KPoly& a, const KPoly& b) { return a + (-b); }
    friend KPoly operator*(const KPoly& a, const KPoly& b) {
        require(a.d_ == b.d_, ErrorCode::DomainMismatch, "variable count mismatch");
        KPoly out(a.p_, a.d_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(add_m(ma, mb), ca * cb);
        return out;
    }

    friend bool operator==(const KPoly& a, const KPoly& b) { return a.d_ == b.d_ && a.terms_ == b.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            if (!out.empty()) out += " + ";
            out += "[" + c.str() + "]";
            for (std::size_t j = 0; j < m.size(); ++j)
                if (!m[j].is_zero()) out += std::string("*") + kVariableNames[j] + "^(" + m[j].str() + ")";
        }
        return out;
    }

private:
    std::uint32_t p_ = 2;
    int d_ = 0;
    std::map<MExp, KElem> terms_;
};

inline KPoly pow(const KPoly& f, unsigned n) {
    KPoly out = KPoly::constant(f.prime(), f.vars(), KElem(f.prime(), 1));
    for (unsigned i = 0; i < n; ++i) out = out * f;
    return out;
}

/// Substitutes T_j -> U_j + c_j (exact Taylor shift). Exponents must be
/// non-negative integers in every shifted variable.
inline KPoly taylor_shift(const KPoly& f, const std::vector<KElem>& centers) {
    const std::uint32_t p = f.prime();
    const int d = f.vars();
    KPoly out(p, d);
    for (const auto& [m, c] : f.terms()) {
        KPoly term = KPoly::monomial(p, c, MExp(static_cast<std::size_t>(d), PExp::integer(p, 0)));
        for (int j = 0; j < d; ++j) {
            const auto& e = m[static_cast<std::size_t>(j)];
            const KElem& cj = centers[static_cast<std::size_t>(j)];
            if (cj.is_zero()) {
                MExp mj(static_cast<std::size_t>(d), PExp::integer(p, 0));
                mj[static_cast<std::size_t>(j)] = e;
                term = term * KPoly::monomial(p, KElem(p, 1), mj);
                continue;
            }
            require(e.is_integer() && e.sign() >= 0, ErrorCode::DomainMismatch, "Taylor shift needs polynomial exponents");
            const long n = e.num();
            KPoly binom(p, d);
            Integer b = 1;
            KElem cpow(p, 1);
            std::vector<KElem> cpows{cpow};
            for (long k = 1; k <= n; ++k) cpows.push_back(cpows.back() * cj);
            for (long k = 0; k <= n; ++k) {
                MExp mk(static_cast<std::size_t>(d), PExp::integer(p, 0));
                mk[static_cast<std::size_t>(j)] = PExp::integer(p, k);
                binom.add_term(mk, cpows[static_cast<std::size_t>(n - k)].scaled(Rational(b)));
                b = b * (n - k) / (k + 1);
            }
            term = term * binom;
        }
        out = out + term;
    }
    return out;
}

}  // namespace perfectoid::field
