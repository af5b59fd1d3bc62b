#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "perfectoid/core/error.hpp"
#include "perfectoid/core/rational.hpp"

namespace perfectoid::witt {

using PackedKey = unsigned __int128;

struct PackedKeyHash {
    std::size_t operator()(PackedKey k) const noexcept {
        auto lo = static_cast<std::uint64_t>(k);
        auto hi = static_cast<std::uint64_t>(k >> 64);
        return static_cast<std::size_t>((lo * 0x9E3779B97F4A7C15ULL) ^ (hi + 0x632BE59BD9B4E019ULL + (lo << 6)));
    }
};

/// Bit layout for monomials in X_0..X_L, Y_0..Y_L. Variable X_i (and Y_i)
/// never exceeds exponent p^{L-i} in any weighted-homogeneous object of
/// level <= L, so each field is exactly wide enough for that bound.
class MonomialLayout {
public:
    MonomialLayout(std::uint32_t p, int level) : p_(p), level_(level) {
        int offset = 0;
        for (int side = 0; side < 2; ++side) {
            for (int i = 0; i <= level; ++i) {
                std::uint64_t bound = 1;
                for (int k = 0; k < level - i; ++k) bound *= p;
                int w = static_cast<int>(std::bit_width(bound));
                widths_.push_back(w);
                offsets_.push_back(offset);
                offset += w;
            }
        }
        if (offset > 128) fail(ErrorCode::CeilingExceeded, "monomial layout exceeds 128 bits");
    }

    std::uint32_t prime() const { return p_; }
    int level() const { return level_; }
    int vars() const { return static_cast<int>(widths_.size()); }
    /// Index of X_i (side 0) or Y_i (side 1).
    int var(int side, int i) const { return side * (level_ + 1) + i; }

    PackedKey unit(int v, std::uint64_t e) const {
        if (e >= (std::uint64_t{1} << widths_[static_cast<std::size_t>(v)]))
            fail(ErrorCode::CeilingExceeded, "exponent exceeds monomial layout");
        return static_cast<PackedKey>(e) << offsets_[static_cast<std::size_t>(v)];
    }
    std::uint64_t exponent(PackedKey k, int v) const {
        auto w = widths_[static_cast<std::size_t>(v)];
        return static_cast<std::uint64_t>(k >> offsets_[static_cast<std::size_t>(v)]) & ((std::uint64_t{1} << w) - 1);
    }
    std::vector<std::uint64_t> unpack(PackedKey k) const {
        std::vector<std::uint64_t> out(static_cast<std::size_t>(vars()));
        for (int v = 0; v < vars(); ++v) out[static_cast<std::size_t>(v)] = exponent(k, v);
        return out;
    }
    PackedKey pack(const std::vector<std::uint64_t>& e) const {
        PackedKey k = 0;
        for (int v = 0; v < vars(); ++v) k |= unit(v, e[static_cast<std::size_t>(v)]);
        return k;
    }

private:
    std::uint32_t p_;
    int level_;
    std::vector<int> widths_;
    std::vector<int> offsets_;
};

/// Sparse multivariate polynomial over Z with packed monomials, sorted by key.
class IntPoly {
public:
    using Term = std::pair<PackedKey, Integer>;

    IntPoly() = default;
    explicit IntPoly(const MonomialLayout* layout) : layout_(layout) {}

    static IntPoly monomial(const MonomialLayout* layout, PackedKey k, Integer c) {
        IntPoly out(layout);
        if (c != 0) out.terms_.emplace_back(k, std::move(c));
        return out;
    }
    static IntPoly variable(const MonomialLayout* layout, int v) { return monomial(layout, layout->unit(v, 1), 1); }

    const MonomialLayout* layout() const { return layout_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.terms_ == b.terms_; }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) { return a.combine(b, 1); }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a.combine(b, -1); }

    IntPoly scaled(const Integer& c) const {
        IntPoly out(layout_);
        if (c == 0) return out;
        out.terms_.reserve(terms_.size());
        for (const auto& [k, v] : terms_) out.terms_.emplace_back(k, Integer(v * c));
        return out;
    }

    /// Exact division by d; nullopt-like failure is reported through `ok`.
    IntPoly divided_exact(const Integer& d, bool& ok) const {
        IntPoly out(layout_);
        ok = true;
        out.terms_.reserve(terms_.size());
        for (const auto& [k, v] : terms_) {
            if (!mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t())) {
                ok = false;
                return IntPoly(layout_);
            }
            Integer q;
            mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
            out.terms_.emplace_back(k, std::move(q));
        }
        return out;
    }

    /// Coefficients reduced into [0, m); zero terms dropped.
    IntPoly reduced_mod(const Integer& m) const {
        IntPoly out(layout_);
        for (const auto& [k, v] : terms_) {
            Integer r;
            mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
            if (r != 0) out.terms_.emplace_back(k, std::move(r));
        }
        return out;
    }

    /// Substitution X_v -> X_v^p for every variable.
    IntPoly frobenius_twist() const {
        IntPoly out(layout_);
        out.terms_.reserve(terms_.size());
        auto p = layout_->prime();
        for (const auto& [k, v] : terms_) {
            auto e = layout_->unpack(k);
            for (auto& x : e) x *= p;
            out.terms_.emplace_back(layout_->pack(e), v);
        }
        std::sort(out.terms_.begin(), out.terms_.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
        return out;
    }

    IntPoly multiply(const IntPoly& b, std::size_t term_budget) const {
        // Coefficient multiplications are bounded too, so hopeless products fail fast.
        if (static_cast<double>(terms_.size()) * static_cast<double>(b.terms_.size()) > 64.0 * static_cast<double>(term_budget))
            fail(ErrorCode::CeilingExceeded, "polynomial product of " + std::to_string(terms_.size()) + " x " +
                                                 std::to_string(b.terms_.size()) + " terms exceeds work budget");
        std::unordered_map<PackedKey, Integer, PackedKeyHash> acc;
        acc.reserve(std::min<std::size_t>(terms_.size() * b.terms_.size(), term_budget) + 16);
        for (const auto& [ka, va] : terms_) {
            for (const auto& [kb, vb] : b.terms_) {
                Integer& slot = acc[ka + kb];
                mpz_addmul(slot.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
            }
            if (acc.size() > term_budget)
                fail(ErrorCode::CeilingExceeded,
                     "polynomial product exceeds term budget of " + std::to_string(term_budget));
        }
        IntPoly out(layout_);
        out.terms_.reserve(acc.size());
        for (auto& [k, v] : acc)
            if (v != 0) out.terms_.emplace_back(k, std::move(v));
        std::sort(out.terms_.begin(), out.terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
        return out;
    }

    IntPoly power(std::uint64_t e, std::size_t term_budget) const {
        IntPoly result = monomial(layout_, 0, 1);
        IntPoly base = *this;
        while (e > 0) {
            if (e & 1) result = result.multiply(base, term_budget);
            e >>= 1;
            if (e) base = base.multiply(base, term_budget);
        }
        return result;
    }

    std::string str(int max_terms = 12) const;

private:
    IntPoly combine(const IntPoly& b, int sign) const {
        IntPoly out(layout_ ? layout_ : b.layout_);
        out.terms_.reserve(terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() || (i < terms_.size() && terms_[i].first < b.terms_[j].first)) {
                out.terms_.push_back(terms_[i++]);
            } else if (i == terms_.size() || b.terms_[j].first < terms_[i].first) {
                out.terms_.emplace_back(b.terms_[j].first, sign > 0 ? b.terms_[j].second : Integer(-b.terms_[j].second));
                ++j;
            } else {
                Integer v = sign > 0 ? Integer(terms_[i].second + b.terms_[j].second)
                                     : Integer(terms_[i].second - b.terms_[j].second);
                if (v != 0) out.terms_.emplace_back(terms_[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    }

    const MonomialLayout* layout_ = nullptr;
    std::vector<Term> terms_;
};

inline std::string IntPoly::str(int max_terms) const {
    if (terms_.empty()) return "0";
    std::string out;
    int shown = 0;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (shown == max_terms) {
            out += " + ...";
            break;
        }
        const auto& [k, v] = *it;
        if (shown) out += (v < 0 ? " - " : " + ");
        else if (v < 0) out += "-";
        Integer a = abs(v);
        std::string mono;
        for (int var = 0; var < layout_->vars(); ++var) {
            auto e = layout_->exponent(k, var);
            if (!e) continue;
            if (!mono.empty()) mono += "*";
            int side = var / (layout_->level() + 1);
            int idx = var % (layout_->level() + 1);
            mono += std::string(side == 0 ? "X" : "Y") + std::to_string(idx);
            if (e > 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) out += a.get_str();
        else if (a == 1) out += mono;
        else out += a.get_str() + "*" + mono;
        ++shown;
    }
    return out;
}

/// Outcome of checking a ghost identity at one level.
struct GhostCheck {
    std::uint32_t p = 0;
    int level = 0;
    bool sum_ok = false;
    bool product_ok = false;
    /// "expanded": w_n of the cached polynomials recomputed and compared over Z.
    /// "congruence": p^n divides the ghost numerator, shown modulo p^n.
    std::string method;
    std::size_t sum_terms = 0;
    std::size_t product_terms = 0;

    bool ok() const { return sum_ok && product_ok; }
};

/// Universal Witt addition and multiplication polynomials S_n, P_n over Z
/// (and negation N_n), built by the ghost recursion with exact division.
///
/// One instance per prime; levels are appended on demand and never
/// modified afterwards, so readers holding a level see a finished entry.
class UnivWittPolys {
public:
    static constexpr int kDefaultCeiling = 5;
    static constexpr std::size_t kDefaultTermBudget = 2'500'000;

    explicit UnivWittPolys(std::uint32_t p, int ceiling = kDefaultCeiling,
                           std::size_t term_budget = kDefaultTermBudget)
        : p_(p), ceiling_(ceiling), budget_(term_budget), layout_(p, ceiling) {}

    /// Process-wide memo keyed by prime.
    static UnivWittPolys& shared(std::uint32_t p) {
        static std::mutex mu;
        static std::map<std::uint32_t, std::unique_ptr<UnivWittPolys>> cache;
        std::lock_guard lock(mu);
        auto& slot = cache[p];
        if (!slot) slot = std::make_unique<UnivWittPolys>(p);
        return *slot;
    }

    std::uint32_t prime() const { return p_; }
    int ceiling() const { return ceiling_; }
    const MonomialLayout& layout() const { return layout_; }

    const IntPoly& sum(int n) {
        ensure(n);
        return levels_[static_cast<std::size_t>(n)].sum;
    }
    const IntPoly& product(int n) {
        ensure(n);
        return levels_[static_cast<std::size_t>(n)].product;
    }
    const IntPoly& negation(int n) {
        ensure(n);
        return levels_[static_cast<std::size_t>(n)].negation;
    }
    const IntPoly& sum_mod_p(int n) {
        ensure(n);
        return levels_[static_cast<std::size_t>(n)].sum_mod_p;
    }
    const IntPoly& product_mod_p(int n) {
        ensure(n);
        return levels_[static_cast<std::size_t>(n)].product_mod_p;
    }
    const IntPoly& negation_mod_p(int n) {
        ensure(n);
        return levels_[static_cast<std::size_t>(n)].negation_mod_p;
    }

    IntPoly x(int i) const { return IntPoly::variable(&layout_, layout_.var(0, i)); }
    IntPoly y(int i) const { return IntPoly::variable(&layout_, layout_.var(1, i)); }

    /// w_n(Z) = sum_{i <= n} p^i Z_i^{p^{n-i}} for Z = X (side 0) or Y (side 1).
    IntPoly ghost(int side, int n) const {
        IntPoly out(&layout_);
        Integer pi = 1;
        for (int i = 0; i <= n; ++i) {
            std::uint64_t e = 1;
            for (int k = 0; k < n - i; ++k) e *= p_;
            out = out + IntPoly::monomial(&layout_, layout_.unit(layout_.var(side, i), e), pi);
            pi *= p_;
        }
        return out;
    }

    /// Recomputes w_n(S_0..S_n) and w_n(P_0..P_n) from the cached
    /// polynomials by direct exponentiation and compares over Z.
    GhostCheck check_expanded(int n) {
        ensure(n);
        GhostCheck r{p_, n, false, false, "expanded", sum(n).size(), product(n).size()};
        IntPoly ws(&layout_), wp(&layout_), wn(&layout_);
        Integer pi = 1;
        for (int i = 0; i <= n; ++i) {
            std::uint64_t e = ipow_u(p_, n - i);
            ws = ws + sum(i).power(e, budget_).scaled(pi);
            wp = wp + product(i).power(e, budget_).scaled(pi);
            pi *= p_;
        }
        r.sum_ok = ws == ghost(0, n) + ghost(1, n);
        r.product_ok = wp == ghost(0, n).multiply(ghost(1, n), budget_);
        return r;
    }

    /// Shows that the level-n ghost numerators are divisible by p^n using
    /// only levels < n: S_i^{p^{n-i}} = phi(S_i^{p^{n-1-i}}) mod p^{n-i},
    /// because A = B mod p^j implies A^p = B^p mod p^{j+1} and S^p = phi(S)
    /// mod p. Integrality of the quotient is exactly the ghost identity over Z.
    GhostCheck check_congruence(int n) {
        require(n >= 1 && n <= ceiling_, ErrorCode::CeilingExceeded, "level out of range");
        ensure(n - 1);
        Integer pn = ipow(Integer(p_), static_cast<unsigned long>(n));
        IntPoly num_s = ghost(0, n) + ghost(1, n);
        IntPoly num_p = ghost(0, n).multiply(ghost(1, n), budget_);
        Integer pi = 1;
        for (int i = 0; i < n; ++i) {
            const Level& li = levels_[static_cast<std::size_t>(i)];
            Integer modulus = ipow(Integer(p_), static_cast<unsigned long>(n - i));
            num_s = num_s - li.sum_powers[static_cast<std::size_t>(n - 1 - i)].reduced_mod(modulus).frobenius_twist().scaled(pi);
            num_p = num_p - li.product_powers[static_cast<std::size_t>(n - 1 - i)].reduced_mod(modulus).frobenius_twist().scaled(pi);
            pi *= p_;
        }
        GhostCheck r{p_, n, num_s.reduced_mod(pn).is_zero(), num_p.reduced_mod(pn).is_zero(), "congruence", 0, 0};
        return r;
    }

    bool has_level(int n) const { return n < static_cast<int>(levels_.size()); }

    void ensure(int n) {
        require(n >= 0 && n <= ceiling_, ErrorCode::CeilingExceeded,
                "Witt level " + std::to_string(n) + " above ceiling " + std::to_string(ceiling_));
        std::lock_guard lock(mu_);
        while (static_cast<int>(levels_.size()) <= n) build_next();
    }

private:
    struct Level {
        IntPoly sum, product, negation;
        IntPoly sum_mod_p, product_mod_p, negation_mod_p;
        // powers[j] = poly^{p^j}, grown as higher levels need them.
        std::vector<IntPoly> sum_powers, product_powers, negation_powers;
    };

    static std::uint64_t ipow_u(std::uint64_t b, int e) {
        std::uint64_t r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    }

    static IntPoly& power_slot(std::vector<IntPoly>& powers, int j, std::uint32_t p, std::size_t budget) {
        while (static_cast<int>(powers.size()) <= j) powers.push_back(powers.back().power(p, budget));
        return powers[static_cast<std::size_t>(j)];
    }

    void build_next() {
        const int n = static_cast<int>(levels_.size());
        const Integer pn = ipow(Integer(p_), static_cast<unsigned long>(n));
        IntPoly num_s = ghost(0, n) + ghost(1, n);
        IntPoly num_p = ghost(0, n).multiply(ghost(1, n), budget_);
        IntPoly num_n = IntPoly(&layout_) - ghost(0, n);
        Integer pi = 1;
        for (int i = 0; i < n; ++i) {
            Level& li = levels_[static_cast<std::size_t>(i)];
            num_s = num_s - power_slot(li.sum_powers, n - i, p_, budget_).scaled(pi);
            num_p = num_p - power_slot(li.product_powers, n - i, p_, budget_).scaled(pi);
            num_n = num_n - power_slot(li.negation_powers, n - i, p_, budget_).scaled(pi);
            pi *= p_;
        }
        Level lvl;
        bool ok_s = false, ok_p = false, ok_n = false;
        lvl.sum = num_s.divided_exact(pn, ok_s);
        lvl.product = num_p.divided_exact(pn, ok_p);
        lvl.negation = num_n.divided_exact(pn, ok_n);
        if (!ok_s || !ok_p || !ok_n)
            fail(ErrorCode::NotDivisible, "ghost numerator not divisible by p^" + std::to_string(n));
        Integer p(p_);
        lvl.sum_mod_p = lvl.sum.reduced_mod(p);
        lvl.product_mod_p = lvl.product.reduced_mod(p);
        lvl.negation_mod_p = lvl.negation.reduced_mod(p);
        lvl.sum_powers.push_back(lvl.sum);
        lvl.product_powers.push_back(lvl.product);
        lvl.negation_powers.push_back(lvl.negation);
        levels_.push_back(std::move(lvl));
    }

    std::uint32_t p_;
    int ceiling_;
    std::size_t budget_;
    MonomialLayout layout_;
    std::vector<Level> levels_;
    std::recursive_mutex mu_;
};

}  // namespace perfectoid::witt
