#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "perfectoid/charp/tilt_series.hpp"
#include "perfectoid/core/error.hpp"
#include "perfectoid/witt/ghost.hpp"

namespace perfectoid::witt {

/// A perfect F_p-algebra with exact p-th roots.
template <class R>
concept PerfectRing = requires(const R& r, const typename R::Element& a, std::int64_t n) {
    { r.prime() } -> std::convertible_to<std::uint32_t>;
    { r.zero() } -> std::same_as<typename R::Element>;
    { r.from_int(n) } -> std::same_as<typename R::Element>;
    { r.add(a, a) } -> std::same_as<typename R::Element>;
    { r.mul(a, a) } -> std::same_as<typename R::Element>;
    { r.neg(a) } -> std::same_as<typename R::Element>;
    { r.frobenius(a) } -> std::same_as<typename R::Element>;
    { r.root(a) } -> std::same_as<typename R::Element>;
    { r.is_zero(a) } -> std::convertible_to<bool>;
    { r.is_unit(a) } -> std::convertible_to<bool>;
    { r.equal(a, a) } -> std::convertible_to<bool>;
    { r.str(a) } -> std::convertible_to<std::string>;
};

/// The prime field, where Frobenius and its inverse are the identity.
class FpRing {
public:
    using Element = std::uint32_t;

    explicit FpRing(std::uint32_t p) : p_(p) {}

    std::uint32_t prime() const { return p_; }
    Element zero() const { return 0; }
    Element from_int(std::int64_t n) const { return mod_p(n, p_); }
    Element add(Element a, Element b) const { return (a + b) % p_; }
    Element mul(Element a, Element b) const {
        return static_cast<Element>((static_cast<std::uint64_t>(a) * b) % p_);
    }
    Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
    Element frobenius(Element a) const { return a; }
    Element root(Element a) const { return a; }
    bool is_zero(Element a) const { return a == 0; }
    bool is_unit(Element a) const { return a != 0; }
    bool equal(Element a, Element b) const { return a == b; }
    std::string str(Element a) const { return std::to_string(a); }

private:
    std::uint32_t p_;
};

/// The tilt-side digit ring F_p[t^{1/p^inf}, T^{1/p^inf}...] at a fixed
/// signature, precision and depth.
class TiltRing {
public:
    using Element = charp::TiltSeries;

    TiltRing(Signature sig, ExtRational precision = ExtRational::infinity(), int depth = 8)
        : sig_(std::move(sig)), precision_(std::move(precision)), depth_(depth) {}

    std::uint32_t prime() const { return sig_.p; }
    const Signature& signature() const { return sig_; }
    const ExtRational& precision() const { return precision_; }
    int depth() const { return depth_; }

    Element zero() const { return Element::zero(sig_, precision_, depth_); }
    Element from_int(std::int64_t n) const { return Element::constant(sig_, n, precision_, depth_); }
    Element monomial(std::int64_t c, const PExp& q, const MExp& m) const {
        return Element::monomial(sig_, c, q, m, precision_, depth_);
    }
    Element add(const Element& a, const Element& b) const { return a + b; }
    Element mul(const Element& a, const Element& b) const { return a * b; }
    Element neg(const Element& a) const { return -a; }
    Element frobenius(const Element& a) const { return charp::tilt_frobenius(a, charp::Direction::Forward); }
    Element root(const Element& a) const { return charp::tilt_frobenius(a, charp::Direction::Inverse); }
    bool is_zero(const Element& a) const { return a.is_zero(); }
    bool is_unit(const Element& a) const { return a.is_unit(); }
    bool equal(const Element& a, const Element& b) const { return equal_at_shared_precision(a, b); }
    std::string str(const Element& a) const { return a.str(); }

private:
    Signature sig_;
    ExtRational precision_;
    int depth_;
};

template <PerfectRing R>
struct WittVec {
    std::vector<typename R::Element> coords;

    int length() const { return static_cast<int>(coords.size()); }
};

enum class WittOp { Add, Mul, Neg };

struct DistinguishedReport {
    bool distinguished = false;
    std::string a1;
};

/// Truncated p-typical Witt vectors W_N(R) in Witt coordinates.
template <PerfectRing R>
class WittRing {
public:
    using Element = typename R::Element;
    using Vec = WittVec<R>;

    WittRing(R base, int length) : base_(std::move(base)), length_(length) {
        require(length >= 1, ErrorCode::Usage, "Witt length must be positive");
        polys_ = &UnivWittPolys::shared(base_.prime());
        require(length - 1 <= polys_->ceiling(), ErrorCode::CeilingExceeded,
                "Witt length " + std::to_string(length) + " above ceiling");
    }

    const R& base() const { return base_; }
    int length() const { return length_; }
    std::uint32_t prime() const { return base_.prime(); }

    Vec zero(int n = -1) const { return Vec{std::vector<Element>(static_cast<std::size_t>(n < 0 ? length_ : n), base_.zero())}; }
    Vec teichmuller(const Element& a, int n = -1) const {
        Vec v = zero(n);
        v.coords[0] = a;
        return v;
    }
    Vec one(int n = -1) const { return teichmuller(base_.from_int(1), n); }
    /// p = F(V(1)) has coordinates (0, 1, 0, ...).
    Vec p_element(int n = -1) const { return frobenius(verschiebung(one(n))); }

    Vec from_integer(std::int64_t k, int n = -1) const {
        bool negative = k < 0;
        std::uint64_t m = negative ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
        Vec acc = zero(n), base = one(n);
        while (m) {
            if (m & 1) acc = add(acc, base);
            m >>= 1;
            if (m) base = add(base, base);
        }
        return negative ? neg(acc) : acc;
    }

    Vec arith(const Vec& x, const Vec& y, WittOp op) const {
        require(x.length() == y.length(), ErrorCode::DomainMismatch, "Witt length mismatch");
        const int n = x.length();
        Vec out = zero(n);
        PowerCache cache(base_, x, y);
        for (int k = 0; k < n; ++k) {
            if (op == WittOp::Neg && prime() != 2) {
                out.coords[static_cast<std::size_t>(k)] = base_.neg(x.coords[static_cast<std::size_t>(k)]);
                continue;
            }
            const IntPoly& poly = op == WittOp::Add   ? polys_->sum_mod_p(k)
                                  : op == WittOp::Mul ? polys_->product_mod_p(k)
                                                      : polys_->negation_mod_p(k);
            out.coords[static_cast<std::size_t>(k)] = evaluate(poly, cache);
        }
        return out;
    }

    Vec add(const Vec& x, const Vec& y) const { return arith(x, y, WittOp::Add); }
    Vec mul(const Vec& x, const Vec& y) const { return arith(x, y, WittOp::Mul); }
    Vec neg(const Vec& x) const { return arith(x, x, WittOp::Neg); }
    Vec sub(const Vec& x, const Vec& y) const { return add(x, neg(y)); }

    Vec pow(const Vec& x, std::uint64_t e) const {
        Vec result = one(x.length()), base = x;
        while (e) {
            if (e & 1) result = mul(result, base);
            e >>= 1;
            if (e) base = mul(base, base);
        }
        return result;
    }

    Vec frobenius(const Vec& x) const {
        Vec out = x;
        for (auto& c : out.coords) c = base_.frobenius(c);
        return out;
    }

    Vec verschiebung(const Vec& x) const {
        Vec out = zero(x.length());
        for (int i = 1; i < x.length(); ++i) out.coords[static_cast<std::size_t>(i)] = x.coords[static_cast<std::size_t>(i - 1)];
        return out;
    }

    /// Inverse of multiplication by p = FV: y = (0, z_0^p, z_1^p, ...) gives
    /// z_i = y_{i+1}^{1/p}. The result is one coordinate shorter.
    Vec div_p(const Vec& y) const {
        require(y.length() >= 2, ErrorCode::NotDivisible, "vector too short to divide by p");
        if (!base_.is_zero(y.coords[0])) fail(ErrorCode::NotDivisible, "coordinate 0 is nonzero");
        Vec out{std::vector<Element>{}};
        for (int i = 1; i < y.length(); ++i) out.coords.push_back(base_.root(y.coords[static_cast<std::size_t>(i)]));
        return out;
    }

    /// delta(x) = (phi(x) - x^p) / p, of length N - 1.
    Vec delta(const Vec& x) const { return div_p(sub(frobenius(x), pow(x, prime()))); }

    std::vector<Element> teich_expansion(const Vec& x) const {
        std::vector<Element> digits;
        Vec cur = x;
        while (true) {
            digits.push_back(cur.coords[0]);
            if (cur.length() == 1) break;
            cur = div_p(sub(cur, teichmuller(cur.coords[0], cur.length())));
        }
        return digits;
    }

    /// Sum of [a_i] p^i in length N.
    Vec from_teich_digits(const std::vector<Element>& digits, int n = -1) const {
        int len = n < 0 ? length_ : n;
        Vec acc = zero(len), pk = one(len), p = p_element(len);
        for (std::size_t i = 0; i < digits.size() && static_cast<int>(i) < len; ++i) {
            acc = add(acc, mul(teichmuller(digits[i], len), pk));
            pk = mul(pk, p);
        }
        return acc;
    }

    DistinguishedReport is_distinguished(const Vec& x) const {
        require(x.length() >= 2, ErrorCode::Usage, "distinguished test needs length >= 2");
        auto digits = teich_expansion(x);
        return {base_.is_unit(digits[1]), base_.str(digits[1])};
    }

    bool equal(const Vec& x, const Vec& y) const {
        if (x.length() != y.length()) return false;
        for (int i = 0; i < x.length(); ++i)
            if (!base_.equal(x.coords[static_cast<std::size_t>(i)], y.coords[static_cast<std::size_t>(i)])) return false;
        return true;
    }

    std::string str(const Vec& x) const {
        std::string out = "(";
        for (int i = 0; i < x.length(); ++i) {
            if (i) out += ", ";
            out += base_.str(x.coords[static_cast<std::size_t>(i)]);
        }
        return out + ")";
    }

private:
    /// Memoized powers X_i^e, Y_i^e for one evaluation.
    class PowerCache {
    public:
        PowerCache(const R& base, const Vec& x, const Vec& y) : base_(base), x_(x), y_(y) {}

        const Element& get(int side, int i, std::uint64_t e) {
            auto key = std::make_tuple(side, i, e);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
            const Element& v = (side == 0 ? x_ : y_).coords[static_cast<std::size_t>(i)];
            return cache_.emplace(key, power(v, e)).first->second;
        }
        bool is_zero(int side, int i) const {
            return base_.is_zero((side == 0 ? x_ : y_).coords[static_cast<std::size_t>(i)]);
        }

    private:
        Element power(const Element& v, std::uint64_t e) const {
            // Base-p digits of e: v^{c p^k} = frob^k(v)^c.
            Element result = base_.from_int(1), b = v;
            const std::uint64_t p = base_.prime();
            while (e) {
                for (std::uint64_t c = e % p; c > 0; --c) result = base_.mul(result, b);
                e /= p;
                if (e) b = base_.frobenius(b);
            }
            return result;
        }

        const R& base_;
        const Vec& x_;
        const Vec& y_;
        std::map<std::tuple<int, int, std::uint64_t>, Element> cache_;
    };

    Element evaluate(const IntPoly& poly, PowerCache& cache) const {
        const MonomialLayout& layout = poly.layout() ? *poly.layout() : polys_->layout();
        const int level = layout.level();
        Element acc = base_.zero();
        for (const auto& [key, coef] : poly.terms()) {
            Element term = base_.from_int(static_cast<std::int64_t>(coef.get_ui()));
            bool zero = false;
            for (int side = 0; side < 2 && !zero; ++side) {
                for (int i = 0; i <= level; ++i) {
                    std::uint64_t e = layout.exponent(key, layout.var(side, i));
                    if (!e) continue;
                    if (cache.is_zero(side, i)) {
                        zero = true;
                        break;
                    }
                    term = base_.mul(term, cache.get(side, i, e));
                }
            }
            if (!zero) acc = base_.add(acc, term);
        }
        return acc;
    }

    R base_;
    int length_;
    UnivWittPolys* polys_ = nullptr;
};

}  // namespace perfectoid::witt
