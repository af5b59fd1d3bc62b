#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "perfectoid/char0/bridge.hpp"
#include "perfectoid/char0/untilt_series.hpp"
#include "perfectoid/charp/tilt_series.hpp"
#include "perfectoid/core/digits.hpp"
#include "perfectoid/core/error.hpp"
#include "perfectoid/field/kfield.hpp"
#include "perfectoid/witt/witt_vector.hpp"

namespace perfectoid::cli {

/// Which ring an expression is read into. 'p' is legal except on the tilt
/// side, 't' only on the tilt and Witt sides.
enum class Side { Untilt, Tilt, Field, Witt };

struct Node {
    enum Kind { Int, Base, Var, Add, Sub, Mul, Pow };
    Kind kind = Int;
    std::size_t pos = 0;
    std::int64_t value = 0;  // Int
    char base = 'p';         // Base
    int var = 0;             // Var
    Rational exponent;       // Pow
    std::vector<Node> kids;
};

namespace detail {

class Reader {
public:
    explicit Reader(std::string_view src) : src_(src) {}

    Node parse() {
        Node n = expr();
        skip();
        if (pos_ != src_.size()) syntax("unexpected '" + std::string(1, src_[pos_]) + "'");
        return n;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;

    [[noreturn]] void syntax(const std::string& msg) const {
        fail(ErrorCode::SyntaxError, "at position " + std::to_string(pos_) + ": " + msg);
    }
    void skip() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) syntax(std::string("expected '") + c + "'");
    }

    Integer digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) syntax("expected a number");
        return Integer(std::string(src_.substr(start, pos_ - start)));
    }

    Node expr() {
        Node acc = term();
        while (true) {
            skip();
            std::size_t at = pos_;
            Node::Kind k;
            if (eat('+')) k = Node::Add;
            else if (eat('-')) k = Node::Sub;
            else return acc;
            Node n{k, at};
            n.kids.push_back(std::move(acc));
            n.kids.push_back(term());
            acc = std::move(n);
        }
    }

    Node term() {
        Node acc = factor();
        while (true) {
            skip();
            std::size_t at = pos_;
            if (!eat('*')) return acc;
            Node n{Node::Mul, at};
            n.kids.push_back(std::move(acc));
            n.kids.push_back(factor());
            acc = std::move(n);
        }
    }

    Node factor() {
        Node a = atom();
        skip();
        std::size_t at = pos_;
        if (!eat('^')) return a;
        expect('(');
        skip();
        bool negative = false;
        if (eat('-')) negative = true;
        else eat('+');
        Integer num = digits();
        Integer den = 1;
        if (eat('/')) {
            den = digits();
            if (den == 0) syntax("zero denominator");
        }
        expect(')');
        Node n{Node::Pow, at};
        n.exponent = make_rational(negative ? Integer(-num) : num, den);
        n.kids.push_back(std::move(a));
        return n;
    }

    Node atom() {
        skip();
        if (pos_ >= src_.size()) syntax("unexpected end of input");
        const char c = src_[pos_];
        Node n{Node::Int, pos_};
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer v = digits();
            if (!v.fits_slong_p()) fail(ErrorCode::Overflow, "integer literal too large");
            n.value = v.get_si();
            return n;
        }
        if (c == '(') {
            ++pos_;
            Node inner = expr();
            expect(')');
            return inner;
        }
        if (c == 'p' || c == 't') {
            ++pos_;
            n.kind = Node::Base;
            n.base = c;
            return n;
        }
        for (int j = 0; j < kMaxVariables; ++j)
            if (c == kVariableNames[j]) {
                ++pos_;
                n.kind = Node::Var;
                n.var = j;
                return n;
            }
        syntax("unexpected '" + std::string(1, c) + "'");
    }
};

}  // namespace detail

inline Node parse_ast(std::string_view src) { return detail::Reader(src).parse(); }

/// Variables, Laurent variables and base letters an expression uses.
struct Shape {
    int d = 0;
    std::vector<bool> laurent = std::vector<bool>(kMaxVariables, false);
    bool has_p = false;
    bool has_t = false;
    std::optional<std::size_t> p_pos, t_pos;

    void merge(const Shape& o) {
        d = std::max(d, o.d);
        for (int j = 0; j < kMaxVariables; ++j) laurent[static_cast<std::size_t>(j)] = laurent[static_cast<std::size_t>(j)] || o.laurent[static_cast<std::size_t>(j)];
        has_p = has_p || o.has_p;
        has_t = has_t || o.has_t;
        if (!p_pos) p_pos = o.p_pos;
        if (!t_pos) t_pos = o.t_pos;
    }

    Signature signature(std::uint32_t p) const {
        return Signature(p, d, std::vector<bool>(laurent.begin(), laurent.begin() + d));
    }
};

namespace detail {

inline void scan(const Node& n, bool negative, Shape& s) {
    switch (n.kind) {
        case Node::Var:
            s.d = std::max(s.d, n.var + 1);
            if (negative) s.laurent[static_cast<std::size_t>(n.var)] = true;
            return;
        case Node::Base:
            if (n.base == 'p') {
                s.has_p = true;
                if (!s.p_pos) s.p_pos = n.pos;
            } else {
                s.has_t = true;
                if (!s.t_pos) s.t_pos = n.pos;
            }
            return;
        case Node::Pow:
            scan(n.kids[0], negative || n.exponent < 0, s);
            return;
        default:
            for (const auto& k : n.kids) scan(k, negative, s);
    }
}

}  // namespace detail

inline Shape shape_of(const Node& n) {
    Shape s;
    detail::scan(n, false, s);
    return s;
}

inline void check_side(const Shape& s, Side side) {
    if (side == Side::Tilt && s.has_p)
        fail(ErrorCode::SideMismatch, "'p' at position " + std::to_string(*s.p_pos) + " on the tilt side");
    if ((side == Side::Untilt || side == Side::Field) && s.has_t)
        fail(ErrorCode::SideMismatch, "'t' at position " + std::to_string(*s.t_pos) + " on the untilt side");
}

/// Checks that every exponent denominator is a p-power within the depth budget.
inline void check_exponents(const Node& n, std::uint32_t p, int depth) {
    if (n.kind == Node::Pow) {
        PExp e = PExp::from_rational(p, n.exponent);
        if (e.den_exp() > depth)
            fail(ErrorCode::InvalidExponent, "exponent " + to_string(n.exponent) + " at position " + std::to_string(n.pos) +
                                                 " needs depth " + std::to_string(e.den_exp()) + " > " + std::to_string(depth));
    }
    for (const auto& k : n.kids) check_exponents(k, p, depth);
}

/// A value together with its monomial key when it is exactly base^q * T^m
/// with coefficient 1, the only shape that takes fractional powers.
template <class E>
struct Value {
    E elem;
    std::optional<DigitKey> mono;
};

inline DigitKey scale_key(const DigitKey& k, const Rational& r, int depth) {
    const std::uint32_t p = k.q.prime();
    auto scale = [&](const PExp& e) {
        PExp out = PExp::from_rational(p, e.to_rational() * r);
        if (out.den_exp() > depth) fail(ErrorCode::InvalidExponent, "power needs depth " + std::to_string(out.den_exp()));
        return out;
    };
    DigitKey out{scale(k.q), k.m};
    for (auto& e : out.m) e = scale(e);
    return out;
}

template <class B>
Value<typename B::Elem> evaluate(const Node& n, const B& b) {
    using V = Value<typename B::Elem>;
    const std::uint32_t p = b.prime();
    const int d = b.vars();
    auto key = [&](const PExp& q, int var) {
        DigitKey k{q, MExp(static_cast<std::size_t>(d), PExp::integer(p, 0))};
        if (var >= 0) k.m[static_cast<std::size_t>(var)] = PExp::integer(p, 1);
        return k;
    };
    switch (n.kind) {
        case Node::Int: {
            V v{b.from_int(n.value), std::nullopt};
            if (n.value == 1) v.mono = key(PExp::integer(p, 0), -1);
            return v;
        }
        case Node::Base:
            if (b.base_is_monomial(n.base)) {
                DigitKey k = key(PExp::integer(p, 1), -1);
                return V{b.from_key(k), k};
            }
            return V{b.base_elem(n.base), std::nullopt};
        case Node::Var: {
            DigitKey k = key(PExp::integer(p, 0), n.var);
            return V{b.from_key(k), k};
        }
        case Node::Add:
        case Node::Sub: {
            auto x = evaluate(n.kids[0], b), y = evaluate(n.kids[1], b);
            return V{n.kind == Node::Add ? b.add(x.elem, y.elem) : b.sub(x.elem, y.elem), std::nullopt};
        }
        case Node::Mul: {
            auto x = evaluate(n.kids[0], b), y = evaluate(n.kids[1], b);
            if (x.mono && y.mono) {
                DigitKey k{x.mono->q + y.mono->q, add_m(x.mono->m, y.mono->m)};
                return V{b.from_key(k), k};
            }
            return V{b.mul(x.elem, y.elem), std::nullopt};
        }
        case Node::Pow: {
            auto x = evaluate(n.kids[0], b);
            if (x.mono) {
                DigitKey k = scale_key(*x.mono, n.exponent, b.depth());
                return V{b.from_key(k), k};
            }
            if (n.exponent.get_den() != 1)
                fail(ErrorCode::InvalidExponent, "fractional power at position " + std::to_string(n.pos) +
                                                     " needs a monomial with coefficient 1");
            if (n.exponent < 0)
                fail(ErrorCode::InvalidExponent, "negative power at position " + std::to_string(n.pos) + " needs a monomial");
            if (!n.exponent.get_num().fits_ulong_p()) fail(ErrorCode::Overflow, "exponent too large");
            return V{b.pow(x.elem, n.exponent.get_num().get_ui()), std::nullopt};
        }
    }
    fail(ErrorCode::SyntaxError, "bad node");
}

struct UntiltBackend {
    using Elem = char0::UntiltSeries;
    char0::Cone cone;
    ExtRational precision;
    int depth_ = 8;

    std::uint32_t prime() const { return cone.prime(); }
    int vars() const { return cone.signature().d; }
    int depth() const { return depth_; }
    Elem from_int(std::int64_t n) const { return Elem::constant(cone, n, precision, depth_); }
    bool base_is_monomial(char) const { return true; }
    Elem base_elem(char) const { return from_key(DigitKey{PExp::integer(prime(), 1), cone.signature().zero_m()}); }
    Elem from_key(const DigitKey& k) const { return Elem::monomial(cone, 1, k.q, k.m, precision, depth_); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem pow(const Elem& a, std::uint64_t e) const { return char0::pow(a, e); }
};

struct TiltBackend {
    using Elem = charp::TiltSeries;
    Signature sig;
    ExtRational precision;
    int depth_ = 8;

    std::uint32_t prime() const { return sig.p; }
    int vars() const { return sig.d; }
    int depth() const { return depth_; }
    Elem from_int(std::int64_t n) const { return Elem::constant(sig, n, precision, depth_); }
    bool base_is_monomial(char) const { return true; }
    Elem base_elem(char) const { return from_key(DigitKey{PExp::integer(prime(), 1), sig.zero_m()}); }
    Elem from_key(const DigitKey& k) const { return Elem::monomial(sig, 1, k.q, k.m, precision, depth_); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem pow(const Elem& a, std::uint64_t e) const { return charp::pow(a, e); }
};

struct FieldBackend {
    using Elem = field::KPoly;
    std::uint32_t p = 2;
    int d = 1;
    int depth_ = 8;

    std::uint32_t prime() const { return p; }
    int vars() const { return d; }
    int depth() const { return depth_; }
    Elem from_int(std::int64_t n) const { return Elem::constant(p, d, field::KElem(p, Rational(static_cast<long>(n)))); }
    bool base_is_monomial(char) const { return true; }
    Elem base_elem(char) const { return from_int(p); }
    Elem from_key(const DigitKey& k) const { return Elem::monomial(p, field::KElem::monomial(p, 1, k.q), k.m); }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem pow(const Elem& a, std::uint64_t e) const {
        require(e <= 1u << 16, ErrorCode::Overflow, "exponent too large");
        return field::pow(a, static_cast<unsigned>(e));
    }
};

/// Witt vectors over a perfect base. t^q T^m is read as its Teichmuller
/// lift and p as F(V(1)), so "t - p" is [t] - p.
template <class R>
struct WittBackend {
    using Elem = witt::WittVec<R>;
    const witt::WittRing<R>* ring;
    int d = 0;
    int depth_ = 8;

    std::uint32_t prime() const { return ring->prime(); }
    int vars() const { return d; }
    int depth() const { return depth_; }
    Elem from_int(std::int64_t n) const { return ring->from_integer(n); }
    bool base_is_monomial(char c) const { return c == 't'; }
    Elem base_elem(char) const { return ring->p_element(); }
    Elem from_key(const DigitKey& k) const {
        if constexpr (std::is_same_v<R, witt::TiltRing>) {
            const auto& base = ring->base();
            return ring->teichmuller(charp::TiltSeries::monomial(base.signature(), 1, k.q, k.m, base.precision(), base.depth()));
        } else {
            require(k.q.is_zero() && m_is_zero(k.m), ErrorCode::SideMismatch, "F_p base has no t or variables");
            return ring->one();
        }
    }
    Elem add(const Elem& a, const Elem& b) const { return ring->add(a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return ring->sub(a, b); }
    Elem mul(const Elem& a, const Elem& b) const { return ring->mul(a, b); }
    Elem pow(const Elem& a, std::uint64_t e) const { return ring->pow(a, e); }
};

struct ParseOptions {
    std::uint32_t p = 2;
    int depth = 8;
    ExtRational precision = ExtRational::infinity();
    std::optional<Signature> signature;  // inferred from the text when absent
};

namespace detail {

inline Signature resolve_signature(const Shape& s, const ParseOptions& opt) {
    if (!opt.signature) return s.signature(opt.p);
    const Signature& sig = *opt.signature;
    require(s.d <= sig.d, ErrorCode::DomainMismatch, "expression uses more variables than the signature");
    for (int j = 0; j < s.d; ++j)
        require(!s.laurent[static_cast<std::size_t>(j)] || sig.laurent[static_cast<std::size_t>(j)], ErrorCode::DomainMismatch,
                std::string("negative power of ") + kVariableNames[j] + " outside a Laurent signature");
    return sig;
}

inline Node prepare(std::string_view src, Side side, const ParseOptions& opt, Shape& shape) {
    Node ast = parse_ast(src);
    shape = shape_of(ast);
    check_side(shape, side);
    check_exponents(ast, opt.p, opt.depth);
    return ast;
}

}  // namespace detail

inline char0::UntiltSeries parse_untilt(std::string_view src, const ParseOptions& opt) {
    Shape s;
    Node ast = detail::prepare(src, Side::Untilt, opt, s);
    UntiltBackend b{char0::standard_cone(detail::resolve_signature(s, opt)), opt.precision, opt.depth};
    return evaluate(ast, b).elem;
}

inline charp::TiltSeries parse_tilt(std::string_view src, const ParseOptions& opt) {
    Shape s;
    Node ast = detail::prepare(src, Side::Tilt, opt, s);
    TiltBackend b{detail::resolve_signature(s, opt), opt.precision, opt.depth};
    return evaluate(ast, b).elem;
}

inline field::KPoly parse_field(std::string_view src, const ParseOptions& opt) {
    Shape s;
    Node ast = detail::prepare(src, Side::Field, opt, s);
    FieldBackend b{opt.p, detail::resolve_signature(s, opt).d, opt.depth};
    return evaluate(ast, b).elem;
}

template <class R>
witt::WittVec<R> parse_witt(std::string_view src, const witt::WittRing<R>& ring, int depth) {
    ParseOptions opt{ring.prime(), depth};
    Shape s;
    Node ast = detail::prepare(src, Side::Witt, opt, s);
    int d = 0;
    if constexpr (std::is_same_v<R, witt::TiltRing>) {
        d = ring.base().signature().d;
        require(s.d <= d, ErrorCode::DomainMismatch, "expression uses more variables than the Witt base");
    }
    WittBackend<R> b{&ring, d, depth};
    return evaluate(ast, b).elem;
}

inline std::string print(const char0::UntiltSeries& x) { return render_digits(x.digits(), 'p'); }
inline std::string print(const charp::TiltSeries& x) { return render_digits(x.digits(), 't'); }

}  // namespace perfectoid::cli
