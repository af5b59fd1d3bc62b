#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "perfectoid/banach/norms.hpp"
#include "perfectoid/berkovich/domain.hpp"
#include "perfectoid/berkovich/point.hpp"
#include "perfectoid/berkovich/tilting.hpp"
#include "perfectoid/cech/complex.hpp"
#include "perfectoid/cech/torus.hpp"
#include "perfectoid/char0/bridge.hpp"
#include "perfectoid/char0/cone.hpp"
#include "perfectoid/cli/parser.hpp"
#include "perfectoid/oracle/cech_grid.hpp"
#include "perfectoid/oracle/closure_oracle.hpp"
#include "perfectoid/oracle/cyclotomic.hpp"
#include "perfectoid/oracle/eisenstein.hpp"
#include "perfectoid/verify/generators.hpp"
#include "perfectoid/witt/ghost.hpp"
#include "perfectoid/witt/theta.hpp"
#include "perfectoid/witt/witt_vector.hpp"

namespace perfectoid::verify {

/// Counts cases and keeps the first failure message.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        ++cases_;
        if (ok) return;
        ++failures_;
        if (first_.empty()) first_ = what;
    }
    int cases() const { return cases_; }
    int failures() const { return failures_; }
    const std::string& first_failure() const { return first_; }

private:
    int cases_ = 0;
    int failures_ = 0;
    std::string first_;
};

struct SuiteContext {
    std::uint32_t p = 2;
    std::uint64_t seed = 20240601;
    /// Runs the command line in-process and returns its stdout; used by the
    /// cli suites. Empty in contexts without a front end.
    std::function<std::string(const std::vector<std::string>&)> run_cli;
};

struct Suite {
    std::string module;
    std::string name;
    std::function<void(const SuiteContext&, Check&)> body;
};

struct SuiteResult {
    std::string module;
    std::string name;
    int cases = 0;
    int failures = 0;
    std::string first_failure;
    bool passed() const { return failures == 0 && cases > 0; }
};

namespace suites {

using char0::Cone;
using char0::UntiltSeries;
using charp::TiltSeries;
using field::KElem;
using field::KPoly;

inline Rational R(long a, long b = 1) { return make_rational(a, b); }

/// The configured prime and one more, so every run covers two primes.
inline std::vector<std::uint32_t> primes(const SuiteContext& ctx) {
    std::vector<std::uint32_t> out{ctx.p};
    out.push_back(ctx.p == 2 ? 3 : 2);
    return out;
}

inline witt::WittVec<witt::TiltRing> random_witt(Rng& rng, const witt::TiltRing& base, int n) {
    witt::WittVec<witt::TiltRing> v;
    for (int i = 0; i < n; ++i)
        v.coords.push_back(random_tilt(rng, base.signature(), 2, 1, ExtRational::infinity(), 2, 2).with_depth(base.depth()));
    return v;
}

inline witt::WittVec<witt::FpRing> random_fp_witt(Rng& rng, std::uint32_t p, int n) {
    witt::WittVec<witt::FpRing> v;
    for (int i = 0; i < n; ++i) v.coords.push_back(static_cast<std::uint32_t>(rng.uniform(0, p - 1)));
    return v;
}

inline ExtRational gauss_v(const KPoly& f) {
    ExtRational v = ExtRational::infinity();
    for (const auto& [m, c] : f.terms()) v = min(v, c.valuation());
    return v;
}

// charp

inline void tilt_ring_axioms(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 1);
    for (auto p : primes(ctx)) {
        Signature sig(p, 2, {false, true});
        for (int i = 0; i < 30; ++i) {
            auto a = random_tilt(rng, sig, 4, 3, ExtRational(Rational(3)));
            auto b = random_tilt(rng, sig, 4, 3, ExtRational(Rational(4)));
            auto d = random_tilt(rng, sig, 4, 3, ExtRational::infinity());
            c.expect(equal_at_shared_precision((a * b) * d, a * (b * d)), "associativity");
            c.expect(equal_at_shared_precision(a * b, b * a), "commutativity");
            c.expect(equal_at_shared_precision(a * (b + d), a * b + a * d), "distributivity");
            c.expect(equal_at_shared_precision((a + b) + d, a + (b + d)), "additive associativity");
        }
    }
}

inline void tilt_frobenius_iso(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 2);
    auto F = [](const TiltSeries& x) { return charp::tilt_frobenius(x, charp::Direction::Forward); };
    for (auto p : primes(ctx)) {
        Signature sig(p, 1);
        for (int i = 0; i < 30; ++i) {
            auto a = random_tilt(rng, sig, 4, 3, ExtRational::infinity()).with_depth(5);
            auto b = random_tilt(rng, sig, 4, 3, ExtRational::infinity()).with_depth(5);
            c.expect(F(a * b) == F(a) * F(b), "frobenius multiplicative");
            c.expect(F(a + b) == F(a) + F(b), "frobenius additive");
            c.expect(charp::frobenius_power(charp::frobenius_power(a, -2), 2) == a, "frobenius bijective");
            TiltSeries power = TiltSeries::constant(sig, 1, ExtRational::infinity(), 5);
            for (std::uint32_t k = 0; k < p; ++k) power = power * a;
            c.expect(power == F(a), "frobenius is the p-th power");
        }
    }
}

inline void tilt_characteristic(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 3);
    for (auto p : primes(ctx)) {
        Signature sig(p, 1, {true});
        for (int i = 0; i < 40; ++i) {
            auto a = random_tilt(rng, sig, 5, 3, ExtRational(Rational(3)));
            TiltSeries sum = TiltSeries::zero(sig, a.precision(), a.depth());
            for (std::uint32_t k = 0; k < p; ++k) sum = sum + a;
            c.expect(sum.is_zero(), "p a = 0");
        }
    }
}

inline void tilt_valuation_additive(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 4);
    for (auto p : primes(ctx)) {
        Signature sig(p, 1);
        for (int i = 0; i < 40; ++i) {
            auto a = random_tilt(rng, sig, 3, 3, ExtRational::infinity());
            auto b = random_tilt(rng, sig, 3, 3, ExtRational::infinity());
            if (a.is_zero() || b.is_zero()) continue;
            auto va = charp::tilt_valuation(a), vb = charp::tilt_valuation(b), vab = charp::tilt_valuation(a * b);
            c.expect(*vab.exact == *va.exact + *vb.exact, "v(ab) = v(a) + v(b) for " + a.str() + " and " + b.str());
        }
    }
}

// witt

inline void ghost_identities(const SuiteContext&, Check& c) {
    for (std::uint32_t p : {2u, 3u, 5u})
        for (int n = 1; n <= 4; ++n) {
            auto& u = witt::UnivWittPolys::shared(p);
            auto r = (p == 5 && n == 4) ? u.check_congruence(n) : u.check_expanded(n);
            c.expect(r.ok(), "ghost identity p=" + std::to_string(p) + " n=" + std::to_string(n));
        }
}

inline void witt_ring_axioms(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 5);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        witt::WittRing<witt::FpRing> w(witt::FpRing(p), 4);
        for (int i = 0; i < 15; ++i) {
            auto a = random_fp_witt(rng, p, 4), b = random_fp_witt(rng, p, 4), d = random_fp_witt(rng, p, 4);
            c.expect(w.equal(w.mul(w.mul(a, b), d), w.mul(a, w.mul(b, d))), "W_4(F_p) associativity");
            c.expect(w.equal(w.mul(a, w.add(b, d)), w.add(w.mul(a, b), w.mul(a, d))), "W_4(F_p) distributivity");
        }
    }
    for (auto p : primes(ctx)) {
        witt::TiltRing base(Signature(p, 1), ExtRational::infinity(), 8);
        witt::WittRing<witt::TiltRing> w(base, 3);
        for (int i = 0; i < 3; ++i) {
            auto a = random_witt(rng, base, 3), b = random_witt(rng, base, 3), d = random_witt(rng, base, 3);
            c.expect(w.equal(w.mul(w.mul(a, b), d), w.mul(a, w.mul(b, d))), "W_3 tilt associativity");
            c.expect(w.equal(w.mul(a, w.add(b, d)), w.add(w.mul(a, b), w.mul(a, d))), "W_3 tilt distributivity");
        }
    }
}

inline void delta_axioms(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 6);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        witt::WittRing<witt::FpRing> w(witt::FpRing(p), 4);
        for (int i = 0; i < 15; ++i) {
            auto x = random_fp_witt(rng, p, 4), y = random_fp_witt(rng, p, 4);
            auto dx = w.delta(x), dy = w.delta(y);
            auto xs = x, ys = y;
            xs.coords.pop_back();
            ys.coords.pop_back();
            auto rhs = w.add(w.add(w.mul(w.pow(xs, p), dy), w.mul(w.pow(ys, p), dx)), w.mul(w.p_element(3), w.mul(dx, dy)));
            c.expect(w.equal(w.delta(w.mul(x, y)), rhs), "delta(xy)");
            auto corr = w.zero(3);
            Integer binom = 1;
            for (std::uint32_t k = 1; k < p; ++k) {
                binom = binom * (p - k + 1) / k;
                Integer q = binom / p;
                corr = w.add(corr, w.mul(w.from_integer(q.get_si(), 3), w.mul(w.pow(xs, k), w.pow(ys, p - k))));
            }
            c.expect(w.equal(w.delta(w.add(x, y)), w.sub(w.add(dx, dy), corr)), "delta(x + y)");
        }
    }
}

inline void delta_of_p(const SuiteContext&, Check& c) {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        witt::WittRing<witt::FpRing> w(witt::FpRing(p), 4);
        auto expected = w.sub(w.one(3), w.pow(w.p_element(3), p - 1));
        c.expect(w.equal(w.delta(w.p_element()), expected), "delta(p) = 1 - p^(p-1) for p=" + std::to_string(p));
    }
}

inline void rank_one_vanishing(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 7);
    for (auto p : primes(ctx)) {
        witt::TiltRing base(Signature(p, 1), ExtRational::infinity(), 8);
        witt::WittRing<witt::TiltRing> w(base, 3);
        for (int i = 0; i < 25; ++i) {
            auto a = random_tilt(rng, base.signature(), 3, 2, ExtRational::infinity()).with_depth(8);
            c.expect(w.equal(w.delta(w.teichmuller(a)), w.zero(2)), "delta([a]) = 0 for a = " + a.str());
        }
    }
}

inline void frobenius_lift(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 8);
    for (auto p : primes(ctx)) {
        witt::TiltRing base(Signature(p, 1), ExtRational::infinity(), 8);
        witt::WittRing<witt::TiltRing> w(base, 3);
        for (int i = 0; i < 5; ++i) {
            auto x = random_witt(rng, base, 3);
            c.expect(w.sub(w.frobenius(x), w.pow(x, p)).coords[0].is_zero(), "phi(x) = x^p mod p");
        }
        witt::WittRing<witt::FpRing> wf(witt::FpRing(p), 4);
        for (int i = 0; i < 20; ++i) {
            auto x = random_fp_witt(rng, p, 4);
            c.expect(wf.sub(wf.frobenius(x), wf.pow(x, p)).coords[0] == 0, "phi(x) = x^p mod p over F_p");
        }
    }
}

inline void theta_homomorphism(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 9);
    const Rational n3(3);
    for (auto p : primes(ctx)) {
        Signature sig(p, 1);
        witt::TiltRing base(sig, ExtRational::infinity(), 8);
        witt::WittRing<witt::TiltRing> w(base, 3);
        for (int i = 0; i < 50; ++i) {
            auto x = random_witt(rng, base, 3), y = random_witt(rng, base, 3);
            auto tx = witt::theta(w, x, n3), ty = witt::theta(w, y, n3);
            c.expect(witt::theta(w, w.add(x, y), n3) == tx + ty, "theta additive");
            c.expect(witt::theta(w, w.mul(x, y), n3) == tx * ty, "theta multiplicative");
        }
        auto t = base.monomial(1, PExp::integer(p, 1), sig.zero_m());
        c.expect(witt::theta(w, w.sub(w.teichmuller(t), w.p_element()), n3).is_zero(), "theta([t] - p) = 0");
    }
}

inline void theta_teichmuller_sharp(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 10);
    const Rational n3(3);
    for (auto p : primes(ctx)) {
        Signature sig(p, 1);
        witt::TiltRing base(sig, ExtRational::infinity(), 8);
        witt::WittRing<witt::TiltRing> w(base, 3);
        for (int i = 0; i < 15; ++i) {
            auto m = TiltSeries::monomial(sig, rng.uniform(1, p - 1), random_exponent(rng, p, 2, 2),
                                          MExp{random_exponent(rng, p, 2, 2)}, ExtRational::infinity(), 8);
            c.expect(witt::theta(w, w.teichmuller(m), n3) == char0::sharp(m, n3), "theta([a]) = a# for a = " + m.str());
        }
    }
}

inline void distinguished(const SuiteContext&, Check& c) {
    for (std::uint32_t p : {2u, 3u, 5u})
        for (int n = 2; n <= 4; ++n) {
            Signature sig(p, 0);
            witt::TiltRing base(sig, ExtRational::infinity(), 8);
            witt::WittRing<witt::TiltRing> w(base, n);
            auto t = base.monomial(1, PExp::integer(p, 1), sig.zero_m());
            c.expect(w.is_distinguished(w.sub(w.teichmuller(t), w.p_element())).distinguished,
                     "[t] - p distinguished at p=" + std::to_string(p) + " N=" + std::to_string(n));
        }
}

// char0

inline void eisenstein_oracle(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 11);
    for (std::uint32_t p : {2u, 3u})
        for (int depth = 0; depth <= 3; ++depth)
            for (int n = 1; n <= 4; ++n) {
                oracle::EisensteinModel model(p, depth, n);
                for (int d = 0; d <= 1; ++d) {
                    Cone cone = Cone::disk(p, d);
                    for (int trial = 0; trial < 8; ++trial) {
                        auto a = random_untilt(rng, cone, 5, depth, ExtRational(Rational(n)));
                        auto b = random_untilt(rng, cone, 5, depth, ExtRational(Rational(n)));
                        auto ea = model.from_untilt(a), eb = model.from_untilt(b);
                        c.expect(model.from_untilt(a + b) == model.add(ea, eb) &&
                                     model.from_untilt(a * b) == model.mul(ea, eb),
                                 "oracle mismatch for " + a.str() + " and " + b.str());
                    }
                }
            }
}

inline void digit_uniqueness(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 12);
    for (std::uint32_t p : {2u, 3u}) {
        oracle::EisensteinModel model(p, 2, 2);
        Cone cone = Cone::disk(p, 0);
        for (int i = 0; i < 100; ++i) {
            // Small supports so that equal pairs actually occur.
            auto a = random_untilt(rng, cone, 2, 1, ExtRational(Rational(2)), 1);
            auto b = random_untilt(rng, cone, 2, 1, ExtRational(Rational(2)), 1);
            c.expect((a == b) == (model.from_untilt(a) == model.from_untilt(b)), "normal form vs image");
            c.expect(model.from_untilt(a - b).empty() == (a == b), "difference vanishes iff equal");
        }
    }
}

inline void sharp_multiplicative(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 13);
    for (auto p : primes(ctx)) {
        Signature sig(p, 1);
        for (int i = 0; i < 15; ++i) {
            auto a = random_tilt(rng, sig, 3, 2, ExtRational::infinity()).with_depth(6);
            auto b = random_tilt(rng, sig, 3, 2, ExtRational::infinity()).with_depth(6);
            c.expect(equal_at_shared_precision(char0::sharp(a * b, R(2)), char0::sharp(a, R(2)) * char0::sharp(b, R(2))),
                     "sharp(ab) for " + a.str() + " and " + b.str());
        }
    }
}

inline void closure_operators(const SuiteContext&, Check& c) {
    using char0::ClosureKind;
    using char0::ExponentSet;
    using char0::HalfSpace;
    std::vector<ExponentSet> inputs = {
        ExponentSet(2, 0, {HalfSpace{{}, 0, true, -1}}, {}, false),
        ExponentSet(2, 1, {HalfSpace{{R(1)}, 0, false, -1}}, {true}, true),
        ExponentSet(2, 1, {HalfSpace{{R(1, 2)}, 0, false, 0}}, {true}, true),
        ExponentSet(3, 1, {HalfSpace{{R(-1, 3)}, R(1, 3), true, 1}}, {true}, false),
        ExponentSet(3, 1, {HalfSpace{{R(0)}, 0, false, -1}, HalfSpace{{R(-1)}, 0, true, -1}}, {false}, false),
        ExponentSet::from_cone(Cone::single(2, R(1, 2), ExtRational(R(1)))),
    };
    for (const auto& s : inputs) {
        oracle::ClosureOracle o(s);
        auto almost = char0::cone_closure(s, ClosureKind::Almost);
        auto pic = char0::cone_closure(s, ClosureKind::Pic);
        auto tic = char0::cone_closure(s, ClosureKind::Tic);
        c.expect(char0::cone_closure(almost, ClosureKind::Almost) == almost, "almost idempotent on " + s.str());
        c.expect(char0::cone_closure(pic, ClosureKind::Pic) == pic, "pic idempotent on " + s.str());
        c.expect(char0::cone_closure(tic, ClosureKind::Tic) == tic, "tic idempotent on " + s.str());
        c.expect(char0::cone_closure(pic, ClosureKind::Tic) == tic, "tic(pic) = tic on " + s.str());
        for (const auto& [q, m] : oracle::closure_grid(s.prime(), s.vars(), s.integral())) {
            c.expect(almost.contains(q, m) == o.almost(q, m) && pic.contains(q, m) == o.pic(q, m) &&
                         tic.contains(q, m) == o.tic(q, m),
                     "closure oracle on " + s.str() + " at q=" + q.str());
            if (s.contains(q, m)) c.expect(almost.contains(q, m) && pic.contains(q, m), "monotone on " + s.str());
            if (pic.contains(q, m) || almost.contains(q, m)) c.expect(tic.contains(q, m), "inside tic on " + s.str());
        }
    }
}

inline std::vector<Cone> constructed_cones() {
    std::vector<Cone> out;
    for (std::uint32_t p : {2u, 3u}) {
        out.push_back(Cone::disk(p, 1));
        out.push_back(Cone::single(p, R(1, p), ExtRational::infinity()));
        out.push_back(Cone::single(p, 0, ExtRational(R(1, p))));
        out.push_back(Cone::single(p, R(1, p), ExtRational(R(1, p))));
        out.push_back(Cone::single(p, R(1), ExtRational(R(2)), true));
    }
    return out;
}

inline void dictionary_round_trip(const SuiteContext& ctx, Check& c) {
    for (const auto& cone : constructed_cones()) {
        const std::uint32_t p = cone.prime();
        Rational lo = cone.weight(PExp::integer(p, 0), {PExp::integer(p, 1)});
        ExtRational hi = cone.interval(0).is_disk()
                             ? ExtRational::infinity()
                             : ExtRational(Rational(-cone.weight(PExp::integer(p, 0), {PExp::integer(p, -1)})));
        c.expect(Cone::single(p, lo, hi, cone.integral()) == cone, "norm round trip for " + cone.str());
        c.expect(char0::ExponentSet::from_cone(cone).to_cone() == cone, "unit ball round trip for " + cone.str());
    }
    Rng rng(ctx.seed + 14);
    for (auto p : primes(ctx)) {
        Cone disk = Cone::disk(p, 1);
        for (int i = 0; i < 50; ++i) {
            auto x = random_untilt(rng, disk, 3, 2, ExtRational::infinity());
            c.expect(char0::lattice_norm(x * x) == char0::lattice_norm(x) + char0::lattice_norm(x), "|x^2| = |x|^2 for " + x.str());
        }
    }
}

inline void bridge_maps(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 15);
    for (auto p : primes(ctx)) {
        Cone cone = Cone::disk(p, 1);
        for (int i = 0; i < 50; ++i) {
            auto a = random_untilt(rng, cone, 5, 3, ExtRational(R(3)));
            auto b = random_untilt(rng, cone, 5, 3, ExtRational(R(3)));
            c.expect(char0::bridge_reduce(a + b) == char0::bridge_reduce(a) + char0::bridge_reduce(b), "reduce additive");
            c.expect(char0::bridge_reduce(a * b) == char0::bridge_reduce(a) * char0::bridge_reduce(b), "reduce multiplicative");
            auto x = random_untilt(rng, cone, 5, 3, ExtRational(R(2)), 2).with_depth(4);
            auto r = char0::pth_root_mod_p(x);
            c.expect(char0::pow(r, p).truncated(ExtRational(1)).digits() == x.truncated(ExtRational(1)).digits(),
                     "root^p = x mod p for " + x.str());
        }
    }
}

// banach

inline std::vector<banach::NormSpec> sample_norms(std::uint32_t p) {
    return {banach::NormSpec::weighted(p), banach::NormSpec::gauss(Cone::disk(p, 1)),
            banach::NormSpec::gauss(Cone::single(p, R(1, 2), ExtRational(2)))};
}

inline void non_archimedean(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 16);
    for (auto p : primes(ctx)) {
        for (const auto& n : sample_norms(p))
            for (int i = 0; i < 20; ++i) {
                auto f = random_kpoly(rng, p, 3, 3), g = random_kpoly(rng, p, 3, 3);
                auto nf = banach::norm_eval(f, n), ng = banach::norm_eval(g, n);
                c.expect(banach::norm_eval(f * g, n) <= nf * ng, "submultiplicative under " + n.str());
                c.expect(banach::norm_eval(f + g, n) <= max(nf, ng), "ultrametric under " + n.str());
            }
        auto cone = Cone::disk(p, 1);
        auto lat = banach::NormSpec::lattice(cone);
        for (int i = 0; i < 20; ++i) {
            auto x = random_untilt(rng, cone, 3, 2, ExtRational::infinity());
            auto y = random_untilt(rng, cone, 3, 2, ExtRational::infinity());
            c.expect(banach::norm_eval(x * y, lat) <= banach::norm_eval(x, lat) * banach::norm_eval(y, lat), "lattice submultiplicative");
            c.expect(banach::norm_eval(x + y, lat) <= max(banach::norm_eval(x, lat), banach::norm_eval(y, lat)), "lattice ultrametric");
        }
    }
}

inline void power_multiplicative(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 17);
    for (auto p : primes(ctx)) {
        auto n = banach::NormSpec::gauss(Cone::single(p, R(1, 3), ExtRational(2)));
        for (int i = 0; i < 15; ++i) {
            auto f = random_kpoly(rng, p, 3, 3);
            auto base = banach::norm_eval(f, n);
            KPoly power = f;
            for (unsigned k = 2; k <= 5; ++k) {
                power = power * f;
                c.expect(banach::norm_eval(power, n) == pow(base, k), "|f^n| = |f|^n for " + f.str());
            }
        }
        auto disk = Cone::disk(p, 1);
        auto lat = banach::NormSpec::lattice(disk);
        for (int i = 0; i < 10; ++i) {
            auto x = random_untilt(rng, disk, 3, 2, ExtRational::infinity());
            c.expect(banach::norm_eval(char0::pow(x, 3), lat) == pow(banach::norm_eval(x, lat), 3), "lattice |x^3| = |x|^3");
        }
    }
}

inline void spectral_enclosure(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 18);
    for (auto p : primes(ctx)) {
        auto gauss = banach::NormSpec::gauss(Cone::disk(p, 1));
        for (int i = 0; i < 15; ++i) {
            auto f = random_kpoly(rng, p, 3, 3);
            auto rho = banach::norm_eval(f, gauss);  // power-multiplicative: rho = |f|
            auto iv = banach::spectral_radius(f, gauss, 8);
            c.expect(iv.lo <= rho && rho <= iv.hi, "enclosure of rho for " + f.str());
        }
        auto weighted = banach::NormSpec::weighted(p);
        auto T = KPoly::variable(p, 1, 0);
        std::optional<NormValue> prev;
        for (int n : {1, 2, 4, 8, 16, 32}) {
            auto iv = banach::spectral_radius(T, weighted, n, {berkovich::SeminormPoint::gauss(p, 1)});
            c.expect(iv.lo <= NormValue::make(p, 0, 1) && NormValue::make(p, 0, 1) <= iv.hi, "rho(T) = 1 enclosed");
            if (prev) c.expect(iv.hi <= *prev, "interval shrinks");
            prev = iv.hi;
        }
    }
}

inline void gauss_point_modulus(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 19);
    for (auto p : primes(ctx))
        for (int i = 0; i < 50; ++i) {
            auto f = random_kpoly(rng, p, 4, 4);
            c.expect(berkovich::eval_point(f, berkovich::SeminormPoint::gauss(p, 1)) ==
                         banach::norm_eval(f, banach::NormSpec::gauss(Cone::disk(p, 1))),
                     "Gauss point value of " + f.str());
        }
}

inline void fekete_monotone(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 20);
    for (auto p : primes(ctx)) {
        auto spec = banach::NormSpec::weighted(p);
        for (int i = 0; i < 8; ++i) {
            auto f = random_kpoly(rng, p, 2, 3);
            std::optional<NormValue> prev;
            for (int n = 1; n <= 6; ++n) {
                auto iv = banach::spectral_radius(f, spec, n, {berkovich::SeminormPoint::gauss(p, 1)});
                c.expect(iv.lo <= iv.hi, "lo <= hi");
                if (prev) c.expect(iv.hi <= *prev, "hi non-increasing for " + f.str());
                prev = iv.hi;
            }
        }
    }
}

// berkovich

inline const berkovich::SeminormPoint& pick(Rng& rng, const std::vector<berkovich::SeminormPoint>& g) {
    return g[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(g.size()) - 1))];
}

inline void eval_multiplicative(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 21);
    for (auto p : primes(ctx)) {
        auto grid = berkovich::standard_grid(p, 1);
        for (int i = 0; i < 100; ++i) {
            auto f = random_kpoly(rng, p, 3, 3), g = random_kpoly(rng, p, 3, 3);
            const auto& x = pick(rng, grid);
            ExtRational vf = berkovich::eval_valuation(f, x), vg = berkovich::eval_valuation(g, x);
            c.expect(berkovich::eval_valuation(f * g, x) == vf + vg, "|fg(x)| at " + x.str());
            c.expect(berkovich::eval_valuation(f + g, x) >= min(vf, vg), "|(f+g)(x)| at " + x.str());
        }
    }
}

inline void eval_bounded(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 22);
    for (auto p : primes(ctx)) {
        auto grid = berkovich::standard_grid(p, 1);
        for (int i = 0; i < 100; ++i) {
            auto f = random_kpoly(rng, p, 3, 3);
            const auto& x = pick(rng, grid);
            c.expect(berkovich::eval_valuation(f, x) >= gauss_v(f), "|f(x)| <= |f| at " + x.str());
        }
    }
}

inline void maximum_modulus(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 23);
    for (auto p : primes(ctx)) {
        auto grid = berkovich::standard_grid(p, 1);
        for (int i = 0; i < 50; ++i) {
            auto f = random_kpoly(rng, p, 4, 3);
            ExtRational best = ExtRational::infinity();
            for (const auto& x : grid) best = min(best, berkovich::eval_valuation(f, x));
            c.expect(best == gauss_v(f), "max over grid for " + f.str());
        }
    }
}

inline void meet_pointwise(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 24);
    for (auto p : primes(ctx)) {
        auto grid = berkovich::standard_grid(p, 1);
        for (int i = 0; i < 10; ++i) {
            auto V = random_domain(rng, p), W = random_domain(rng, p);
            auto M = berkovich::domain_meet(V, W);
            bool ok = true;
            for (const auto& x : grid)
                ok = ok && berkovich::in_domain(x, M).member ==
                               (berkovich::in_domain(x, V).member && berkovich::in_domain(x, W).member);
            c.expect(ok, "meet of " + V.str() + " and " + W.str());
        }
    }
}

inline void cover_modes_agree(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 25);
    for (auto p : primes(ctx)) {
        auto mono = [&] {
            return KPoly::monomial(
                p, KElem::monomial(p, 1, PExp::from_rational(p, make_rational(rng.uniform(0, 2 * static_cast<std::int64_t>(p) - 1), p))),
                MExp{PExp::integer(p, rng.uniform(0, 2))});
        };
        for (int i = 0; i < 30; ++i) {
            std::vector<berkovich::RationalDomainSpec> ds;
            for (int k = 0, n = static_cast<int>(rng.uniform(1, 3)); k < n; ++k) {
                berkovich::RationalDomainSpec V;
                V.numerators.push_back(mono());
                if (rng.coin()) V.numerators.push_back(mono());
                V.denominator = mono();
                if (!V.unit_witness())
                    V.numerators.push_back(KPoly::constant(p, 1, KElem::monomial(p, 1, PExp::integer(p, 2))));
                ds.push_back(V);
            }
            bool exact = berkovich::cover_check(ds, berkovich::CoverMode::Exact, p).pass;
            bool sampled = berkovich::cover_check(ds, berkovich::CoverMode::Sampled, p).pass;
            c.expect(exact == sampled, "exact and sampled cover verdicts");
        }
    }
}

inline void tilting_identity(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 26);
    for (auto p : primes(ctx)) {
        Signature sig(p, 1, {false});
        auto grid = berkovich::standard_grid(p, 1);
        for (int i = 0; i < 25; ++i) {
            auto f = TiltSeries::monomial(sig, rng.uniform(1, p - 1), random_exponent(rng, p, 2, 2),
                                          MExp{random_exponent(rng, p, 2, 3)}, ExtRational::infinity(), 4);
            const auto& x = pick(rng, grid);
            auto r = berkovich::sharp_compat(f, x);
            c.expect(r.equal && r.exact, "|f#(x)| = |f(x_flat)| for " + f.str() + " at " + x.str());
        }
    }
}

// cech

inline void cech_d_squared(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 27);
    for (auto p : primes(ctx)) {
        auto cx = cech::build_cech(cech::ToricCover::of_disk(p, {0, R(1, p), 1}), 2, 2);
        for (int i = 0; i < 10; ++i) {
            cech::Cochain x;
            for (const auto& s : cx.degrees[0]) x.push_back(random_untilt(rng, s.cone, 4, 2, ExtRational(2)));
            bool zero = true;
            for (const auto& y : cech::coboundary(cx, 1, cech::coboundary(cx, 0, x))) zero = zero && y.is_zero();
            c.expect(zero, "d d = 0");
        }
    }
}

inline std::vector<Rational> random_breaks(Rng& rng, std::uint32_t p, int pieces) {
    std::vector<Rational> br{0};
    while (static_cast<int>(br.size()) < pieces) br.push_back(br.back() + make_rational(rng.uniform(1, 2 * p), p));
    return br;
}

inline void cech_h0_ambient(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 28);
    for (std::uint32_t p : {2u, 3u})
        for (int pieces = 1; pieces <= 4; ++pieces)
            for (int trial = 0; trial < 2; ++trial) {
                auto br = random_breaks(rng, p, pieces);
                auto cover = cech::ToricCover::of_disk(p, br);
                if (trial) cover.ambient = Cone::single(p, 0, ExtRational(br.back() + 1));
                auto rep = cech::cohomology(cech::build_cech(cover, 2, 1), 2);
                c.expect(rep.h0_matches_ambient && rep.h0 == cover.ambient && rep.torsion.empty(),
                         "H0 = ambient for " + std::to_string(pieces) + " pieces");
            }
}

inline void cech_grid_oracle(const SuiteContext&, Check& c) {
    struct Case {
        std::uint32_t p;
        std::vector<Rational> breaks;
        int depth;
        Rational prec;
        bool annulus;
    };
    std::vector<Case> cases{
        {2, {0, R(1, 2), 1}, 2, 2, false},
        {2, {0, R(1, 4), R(3, 4)}, 2, 1, true},
        {3, {0, R(1, 3), 1}, 1, 2, false},
        {3, {0, R(2, 3)}, 1, 1, true},
        {2, {0, 1}, 1, 2, false},
    };
    for (const auto& k : cases) {
        auto cover = cech::ToricCover::of_disk(k.p, k.breaks);
        if (k.annulus) cover.ambient = Cone::single(k.p, 0, ExtRational(k.breaks.back() + 1));
        auto cx = cech::build_cech(cover, k.prec, k.depth);
        auto rep = cech::cohomology(cx, 1);
        int e = 0;
        for (const auto& b : k.breaks) e = std::max(e, PExp::from_rational(k.p, b).den_exp());
        auto grid = oracle::cech_grid_betti(cx, 1, k.depth + e);
        bool ok = !grid.betti.empty() && grid.betti[0] == grid.ambient_positions;
        for (std::size_t r = 1; ok && r < grid.betti.size(); ++r) {
            Rational total = 0;
            for (const auto& t : rep.torsion)
                if (static_cast<std::size_t>(t.degree) == r) total += t.exponent;
            ok = Rational(grid.betti[r]) == total * Rational(static_cast<long>(grid.q_scale));
        }
        c.expect(ok, "matrix oracle at p=" + std::to_string(k.p));
    }
}

inline void torus_laws(const SuiteContext&, Check& c) {
    for (std::uint32_t p : {2u, 3u}) {
        auto rep = cech::torus_perfectoid_complex(p, 3, 2, 2);
        std::map<PExp, ExtRational> v;
        for (const auto& e : rep.entries) v[e.index] = e.v;
        for (const auto& [i, vi] : v) {
            if (i.is_integer()) {
                c.expect(vi.is_inf(), "v_i infinite at integers");
                continue;
            }
            c.expect(vi == ExtRational(oracle::cyclotomic_gap(p, i.den_exp())), "cyclotomic oracle at " + i.str());
            PExp shifted = i + PExp::integer(p, 1);
            if (v.count(shifted)) c.expect(v[shifted] == vi, "periodic at " + i.str());
            if (i.den_exp() < 3) {
                PExp finer = i.div_p();
                if (v.count(finer)) c.expect(v[finer].value() == vi.value() / p, "v_{i/p} = v_i / p at " + i.str());
            }
        }
    }
}

inline bool same_report(const cech::CohomologyReport& a, const cech::CohomologyReport& b) {
    if (!(a.h0 == b.h0) || a.h0_matches_ambient != b.h0_matches_ambient || a.torsion.size() != b.torsion.size()) return false;
    for (std::size_t i = 0; i < a.torsion.size(); ++i)
        if (a.torsion[i].degree != b.torsion[i].degree || a.torsion[i].m != b.torsion[i].m ||
            a.torsion[i].exponent != b.torsion[i].exponent)
            return false;
    return true;
}

inline void cech_refinement(const SuiteContext&, Check& c) {
    for (std::uint32_t p : {2u, 3u}) {
        auto base = cech::cohomology(cech::build_cech(cech::ToricCover::of_disk(p, {0, R(1, p)}), 2, 2), 2);
        auto finer = cech::cohomology(cech::build_cech(cech::ToricCover::of_disk(p, {0, R(1, p * p), R(1, p)}), 2, 2), 2);
        auto finest = cech::cohomology(cech::build_cech(cech::ToricCover::of_disk(p, {0, R(1, p * p), R(1, p), 1}), 2, 2), 2);
        c.expect(same_report(base, finer), "one redundant break");
        c.expect(same_report(base, finest), "two redundant breaks");
    }
}

// cli

/// Random text in the element grammar; `base` is 'p' (untilt) or 't' (tilt).
inline std::string random_expression(Rng& rng, std::uint32_t p, int depth, char base, int nest = 0) {
    auto exponent = [&] {
        const int k = static_cast<int>(rng.uniform(0, depth));
        const std::int64_t den = checked_pow(p, k);
        std::string out = std::to_string(rng.uniform(0, 2 * den));
        if (k) out += "/" + std::to_string(den);
        return out;
    };
    auto factor = [&]() -> std::string {
        switch (rng.uniform(0, nest < 2 ? 6 : 5)) {
            case 0: return std::to_string(rng.uniform(0, 2 * p + 3));
            case 1: return std::string(1, base);
            case 2: return std::string(1, base) + "^(" + exponent() + ")";
            case 3: return "T";
            case 4: return "T^(" + exponent() + ")";
            case 5: return "S^(" + exponent() + ")";
            default:
                return "(" + random_expression(rng, p, depth, base, nest + 1) + ")" +
                       (rng.coin() ? "^(" + std::to_string(rng.uniform(0, 3)) + ")" : "");
        }
    };
    std::string out;
    for (int t = 0, n = static_cast<int>(rng.uniform(1, 4)); t < n; ++t) {
        if (t) out += rng.coin() ? " + " : " - ";
        out += factor();
        for (int k = 0, m = static_cast<int>(rng.uniform(0, 2)); k < m; ++k) out += "*" + factor();
    }
    return out;
}

inline void parser_round_trip(const SuiteContext& ctx, Check& c) {
    Rng rng(ctx.seed + 29);
    for (int i = 0; i < 100; ++i) {
        const bool tilt = i % 2 == 1;
        std::string src = random_expression(rng, ctx.p, 2, tilt ? 't' : 'p');
        cli::ParseOptions opt{ctx.p, 4, ExtRational(3)};
        if (tilt) {
            auto x = cli::parse_tilt(src, opt);
            opt.signature = x.signature();
            c.expect(cli::parse_tilt(cli::print(x), opt) == x, "round trip of " + src);
        } else {
            auto x = cli::parse_untilt(src, opt);
            opt.signature = x.signature();
            c.expect(cli::parse_untilt(cli::print(x), opt) == x, "round trip of " + src);
        }
    }
}

inline void certificates_reproducible(const SuiteContext& ctx, Check& c) {
    if (!ctx.run_cli) return;
    const std::string p = std::to_string(ctx.p);
    const std::vector<std::vector<std::string>> commands{
        {"witt", "delta", "--p", p, "--len", "4", "--x", "p", "--json"},
        {"torus", "run", "--p", p, "--nmax", "2", "--bound", "1", "--json"},
        {"cech", "run", "--p", p, "--pieces", "0,1/" + p, "--json"},
        {"domain", "cover", "--p", p, "--domain", "T;p", "--domain", "p;T", "--mode", "sampled", "--json"},
        {"norm", "rho", "--p", p, "--f", "T + p", "--norm", "weighted", "--nmax", "20", "--json"},
    };
    for (const auto& cmd : commands) {
        std::string first = ctx.run_cli(cmd), second = ctx.run_cli(cmd);
        c.expect(!first.empty() && first == second, "reproducible output of " + cmd[0] + " " + cmd[1]);
    }
}

}  // namespace suites

inline std::vector<Suite> all_suites() {
    using namespace suites;
    return {
        {"charp", "ring_axioms", tilt_ring_axioms},
        {"charp", "frobenius_isomorphism", tilt_frobenius_iso},
        {"charp", "characteristic_p", tilt_characteristic},
        {"charp", "valuation_additive", tilt_valuation_additive},
        {"witt", "ghost_identities", ghost_identities},
        {"witt", "ring_axioms", witt_ring_axioms},
        {"witt", "delta_axioms", delta_axioms},
        {"witt", "delta_of_p", delta_of_p},
        {"witt", "rank_one_vanishing", rank_one_vanishing},
        {"witt", "frobenius_lift", frobenius_lift},
        {"witt", "theta_homomorphism", theta_homomorphism},
        {"witt", "distinguished", distinguished},
        {"char0", "eisenstein_oracle", eisenstein_oracle},
        {"char0", "digit_uniqueness", digit_uniqueness},
        {"char0", "sharp_multiplicative", sharp_multiplicative},
        {"char0", "theta_teichmuller_is_sharp", theta_teichmuller_sharp},
        {"char0", "closure_operators", closure_operators},
        {"char0", "dictionary_round_trip", dictionary_round_trip},
        {"char0", "bridge_maps", bridge_maps},
        {"banach", "non_archimedean", non_archimedean},
        {"banach", "power_multiplicative", power_multiplicative},
        {"banach", "spectral_enclosure", spectral_enclosure},
        {"banach", "gauss_point_modulus", gauss_point_modulus},
        {"banach", "fekete_monotone", fekete_monotone},
        {"berkovich", "eval_multiplicative", eval_multiplicative},
        {"berkovich", "eval_bounded", eval_bounded},
        {"berkovich", "maximum_modulus", maximum_modulus},
        {"berkovich", "meet_pointwise", meet_pointwise},
        {"berkovich", "cover_modes_agree", cover_modes_agree},
        {"berkovich", "tilting_identity", tilting_identity},
        {"cech", "d_squared_zero", cech_d_squared},
        {"cech", "h0_is_ambient", cech_h0_ambient},
        {"cech", "matrix_oracle", cech_grid_oracle},
        {"cech", "torus_laws", torus_laws},
        {"cech", "refinement_invariance", cech_refinement},
        {"cli", "parser_round_trip", parser_round_trip},
        {"cli", "certificates_reproducible", certificates_reproducible},
    };
}

inline SuiteResult run_suite(const Suite& s, const SuiteContext& ctx) {
    SuiteResult r{s.module, s.name};
    Check c;
    try {
        s.body(ctx, c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    r.cases = c.cases();
    r.failures = c.failures();
    r.first_failure = c.first_failure();
    return r;
}

inline std::vector<SuiteResult> run_suites(const std::vector<Suite>& suites, const SuiteContext& ctx) {
    std::vector<SuiteResult> out;
    for (const auto& s : suites) out.push_back(run_suite(s, ctx));
    return out;
}

}  // namespace perfectoid::verify
