#include <gtest/gtest.h>

#include "perfectoid/char0/bridge.hpp"
#include "perfectoid/char0/cone.hpp"
#include "perfectoid/char0/untilt_series.hpp"
#include "perfectoid/oracle/closure_oracle.hpp"
#include "perfectoid/oracle/eisenstein.hpp"
#include "perfectoid/verify/generators.hpp"

using namespace perfectoid;
using namespace perfectoid::char0;

namespace {

Rational R(long a, long b = 1) { return make_rational(a, b); }

UntiltSeries umono(const Cone& c, std::int64_t k, Rational q, std::vector<Rational> m = {},
                   ExtRational prec = ExtRational::infinity(), int depth = 6) {
    MExp me;
    for (const auto& x : m) me.push_back(PExp::from_rational(c.prime(), x));
    while (static_cast<int>(me.size()) < c.vars()) me.push_back(PExp::integer(c.prime(), 0));
    return UntiltSeries::monomial(c, k, PExp::from_rational(c.prime(), q), me, std::move(prec), depth);
}

charp::TiltSeries tmono(const Signature& sig, std::int64_t k, Rational q, std::vector<Rational> m = {}, int depth = 8) {
    MExp me;
    for (const auto& x : m) me.push_back(PExp::from_rational(sig.p, x));
    while (static_cast<int>(me.size()) < sig.d) me.push_back(PExp::integer(sig.p, 0));
    return charp::TiltSeries::monomial(sig, k, PExp::from_rational(sig.p, q), me, ExtRational::infinity(), depth);
}

}  // namespace

TEST(UntiltArith, Examples) {
    Cone k3 = Cone::disk(3, 0), k2 = Cone::disk(2, 0);
    auto a = umono(k3, 2, R(1, 3));
    EXPECT_EQ(a + a, umono(k3, 1, R(1, 3)) + umono(k3, 1, R(4, 3)));
    auto one_plus = umono(k2, 1, 0) + umono(k2, 1, R(1, 2));
    EXPECT_EQ(one_plus * one_plus, umono(k2, 1, 0) + umono(k2, 1, 1) + umono(k2, 1, R(3, 2)));
    EXPECT_EQ(UntiltSeries::constant(k3, 2) + UntiltSeries::constant(k3, 1), umono(k3, 1, 1));
    EXPECT_THROW(-UntiltSeries::constant(k3, 1), Error);  // -1 needs a finite precision
    auto neg = -UntiltSeries::constant(k3, 1, ExtRational(R(3)));
    EXPECT_EQ(neg.digits().size(), 3u);
}

TEST(UntiltArith, EisensteinOracle) {
    Rng rng(17);
    int checked = 0;
    for (std::uint32_t p : {2u, 3u}) {
        for (int depth = 0; depth <= 3; ++depth) {
            for (int n = 1; n <= 4; ++n) {
                oracle::EisensteinModel model(p, depth, n);
                for (int d = 0; d <= 1; ++d) {
                    Cone cone = Cone::disk(p, d);
                    for (int trial = 0; trial < 8; ++trial) {
                        auto a = verify::random_untilt(rng, cone, 5, depth, ExtRational(Rational(n)));
                        auto b = verify::random_untilt(rng, cone, 5, depth, ExtRational(Rational(n)));
                        auto ea = model.from_untilt(a), eb = model.from_untilt(b);
                        EXPECT_EQ(model.from_untilt(a + b), model.add(ea, eb));
                        EXPECT_EQ(model.from_untilt(a * b), model.mul(ea, eb));
                        // Distinct normal forms have distinct images.
                        EXPECT_EQ(a == b, ea == eb);
                        ++checked;
                    }
                }
            }
        }
    }
    EXPECT_GE(checked, 256);
}

TEST(Sharp, Examples) {
    Signature s2(2, 0), s3(3, 1);
    Cone k2 = Cone::disk(2, 0);
    EXPECT_EQ(sharp(tmono(s2, 1, 1), R(3)).digits(), umono(k2, 1, 1).digits());
    EXPECT_TRUE(sharp(tmono(s2, 1, 1) + tmono(s2, 1, 1), R(2)).is_zero());
    auto s = sharp(tmono(s2, 1, 0) + tmono(s2, 1, 1), R(2));
    // (1 + x)^4 in Z[x]/(x^4 - 2) mod 4 = 1 + 2 + 2^{3/2}.
    oracle::EisensteinModel model(2, 2, 2);
    auto base = model.from_untilt(umono(k2, 1, 0, {}, ExtRational(R(2))) + umono(k2, 1, R(1, 4), {}, ExtRational(R(2))));
    auto fourth = model.mul(model.mul(base, base), model.mul(base, base));
    EXPECT_EQ(model.from_untilt(s), fourth);
    EXPECT_EQ(s.digits(), (umono(k2, 1, 0) + umono(k2, 1, 1) + umono(k2, 1, R(3, 2))).digits());
    auto deep = tmono(s3, 1, R(1, 9), {}, 2);
    EXPECT_THROW(sharp(deep, R(2)), Error);
}

TEST(Sharp, MultiplicativeAndTeichmullerOnMonomials) {
    Rng rng(23);
    for (std::uint32_t p : {2u, 3u}) {
        Signature sig(p, 1);
        for (int i = 0; i < 15; ++i) {
            auto a = verify::random_tilt(rng, sig, 3, 2, ExtRational::infinity());
            auto b = verify::random_tilt(rng, sig, 3, 2, ExtRational::infinity());
            a = a.with_depth(6);
            b = b.with_depth(6);
            auto lhs = sharp(a * b, R(2));
            auto rhs = sharp(a, R(2)) * sharp(b, R(2));
            EXPECT_TRUE(equal_at_shared_precision(lhs, rhs)) << a.str() << " | " << b.str();
        }
        auto m = tmono(sig, 1, R(1, static_cast<long>(p)), {R(2)});
        auto relabeled = relabel_to_untilt(m, standard_cone(sig), ExtRational(R(2)), 8);
        EXPECT_EQ(sharp(m, R(2)), relabeled);
    }
}

TEST(Sharp, LimitCheck) {
    Signature s2(2, 0), s3(3, 0);
    auto c = sharp_limit_check(tmono(s2, 1, 1), charp::TiltSeries::zero(s2, ExtRational::infinity(), 8), R(2));
    EXPECT_EQ(c.stabilization_stage, 0);
    auto cc = sharp_limit_check(tmono(s2, 1, 1), tmono(s2, 1, 1), R(4));
    EXPECT_EQ(cc.stages[0].valuation, ExtRational(R(2)));
    EXPECT_EQ(cc.stages[1].valuation, ExtRational(R(3)));
    EXPECT_TRUE(cc.target.is_zero());
    auto c3 = sharp_limit_check(tmono(s3, 1, 1), tmono(s3, 1, 2), R(2));
    EXPECT_TRUE(c3.ultrametric);
    const auto& st = c3.stages;
    EXPECT_EQ(st[st.size() - 1].value.digits(), st[st.size() - 2].value.digits());
}

TEST(Bridge, ReduceIsRingMap) {
    Cone k2 = Cone::disk(2, 0);
    auto x = umono(k2, 1, 1) + umono(k2, 1, R(1, 2));
    EXPECT_EQ(bridge_reduce(x).digits(), tmono(Signature(2, 0), 1, R(1, 2)).digits());
    Rng rng(29);
    for (std::uint32_t p : {2u, 3u}) {
        Cone cone = Cone::disk(p, 1);
        for (int i = 0; i < 50; ++i) {
            auto a = verify::random_untilt(rng, cone, 5, 3, ExtRational(R(3)));
            auto b = verify::random_untilt(rng, cone, 5, 3, ExtRational(R(3)));
            EXPECT_EQ(bridge_reduce(a + b), bridge_reduce(a) + bridge_reduce(b));
            EXPECT_EQ(bridge_reduce(a * b), bridge_reduce(a) * bridge_reduce(b));
            EXPECT_EQ(bridge_lift(bridge_reduce(a)), a.truncated(ExtRational(R(1))));
        }
    }
}

TEST(Bridge, PthRootModP) {
    Cone k2 = Cone::disk(2, 0);
    EXPECT_TRUE(pth_root_mod_p(UntiltSeries::zero(k2)).is_zero());
    auto y = pth_root_mod_p(umono(k2, 1, R(1, 2)));
    EXPECT_EQ(y, umono(k2, 1, R(1, 4)));
    EXPECT_EQ(y * y, umono(k2, 1, R(1, 2)));
    auto z = pth_root_mod_p(umono(k2, 1, 0) + umono(k2, 1, R(1, 2)));
    EXPECT_EQ((z * z).truncated(ExtRational(R(1))).digits(), (umono(k2, 1, 0) + umono(k2, 1, R(1, 2))).digits());
    Rng rng(31);
    for (std::uint32_t p : {2u, 3u}) {
        Cone cone = Cone::disk(p, 1);
        for (int i = 0; i < 50; ++i) {
            auto x = verify::random_untilt(rng, cone, 5, 3, ExtRational(R(2)), 2).with_depth(4);
            auto r = pth_root_mod_p(x);
            EXPECT_EQ(pow(r, p).truncated(ExtRational(R(1))).digits(), x.truncated(ExtRational(R(1))).digits());
        }
    }
}

TEST(Closure, Examples) {
    // {q > 0}: the maximal ideal.
    ExponentSet maximal(2, 0, {HalfSpace{{}, 0, true, -1}}, {}, false);
    EXPECT_EQ(cone_closure(maximal, ClosureKind::Almost), ExponentSet::from_cone(Cone::disk(2, 0)));
    ExponentSet ptl(2, 1, {HalfSpace{{R(1)}, 0, false, -1}}, {true}, true);
    EXPECT_EQ(cone_closure(ptl, ClosureKind::Tic), ptl.normalized());
    ExponentSet stair(2, 1, {HalfSpace{{R(1, 2)}, 0, false, 0}}, {true}, true);
    ExponentSet half(2, 1, {HalfSpace{{R(1, 2)}, 0, false, -1}}, {true}, true);
    EXPECT_EQ(cone_closure(stair, ClosureKind::Tic), half);
    EXPECT_THROW(ExponentSet(2, 1, {HalfSpace{{R(1)}, R(-1), false, -1}}, {true}, true), Error);
}

TEST(Closure, MatchesElementwiseOracles) {
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
        auto almost = cone_closure(s, ClosureKind::Almost);
        auto pic = cone_closure(s, ClosureKind::Pic);
        auto tic = cone_closure(s, ClosureKind::Tic);
        for (auto kind : {ClosureKind::Almost, ClosureKind::Pic, ClosureKind::Tic}) {
            auto once = cone_closure(s, kind);
            EXPECT_EQ(cone_closure(once, kind), once);
        }
        EXPECT_EQ(cone_closure(pic, ClosureKind::Tic), tic);
        for (const auto& [q, m] : oracle::closure_grid(s.prime(), s.vars(), s.integral())) {
            EXPECT_EQ(almost.contains(q, m), o.almost(q, m)) << s.str() << " at q=" << q.str();
            EXPECT_EQ(pic.contains(q, m), o.pic(q, m)) << s.str() << " at q=" << q.str();
            EXPECT_EQ(tic.contains(q, m), o.tic(q, m)) << s.str() << " at q=" << q.str();
            if (s.contains(q, m)) {
                EXPECT_TRUE(almost.contains(q, m));
                EXPECT_TRUE(pic.contains(q, m));
            }
            if (almost.contains(q, m) || pic.contains(q, m)) EXPECT_TRUE(tic.contains(q, m));
        }
    }
}

TEST(LatticeNorm, ExamplesAndRoundTrip) {
    Cone disk = Cone::disk(2, 1);
    Cone small = Cone::single(2, R(1, 2), ExtRational::infinity());
    EXPECT_EQ(lattice_norm(umono(disk, 1, R(1, 2), {R(1)})), ExtRational(R(1, 2)));
    EXPECT_EQ(lattice_norm(umono(small, 1, R(1, 2), {R(1)})), ExtRational(R(1)));
    EXPECT_TRUE(lattice_norm(UntiltSeries::zero(disk)).is_inf());
    std::vector<Cone> cones = {disk, small, Cone::single(3, R(0), ExtRational(R(1, 3))),
                               Cone::single(3, R(1, 3), ExtRational(R(1, 3))), Cone::single(2, R(1), ExtRational(R(2)), true)};
    for (const auto& c : cones) {
        // Recover the intervals from norms of T and 1/T, then compare unit balls.
        Rational lo = c.weight(PExp::integer(c.prime(), 0), {PExp::integer(c.prime(), 1)});
        ExtRational hi = c.interval(0).is_disk() ? ExtRational::infinity()
                                                 : ExtRational(Rational(-c.weight(PExp::integer(c.prime(), 0), {PExp::integer(c.prime(), -1)})));
        Cone back = Cone::single(c.prime(), lo, hi, c.integral());
        EXPECT_EQ(back, c);
        EXPECT_EQ(ExponentSet::from_cone(c).to_cone(), c);
    }
}

TEST(ConeTensor, Examples) {
    Rational s = R(1, 2);
    Cone z = Cone::disk(2, 1);
    Cone u = Cone::single(2, s, ExtRational::infinity());
    Cone w = Cone::single(2, 0, ExtRational(s));
    EXPECT_EQ(cone_tensor(u, w, z), Cone::single(2, s, ExtRational(s)));
    EXPECT_EQ(cone_tensor(u, u, u), u);
    Cone far = Cone::single(2, 2, ExtRational::infinity());
    Cone near = Cone::single(2, 0, ExtRational(R(1)));
    EXPECT_THROW(cone_tensor(far, near, z), Error);
}
