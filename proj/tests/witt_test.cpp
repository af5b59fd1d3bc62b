#include <gtest/gtest.h>

#include "perfectoid/core/random.hpp"
#include "perfectoid/oracle/witt_zpn.hpp"
#include "perfectoid/witt/ghost.hpp"
#include "perfectoid/witt/witt_vector.hpp"

using namespace perfectoid;
using namespace perfectoid::witt;

namespace {

std::vector<std::uint32_t> coords_of(const WittVec<FpRing>& v) { return v.coords; }

WittVec<FpRing> vec(std::vector<std::uint32_t> c) { return WittVec<FpRing>{std::move(c)}; }

}  // namespace

TEST(UnivWittPolys, LowLevels) {
    auto& u = UnivWittPolys::shared(2);
    EXPECT_EQ(u.sum(0), u.x(0) + u.y(0));
    // Hand expansion over Z: (X0+Y0)^2 + 2 S_1 = X0^2 + 2 X1 + Y0^2 + 2 Y1.
    auto s1 = u.x(1) + u.y(1) - u.x(0).multiply(u.y(0), 100);
    EXPECT_EQ(u.sum(1), s1);
    auto x0sq = u.x(0).power(2, 100), y0sq = u.y(0).power(2, 100);
    auto p1 = x0sq.multiply(u.y(1), 100) + y0sq.multiply(u.x(1), 100) + u.x(1).multiply(u.y(1), 100).scaled(2);
    EXPECT_EQ(u.product(1), p1);
}

TEST(UnivWittPolys, GhostIdentitiesExpanded) {
    for (std::uint32_t p : {2u, 3u}) {
        for (int n = 0; n <= 3; ++n) {
            auto r = UnivWittPolys::shared(p).check_expanded(n);
            EXPECT_TRUE(r.ok()) << "p=" << p << " n=" << n;
        }
    }
}

TEST(UnivWittPolys, GhostCongruenceCertificate) {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int n = 1; n <= 4; ++n) {
            auto r = UnivWittPolys::shared(p).check_congruence(n);
            EXPECT_TRUE(r.ok()) << "p=" << p << " n=" << n;
        }
    }
}

TEST(UnivWittPolys, CeilingEnforced) {
    UnivWittPolys u(2, 3);
    EXPECT_THROW(u.ensure(4), Error);
}

TEST(WittRing, MatchesIntegerModel) {
    Rng rng(7);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const int n = 4;
        WittRing<FpRing> w(FpRing(p), n);
        oracle::ZpnWitt z(p, n);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<std::uint32_t> a, b;
            for (int i = 0; i < n; ++i) {
                a.push_back(static_cast<std::uint32_t>(rng.uniform(0, p - 1)));
                b.push_back(static_cast<std::uint32_t>(rng.uniform(0, p - 1)));
            }
            Integer za = z.value(a), zb = z.value(b);
            EXPECT_EQ(coords_of(w.add(vec(a), vec(b))), z.coords(za + zb));
            EXPECT_EQ(coords_of(w.mul(vec(a), vec(b))), z.coords(za * zb));
            EXPECT_EQ(coords_of(w.neg(vec(a))), z.coords(-za));
        }
    }
}

TEST(WittRing, Examples) {
    WittRing<FpRing> w2(FpRing(2), 2);
    EXPECT_EQ(coords_of(w2.add(vec({1, 0}), vec({1, 0}))), (std::vector<std::uint32_t>{0, 1}));
    WittRing<FpRing> w(FpRing(3), 4);
    EXPECT_EQ(coords_of(w.p_element()), (std::vector<std::uint32_t>{0, 1, 0, 0}));
    EXPECT_TRUE(w.equal(w.p_element(), w.from_integer(3)));
    auto x = vec({2, 1, 0, 1});
    EXPECT_TRUE(w.equal(w.frobenius(x), x));
    EXPECT_TRUE(w.equal(w.add(x, w.zero()), x));
}

TEST(WittRing, DeltaOfP) {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        WittRing<FpRing> w(FpRing(p), 4);
        auto d = w.delta(w.p_element());
        // 1 - p^{p-1} in length 3.
        auto expected = w.sub(w.one(3), w.pow(w.p_element(3), p - 1));
        EXPECT_TRUE(w.equal(d, expected)) << "p=" << p << " got " << w.str(d);
        oracle::ZpnWitt z(p, 3);
        Integer target = 1 - ipow(Integer(p), p - 1);
        EXPECT_EQ(coords_of(d), z.coords(target));
    }
    WittRing<FpRing> w(FpRing(2), 4);
    auto d = w.delta(w.p_element(3));
    EXPECT_EQ(coords_of(d), (std::vector<std::uint32_t>{1, 1}));
}

TEST(WittRing, TeichmullerOverTilt) {
    for (std::uint32_t p : {2u, 3u}) {
        Signature sig(p, 1);
        TiltRing base(sig, ExtRational::infinity(), 6);
        WittRing<TiltRing> w(base, 3);
        auto t = base.monomial(1, PExp::integer(p, 1), sig.zero_m());
        auto x = w.sub(w.teichmuller(t), w.p_element());
        auto digits = w.teich_expansion(x);
        ASSERT_EQ(digits.size(), 3u);
        EXPECT_EQ(digits[0], t);
        EXPECT_EQ(digits[1], base.from_int(p == 2 ? 1 : -1));
        EXPECT_TRUE(w.is_distinguished(x).distinguished);
        EXPECT_FALSE(w.is_distinguished(w.teichmuller(t)).distinguished);
        EXPECT_TRUE(w.equal(w.from_teich_digits(digits), x));
        auto a = base.monomial(1, PExp(p, 1, 1), MExp{PExp(p, 3, 2)});
        auto da = w.delta(w.teichmuller(a));
        EXPECT_TRUE(w.equal(da, w.zero(2)));
    }
}

#include "perfectoid/verify/generators.hpp"
#include "perfectoid/witt/theta.hpp"

namespace {

WittVec<TiltRing> random_witt(Rng& rng, const TiltRing& base, int n, int terms = 2) {
    WittVec<TiltRing> v;
    for (int i = 0; i < n; ++i)
        v.coords.push_back(verify::random_tilt(rng, base.signature(), terms, 1, ExtRational::infinity(), 2, 2).with_depth(base.depth()));
    return v;
}

}  // namespace

TEST(WittRing, AxiomsOverFpAndTilt) {
    Rng rng(41);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        WittRing<FpRing> w(FpRing(p), 4);
        for (int i = 0; i < 20; ++i) {
            auto r = [&] {
                std::vector<std::uint32_t> c;
                for (int k = 0; k < 4; ++k) c.push_back(static_cast<std::uint32_t>(rng.uniform(0, p - 1)));
                return vec(c);
            };
            auto a = r(), b = r(), c = r();
            EXPECT_TRUE(w.equal(w.mul(w.mul(a, b), c), w.mul(a, w.mul(b, c))));
            EXPECT_TRUE(w.equal(w.mul(a, w.add(b, c)), w.add(w.mul(a, b), w.mul(a, c))));
            EXPECT_TRUE(w.equal(w.add(w.add(a, b), c), w.add(a, w.add(b, c))));
        }
    }
    for (std::uint32_t p : {2u, 3u}) {
        TiltRing base(Signature(p, 1), ExtRational::infinity(), 8);
        WittRing<TiltRing> w(base, 3);
        for (int i = 0; i < 5; ++i) {
            auto a = random_witt(rng, base, 3), b = random_witt(rng, base, 3), c = random_witt(rng, base, 3);
            EXPECT_TRUE(w.equal(w.mul(w.mul(a, b), c), w.mul(a, w.mul(b, c))));
            EXPECT_TRUE(w.equal(w.mul(a, w.add(b, c)), w.add(w.mul(a, b), w.mul(a, c))));
        }
    }
}

TEST(Delta, AxiomsAndFrobeniusLift) {
    Rng rng(43);
    for (std::uint32_t p : {2u, 3u}) {
        TiltRing base(Signature(p, 1), ExtRational::infinity(), 8);
        WittRing<TiltRing> w(base, 3);
        auto cut = [](WittVec<TiltRing> v) {
            v.coords.pop_back();
            return v;
        };
        for (int i = 0; i < 5; ++i) {
            auto x = random_witt(rng, base, 3), y = random_witt(rng, base, 3);
            auto dx = w.delta(x), dy = w.delta(y);
            auto xs = cut(x), ys = cut(y);
            auto pe = w.p_element(2);
            auto lhs = w.delta(w.mul(x, y));
            auto rhs = w.add(w.add(w.mul(w.pow(xs, p), dy), w.mul(w.pow(ys, p), dx)), w.mul(pe, w.mul(dx, dy)));
            EXPECT_TRUE(w.equal(lhs, rhs));
            // delta(x + y) = delta(x) + delta(y) - sum_{0<i<p} (binom(p,i)/p) x^i y^{p-i}
            auto corr = w.zero(2);
            Integer binom = 1;
            for (std::uint32_t k = 1; k < p; ++k) {
                binom = binom * (p - k + 1) / k;
                Integer c = binom / p;
                corr = w.add(corr, w.mul(w.from_integer(c.get_si(), 2), w.mul(w.pow(xs, k), w.pow(ys, p - k))));
            }
            EXPECT_TRUE(w.equal(w.delta(w.add(x, y)), w.sub(w.add(dx, dy), corr)));
            auto diff = w.sub(w.frobenius(x), w.pow(x, p));
            EXPECT_TRUE(diff.coords[0].is_zero());
        }
        auto a = verify::random_tilt(rng, base.signature(), 3, 1, ExtRational::infinity()).with_depth(8);
        EXPECT_TRUE(w.equal(w.delta(w.teichmuller(a)), w.zero(2)));
        EXPECT_TRUE(w.equal(w.delta(w.zero()), w.zero(2)));
        EXPECT_TRUE(w.equal(w.delta(w.one()), w.zero(2)));
    }
}

TEST(Theta, ExamplesAndHomomorphism) {
    Rng rng(47);
    for (std::uint32_t p : {2u, 3u}) {
        Signature sig(p, 1);
        TiltRing base(sig, ExtRational::infinity(), 8);
        WittRing<TiltRing> w(base, 3);
        Rational n3(3);
        auto t = base.monomial(1, PExp::integer(p, 1), sig.zero_m());
        auto cone = char0::standard_cone(sig);
        auto pe = char0::UntiltSeries::monomial(cone, 1, PExp::integer(p, 1), sig.zero_m(), ExtRational(n3), 8);
        EXPECT_EQ(theta(w, w.teichmuller(t), n3), pe);
        auto troot = base.monomial(1, PExp(p, 1, 1), sig.zero_m());
        EXPECT_EQ(theta(w, w.teichmuller(troot), n3).digits(),
                  char0::UntiltSeries::monomial(cone, 1, PExp(p, 1, 1), sig.zero_m()).digits());
        EXPECT_TRUE(theta(w, w.sub(w.teichmuller(t), w.p_element()), n3).is_zero());
        for (int i = 0; i < 10; ++i) {
            auto x = random_witt(rng, base, 3), y = random_witt(rng, base, 3);
            auto tx = theta(w, x, n3), ty = theta(w, y, n3);
            EXPECT_EQ(theta(w, w.add(x, y), n3), tx + ty);
            EXPECT_EQ(theta(w, w.mul(x, y), n3), tx * ty);
        }
        auto m = base.monomial(1, PExp(p, 1, 1), MExp{PExp(p, 2, 1)});
        EXPECT_EQ(theta(w, w.teichmuller(m), n3), char0::sharp(m, n3));
    }
}
