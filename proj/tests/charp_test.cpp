#include <gtest/gtest.h>

#include "perfectoid/charp/tilt_series.hpp"
#include "perfectoid/verify/generators.hpp"

using namespace perfectoid;
using namespace perfectoid::charp;

namespace {

TiltSeries mono(const Signature& sig, std::int64_t c, Rational q, std::vector<Rational> m = {}, int depth = 6) {
    MExp me;
    for (const auto& x : m) me.push_back(PExp::from_rational(sig.p, x));
    while (static_cast<int>(me.size()) < sig.d) me.push_back(PExp::integer(sig.p, 0));
    return TiltSeries::monomial(sig, c, PExp::from_rational(sig.p, q), me, ExtRational::infinity(), depth);
}

}  // namespace

TEST(TiltArith, Examples) {
    Signature s2(2, 1), s3(3, 1);
    auto h = mono(s2, 1, make_rational(1, 2));
    EXPECT_TRUE((h + h).is_zero());
    auto a = mono(s3, 2, make_rational(1, 3));
    EXPECT_EQ(a + a, mono(s3, 1, make_rational(1, 3)));
    auto x = h + mono(s2, 1, 0, {1});
    EXPECT_EQ(x * x, mono(s2, 1, 1) + mono(s2, 1, 0, {2}));
}

TEST(TiltArith, FreshmansDreamAgainstIntegerExpansion) {
    // Expand (sum c_i u_i)^p over Z by the multinomial rule, then reduce mod p.
    Rng rng(3);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        Signature sig(p, 1);
        for (int trial = 0; trial < 20; ++trial) {
            auto x = verify::random_tilt(rng, sig, 3, 3, ExtRational::infinity());
            TiltSeries power = TiltSeries::constant(sig, 1, ExtRational::infinity(), 6);
            for (std::uint32_t i = 0; i < p; ++i) power = power * x;
            EXPECT_EQ(power.digits(), tilt_frobenius(x, Direction::Forward).digits());
        }
    }
}

TEST(TiltFrobenius, Examples) {
    Signature s2(2, 1), s3(3, 1);
    EXPECT_EQ(tilt_frobenius(mono(s2, 1, make_rational(1, 2)), Direction::Forward), mono(s2, 1, 1));
    auto y = tilt_frobenius(mono(s3, 1, 1) + mono(s3, 1, 0, {1}), Direction::Inverse);
    EXPECT_EQ(y, mono(s3, 1, make_rational(1, 3)) + mono(s3, 1, 0, {make_rational(1, 3)}));
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        auto x = verify::random_tilt(rng, s3, 4, 3, ExtRational(Rational(3))).with_depth(4);
        EXPECT_EQ(tilt_frobenius(tilt_frobenius(x, Direction::Inverse), Direction::Forward), x);
    }
    auto deep = TiltSeries::monomial(s2, 1, PExp(2, 1, 6), s2.zero_m(), ExtRational::infinity(), 6);
    EXPECT_THROW(tilt_frobenius(deep, Direction::Inverse), Error);
}

TEST(TiltValuation, Examples) {
    Signature s2(2, 1);
    EXPECT_EQ(*tilt_valuation(mono(s2, 1, make_rational(3, 4)) + mono(s2, 1, 2)).exact, ExtRational(make_rational(3, 4)));
    EXPECT_TRUE(tilt_valuation(TiltSeries::zero(s2)).exact->is_inf());
    auto prod = mono(s2, 1, make_rational(1, 2)) * mono(s2, 1, make_rational(1, 4));
    EXPECT_EQ(*tilt_valuation(prod).exact, ExtRational(make_rational(3, 4)));
    auto z = TiltSeries::zero(s2, ExtRational(Rational(2)));
    EXPECT_TRUE(tilt_valuation(z).indeterminate());
}

TEST(TiltInvariants, RingAxiomsAndFrobenius) {
    Rng rng(11);
    for (std::uint32_t p : {2u, 3u}) {
        Signature sig(p, 2, {false, true});
        for (int i = 0; i < 40; ++i) {
            auto a = verify::random_tilt(rng, sig, 4, 3, ExtRational(Rational(3)));
            auto b = verify::random_tilt(rng, sig, 4, 3, ExtRational(Rational(4)));
            auto c = verify::random_tilt(rng, sig, 4, 3, ExtRational::infinity());
            EXPECT_TRUE(equal_at_shared_precision((a * b) * c, a * (b * c)));
            EXPECT_TRUE(equal_at_shared_precision(a * b, b * a));
            EXPECT_TRUE(equal_at_shared_precision(a * (b + c), a * b + a * c));
            EXPECT_TRUE(equal_at_shared_precision((a + b) + c, a + (b + c)));
            auto F = [](const TiltSeries& x) { return tilt_frobenius(x, Direction::Forward); };
            EXPECT_EQ(F(a * b), F(a) * F(b));
            EXPECT_EQ(F(a + b), F(a) + F(b));
            TiltSeries sum = TiltSeries::zero(sig, a.precision(), a.depth());
            for (std::uint32_t k = 0; k < p; ++k) sum = sum + a;
            EXPECT_TRUE(sum.is_zero());
            auto va = tilt_valuation(a), vb = tilt_valuation(b), vab = tilt_valuation(a * b);
            if (!va.indeterminate() && !vb.indeterminate() && *va.exact + *vb.exact < (a * b).precision())
                EXPECT_EQ(*vab.exact, *va.exact + *vb.exact);
            EXPECT_EQ(perfection(a), a);
            auto c5 = c.with_depth(5);
            EXPECT_EQ(frobenius_power(frobenius_power(c5, -2), 2), c5);
        }
    }
}
