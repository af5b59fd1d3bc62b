#include <gtest/gtest.h>

#include "perfectoid/cech/complex.hpp"
#include "perfectoid/cech/torus.hpp"
#include "perfectoid/oracle/cech_grid.hpp"
#include "perfectoid/oracle/cyclotomic.hpp"
#include "perfectoid/verify/generators.hpp"

using namespace perfectoid;
using namespace perfectoid::cech;

namespace {

Rational R(long a, long b = 1) { return make_rational(a, b); }

bool same_report(const CohomologyReport& a, const CohomologyReport& b) {
    if (!(a.h0 == b.h0) || a.h0_matches_ambient != b.h0_matches_ambient || a.torsion.size() != b.torsion.size()) return false;
    for (std::size_t i = 0; i < a.torsion.size(); ++i)
        if (a.torsion[i].degree != b.torsion[i].degree || a.torsion[i].m != b.torsion[i].m ||
            a.torsion[i].exponent != b.torsion[i].exponent)
            return false;
    return true;
}

}  // namespace

TEST(BuildCech, Examples) {
    auto one = build_cech(ToricCover::of_disk(2, {0}), 2, 2);
    ASSERT_EQ(one.degrees.size(), 1u);
    EXPECT_EQ(one.degrees[0][0].cone, Cone::disk(2, 1));

    auto two = build_cech(ToricCover::of_disk(2, {0, R(1, 2)}), 2, 2);
    ASSERT_EQ(two.degrees.size(), 2u);
    ASSERT_EQ(two.degrees[0].size(), 2u);
    EXPECT_EQ(two.degrees[0][0].cone, Cone::single(2, 0, ExtRational(R(1, 2))));
    EXPECT_EQ(two.degrees[0][1].cone, Cone::single(2, R(1, 2), ExtRational::infinity()));
    ASSERT_EQ(two.degrees[1].size(), 1u);
    EXPECT_EQ(two.degrees[1][0].cone, Cone::single(2, R(1, 2), ExtRational(R(1, 2))));
    EXPECT_EQ(two.degrees[1][0].pieces, (std::vector<int>{0, 1}));

    auto three = build_cech(ToricCover::of_disk(3, {0, R(1, 3), 1}), 2, 1);
    EXPECT_EQ(three.degrees[1].size(), 2u);  // outer pieces do not meet
    EXPECT_THROW(ToricCover::of_disk(2, {R(1, 2)}).pieces(), Error);
    EXPECT_THROW(ToricCover::of_disk(2, {0, 1, 1}).pieces(), Error);
}

TEST(BuildCech, CoboundarySquaresToZero) {
    Rng rng(31);
    int checked = 0;
    for (std::uint32_t p : {2u, 3u}) {
        auto cx = build_cech(ToricCover::of_disk(p, {0, R(1, p), 1}), 2, 2);
        for (int i = 0; i < 25; ++i, ++checked) {
            Cochain c;
            for (const auto& s : cx.degrees[0]) c.push_back(verify::random_untilt(rng, s.cone, 4, 2, ExtRational(2)));
            auto dc = coboundary(cx, 0, c);
            ASSERT_EQ(dc.size(), cx.degrees[1].size());
            for (const auto& x : coboundary(cx, 1, dc)) EXPECT_TRUE(x.is_zero());
            // A global element has zero coboundary.
            auto g = verify::random_untilt(rng, cx.ambient, 4, 2, ExtRational(2));
            Cochain gc;
            for (const auto& s : cx.degrees[0]) gc.push_back(g.in_cone(s.cone));
            for (const auto& x : coboundary(cx, 0, gc)) EXPECT_TRUE(x.is_zero()) << g.str();
        }
    }
    EXPECT_EQ(checked, 50);
}

TEST(Cohomology, TwoPieceDisk) {
    auto cx = build_cech(ToricCover::of_disk(2, {0, R(1, 2)}), 2, 2);
    auto rep = cohomology(cx, 2);
    EXPECT_TRUE(rep.h0_matches_ambient);
    EXPECT_EQ(rep.h0, Cone::disk(2, 1));
    EXPECT_TRUE(rep.torsion.empty());
    EXPECT_TRUE(almost_exactness(rep).exact);
    EXPECT_FALSE(rep.window.empty());

    auto trivial = cohomology(build_cech(ToricCover::of_disk(3, {0}), 2, 1), 2);
    EXPECT_TRUE(trivial.h0_matches_ambient);
    EXPECT_TRUE(trivial.torsion.empty());
}

TEST(Cohomology, H0IsAmbientForSmallCovers) {
    Rng rng(32);
    int covers = 0;
    for (std::uint32_t p : {2u, 3u})
        for (int pieces = 2; pieces <= 4; ++pieces)
            for (int trial = 0; trial < 4; ++trial, ++covers) {
                std::vector<Rational> br{0};
                while (static_cast<int>(br.size()) < pieces)
                    br.push_back(br.back() + make_rational(rng.uniform(1, 2 * p), p));
                auto cover = ToricCover::of_disk(p, br);
                if (trial % 2) cover.ambient = Cone::single(p, 0, ExtRational(br.back() + 1));
                auto rep = cohomology(build_cech(cover, 2, 1), 2);
                EXPECT_TRUE(rep.h0_matches_ambient);
                EXPECT_EQ(rep.h0, cover.ambient);
                EXPECT_TRUE(rep.torsion.empty());
            }
    EXPECT_EQ(covers, 24);
}

TEST(Cohomology, MatchesDenseGridOracle) {
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
    for (const auto& c : cases) {
        auto cover = ToricCover::of_disk(c.p, c.breaks);
        if (c.annulus) cover.ambient = Cone::single(c.p, 0, ExtRational(c.breaks.back() + 1));
        auto cx = build_cech(cover, c.prec, c.depth);
        auto rep = cohomology(cx, 1);
        // Thresholds -b m need q on the finer grid 1/p^{depth + e}, e the breakpoint depth.
        int e = 0;
        for (const auto& b : c.breaks) e = std::max(e, PExp::from_rational(c.p, b).den_exp());
        auto grid = oracle::cech_grid_betti(cx, 1, c.depth + e);
        ASSERT_FALSE(grid.betti.empty());
        EXPECT_TRUE(rep.h0_matches_ambient);
        EXPECT_EQ(grid.betti[0], grid.ambient_positions);
        for (std::size_t r = 1; r < grid.betti.size(); ++r) {
            Rational total = 0;
            for (const auto& t : rep.torsion)
                if (static_cast<std::size_t>(t.degree) == r) total += t.exponent;
            EXPECT_EQ(Rational(grid.betti[r]), total * Rational(static_cast<long>(grid.q_scale)));
        }
    }
}

TEST(Cohomology, RefinementInvariance) {
    for (std::uint32_t p : {2u, 3u}) {
        auto base = cohomology(build_cech(ToricCover::of_disk(p, {0, R(1, p)}), 2, 2), 2);
        auto finer = cohomology(build_cech(ToricCover::of_disk(p, {0, R(1, p * p), R(1, p)}), 2, 2), 2);
        auto finest = cohomology(build_cech(ToricCover::of_disk(p, {0, R(1, p * p), R(1, p), 1}), 2, 2), 2);
        EXPECT_TRUE(same_report(base, finer));
        EXPECT_TRUE(same_report(base, finest));
    }
}

TEST(Torus, Examples) {
    auto rep = torus_perfectoid_complex(2, 3, 2, 2);
    EXPECT_EQ(rep.entries.size(), 33u);  // i = a/8 with |a| <= 16
    for (const auto& e : rep.entries) {
        const bool integer = e.index.is_integer();
        EXPECT_EQ(e.v.is_inf(), integer);
        EXPECT_EQ(e.h0_rank, integer ? 1 : 0);
        EXPECT_EQ(e.h1_free, integer);
        if (integer) {
            EXPECT_LE(std::abs(e.index.num()), 2);
        } else {
            EXPECT_EQ(e.h1_torsion, e.v);
        }
    }
    auto find = [](const TorusReport& r, const PExp& i) {
        for (const auto& e : r.entries)
            if (e.index == i) return e;
        ADD_FAILURE() << "missing index " << i.str();
        return TorusEntry{};
    };
    EXPECT_EQ(find(rep, PExp(2, 1, 2)).v, ExtRational(R(1, 2)));
    auto rep3 = torus_perfectoid_complex(3, 1, 1, 2);
    EXPECT_EQ(find(rep3, PExp(3, 1, 1)).v, ExtRational(R(1, 2)));
    EXPECT_EQ(find(rep3, PExp(3, -2, 1)).v, ExtRational(R(1, 2)));
}

TEST(Torus, CyclotomicOracleAndLaws) {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const int nmax = p == 5 ? 2 : 3;
        auto rep = torus_perfectoid_complex(p, nmax, 2, 2);
        std::map<PExp, ExtRational> v;
        for (const auto& e : rep.entries) v[e.index] = e.v;
        for (const auto& [i, vi] : v) {
            if (i.is_integer()) continue;
            EXPECT_EQ(vi, ExtRational(oracle::cyclotomic_gap(p, i.den_exp())));
            PExp shifted = i + PExp::integer(p, 1);
            if (v.count(shifted)) EXPECT_EQ(v[shifted], vi);
            if (i.den_exp() < nmax) {
                PExp finer = i.div_p();
                if (v.count(finer)) EXPECT_EQ(v[finer].value(), vi.value() / p);
            }
        }
    }
    // The cyclotomic polynomial itself: degree p^{n-1}(p-1) and value p at 1.
    for (std::uint32_t p : {2u, 3u})
        for (int n = 1; n <= 3; ++n) {
            auto phi = oracle::cyclotomic_prime_power(p, n);
            EXPECT_EQ(static_cast<long>(phi.size()) - 1, checked_pow(p, n - 1) * (p - 1));
            Integer at1 = 0;
            for (const auto& c : phi) at1 += c;
            EXPECT_EQ(at1, Integer(p));
        }
}

TEST(AlmostExactness, Examples) {
    EXPECT_TRUE(almost_exactness(std::vector<TorsionSummand>{}).exact);
    EXPECT_EQ(almost_exactness(std::vector<TorsionSummand>{}).str(), "exact");
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto verdict = almost_exactness(torsion_of(torus_perfectoid_complex(p, 2, 1, 2)));
        EXPECT_FALSE(verdict.exact);
        EXPECT_EQ(verdict.sup_exponent.at(1), R(1, p - 1));
    }
    auto rep = cohomology(build_cech(ToricCover::of_disk(3, {0, R(1, 3)}), 2, 1), 2);
    EXPECT_TRUE(almost_exactness(rep).exact);
}
