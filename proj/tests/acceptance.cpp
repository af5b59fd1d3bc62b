// Acceptance checks, one PASS/FAIL line per criterion.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>

#include "perfectoid/banach/norms.hpp"
#include "perfectoid/berkovich/approx.hpp"
#include "perfectoid/cech/complex.hpp"
#include "perfectoid/cech/torus.hpp"
#include "perfectoid/char0/bridge.hpp"
#include "perfectoid/cli/commands.hpp"
#include "perfectoid/oracle/cech_grid.hpp"
#include "perfectoid/oracle/cyclotomic.hpp"
#include "perfectoid/oracle/eisenstein.hpp"
#include "perfectoid/verify/suites.hpp"

using namespace perfectoid;
namespace su = perfectoid::verify::suites;

namespace {

struct Outcome {
    bool ok = true;
    std::string note;
};

Rational R(long a, long b = 1) { return make_rational(a, b); }

Outcome from_check(const verify::Check& c) {
    if (c.cases() == 0) return {false, "no cases"};
    if (c.failures()) return {false, c.first_failure()};
    return {true, std::to_string(c.cases()) + " cases"};
}

Outcome suites_of(std::initializer_list<void (*)(const verify::SuiteContext&, verify::Check&)> bodies) {
    verify::SuiteContext ctx{2, 20240601, nullptr};
    verify::Check c;
    try {
        for (auto b : bodies) b(ctx, c);
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
    return from_check(c);
}

// F_p[x]/(x^{p^M}) image of a tilt element mod t, laid out like the
// Eisenstein model reduced mod p.
oracle::EisensteinModel::Elem tilt_image(const charp::TiltSeries& x, int depth) {
    const std::uint32_t p = x.prime();
    const std::int64_t deg = checked_pow(p, depth);
    oracle::EisensteinModel::Elem out;
    for (const auto& d : x.digits()) {
        oracle::EisensteinModel::Key k;
        for (const auto& e : d.key.m) k.push_back(e.scaled(depth));
        auto& c = out.try_emplace(k, oracle::EisensteinModel::Coeffs(static_cast<std::size_t>(deg), Integer(0))).first->second;
        c[static_cast<std::size_t>(d.key.q.scaled(depth))] += d.value;
    }
    return out;
}

Outcome delta_criterion() {
    return suites_of({su::delta_of_p, su::rank_one_vanishing});
}

Outcome ghost_criterion() { return suites_of({su::ghost_identities}); }

Outcome eisenstein_criterion() { return suites_of({su::eisenstein_oracle}); }

Outcome theta_criterion() { return suites_of({su::theta_homomorphism, su::distinguished}); }

Outcome bridge_criterion() {
    verify::Check c;
    Rng rng(501);
    for (std::uint32_t p : {2u, 3u}) {
        auto cone = char0::Cone::disk(p, 1);
        const int depth = 3;
        oracle::EisensteinModel model(p, depth, 1);
        for (int i = 0; i < 100; ++i) {
            auto a = verify::random_untilt(rng, cone, 5, depth, ExtRational(3));
            auto b = verify::random_untilt(rng, cone, 5, depth, ExtRational(3));
            auto ra = char0::bridge_reduce(a), rb = char0::bridge_reduce(b);
            c.expect(char0::bridge_reduce(a + b) == ra + rb, "reduce additive");
            c.expect(char0::bridge_reduce(a * b) == ra * rb, "reduce multiplicative");
            c.expect(model.normalize(tilt_image(char0::bridge_reduce(a * b), depth)) == model.from_untilt(a * b),
                     "reduce agrees with the mod p oracle");
            auto x = verify::random_untilt(rng, cone, 5, depth, ExtRational(2), 2).with_depth(4);
            auto r = char0::pth_root_mod_p(x);
            c.expect(char0::pow(r, p).truncated(ExtRational(1)).digits() == x.truncated(ExtRational(1)).digits(),
                     "root^p = x mod p");
        }
    }
    return from_check(c);
}

Outcome dictionary_criterion() { return suites_of({su::dictionary_round_trip}); }

Outcome weighted_example() {
    const std::uint32_t p = 2;
    auto weighted = banach::NormSpec::weighted(p);
    auto T = field::KPoly::variable(p, 1, 0);
    verify::Check c;
    auto power = field::KPoly::constant(p, 1, field::KElem(p, Rational(1)));
    for (int n = 0; n <= 30; ++n) {
        c.expect(banach::norm_eval(power, weighted) == NormValue::make(p, 0, n + 1), "|T^n| = n + 1");
        power = power * T;
    }
    auto pb = banach::is_powerbounded(T, weighted, 100, 3);
    c.expect(pb.verdict == banach::Verdict::No && pb.witness_n == 8 && pb.witness_value == NormValue::make(p, 0, 9),
             "T not powerbounded, witness n = 8");
    auto iv = banach::spectral_radius(T, weighted, 1000, {berkovich::SeminormPoint::gauss(p, 1)});
    const auto one = NormValue::make(p, 0, 1);
    c.expect(iv.lo == one, "lower endpoint 1");
    c.expect(iv.hi == NormValue::make(p, 0, 1001, 1000), "upper endpoint 1001^(1/1000)");
    c.expect(iv.lo <= one && one <= iv.hi, "interval contains 1");
    c.expect(iv.hi < NormValue::make(p, 0, R(101, 100)), "upper endpoint below 1.01");
    return from_check(c);
}

Outcome maximum_modulus_criterion() { return suites_of({su::maximum_modulus}); }

Outcome tilting_criterion() { return suites_of({su::tilting_identity}); }

Outcome meet_criterion() { return suites_of({su::meet_pointwise}); }

Outcome tate_criterion() {
    verify::Check c;
    double worst = 0;
    for (std::uint32_t p : {2u, 3u})
        for (auto breaks : {std::vector<Rational>{0, R(1, p)}, std::vector<Rational>{0, R(1, p), R(1)}}) {
            auto start = std::chrono::steady_clock::now();
            auto cover = cech::ToricCover::of_disk(p, breaks);
            auto cx = cech::build_cech(cover, 2, 3);
            auto rep = cech::cohomology(cx, 1);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            worst = std::max(worst, secs);
            const std::string tag = "p=" + std::to_string(p) + " pieces=" + std::to_string(breaks.size());
            c.expect(rep.h0 == char0::Cone::disk(p, 1) && rep.h0_matches_ambient, "H0 is the disk, " + tag);
            bool zero = true;
            for (const auto& t : rep.torsion) zero = zero && t.exponent == 0;
            c.expect(zero, "torsion exponents vanish, " + tag);
            c.expect(secs < 10, "cover under 10 s, " + tag);

            int e = 0;
            for (const auto& b : breaks) e = std::max(e, PExp::from_rational(p, b).den_exp());
            auto grid = oracle::cech_grid_betti(cx, 1, 3 + e);
            bool match = !grid.betti.empty() && grid.betti[0] == grid.ambient_positions;
            for (std::size_t r = 1; match && r < grid.betti.size(); ++r) {
                Rational total = 0;
                for (const auto& t : rep.torsion)
                    if (static_cast<std::size_t>(t.degree) == r) total += t.exponent;
                match = Rational(grid.betti[r]) == total * Rational(static_cast<long>(grid.q_scale));
            }
            c.expect(match, "matrix oracle, " + tag);
        }
    auto out = from_check(c);
    char buf[64];
    std::snprintf(buf, sizeof buf, ", slowest cover %.2f s", worst);
    if (out.ok) out.note += buf;
    return out;
}

Outcome torus_criterion() {
    verify::Check c;
    for (std::uint32_t p : {2u, 3u}) {
        auto rep = cech::torus_perfectoid_complex(p, 4, 2, 2);
        for (const auto& e : rep.entries) {
            const bool integer = e.index.is_integer();
            c.expect(e.v.is_inf() == integer, "v infinite exactly at integers: " + e.index.str());
            c.expect(e.h1_free == integer, "H1 free exactly at integers: " + e.index.str());
            if (integer) continue;
            const int n = e.index.den_exp();
            const Rational closed = Rational(1) / Rational(checked_pow(p, n - 1) * (p - 1));
            c.expect(e.v == ExtRational(closed), "v closed form at " + e.index.str());
            c.expect(e.v == ExtRational(oracle::cyclotomic_gap(p, n)), "cyclotomic oracle at " + e.index.str());
        }
    }
    return from_check(c);
}

Outcome approx_criterion() {
    verify::Check c;
    for (std::uint32_t p : {2u, 3u}) {
        auto f = field::KPoly::monomial(p, field::KElem::monomial(p, 1, PExp(p, 1, 1)), MExp{PExp::integer(p, 1)});
        auto rep = berkovich::approx_verify(f, berkovich::RootCertified::monomial(f), 1, R(1, 2),
                                            berkovich::standard_grid(p, 1), R(1, p));
        c.expect(rep.pass && rep.worst.is_inf(), "Teichmuller case passes with infinite margin");
    }
    const std::uint32_t p = 2;
    auto T = field::KPoly::variable(p, 1, 0);
    auto f = T - field::KPoly::constant(p, 1, field::KElem(p, Rational(2)));
    auto x = berkovich::SeminormPoint::single(field::KElem(p, Rational(2)), ExtRational(3));
    auto rep = berkovich::approx_verify(f, berkovich::RootCertified::monomial(T), 2, R(1, 2), {x}, R(1, 2));
    c.expect(!rep.pass && rep.worst == ExtRational(R(-1, 4)), "T - p against T fails with margin -1/4");
    return from_check(c);
}

Outcome verify_all_criterion() {
    Outcome out{true, ""};
    for (std::string p : {"2", "3"}) {
        auto start = std::chrono::steady_clock::now();
        auto r = cli::run({"verify", "all", "--p", p});
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char buf[64];
        std::snprintf(buf, sizeof buf, "p=%s %.1f s", p.c_str(), secs);
        out.note += (out.note.empty() ? "" : ", ") + std::string(buf);
        if (r.exit_code != 0 || secs >= 60) out.ok = false;
    }
    return out;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"delta of p in W_4(F_p) and delta of Teichmuller lifts", delta_criterion},
        {"ghost identities for S_n, P_n, n <= 4", ghost_criterion},
        {"untilt arithmetic matches the Eisenstein model", eisenstein_criterion},
        {"theta homomorphism, theta([t] - p) = 0, [t] - p distinguished", theta_criterion},
        {"reduction mod p is a ring map, p-th roots mod p", bridge_criterion},
        {"cone dictionary round trip, lattice norms power-multiplicative", dictionary_criterion},
        {"weighted norm on T: |T^n|, powerbounded witness, spectral interval", weighted_example},
        {"maximum modulus at the Gauss point", maximum_modulus_criterion},
        {"tilting identity on monomials", tilting_criterion},
        {"rational domain meet pointwise", meet_criterion},
        {"Tate acyclicity on two and three piece covers", tate_criterion},
        {"perfectoid torus complex", torus_criterion},
        {"approximation verifier", approx_criterion},
        {"verify all", verify_all_criterion},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, e.what()};
        }
        failed += !o.ok;
        std::cout << (o.ok ? "PASS " : "FAIL ") << name << " (" << o.note << ")" << std::endl;
    }
    return failed ? 1 : 0;
}
