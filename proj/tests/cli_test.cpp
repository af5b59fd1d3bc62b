#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "perfectoid/cli/commands.hpp"
#include "perfectoid/verify/suites.hpp"

using namespace perfectoid;
using namespace perfectoid::cli;

namespace {

Rational R(long a, long b = 1) { return make_rational(a, b); }

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::Usage;
}

Json json_of(const std::vector<std::string>& argv) {
    auto r = run(argv);
    EXPECT_EQ(r.exit_code, 0) << r.err;
    return Json::parse(r.out);
}

}  // namespace

TEST(Parser, UntiltDigits) {
    auto x = parse_untilt("p^(1/2)*T + 3", ParseOptions{2, 4});
    ASSERT_EQ(x.digits().size(), 3u);
    std::set<std::pair<PExp, PExp>> keys;
    for (const auto& d : x.digits()) {
        EXPECT_EQ(d.value, 1u);
        keys.insert({d.key.q, d.key.m.at(0)});
    }
    EXPECT_TRUE(keys.count({PExp(2, 1, 1), PExp::integer(2, 1)}));
    EXPECT_TRUE(keys.count({PExp::integer(2, 0), PExp::integer(2, 0)}));
    EXPECT_TRUE(keys.count({PExp::integer(2, 1), PExp::integer(2, 0)}));
    EXPECT_EQ(print(x), "1 + p^(1/2)*T^(1) + p^(1)");
}

TEST(Parser, TiltDigits) {
    auto x = parse_tilt("t^(1/4) + T^(3/4)", ParseOptions{2, 4});
    EXPECT_EQ(x.digits().size(), 2u);
    auto y = parse_tilt("(t + T)^(2)", ParseOptions{2, 4});
    EXPECT_EQ(y, parse_tilt("t^(2) + T^(2)", ParseOptions{2, 4}));
}

TEST(Parser, Errors) {
    EXPECT_EQ(code_of([] { parse_untilt("T^(1/3)", ParseOptions{2, 4}); }), ErrorCode::InvalidExponent);
    EXPECT_EQ(code_of([] { parse_untilt("T^(1/32)", ParseOptions{2, 4}); }), ErrorCode::InvalidExponent);
    EXPECT_EQ(code_of([] { parse_untilt("(1 + T)^(1/2)", ParseOptions{2, 4}); }), ErrorCode::InvalidExponent);
    EXPECT_EQ(code_of([] { parse_untilt("t + 1", ParseOptions{2, 4}); }), ErrorCode::SideMismatch);
    EXPECT_EQ(code_of([] { parse_tilt("p*T", ParseOptions{2, 4}); }), ErrorCode::SideMismatch);
    EXPECT_EQ(code_of([] { parse_untilt("99999999999999999999999", ParseOptions{2, 4}); }), ErrorCode::Overflow);
    try {
        parse_untilt("1+*2", ParseOptions{2, 4});
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::SyntaxError);
        EXPECT_NE(std::string(e.what()).find("position 2"), std::string::npos) << e.what();
    }
    try {
        parse_untilt("T + t", ParseOptions{2, 4});
        ADD_FAILURE();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos) << e.what();
    }
}

TEST(Parser, RoundTrip) {
    for (std::uint32_t p : {2u, 3u}) {
        Rng rng(41 + p);
        for (int i = 0; i < 100; ++i) {
            const bool tilt = i % 2;
            auto src = verify::suites::random_expression(rng, p, 2, tilt ? 't' : 'p');
            ParseOptions opt{p, 4, ExtRational(3)};
            if (tilt) {
                auto x = parse_tilt(src, opt);
                opt.signature = x.signature();
                EXPECT_EQ(parse_tilt(print(x), opt), x) << src;
            } else {
                auto x = parse_untilt(src, opt);
                opt.signature = x.signature();
                EXPECT_EQ(parse_untilt(print(x), opt), x) << src;
            }
        }
    }
}

TEST(Config, Validation) {
    EXPECT_EQ(run({"witt", "delta", "--p", "4", "--x", "1"}).exit_code, 2);
    EXPECT_EQ(run({"witt", "delta", "--v-omega", "1", "--x", "1"}).exit_code, 2);
    EXPECT_EQ(run({"witt", "delta", "--depth", "13", "--x", "1"}).exit_code, 2);
    EXPECT_EQ(run({"witt", "delta", "--prec", "0", "--x", "1"}).exit_code, 2);
    EXPECT_EQ(run({"nonsense"}).exit_code, 2);
    EXPECT_EQ(run({}).exit_code, 2);
}

TEST(Commands, WittDelta) {
    auto j = json_of({"witt", "delta", "--p", "3", "--len", "4", "--x", "p", "--json"});
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["provenance"], "exact");
    EXPECT_EQ(j["result"]["value"]["integer"], 19);
    EXPECT_EQ(j["result"]["value"]["modulus"], 27);
    EXPECT_EQ(j["config"]["p"], 3);
}

TEST(Commands, TiltSharpAndPrecision) {
    auto j = json_of({"tilt", "sharp", "--x", "t^(1/2) + T", "--depth", "4", "--json"});
    EXPECT_EQ(j["result"]["value"]["text"], "T^(1) + p^(1/2) + p^(5/4)*T^(1/2)");
    EXPECT_EQ(run({"tilt", "sharp", "--x", "t^(1/4)", "--depth", "1"}).exit_code, 2);
    EXPECT_EQ(run({"tilt", "sharp", "--x", "t^(1/4)", "--depth", "2"}).exit_code, 3);
}

TEST(Commands, NormExample) {
    auto pb = json_of({"norm", "powerbounded", "--p", "2", "--f", "T", "--norm", "weighted", "--budget", "3", "--json"});
    EXPECT_EQ(pb["result"]["verdict"], "no");
    auto rho = json_of({"norm", "rho", "--p", "2", "--f", "T", "--norm", "weighted", "--nmax", "1000", "--json"});
    EXPECT_EQ(rho["provenance"], "interval");
    EXPECT_EQ(rho["result"]["hi"]["factor_num"], 1001);
    EXPECT_EQ(rho["result"]["hi"]["root"], 1000);
}

TEST(Commands, DomainCover) {
    EXPECT_EQ(run({"domain", "cover", "--domain", "T;p", "--domain", "p;T"}).exit_code, 0);
    auto gap = run({"domain", "cover", "--domain", "T;p^(2)", "--domain", "p;T"});
    EXPECT_EQ(gap.exit_code, 1);
    EXPECT_EQ(run({"domain", "cover", "--domain", "T;p^(2)"}).exit_code, 1);
}

TEST(Commands, CechAndTorus) {
    auto c = json_of({"cech", "run", "--pieces", "0,1/2", "--prec", "2", "--json"});
    EXPECT_TRUE(c["result"]["h0_matches_ambient"].get<bool>());
    EXPECT_TRUE(c["result"]["torsion"].empty());
    auto t = json_of({"torus", "run", "--p", "2", "--nmax", "3", "--bound", "2", "--json"});
    EXPECT_EQ(t["result"]["entries"].size(), 33u);
}

TEST(Commands, CertificatesAreReproducible) {
    for (const auto& argv : std::vector<std::vector<std::string>>{
             {"witt", "theta", "--p", "2", "--len", "3", "--x", "t^(1/2) + T", "--json"},
             {"domain", "cover", "--domain", "T;p", "--domain", "p;T", "--mode", "sampled", "--seed", "7", "--json"},
             {"torus", "run", "--p", "3", "--nmax", "2", "--bound", "1", "--json"}}) {
        auto a = run(argv), b = run(argv);
        EXPECT_EQ(a.exit_code, 0) << a.err;
        EXPECT_EQ(a.out, b.out);
    }
}

TEST(Commands, ErrorCertificate) {
    auto r = run({"witt", "delta", "--x", "t + p", "--base", "fp", "--json"});
    EXPECT_EQ(r.exit_code, 2);
    auto j = Json::parse(r.out);
    EXPECT_TRUE(j.contains("error"));
}

TEST(Commands, ConfigFileFromEnvironment) {
    auto path = std::filesystem::temp_directory_path() / "perfectoid_lab_test.toml";
    {
        std::ofstream f(path);
        f << "p = 3\n";
    }
    ::setenv("PERFECTOID_LAB_CONFIG", path.c_str(), 1);
    auto j = json_of({"witt", "delta", "--len", "4", "--x", "p", "--json"});
    ::unsetenv("PERFECTOID_LAB_CONFIG");
    std::filesystem::remove(path);
    EXPECT_EQ(j["config"]["p"], 3);
    EXPECT_EQ(j["result"]["value"]["integer"], 19);
}

TEST(Commands, OutFile) {
    auto path = std::filesystem::temp_directory_path() / "perfectoid_lab_out.json";
    auto r = run({"witt", "add", "--x", "1", "--y", "1", "--json", "--out", path.string()});
    ASSERT_EQ(r.exit_code, 0);
    std::ifstream f(path);
    std::string body((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    std::filesystem::remove(path);
    EXPECT_EQ(body, r.out);
}
