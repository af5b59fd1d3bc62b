#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "perfectoid/banach/norms.hpp"
#include "perfectoid/berkovich/domain.hpp"
#include "perfectoid/berkovich/point.hpp"
#include "perfectoid/cech/complex.hpp"
#include "perfectoid/cech/torus.hpp"
#include "perfectoid/char0/bridge.hpp"
#include "perfectoid/cli/config.hpp"
#include "perfectoid/cli/json_io.hpp"
#include "perfectoid/cli/parser.hpp"
#include "perfectoid/oracle/witt_zpn.hpp"
#include "perfectoid/verify/suites.hpp"
#include "perfectoid/witt/theta.hpp"

namespace perfectoid::cli {

enum class Provenance { Exact, Sampled, Interval };

inline std::string provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Exact: return "exact";
        case Provenance::Sampled: return "sampled";
        case Provenance::Interval: return "interval";
    }
    return "";
}

struct Outcome {
    Json result = Json::object();
    Provenance provenance = Provenance::Exact;
    Json witnesses = Json::array();
    bool pass = true;  // false only for verification failures
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitExhausted = 3;

inline int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::DepthExceeded:
        case ErrorCode::PrecisionIndeterminate:
        case ErrorCode::CeilingExceeded:
            return kExitExhausted;
        case ErrorCode::NotDivisible:
        case ErrorCode::NoStabilization:
            return kExitFailure;
        default:
            return kExitUsage;
    }
}

struct RunResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

/// Flags shared by the subcommands; only the ones a command reads matter.
struct Args {
    int len = 4;
    std::string x, y;
    std::string base = "auto";
    std::string f;
    std::string norm = "gauss";
    int nmax = 100;
    int budget = 3;
    std::string center = "0";
    std::string s = "0";
    std::vector<std::string> domains;
    std::string mode = "exact";
    std::string pieces = "0";
    std::string mbound = "1";
    std::string bound = "2";
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

inline ParseOptions options(const Config& cfg, std::optional<Signature> sig = std::nullopt) {
    return ParseOptions{cfg.p, cfg.depth, ExtRational(cfg.prec), std::move(sig)};
}

/// One-variable field element; the CLI's analytic commands work over the line.
inline field::KPoly field_elem(const std::string& src, const Config& cfg) {
    require(!src.empty(), ErrorCode::Usage, "missing element");
    return parse_field(src, options(cfg, Signature(cfg.p, 1, {true})));
}

/// "f1,f2;g" is the domain |f_i| <= |g|.
inline berkovich::RationalDomainSpec parse_domain(const std::string& text, const Config& cfg) {
    auto halves = split(text, ';');
    require(halves.size() == 2, ErrorCode::SyntaxError, "domain '" + text + "' is not of the form f1,f2;g");
    berkovich::RationalDomainSpec V;
    for (const auto& f : split(halves[0], ',')) V.numerators.push_back(field_elem(trim(f), cfg));
    V.denominator = field_elem(trim(halves[1]), cfg);
    return V;
}

inline Json domain_json(const berkovich::RationalDomainSpec& V) {
    Json nums = Json::array();
    for (const auto& f : V.numerators) nums.push_back(f.str());
    Json out{{"numerators", nums}, {"denominator", V.denominator.str()}, {"perfected", V.perfected}, {"text", V.str()}};
    return out;
}

inline Json interval_json(const berkovich::SInterval& I) {
    return Json{{"lo", to_json(I.lo)}, {"hi", to_json(I.hi)}, {"hi_closed", I.hi_closed}};
}

inline Json point_json(const berkovich::SeminormPoint& x) {
    Json centers = Json::array(), radii = Json::array();
    for (const auto& c : x.centers) centers.push_back(c.str());
    for (const auto& r : x.radii) radii.push_back(to_json(r));
    return Json{{"centers", centers}, {"radii", radii}, {"text", x.str()}};
}

inline berkovich::SeminormPoint point_of(const Args& a, const Config& cfg) {
    auto c = field_elem(a.center, cfg);
    require(c.terms().size() <= 1 && (c.is_zero() || m_is_zero(c.terms().begin()->first)), ErrorCode::Usage,
            "center must be a constant");
    field::KElem center = c.is_zero() ? field::KElem(cfg.p) : c.terms().begin()->second;
    return berkovich::SeminormPoint::single(center, parse_ext_rational(a.s));
}

inline banach::NormSpec norm_of(const std::string& name, const Signature& sig) {
    if (name == "weighted") return banach::NormSpec::weighted(sig.p);
    if (name == "gauss") return banach::NormSpec::gauss(char0::standard_cone(sig));
    if (name == "lattice") return banach::NormSpec::lattice(char0::standard_cone(sig));
    fail(ErrorCode::Usage, "unknown norm '" + name + "'");
}

inline Json cohomology_json(const cech::CohomologyReport& rep) {
    Json torsion = Json::array();
    for (const auto& t : rep.torsion)
        torsion.push_back(Json{{"degree", t.degree}, {"monomial", to_json(t.m)}, {"kind", "torsion"}, {"exponent", to_json(t.exponent)}});
    Json window = Json::array();
    for (const auto& m : rep.window) window.push_back(to_json(m));
    auto verdict = cech::almost_exactness(rep);
    return Json{{"h0", to_json(rep.h0)},     {"h0_matches_ambient", rep.h0_matches_ambient},
                {"torsion", torsion},         {"almost", verdict.str()},
                {"window", window},           {"truncation", rep.truncation}};
}

// witt

template <class R>
Json witt_vec_json(const witt::WittRing<R>& w, const witt::WittVec<R>& v) {
    Json coords = Json::array();
    for (const auto& c : v.coords) {
        if constexpr (std::is_same_v<R, witt::FpRing>) coords.push_back(c);
        else coords.push_back(series_json(c, 't'));
    }
    Json out{{"length", v.length()}, {"text", w.str(v)}, {"coords", coords}};
    if constexpr (std::is_same_v<R, witt::FpRing>) {
        oracle::ZpnWitt z(w.prime(), v.length());
        Integer value = z.value(v.coords);
        Integer modulus = ipow(Integer(w.prime()), static_cast<unsigned long>(v.length()));
        Json digits = Json::array();
        Integer rest = value;
        for (int i = 0; i < v.length(); ++i) {
            digits.push_back(Integer(rest % w.prime()).get_ui());
            rest /= w.prime();
        }
        out["text"] = w.str(v) + " = " + value.get_str() + " mod " + modulus.get_str();
        out["integer"] = to_json(value);
        out["modulus"] = to_json(modulus);
        out["p_adic_digits"] = digits;
    } else {
        Json teich = Json::array();
        for (const auto& d : w.teich_expansion(v)) teich.push_back(series_json(d, 't'));
        out["teichmuller_digits"] = teich;
    }
    return out;
}

template <class R>
Outcome witt_run(const std::string& op, const witt::WittRing<R>& w, const Args& a, const Config& cfg) {
    Outcome o;
    auto x = parse_witt(a.x, w, cfg.depth);
    o.result["x"] = witt_vec_json(w, x);
    if (op == "add" || op == "mul") {
        require(!a.y.empty(), ErrorCode::Usage, op + " needs --y");
        auto y = parse_witt(a.y, w, cfg.depth);
        o.result["y"] = witt_vec_json(w, y);
        o.result["value"] = witt_vec_json(w, op == "add" ? w.add(x, y) : w.mul(x, y));
    } else if (op == "delta") {
        o.result["value"] = witt_vec_json(w, w.delta(x));
    } else if (op == "distinguished") {
        auto r = w.is_distinguished(x);
        o.result["distinguished"] = r.distinguished;
        o.result["a1"] = r.a1;
        o.witnesses.push_back(Json{{"teichmuller_digit_1", r.a1}});
    } else if (op == "theta") {
        if constexpr (std::is_same_v<R, witt::TiltRing>) {
            o.result["value"] = series_json(witt::theta(w, x, cfg.prec), 'p');
        } else {
            // Over F_p the map W(F_p) -> Z_p/p^N is the integer value itself.
            oracle::ZpnWitt z(w.prime(), x.length());
            o.result["value"] = to_json(z.value(x.coords));
        }
    } else {
        fail(ErrorCode::Usage, "unknown witt operation '" + op + "'");
    }
    return o;
}

inline Outcome cmd_witt(const std::string& op, const Args& a, const Config& cfg) {
    require(!a.x.empty(), ErrorCode::Usage, "witt needs --x");
    Shape s = shape_of(parse_ast(a.x));
    if (!a.y.empty()) s.merge(shape_of(parse_ast(a.y)));
    std::string base = a.base;
    if (base == "auto") base = (s.has_t || s.d > 0 || op == "theta") ? "tilt" : "fp";
    Outcome o;
    if (base == "fp") {
        witt::WittRing<witt::FpRing> w(witt::FpRing(cfg.p), a.len);
        o = witt_run(op, w, a, cfg);
    } else if (base == "tilt") {
        witt::TiltRing ring(s.signature(cfg.p), ExtRational::infinity(), cfg.depth);
        witt::WittRing<witt::TiltRing> w(ring, a.len);
        o = witt_run(op, w, a, cfg);
    } else {
        fail(ErrorCode::Usage, "--base must be fp, tilt or auto");
    }
    Json head{{"operation", op}, {"base", base}, {"length", a.len}};
    head.update(o.result);
    o.result = std::move(head);
    return o;
}

// tilt

inline Outcome cmd_tilt(const std::string& op, const Args& a, const Config& cfg) {
    require(!a.x.empty(), ErrorCode::Usage, "tilt needs --x");
    Outcome o;
    o.result["operation"] = op;
    if (op == "sharp") {
        // The sharp map reads an exact tilt element.
        auto x = parse_tilt(a.x, ParseOptions{cfg.p, cfg.depth, ExtRational::infinity()});
        o.result["x"] = series_json(x, 't');
        o.result["value"] = series_json(char0::sharp(x, cfg.prec), 'p');
    } else if (op == "reduce") {
        auto x = parse_untilt(a.x, options(cfg));
        o.result["x"] = series_json(x, 'p');
        o.result["value"] = series_json(char0::bridge_reduce(x), 't');
    } else if (op == "root") {
        auto x = parse_untilt(a.x, options(cfg));
        auto r = char0::pth_root_mod_p(x);
        o.result["x"] = series_json(x, 'p');
        o.result["value"] = series_json(r, 'p');
        o.result["check"] = render_digits(char0::pow(r, cfg.p).truncated(ExtRational(1)).digits(), 'p');
    } else {
        fail(ErrorCode::Usage, "unknown tilt operation '" + op + "'");
    }
    return o;
}

// norm

inline Outcome cmd_norm(const std::string& op, const Args& a, const Config& cfg) {
    require(!a.f.empty(), ErrorCode::Usage, "norm needs --f");
    Outcome o;
    o.result["operation"] = op;
    o.result["norm"] = a.norm;
    if (a.norm == "lattice") {
        require(op == "eval", ErrorCode::Usage, "the lattice norm supports eval only");
        auto x = parse_untilt(a.f, options(cfg));
        auto n = norm_of("lattice", x.signature());
        o.result["f"] = series_json(x, 'p');
        o.result["value"] = to_json(banach::norm_eval(x, n));
        return o;
    }
    Shape s = shape_of(parse_ast(a.f));
    Signature sig = a.norm == "weighted" ? Signature(cfg.p, 1) : s.signature(cfg.p);
    if (sig.d == 0) sig = Signature(cfg.p, 1);
    auto f = parse_field(a.f, options(cfg, sig));
    auto n = norm_of(a.norm, sig);
    o.result["f"] = f.str();
    if (op == "eval") {
        o.result["value"] = to_json(banach::norm_eval(f, n));
    } else if (op == "rho") {
        std::vector<berkovich::SeminormPoint> pts;
        if (sig.d == 1) pts.push_back(berkovich::SeminormPoint::gauss(cfg.p, 1));
        auto iv = banach::spectral_radius(f, n, a.nmax, pts);
        o.provenance = Provenance::Interval;
        o.result["nmax"] = a.nmax;
        o.result["lo"] = to_json(iv.lo);
        o.result["hi"] = to_json(iv.hi);
        o.result["hi_at"] = iv.hi_at;
        o.result["lo_source"] = iv.lo_source;
    } else if (op == "powerbounded") {
        auto r = banach::is_powerbounded(f, n, a.nmax, a.budget);
        o.provenance = r.verdict == banach::Verdict::Unknown ? Provenance::Interval : Provenance::Exact;
        o.result["verdict"] = banach::verdict_name(r.verdict);
        o.result["bound"] = to_json(r.bound);
        o.result["certificate"] = r.certificate;
        if (r.witness_n > 0)
            o.witnesses.push_back(Json{{"n", r.witness_n}, {"value", to_json(r.witness_value)}});
    } else {
        fail(ErrorCode::Usage, "unknown norm operation '" + op + "'");
    }
    return o;
}

// point

inline Outcome cmd_point(const std::string& op, const Args& a, const Config& cfg) {
    Outcome o;
    o.result["operation"] = op;
    auto x = point_of(a, cfg);
    o.result["point"] = point_json(x);
    if (op == "eval") {
        auto f = field_elem(a.f, cfg);
        o.result["f"] = f.str();
        o.result["valuation"] = to_json(berkovich::eval_valuation(f, x));
        o.result["value"] = to_json(berkovich::eval_point(f, x));
    } else if (op == "member") {
        require(a.domains.size() == 1, ErrorCode::Usage, "member needs exactly one --domain");
        auto V = parse_domain(a.domains[0], cfg);
        auto m = berkovich::in_domain(x, V);
        o.result["domain"] = domain_json(V);
        o.result["member"] = m.member;
        o.result["margin"] = to_json(m.margin);
        o.result["detail"] = m.detail;
    } else {
        fail(ErrorCode::Usage, "unknown point operation '" + op + "'");
    }
    return o;
}

// domain

inline Outcome cmd_domain(const std::string& op, const Args& a, const Config& cfg) {
    Outcome o;
    o.result["operation"] = op;
    std::vector<berkovich::RationalDomainSpec> ds;
    for (const auto& d : a.domains) ds.push_back(parse_domain(d, cfg));
    require(!ds.empty(), ErrorCode::Usage, "domain needs --domain");
    if (op == "meet") {
        require(ds.size() == 2, ErrorCode::Usage, "meet needs two domains");
        auto M = berkovich::domain_meet(ds[0], ds[1]);
        o.result["value"] = domain_json(M);
        if (auto I = berkovich::domain_interval(M)) o.result["interval"] = interval_json(*I);
        else o.result["interval"] = nullptr;
    } else if (op == "perfect") {
        require(ds.size() == 1, ErrorCode::Usage, "perfect needs one domain");
        auto P = berkovich::perfected_domain(ds[0]);
        Json roots = Json::array();
        for (const auto& r : P.roots) roots.push_back(r);
        o.result["value"] = domain_json(P.presentation);
        o.result["roots"] = roots;
        o.result["cone"] = P.cone ? to_json(*P.cone) : Json(nullptr);
        o.result["checked_points"] = P.checked_points;
    } else if (op == "cover") {
        auto mode = a.mode == "sampled" ? berkovich::CoverMode::Sampled : berkovich::CoverMode::Exact;
        require(a.mode == "sampled" || a.mode == "exact", ErrorCode::Usage, "--mode must be exact or sampled");
        auto cert = berkovich::cover_check(ds, mode, cfg.p, std::max(cfg.depth, 1));
        o.provenance = mode == berkovich::CoverMode::Sampled ? Provenance::Sampled : Provenance::Exact;
        o.pass = cert.pass;
        Json intervals = Json::array();
        for (const auto& I : cert.intervals) intervals.push_back(interval_json(I));
        o.result["mode"] = a.mode;
        o.result["pass"] = cert.pass;
        o.result["intervals"] = intervals;
        if (mode == berkovich::CoverMode::Sampled) {
            o.result["grid_size"] = cert.grid_size;
            o.result["grid"] = cert.grid;
        }
        if (cert.witness_s) o.witnesses.push_back(Json{{"uncovered_s", to_json(*cert.witness_s)}});
        if (cert.witness_point) o.witnesses.push_back(Json{{"uncovered_point", point_json(*cert.witness_point)}});
    } else {
        fail(ErrorCode::Usage, "unknown domain operation '" + op + "'");
    }
    return o;
}

// cech, torus

inline Outcome cmd_cech(const Args& a, const Config& cfg) {
    std::vector<Rational> breaks;
    for (const auto& s : split(a.pieces, ',')) breaks.push_back(parse_rational(trim(s)));
    auto cx = cech::build_cech(cech::ToricCover::of_disk(cfg.p, breaks), cfg.prec, cfg.depth);
    auto rep = cech::cohomology(cx, parse_rational(a.mbound));
    Outcome o;
    Json pieces = Json::array();
    for (const auto& c : cx.pieces) pieces.push_back(to_json(c));
    o.result["pieces"] = pieces;
    o.result["ambient"] = to_json(cx.ambient);
    o.result["simplices"] = Json::array();
    for (const auto& level : cx.degrees) o.result["simplices"].push_back(level.size());
    o.result.update(cohomology_json(rep));
    return o;
}

inline Outcome cmd_torus(const Args& a, const Config& cfg) {
    auto rep = cech::torus_perfectoid_complex(cfg.p, a.nmax, parse_rational(a.bound), cfg.prec);
    Outcome o;
    Json entries = Json::array();
    for (const auto& e : rep.entries)
        entries.push_back(Json{{"index", to_json(e.index)},
                               {"v", to_json(e.v)},
                               {"h0_rank", e.h0_rank},
                               {"h1", e.h1_free ? "free" : "torsion"},
                               {"exponent", e.h1_free ? Json(nullptr) : to_json(e.h1_torsion)}});
    o.result["nmax"] = rep.n_max;
    o.result["bound"] = to_json(rep.bound);
    o.result["entries"] = entries;
    o.result["almost"] = cech::almost_exactness(cech::torsion_of(rep)).str();
    return o;
}

}  // namespace detail

RunResult run(const std::vector<std::string>& argv);

namespace detail {

inline Outcome cmd_verify(const Config& cfg) {
    verify::SuiteContext ctx{cfg.p, cfg.seed, [](const std::vector<std::string>& args) { return run(args).out; }};
    auto results = verify::run_suites(verify::all_suites(), ctx);
    Outcome o;
    Json rows = Json::array();
    int passed = 0;
    for (const auto& r : results) {
        passed += r.passed();
        Json row{{"module", r.module}, {"suite", r.name}, {"cases", r.cases}, {"failures", r.failures}, {"pass", r.passed()}};
        if (!r.passed()) row["first_failure"] = r.first_failure;
        rows.push_back(row);
    }
    o.result["suites"] = rows;
    o.result["passed"] = passed;
    o.result["failed"] = static_cast<int>(results.size()) - passed;
    o.pass = passed == static_cast<int>(results.size());
    return o;
}

inline std::string text_of(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object() && v.contains("text")) return v["text"].get<std::string>();
    if (v.is_object() && v.size() == 2 && v.contains("num") && v.contains("den")) {
        const std::string num = v["num"].is_string() ? v["num"].get<std::string>() : v["num"].dump();
        const std::string den = v["den"].is_string() ? v["den"].get<std::string>() : v["den"].dump();
        if (den == "0") return "inf";
        return den == "1" ? num : num + "/" + den;
    }
    if (v.is_array()) {
        std::string out = "[";
        for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + text_of(v[i]);
        return out + "]";
    }
    if (v.is_object()) {
        std::string out;
        for (const auto& [k, x] : v.items()) out += (out.empty() ? "" : ", ") + k + " " + text_of(x);
        return "{" + out + "}";
    }
    return v.dump();
}

inline void text_lines(const Json& j, std::ostream& os) {
    for (const auto& [k, v] : j.items()) {
        if (k == "suites") continue;
        if (v.is_array() && !v.empty() && v[0].is_object() && !v[0].contains("text") && !v[0].contains("num")) {
            os << "  " << k << ":\n";
            for (const auto& row : v) os << "    " << text_of(row) << "\n";
            continue;
        }
        os << "  " << k << ": " << text_of(v) << "\n";
    }
}

}  // namespace detail

/// Parses argv (without the program name), dispatches, and renders the
/// certificate. Never throws.
inline RunResult run(const std::vector<std::string>& argv) {
    RunResult rr;
    Config cfg;
    Args a;
    std::string v_omega, prec = "2", out_file;
    bool json = false;

    CLI::App app{"Exact experiments with perfectoid rings"};
    app.name("perfectoid_lab");
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config")->envname("PERFECTOID_LAB_CONFIG");
    app.add_option("--p", cfg.p, "prime");
    app.add_option("--v-omega", v_omega, "v(w) as NUM/DEN with v(p) = 1 (default 1/p)");
    app.add_option("--prec", prec, "precision NUM/DEN");
    app.add_option("--depth", cfg.depth, "p-power root depth budget");
    app.add_option("--seed", cfg.seed, "sampling seed");
    app.add_flag("--json", json, "emit a JSON certificate");
    app.add_option("--out", out_file, "also write the output to FILE");

    std::string group, op;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
        auto* s = parent->add_subcommand(name, desc);
        s->callback([&, g = parent->get_name(), name] {
            group = g;
            op = name;
        });
        return s;
    };

    auto* witt_cmd = app.add_subcommand("witt", "Witt vector arithmetic");
    witt_cmd->require_subcommand(1);
    witt_cmd->add_option("--len", a.len, "Witt length");
    witt_cmd->add_option("--x", a.x, "element");
    witt_cmd->add_option("--y", a.y, "second element");
    witt_cmd->add_option("--base", a.base, "fp, tilt or auto");
    for (auto n : {"add", "mul", "delta", "theta", "distinguished"}) leaf(witt_cmd, n, std::string("witt ") + n);

    auto* tilt_cmd = app.add_subcommand("tilt", "sharp map and reduction mod p");
    tilt_cmd->require_subcommand(1);
    tilt_cmd->add_option("--x", a.x, "element");
    for (auto n : {"sharp", "reduce", "root"}) leaf(tilt_cmd, n, std::string("tilt ") + n);

    auto* norm_cmd = app.add_subcommand("norm", "norms and spectral radius");
    norm_cmd->require_subcommand(1);
    norm_cmd->add_option("--f", a.f, "element");
    norm_cmd->add_option("--norm", a.norm, "gauss, weighted or lattice");
    norm_cmd->add_option("--nmax", a.nmax, "power bound");
    norm_cmd->add_option("--budget", a.budget, "powerbounded lattice exponent m");
    for (auto n : {"eval", "rho", "powerbounded"}) leaf(norm_cmd, n, std::string("norm ") + n);

    auto* point_cmd = app.add_subcommand("point", "evaluation at a point of the disk");
    point_cmd->require_subcommand(1);
    point_cmd->add_option("--f", a.f, "element");
    point_cmd->add_option("--center", a.center, "constant center");
    point_cmd->add_option("--s", a.s, "log-radius NUM/DEN or inf");
    point_cmd->add_option("--domain", a.domains, "rational domain f1,f2;g");
    for (auto n : {"eval", "member"}) leaf(point_cmd, n, std::string("point ") + n);

    auto* domain_cmd = app.add_subcommand("domain", "rational domains");
    domain_cmd->require_subcommand(1);
    domain_cmd->add_option("--domain", a.domains, "rational domain f1,f2;g (repeatable)");
    domain_cmd->add_option("--mode", a.mode, "exact or sampled");
    for (auto n : {"meet", "perfect", "cover"}) leaf(domain_cmd, n, std::string("domain ") + n);

    auto* cech_cmd = app.add_subcommand("cech", "Cech complex of a toric cover");
    cech_cmd->require_subcommand(1);
    cech_cmd->add_option("--pieces", a.pieces, "lower endpoints, e.g. 0,1/2");
    cech_cmd->add_option("--mbound", a.mbound, "largest |m| examined");
    leaf(cech_cmd, "run", "cech run");

    auto* torus_cmd = app.add_subcommand("torus", "perfectoid torus complex");
    torus_cmd->require_subcommand(1);
    torus_cmd->add_option("--nmax", a.nmax, "largest denominator exponent");
    torus_cmd->add_option("--bound", a.bound, "|i| bound");
    leaf(torus_cmd, "run", "torus run");

    auto* verify_cmd = app.add_subcommand("verify", "invariant suites");
    verify_cmd->require_subcommand(1);
    leaf(verify_cmd, "all", "run every suite");

    std::vector<std::string> rev(argv.rbegin(), argv.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        rr.out = app.help();
        return rr;
    } catch (const CLI::ParseError& e) {
        rr.exit_code = kExitUsage;
        rr.err = std::string("Usage: ") + e.what() + "\n";
        return rr;
    }

    Json command = Json::array();
    for (const auto& s : argv) command.push_back(s);
    std::ostringstream os;
    try {
        if (!v_omega.empty()) cfg.v_omega_set = parse_rational(v_omega);
        cfg.prec = parse_rational(prec);
        cfg.output = json ? Output::Json : Output::Text;
        cfg.validate();

        Outcome o;
        if (group == "witt") o = detail::cmd_witt(op, a, cfg);
        else if (group == "tilt") o = detail::cmd_tilt(op, a, cfg);
        else if (group == "norm") o = detail::cmd_norm(op, a, cfg);
        else if (group == "point") o = detail::cmd_point(op, a, cfg);
        else if (group == "domain") o = detail::cmd_domain(op, a, cfg);
        else if (group == "cech") o = detail::cmd_cech(a, cfg);
        else if (group == "torus") o = detail::cmd_torus(a, cfg);
        else if (group == "verify") o = detail::cmd_verify(cfg);
        else fail(ErrorCode::Usage, "no command");

        if (cfg.output == Output::Json) {
            Json cert{{"schema", kSchemaVersion},
                      {"command", command},
                      {"config", cfg.to_json()},
                      {"provenance", provenance_name(o.provenance)},
                      {"pass", o.pass},
                      {"result", o.result},
                      {"witnesses", o.witnesses}};
            os << cert.dump(2) << "\n";
        } else {
            os << group << " " << op << " (" << provenance_name(o.provenance) << ")\n";
            detail::text_lines(o.result, os);
            for (const auto& w : o.witnesses) os << "  witness: " << w.dump() << "\n";
            if (group == "verify")
                for (const auto& row : o.result["suites"])
                    os << "  " << (row["pass"].get<bool>() ? "PASS " : "FAIL ") << row["module"].get<std::string>() << "/"
                       << row["suite"].get<std::string>() << " (" << row["cases"] << " cases)\n";
        }
        rr.exit_code = o.pass ? kExitPass : kExitFailure;
    } catch (const Error& e) {
        rr.exit_code = exit_code(e.code());
        rr.err = std::string(e.what()) + "\n";
        if (cfg.output == Output::Json)
            os << Json{{"schema", kSchemaVersion},
                       {"command", command},
                       {"error", {{"code", std::string(error_name(e.code()))}, {"message", e.what()}}}}
                      .dump(2)
               << "\n";
    }
    rr.out = os.str();
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f) {
            rr.err += "Usage: cannot write " + out_file + "\n";
            rr.exit_code = kExitUsage;
        }
        f << rr.out;
    }
    return rr;
}

}  // namespace perfectoid::cli
