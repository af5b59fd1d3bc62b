#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "perfectoid/char0/cone.hpp"
#include "perfectoid/core/digits.hpp"
#include "perfectoid/core/norm_value.hpp"
#include "perfectoid/core/pexp.hpp"
#include "perfectoid/core/rational.hpp"

namespace perfectoid::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Integers that do not fit in 64 bits are written as decimal strings.
inline Json to_json(const Integer& n) {
    if (n.fits_slong_p()) return Json(static_cast<std::int64_t>(n.get_si()));
    return Json(n.get_str());
}

inline Json to_json(const Rational& r) { return Json{{"num", to_json(r.get_num())}, {"den", to_json(r.get_den())}}; }

/// Infinity is the pair {1, 0}.
inline Json to_json(const ExtRational& r) {
    if (r.is_inf()) return Json{{"num", 1}, {"den", 0}};
    return to_json(r.value());
}

inline Json to_json(const PExp& e) { return to_json(e.to_rational()); }

inline Json to_json(const NormValue& n) {
    return Json{{"v_num", to_json(n.v.get_num())},       {"v_den", to_json(n.v.get_den())},
                {"factor_num", to_json(n.factor.get_num())}, {"factor_den", to_json(n.factor.get_den())},
                {"root", n.root},                            {"zero", n.zero},
                {"text", n.str()}};
}

inline Json to_json(const char0::Cone& c) {
    Json vars = Json::array();
    for (int j = 0; j < c.vars(); ++j) {
        const auto& iv = c.interval(j);
        vars.push_back(Json{{"lo", to_json(iv.lo)}, {"hi", to_json(iv.hi)}});
    }
    return Json{{"kind", c.integral() ? "classical" : "perfectoid"}, {"radii", vars}, {"text", c.str()}};
}

/// A digit expansion: header plus one tuple
/// [q_num, q_den_exp, m_1_num, m_1_den_exp, ..., digit] per digit.
inline Json series_json(const Signature& sig, const std::vector<Digit>& digits, const ExtRational& precision, int depth,
                        char base) {
    Json laurent = Json::array();
    for (bool b : sig.laurent) laurent.push_back(b);
    Json rows = Json::array();
    for (const auto& d : digits) {
        Json row = Json::array({d.key.q.num(), d.key.q.den_exp()});
        for (const auto& e : d.key.m) {
            row.push_back(e.num());
            row.push_back(e.den_exp());
        }
        row.push_back(d.value);
        rows.push_back(std::move(row));
    }
    return Json{{"p", sig.p},
                {"vars", sig.d},
                {"laurent", laurent},
                {"base", std::string(1, base)},
                {"precision", to_json(precision)},
                {"depth", depth},
                {"text", render_digits(digits, base)},
                {"digits", rows}};
}

template <class S>
Json series_json(const S& x, char base) {
    return series_json(x.signature(), x.digits(), x.precision(), x.depth(), base);
}

}  // namespace perfectoid::cli
