#pragma once

#include <string>
#include <vector>

#include "perfectoid/cech/complex.hpp"
#include "perfectoid/core/pexp.hpp"

namespace perfectoid::cech {

/// One graded piece T^i -> T^i of the perfectoid torus complex, the map
/// being multiplication by 1 - eps^i.
struct TorusEntry {
    PExp index;
    ExtRational v;      // v(1 - eps^i); inf exactly when i is an integer
    int h0_rank = 0;
    bool h1_free = false;
    ExtRational h1_torsion = ExtRational::infinity();  // meaningful when !h1_free
};

struct TorusReport {
    std::uint32_t p = 2;
    int n_max = 1;
    Rational bound = 1;
    Rational prec = 2;
    std::vector<TorusEntry> entries;  // sorted by index
};

/// v(1 - zeta) for zeta of exact order p^n: 1 / (p^{n-1}(p - 1)).
inline ExtRational root_of_unity_gap(std::uint32_t p, int n) {
    if (n == 0) return ExtRational::infinity();
    return ExtRational(make_rational(Integer(1), ipow(Integer(p), static_cast<unsigned long>(n - 1)) * (p - 1)));
}

inline TorusReport torus_perfectoid_complex(std::uint32_t p, int n_max, const Rational& bound, const Rational& prec) {
    require(n_max >= 0, ErrorCode::Usage, "n_max must be non-negative");
    TorusReport rep{p, n_max, bound, prec, {}};
    const std::int64_t den = checked_pow(p, n_max);
    const std::int64_t top = floor_of(bound * Rational(static_cast<long>(den))).get_si();
    for (std::int64_t a = -top; a <= top; ++a) {
        PExp i(p, a, n_max);
        TorusEntry e;
        e.index = i;
        e.v = root_of_unity_gap(p, i.den_exp());
        if (i.is_integer()) {
            e.h0_rank = 1;
            e.h1_free = true;
        } else {
            e.h1_torsion = e.v;
        }
        rep.entries.push_back(e);
    }
    return rep;
}

inline std::vector<TorsionSummand> torsion_of(const TorusReport& rep) {
    std::vector<TorsionSummand> out;
    for (const auto& e : rep.entries)
        if (!e.h1_free) out.push_back(TorsionSummand{1, e.index, e.h1_torsion.value()});
    return out;
}

}  // namespace perfectoid::cech
