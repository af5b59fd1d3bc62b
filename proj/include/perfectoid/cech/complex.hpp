#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perfectoid/char0/cone.hpp"
#include "perfectoid/char0/untilt_series.hpp"
#include "perfectoid/core/error.hpp"

namespace perfectoid::cech {

using char0::Cone;
using char0::RadiusInterval;

/// One-variable toric cover: piece k is [b_k, b_{k+1}] and the last piece
/// runs to the ambient upper end. Consecutive pieces meet in a circle.
struct ToricCover {
    Cone ambient;
    std::vector<Rational> breakpoints;

    static ToricCover of_disk(std::uint32_t p, std::vector<Rational> breaks) {
        return ToricCover{Cone::disk(p, 1), std::move(breaks)};
    }

    std::vector<Cone> pieces() const {
        require(ambient.vars() == 1, ErrorCode::DomainMismatch, "covers are one-variable");
        require(!breakpoints.empty() && breakpoints.front() == ambient.interval(0).lo, ErrorCode::Usage,
                "the first breakpoint must be the ambient lower end");
        for (std::size_t i = 1; i < breakpoints.size(); ++i)
            require(breakpoints[i - 1] < breakpoints[i], ErrorCode::Usage, "breakpoints must increase");
        require(ExtRational(breakpoints.back()) <= ambient.interval(0).hi, ErrorCode::Usage, "breakpoint beyond the region");
        std::vector<Cone> out;
        for (std::size_t i = 0; i < breakpoints.size(); ++i) {
            ExtRational hi = i + 1 < breakpoints.size() ? ExtRational(breakpoints[i + 1]) : ambient.interval(0).hi;
            out.push_back(Cone::single(ambient.prime(), breakpoints[i], hi, ambient.integral()));
        }
        return out;
    }
};

struct Simplex {
    std::vector<int> pieces;  // sorted indices
    Cone cone;                // cone of the region intersection
};

/// Cech complex of the cone algebras: degree r holds one module per
/// nonempty (r+1)-fold intersection.
struct CechComplex {
    std::uint32_t p = 2;
    int depth = 2;
    Rational prec = 2;
    Cone ambient;
    std::vector<Cone> pieces;
    std::vector<std::vector<Simplex>> degrees;

    int top_degree() const { return static_cast<int>(degrees.size()) - 1; }

    /// Index of the face obtained by dropping position k, or -1 if absent.
    int face_index(int r, const Simplex& s, std::size_t k) const {
        std::vector<int> face = s.pieces;
        face.erase(face.begin() + static_cast<long>(k));
        const auto& lower = degrees[static_cast<std::size_t>(r - 1)];
        for (std::size_t i = 0; i < lower.size(); ++i)
            if (lower[i].pieces == face) return static_cast<int>(i);
        return -1;
    }
};

inline CechComplex build_cech(const ToricCover& cover, const Rational& prec, int depth) {
    CechComplex cx;
    cx.p = cover.ambient.prime();
    cx.depth = depth;
    cx.prec = prec;
    cx.ambient = cover.ambient;
    cx.pieces = cover.pieces();
    const int n = static_cast<int>(cx.pieces.size());
    std::vector<Simplex> level;
    for (int i = 0; i < n; ++i) level.push_back(Simplex{{i}, cx.pieces[static_cast<std::size_t>(i)]});
    while (!level.empty()) {
        cx.degrees.push_back(level);
        std::vector<Simplex> next;
        for (const auto& s : level)
            for (int j = s.pieces.back() + 1; j < n; ++j) {
                try {
                    Cone c = char0::cone_tensor(s.cone, cx.pieces[static_cast<std::size_t>(j)], cx.ambient);
                    auto idx = s.pieces;
                    idx.push_back(j);
                    next.push_back(Simplex{idx, c});
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::EmptyIntersection) throw;
                }
            }
        level = std::move(next);
    }
    return cx;
}

using Cochain = std::vector<char0::UntiltSeries>;

/// (dc)_{i_0..i_{r+1}} = sum_k (-1)^k c_{..i_k omitted..} restricted.
inline Cochain coboundary(const CechComplex& cx, int r, const Cochain& c) {
    Cochain out;
    if (r + 1 > cx.top_degree()) return out;
    for (const auto& s : cx.degrees[static_cast<std::size_t>(r + 1)]) {
        auto acc = char0::UntiltSeries::zero(s.cone, ExtRational(cx.prec), cx.depth);
        for (std::size_t k = 0; k < s.pieces.size(); ++k) {
            int f = cx.face_index(r + 1, s, k);
            if (f < 0) continue;
            auto restricted = c[static_cast<std::size_t>(f)].in_cone(s.cone);
            acc = (k % 2 == 0) ? acc + restricted : acc - restricted;
        }
        out.push_back(acc);
    }
    return out;
}

/// Lowest admissible q for digit p^q T^m in the cone: -g(m), or nullopt
/// when m is not admissible there.
inline std::optional<Rational> threshold(const Cone& c, const MExp& m) {
    if (!c.admissible_m(m)) return std::nullopt;
    return Rational(-c.support(m));
}

struct TorsionSummand {
    int degree = 1;
    PExp m;
    Rational exponent;  // length of the summand in v(p) = 1 units
};

struct CohomologyReport {
    std::uint32_t p = 2;
    Rational prec = 2;
    int depth = 2;
    Cone h0;                             // free part of degree 0
    bool h0_matches_ambient = false;
    std::vector<TorsionSummand> torsion; // degree >= 1
    std::vector<PExp> window;            // monomials examined
    std::string truncation;
};

namespace detail {

/// Rank of an F_p matrix (rows of coefficients), destroyed in place.
inline int rank_mod_p(std::vector<std::vector<std::int64_t>> a, std::uint32_t p) {
    int rank = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::vector<std::int64_t> inv(p, 0);
    for (std::uint32_t x = 1; x < p; ++x)
        for (std::uint32_t y = 1; y < p; ++y)
            if (x * y % p == 1) inv[x] = y;
    for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows; ++col) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < rows && a[piv][col] % p == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
        auto& prow = a[static_cast<std::size_t>(rank)];
        std::int64_t s = inv[static_cast<std::size_t>(mod_p(prow[col], p))];
        for (auto& v : prow) v = mod_p(v * s, p);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == static_cast<std::size_t>(rank)) continue;
            std::int64_t f = mod_p(a[r][col], p);
            if (!f) continue;
            for (std::size_t k = col; k < cols; ++k) a[r][k] = mod_p(a[r][k] - f * prow[k], p);
        }
        ++rank;
    }
    return rank;
}

}  // namespace detail

/// Per-monomial cohomology. For monomial m each simplex sigma contributes
/// the q-interval [tau_sigma(m), prec). At a level lambda the active
/// simplices form an upward-closed set S and the graded piece is the
/// relative cochain complex on S with constant F_p coefficients, whose
/// Betti numbers are computed on the (small) nerve. Lengths integrate the
/// Betti numbers over lambda.
inline CohomologyReport cohomology(const CechComplex& cx, const Rational& m_bound) {
    CohomologyReport rep;
    rep.p = cx.p;
    rep.prec = cx.prec;
    rep.depth = cx.depth;
    std::vector<RadiusInterval> hull{RadiusInterval{cx.pieces.front().interval(0).lo, cx.pieces.back().interval(0).hi}};
    rep.h0 = Cone(cx.p, hull, cx.ambient.integral());
    rep.h0_matches_ambient = rep.h0 == cx.ambient;
    rep.truncation = "digits with q < " + to_string(cx.prec) + ", monomials |m| <= " + to_string(m_bound) +
                     " on the grid 1/" + std::to_string(checked_pow(cx.p, cx.depth));
    const std::int64_t den = checked_pow(cx.p, cx.depth);
    const std::int64_t mmax = floor_of(m_bound * Rational(static_cast<long>(den))).get_si();
    const int top = cx.top_degree();
    for (std::int64_t a = -mmax; a <= mmax; ++a) {
        PExp me(cx.p, a, cx.depth);
        MExp m{me};
        if (!cx.ambient.admissible_m(m) && std::all_of(cx.pieces.begin(), cx.pieces.end(), [&](const Cone& c) {
                return !c.admissible_m(m);
            }))
            continue;
        rep.window.push_back(me);
        std::vector<std::vector<std::optional<Rational>>> tau(static_cast<std::size_t>(top + 1));
        std::vector<Rational> levels{cx.prec};
        for (int r = 0; r <= top; ++r)
            for (const auto& s : cx.degrees[static_cast<std::size_t>(r)]) {
                auto t = threshold(s.cone, m);
                tau[static_cast<std::size_t>(r)].push_back(t);
                if (t && *t < cx.prec) levels.push_back(*t);
            }
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        std::vector<Rational> length(static_cast<std::size_t>(top + 1), Rational(0));
        for (std::size_t li = 0; li + 1 < levels.size(); ++li) {
            const Rational& lam = levels[li];
            const Rational width = levels[li + 1] - lam;
            // Active simplices and their local indices per degree.
            std::vector<std::vector<int>> act(static_cast<std::size_t>(top + 1));
            for (int r = 0; r <= top; ++r)
                for (std::size_t i = 0; i < tau[static_cast<std::size_t>(r)].size(); ++i) {
                    const auto& t = tau[static_cast<std::size_t>(r)][i];
                    act[static_cast<std::size_t>(r)].push_back(t && *t <= lam ? 1 : 0);
                }
            auto count = [&](int r) {
                if (r < 0 || r > top) return 0;
                int c = 0;
                for (int x : act[static_cast<std::size_t>(r)]) c += x;
                return c;
            };
            auto rank_d = [&](int r) {
                if (r < 0 || r >= top) return 0;
                std::vector<std::vector<std::int64_t>> mat;
                const auto& up = cx.degrees[static_cast<std::size_t>(r + 1)];
                std::vector<int> col_of(cx.degrees[static_cast<std::size_t>(r)].size(), -1);
                int ncols = 0;
                for (std::size_t i = 0; i < col_of.size(); ++i)
                    if (act[static_cast<std::size_t>(r)][i]) col_of[i] = ncols++;
                if (ncols == 0) return 0;
                for (std::size_t j = 0; j < up.size(); ++j) {
                    if (!act[static_cast<std::size_t>(r + 1)][j]) continue;
                    std::vector<std::int64_t> row(static_cast<std::size_t>(ncols), 0);
                    for (std::size_t k = 0; k < up[j].pieces.size(); ++k) {
                        int f = cx.face_index(r + 1, up[j], k);
                        if (f < 0 || col_of[static_cast<std::size_t>(f)] < 0) continue;
                        row[static_cast<std::size_t>(col_of[static_cast<std::size_t>(f)])] += (k % 2 == 0) ? 1 : -1;
                    }
                    mat.push_back(row);
                }
                return detail::rank_mod_p(mat, cx.p);
            };
            for (int r = 0; r <= top; ++r) {
                int betti = count(r) - rank_d(r) - rank_d(r - 1);
                length[static_cast<std::size_t>(r)] += width * Rational(betti);
            }
        }
        auto amb = threshold(cx.ambient, m);
        Rational expected = (amb && *amb < cx.prec) ? Rational(cx.prec - *amb) : Rational(0);
        if (length[0] != expected) rep.h0_matches_ambient = false;
        for (int r = 1; r <= top; ++r)
            if (length[static_cast<std::size_t>(r)] != 0)
                rep.torsion.push_back(TorsionSummand{r, me, length[static_cast<std::size_t>(r)]});
    }
    return rep;
}

struct AlmostVerdict {
    bool exact = true;
    std::map<int, Rational> sup_exponent;  // per positive degree
    std::string str() const {
        if (exact) return "exact";
        std::string out;
        for (const auto& [deg, e] : sup_exponent) {
            if (!out.empty()) out += "; ";
            out += "H^" + std::to_string(deg) + " killed-by p^" + to_string(e);
        }
        return out;
    }
};

inline AlmostVerdict almost_exactness(const std::vector<TorsionSummand>& torsion) {
    AlmostVerdict v;
    for (const auto& t : torsion) {
        if (t.exponent == 0) continue;
        auto [it, fresh] = v.sup_exponent.try_emplace(t.degree, t.exponent);
        if (!fresh && it->second < t.exponent) it->second = t.exponent;
        v.exact = false;
    }
    return v;
}

inline AlmostVerdict almost_exactness(const CohomologyReport& rep) { return almost_exactness(rep.torsion); }

}  // namespace perfectoid::cech
