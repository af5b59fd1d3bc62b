#pragma once

#include <vector>

#include "perfectoid/cech/complex.hpp"

namespace perfectoid::oracle {

/// Betti numbers of the graded Cech complex written out on every digit
/// position (q, m) of the truncated grid, by dense Gaussian elimination.
/// Dimensions count grid positions, so a length e shows up as e * p^depth.
inline long dense_rank(std::vector<std::vector<std::int64_t>> a, std::int64_t p) {
    long rank = 0;
    std::size_t row = 0;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
        std::size_t piv = row;
        while (piv < a.size() && ((a[piv][c] % p) + p) % p == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[row]);
        std::int64_t lead = ((a[row][c] % p) + p) % p, inv = 1;
        while (lead * inv % p != 1) ++inv;
        for (std::size_t r = row + 1; r < a.size(); ++r) {
            std::int64_t f = ((a[r][c] % p) + p) % p * inv % p;
            if (!f) continue;
            for (std::size_t k = c; k < cols; ++k) a[r][k] = ((a[r][k] - f * a[row][k]) % p + p) % p;
        }
        ++row;
        ++rank;
    }
    return rank;
}

struct GridBetti {
    std::vector<long> betti;
    long ambient_positions = 0;
    std::int64_t q_scale = 1;  // grid points per unit of q
};

/// Dense F_p Betti numbers of the complex restricted to the digit grid:
/// m on 1/p^depth, q on 1/p^q_depth (q_depth defaults to depth).
inline GridBetti cech_grid_betti(const cech::CechComplex& cx, const Rational& m_bound, int q_depth = -1) {
    const std::uint32_t p = cx.p;
    const std::int64_t den = checked_pow(p, cx.depth);
    if (q_depth < 0) q_depth = cx.depth;
    const std::int64_t qden = checked_pow(p, q_depth);
    const std::int64_t mmax = floor_of(m_bound * Rational(static_cast<long>(den))).get_si();
    // q from the smallest threshold any module can have in the window up to prec.
    Rational qlow = 0;
    for (const auto& piece : cx.pieces)
        qlow = std::min(qlow, Rational(-piece.interval(0).lo * Rational(static_cast<long>(mmax), static_cast<long>(den))));
    const std::int64_t q0 = floor_of(qlow * Rational(static_cast<long>(qden))).get_si();
    const std::int64_t q1 = ceil_of(cx.prec * Rational(static_cast<long>(qden))).get_si();
    std::vector<DigitKey> grid;
    for (std::int64_t a = -mmax; a <= mmax; ++a)
        for (std::int64_t b = q0; b < q1; ++b) grid.push_back(DigitKey{PExp(p, b, q_depth), MExp{PExp(p, a, cx.depth)}});

    // Basis of degree r: (simplex, grid position) with the digit in the simplex's cone.
    const int top = cx.top_degree();
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> basis(static_cast<std::size_t>(top + 1));
    for (int r = 0; r <= top; ++r)
        for (std::size_t s = 0; s < cx.degrees[static_cast<std::size_t>(r)].size(); ++s)
            for (std::size_t g = 0; g < grid.size(); ++g)
                if (cx.degrees[static_cast<std::size_t>(r)][s].cone.contains(grid[g].q, grid[g].m)) basis[static_cast<std::size_t>(r)].push_back({s, g});

    // The coboundary never mixes grid positions, so the matrix is block
    // diagonal and its rank is the sum of the block ranks.
    auto rank_d = [&](int r) -> long {
        if (r < 0 || r >= top) return 0;
        const auto& src = basis[static_cast<std::size_t>(r)];
        const auto& dst = basis[static_cast<std::size_t>(r + 1)];
        std::vector<std::vector<std::size_t>> src_at(grid.size()), dst_at(grid.size());
        for (std::size_t j = 0; j < src.size(); ++j) src_at[src[j].second].push_back(j);
        for (std::size_t i = 0; i < dst.size(); ++i) dst_at[dst[i].second].push_back(i);
        long rank = 0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            if (src_at[g].empty() || dst_at[g].empty()) continue;
            std::vector<std::vector<std::int64_t>> mat(dst_at[g].size(), std::vector<std::int64_t>(src_at[g].size(), 0));
            for (std::size_t i = 0; i < dst_at[g].size(); ++i) {
                const auto& simplex = cx.degrees[static_cast<std::size_t>(r + 1)][dst[dst_at[g][i]].first];
                for (std::size_t j = 0; j < src_at[g].size(); ++j) {
                    const auto& face = cx.degrees[static_cast<std::size_t>(r)][src[src_at[g][j]].first].pieces;
                    for (std::size_t k = 0; k < simplex.pieces.size(); ++k) {
                        auto f = simplex.pieces;
                        f.erase(f.begin() + static_cast<long>(k));
                        if (f == face) mat[i][j] += (k % 2 == 0) ? 1 : -1;
                    }
                }
            }
            rank += dense_rank(mat, p);
        }
        return rank;
    };
    GridBetti out;
    out.q_scale = qden;
    for (int r = 0; r <= top; ++r)
        out.betti.push_back(static_cast<long>(basis[static_cast<std::size_t>(r)].size()) - rank_d(r) - rank_d(r - 1));
    for (const auto& k : grid)
        if (cx.ambient.contains(k.q, k.m)) ++out.ambient_positions;
    return out;
}

}  // namespace perfectoid::oracle
