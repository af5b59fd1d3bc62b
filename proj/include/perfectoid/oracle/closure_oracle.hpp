#pragma once

#include <vector>

#include "perfectoid/char0/cone.hpp"

namespace perfectoid::oracle {

/// Elementwise membership tests for the three closures, straight from the
/// definitions, on a finite search range.
class ClosureOracle {
public:
    explicit ClosureOracle(const char0::ExponentSet& s) : s_(s), p_(s.prime()) {}

    /// eps * z in S for eps = p^{1/p^k}, k = 1..kmax.
    bool almost(const PExp& q, const MExp& m, int kmax = 8) const {
        for (int k = 1; k <= kmax; ++k)
            if (!s_.contains(q + PExp(p_, 1, k), m)) return false;
        return true;
    }

    /// p^k z in S for every k in [k0, k0 + span).
    bool pic(const PExp& q, const MExp& m, int k0 = 12, int span = 3) const {
        for (int k = k0; k < k0 + span; ++k) {
            PExp qk = q;
            MExp mk = m;
            for (int i = 0; i < k; ++i) {
                qk = qk.times_p();
                for (auto& e : mk) e = e.times_p();
            }
            if (!s_.contains(qk, mk)) return false;
        }
        return true;
    }

    /// n z + (c, 0) in S for n = 1..nmax with some offset c in {0, 1/p, ..., cmax}.
    bool tic(const PExp& q, const MExp& m, int nmax = 256, int cmax = 2) const {
        for (std::int64_t c = 0; c <= static_cast<std::int64_t>(cmax) * p_; ++c) {
            PExp off(p_, c, 1);
            bool ok = true;
            for (int n = 1; n <= nmax && ok; ++n) {
                MExp mn = m;
                for (auto& e : mn) e = e.times_int(n);
                ok = s_.contains(q.times_int(n) + off, mn);
            }
            if (ok) return true;
        }
        return false;
    }

private:
    char0::ExponentSet s_;
    std::uint32_t p_;
};

/// Grid points (q, m) with q in (1/p^r)Z and m in (1/p^r)Z (or Z) over small boxes.
inline std::vector<std::pair<PExp, MExp>> closure_grid(std::uint32_t p, int d, bool integral, int r = 2) {
    std::vector<std::pair<PExp, MExp>> out;
    std::int64_t scale = checked_pow(p, r);
    std::int64_t mstep = integral ? scale : 1;
    for (std::int64_t qa = -scale; qa <= 3 * scale; ++qa) {
        if (d == 0) {
            out.push_back({PExp(p, qa, r), {}});
            continue;
        }
        for (std::int64_t ma = -2 * scale; ma <= 4 * scale; ma += mstep) {
            MExp m(static_cast<std::size_t>(d), PExp::integer(p, 0));
            m[0] = PExp(p, ma, r);
            out.push_back({PExp(p, qa, r), m});
        }
    }
    return out;
}

}  // namespace perfectoid::oracle
