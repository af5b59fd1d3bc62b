#pragma once

#include <map>
#include <vector>

#include "perfectoid/char0/untilt_series.hpp"
#include "perfectoid/core/rational.hpp"

namespace perfectoid::oracle {

/// Z[x]/(x^{p^M} - p) modulo p^N, with monomial variables T^{a/p^M}.
/// p^{a/p^M} maps to x^a. Coefficients of each T-monomial are kept as a
/// dense vector of length p^M with entries reduced mod p^N.
class EisensteinModel {
public:
    using Key = std::vector<std::int64_t>;  // T-exponents scaled by p^M
    using Coeffs = std::vector<Integer>;
    using Elem = std::map<Key, Coeffs>;

    EisensteinModel(std::uint32_t p, int depth, int n)
        : p_(p), depth_(depth), n_(n), deg_(static_cast<std::size_t>(checked_pow(p, depth))),
          mod_(ipow(Integer(p), static_cast<unsigned long>(n))) {}

    /// Requires q >= 0 and an integral-valued precision cut at N.
    Elem from_untilt(const char0::UntiltSeries& s) const {
        Elem out;
        for (const auto& d : s.digits()) {
            std::int64_t a = d.key.q.scaled(depth_);
            require(a >= 0, ErrorCode::DomainMismatch, "oracle needs q >= 0");
            Key k;
            for (const auto& e : d.key.m) k.push_back(e.scaled(depth_));
            auto& c = slot(out, k);
            Integer term = Integer(d.value) * ipow(Integer(p_), static_cast<unsigned long>(a / static_cast<std::int64_t>(deg_)));
            c[static_cast<std::size_t>(a % static_cast<std::int64_t>(deg_))] += term;
        }
        return normalize(out);
    }

    Elem add(const Elem& a, const Elem& b) const {
        Elem out = a;
        for (const auto& [k, c] : b) {
            auto& s = slot(out, k);
            for (std::size_t i = 0; i < deg_; ++i) s[i] += c[i];
        }
        return normalize(out);
    }

    Elem mul(const Elem& a, const Elem& b) const {
        Elem out;
        for (const auto& [ka, ca] : a) {
            for (const auto& [kb, cb] : b) {
                Key k(ka.size());
                for (std::size_t j = 0; j < k.size(); ++j) k[j] = ka[j] + kb[j];
                auto& s = slot(out, k);
                for (std::size_t i = 0; i < deg_; ++i) {
                    if (ca[i] == 0) continue;
                    for (std::size_t j = 0; j < deg_; ++j) {
                        if (cb[j] == 0) continue;
                        std::size_t e = i + j;
                        if (e >= deg_) s[e - deg_] += p_ * ca[i] * cb[j];  // x^{p^M} = p
                        else s[e] += ca[i] * cb[j];
                    }
                }
            }
        }
        return normalize(out);
    }

    Elem normalize(Elem e) const {
        for (auto it = e.begin(); it != e.end();) {
            bool zero = true;
            for (auto& c : it->second) {
                mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), mod_.get_mpz_t());
                if (c != 0) zero = false;
            }
            it = zero ? e.erase(it) : std::next(it);
        }
        return e;
    }

private:
    Coeffs& slot(Elem& e, const Key& k) const {
        auto it = e.find(k);
        if (it == e.end()) it = e.emplace(k, Coeffs(deg_, Integer(0))).first;
        return it->second;
    }

    std::uint32_t p_;
    int depth_;
    int n_;
    std::size_t deg_;
    Integer mod_;
};

}  // namespace perfectoid::oracle
