#pragma once

#include <cstdint>
#include <vector>

#include "perfectoid/core/rational.hpp"

namespace perfectoid::oracle {

/// W_N(F_p) = Z/p^N. With Frobenius trivial on F_p, a vector with Witt
/// coordinates x_i equals sum p^i [x_i], and the Teichmuller lift of a is
/// a^{p^{N-1}} mod p^N.
class ZpnWitt {
public:
    ZpnWitt(std::uint32_t p, int n) : p_(p), n_(n), modulus_(ipow(Integer(p), static_cast<unsigned long>(n))) {}

    const Integer& modulus() const { return modulus_; }

    Integer teichmuller(std::uint32_t a) const {
        Integer r;
        Integer e = ipow(Integer(p_), static_cast<unsigned long>(n_ - 1));
        mpz_powm(r.get_mpz_t(), Integer(a).get_mpz_t(), e.get_mpz_t(), modulus_.get_mpz_t());
        return r;
    }

    Integer value(const std::vector<std::uint32_t>& coords) const {
        Integer acc = 0, pk = 1;
        for (std::size_t i = 0; i < coords.size(); ++i) {
            acc += pk * teichmuller(coords[i]);
            pk *= p_;
        }
        return reduce(acc);
    }

    /// Witt coordinates of z: peel Teichmuller digits base p.
    std::vector<std::uint32_t> coords(const Integer& z) const {
        std::vector<std::uint32_t> out;
        Integer cur = reduce(z), mod = modulus_;
        for (int i = 0; i < n_; ++i) {
            Integer a;
            mpz_fdiv_r_ui(a.get_mpz_t(), cur.get_mpz_t(), p_);
            auto digit = static_cast<std::uint32_t>(a.get_ui());
            out.push_back(digit);
            cur = cur - teichmuller(digit);
            mpz_fdiv_r(cur.get_mpz_t(), cur.get_mpz_t(), mod.get_mpz_t());
            mpz_divexact_ui(cur.get_mpz_t(), cur.get_mpz_t(), p_);
            mpz_divexact_ui(mod.get_mpz_t(), mod.get_mpz_t(), p_);
        }
        return out;
    }

    Integer reduce(const Integer& z) const {
        Integer r;
        mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), modulus_.get_mpz_t());
        return r;
    }

private:
    std::uint32_t p_;
    int n_;
    Integer modulus_;
};

}  // namespace perfectoid::oracle
