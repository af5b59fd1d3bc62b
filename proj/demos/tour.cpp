// A short walk through the library: Witt vectors over F_p, theta on the
// tilt side, the weighted norm on T, and the perfectoid torus.
#include <iostream>

#include "perfectoid/banach/norms.hpp"
#include "perfectoid/cech/torus.hpp"
#include "perfectoid/char0/bridge.hpp"
#include "perfectoid/cli/parser.hpp"
#include "perfectoid/witt/theta.hpp"

using namespace perfectoid;

int main() {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        witt::WittRing<witt::FpRing> w(witt::FpRing(p), 4);
        std::cout << "p = " << p << ": delta(p) = " << w.str(w.delta(w.p_element())) << "\n";
    }

    const std::uint32_t p = 2;
    cli::ParseOptions opt{p, 4};
    auto x = cli::parse_tilt("t^(1/2) + T", opt);
    std::cout << "sharp(" << cli::print(x) << ") = " << cli::print(char0::sharp(x, 2)) << " + O(p^2)\n";

    witt::TiltRing base(x.signature(), ExtRational::infinity(), 8);
    witt::WittRing<witt::TiltRing> w(base, 3);
    auto t = base.monomial(1, PExp::integer(p, 1), x.signature().zero_m());
    auto kernel = w.sub(w.teichmuller(t), w.p_element());
    std::cout << "theta([t] - p) = " << cli::print(witt::theta(w, kernel, 3)) << "\n";

    auto T = field::KPoly::variable(p, 1, 0);
    auto weighted = banach::NormSpec::weighted(p);
    auto rho = banach::spectral_radius(T, weighted, 1000, {berkovich::SeminormPoint::gauss(p, 1)});
    std::cout << "spectral radius of T in [" << rho.lo.str() << ", " << rho.hi.str() << "]\n";

    auto torus = cech::torus_perfectoid_complex(3, 2, 1, 2);
    for (const auto& e : torus.entries)
        std::cout << "  i = " << e.index.str() << "  v = " << e.v.str() << (e.h1_free ? "  H^1 free" : "") << "\n";
}
