#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "perfectoid/cli/json_io.hpp"
#include "perfectoid/core/error.hpp"
#include "perfectoid/core/rational.hpp"

namespace perfectoid::cli {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

enum class Output { Text, Json };

struct Config {
    std::uint32_t p = 2;
    std::optional<Rational> v_omega_set;  // v(w) with v(p) = 1; 1/p when unset
    Rational prec = 2;
    int depth = 3;
    std::uint64_t seed = 20240601;
    Output output = Output::Text;

    Rational v_omega() const { return v_omega_set ? *v_omega_set : make_rational(1, static_cast<long>(p)); }

    /// 1 > |w^p| >= |p| reads 0 < p v(w) <= 1.
    void validate() const {
        require(p <= 1000 && is_prime(p), ErrorCode::Usage, "p = " + std::to_string(p) + " is not a supported prime");
        const Rational w = v_omega();
        require(w > 0 && w * Rational(static_cast<long>(p)) <= 1, ErrorCode::Usage,
                "v-omega " + to_string(w) + " outside (0, 1/p]");
        require(prec > 0, ErrorCode::Usage, "prec must be positive");
        require(depth >= 0 && depth <= 12, ErrorCode::Usage, "depth must lie in [0, 12]");
    }

    Json to_json() const {
        return Json{{"p", p},
                    {"v_omega", cli::to_json(v_omega())},
                    {"prec", cli::to_json(prec)},
                    {"depth", depth},
                    {"seed", seed},
                    {"output", output == Output::Json ? "json" : "text"}};
    }
};

}  // namespace perfectoid::cli
