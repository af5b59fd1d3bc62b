#pragma once

#include <cstdint>
#include <random>

namespace perfectoid {

/// Deterministic generator shared by property suites and the CLI.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 20240601) : gen_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
    }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }
    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

}  // namespace perfectoid
