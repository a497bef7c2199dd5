#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace uavdep {

// splitmix64 finalizer; used to derive child seeds from a root seed so that
// parallel workers / rounds get decorrelated, reproducible streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Hierarchical seed derivation: fold each index into the state.
inline std::uint64_t derive_seed(std::uint64_t root,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = splitmix64(root);
    for (std::uint64_t idx : path) s = splitmix64(s ^ (idx + 0x632be59bd9b4e019ULL));
    return s;
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::mt19937_64& engine() { return eng_; }

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    int uniform_int(int lo, int hi) {  // inclusive
        return std::uniform_int_distribution<int>(lo, hi)(eng_);
    }
    int poisson(double mean) {
        if (mean <= 0.0) return 0;
        return std::poisson_distribution<int>(mean)(eng_);
    }
    double gamma(double shape, double scale) {
        return std::gamma_distribution<double>(shape, scale)(eng_);
    }
    double rayleigh(double scale) {
        const double u = uniform(0.0, 1.0);
        return scale * std::sqrt(-2.0 * std::log1p(-u));
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace uavdep
