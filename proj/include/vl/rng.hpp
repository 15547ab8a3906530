#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace vl {

// splitmix64 finalizer; used to derive independent per-item seeds.
std::uint64_t mix64(std::uint64_t x);

// Deterministic RNG: mt19937_64 (bit-exact per the standard) with
// hand-rolled transforms, so streams are reproducible across platforms.
// std::*_distribution is avoided on purpose (implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // [0, bound), unbiased via rejection
    int uniform_int(int bound);

    double normal(double mean = 0.0, double sigma = 1.0);

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
            int j = uniform_int(i + 1);
            std::swap(v[i], v[static_cast<size_t>(j)]);
        }
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace vl
