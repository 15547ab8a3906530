#include "vl/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vl {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

int Rng::uniform_int(int bound) {
    if (bound <= 0) throw std::invalid_argument("uniform_int needs a positive bound");
    const std::uint64_t b = static_cast<std::uint64_t>(bound);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
    std::uint64_t r;
    do {
        r = next_u64();
    } while (r >= limit);
    return static_cast<int>(r % b);
}

double Rng::normal(double mean, double sigma) {
    // Box-Muller; the sine mate is discarded to keep the stream stateless.
    double u1 = uniform();
    double u2 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * r * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace vl
