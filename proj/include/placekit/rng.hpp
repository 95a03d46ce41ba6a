#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace placekit {

// Deterministic random stream. std::mt19937_64 word output is pinned by the
// standard, but std::uniform_real_distribution / std::normal_distribution are
// implementation-defined, so the adapters are written out here to keep runs
// byte-identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1), 53-bit mantissa.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Inclusive integer range.
    std::uint64_t uniform_index(std::uint64_t n) {
        return n == 0 ? 0 : static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
    }

    // Standard normal via Box-Muller with a cached spare.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace placekit
