#pragma once

#include <cstdint>

namespace ffdyn {

// Deterministic splitmix64 stream. Standard-library distributions are not
// pinned across implementations, so all sampling goes through this: identical
// seeds must give identical experiments everywhere.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    // Independent substream for job `index` under a run seed; jobs sampled in
    // parallel stay byte-identical to the serial order.
    static Rng for_job(std::uint64_t seed, std::uint64_t index) {
        Rng mix(seed ^ (0x9e3779b97f4a7c15ull * (index + 1)));
        mix.next();
        return mix;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [lo, hi] via rejection; lo <= hi.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next()); // full 64-bit range
        std::uint64_t limit = ~0ull - ~0ull % span;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<std::int64_t>(v % span);
    }

    bool chance(double prob) {
        return static_cast<double>(next() >> 11) * 0x1.0p-53 < prob;
    }

  private:
    std::uint64_t state_;
};

} // namespace ffdyn
