#pragma once

#include <cstdint>
#include <cmath>

namespace zonefit {

// splitmix64 (Vigna, public domain). Used both as the base generator and to
// derive independent substream seeds, so adding a new consumer stream never
// perturbs the draws of existing streams for a fixed master seed.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform double in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Box-Muller; one draw discarded to keep the stream stateless per call.
    double normal(double mean, double sd) {
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        return mean + sd * z;
    }

    // index into cumulative weights; weights need not be normalized
    template <typename Container>
    std::size_t pick_weighted(const Container& weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = next_double() * total;
        double acc = 0.0;
        std::size_t i = 0;
        for (double w : weights) {
            acc += w;
            if (u < acc) return i;
            ++i;
        }
        return weights.size() - 1;
    }

private:
    std::uint64_t state_;
};

// Deterministic stream splitting: substream(seed, tag) gives an independent
// generator per (seed, tag) pair.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t tag) {
    SplitMix64 mixer(seed ^ (0x632be59bd9b4e019ULL * (tag + 1)));
    return SplitMix64(mixer.next_u64());
}

} // namespace zonefit
