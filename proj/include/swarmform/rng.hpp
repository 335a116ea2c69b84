#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace swarmform {

/// Seeded generator with portable bounded draws and shuffling. The standard
/// distributions are implementation-defined, so they are avoided here to
/// keep runs reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    /// Uniform double in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    template <class T>
    void shuffle(std::span<T> items) {
        for (std::size_t i = items.size(); i > 1; --i) {
            std::swap(items[i - 1], items[below(i)]);
        }
    }

    friend bool operator==(const Rng&, const Rng&) = default;

private:
    std::mt19937_64 engine_;
};

/// Stable 64-bit mix of a base seed with two stream coordinates (splitmix64
/// finalizer), used to derive independent per-run seeds.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
    auto fmix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return fmix(fmix(fmix(base) ^ a) ^ b);
}

}  // namespace swarmform
