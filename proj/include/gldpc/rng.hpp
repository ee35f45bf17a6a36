#pragma once
#include <cstdint>
#include <string_view>
#include <vector>

namespace gldpc {

// Deterministic 64-bit generator (splitmix64). All randomness in the library
// flows through this type so that results are identical across platforms and
// standard-library implementations; std::uniform_int_distribution is avoided
// on purpose (its output is implementation-defined).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased draw in [0, n) by rejection.
    uint64_t bounded(uint64_t n) {
        if (n <= 1) return 0;
        const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do { v = next(); } while (v >= limit);
        return v % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
};

// FNV-1a over a label, used to derive independent named sub-streams (peg,
// lift, de, sim, ...) from the single user-facing seed.
inline uint64_t hash_label(std::string_view label) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline Rng substream(uint64_t root_seed, std::string_view label, uint64_t index = 0) {
    Rng mixer(root_seed ^ hash_label(label));
    uint64_t s = mixer.next();
    s ^= index * 0xd1342543de82ef95ull + 0x2545f4914f6cdd1dull;
    Rng out(s);
    out.next();  // decouple from the raw mixed value
    return out;
}

}  // namespace gldpc
