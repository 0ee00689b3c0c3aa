#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace colorline {

// Purpose of a random stream. Every (scope, purpose) pair owns an
// independent stream so that structurally identical scenarios consume
// identical draws at identical decision points (common random numbers).
enum class StreamPurpose : std::uint64_t {
    Interarrival = 1,
    Service = 2,
    Transport = 3,
    QcVerdict = 4,
    Routing = 5, // branch selection, e.g. the packaging-mode choice
};

// Deterministic, platform-independent random stream.
//
// Generator: xoshiro256** (Blackman & Vigna, public domain), state seeded
// through a splitmix64 chain. Uniform doubles are built as
// (x >> 11) * 2^-53, yielding values in [0, 1). All constants are spelled
// out below so the sequences can be reproduced in any language:
//   splitmix64: z = (s += 0x9E3779B97F4A7C15);
//               z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
//               z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
//               return z ^ (z >> 31);
//   xoshiro256**: result = rotl(s1 * 5, 7) * 9, with the standard
//               xor/shift state transition (see next_u64 below).
// Stream seeds are derived from (master seed, replication index,
// FNV-1a 64 hash of the scope string, purpose id), so streams are
// identified by key, never by creation order.
class RngStream {
public:
    RngStream() : RngStream(0) {}

    explicit RngStream(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& word : state_) {
            word = splitmix64(s);
        }
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
            state_[0] = 0x9E3779B97F4A7C15ULL;
        }
    }

    static RngStream for_key(std::uint64_t master_seed, std::uint64_t replication,
                             std::string_view scope, StreamPurpose purpose) {
        std::uint64_t s = master_seed;
        s = splitmix64(s ^ (0xA0761D6478BD642FULL + replication));
        s = splitmix64(s ^ fnv1a64(scope));
        s = splitmix64(s ^ static_cast<std::uint64_t>(purpose));
        return RngStream(s);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform double in [0, 1), 53 random mantissa bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    static std::uint64_t fnv1a64(std::string_view text) {
        std::uint64_t h = 0xCBF29CE484222325ULL;
        for (unsigned char c : text) {
            h ^= c;
            h *= 0x100000001B3ULL;
        }
        return h;
    }

    static std::uint64_t splitmix64(std::uint64_t& s) {
        std::uint64_t z = (s += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::array<std::uint64_t, 4> state_{};
};

} // namespace colorline
