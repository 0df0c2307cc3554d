#pragma once

#include <cstdint>

namespace mlrgg {

// 64-bit finalizer (splitmix64 style). Used both for output whitening and for
// deriving child stream keys.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Counter-based random stream. Draw j of a stream with key K is
// mix64(K + j * gamma), so every value is a pure function of (key, counter)
// and streams can be split without touching the parent's state:
// substream(i) hashes (key, i) into a fresh key. Streams created from the
// same key yield identical sequences on every platform.
//
// A stream is cheap to copy and not thread safe; give each task its own
// substream instead of sharing one.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : key_(key) {}

    // Child stream identified by (key, index); independent of this stream's
    // position and of siblings with other indices.
    RngStream substream(std::uint64_t index) const {
        return RngStream(mix64(key_ ^ mix64(index + kGamma)));
    }

    std::uint64_t key() const { return key_; }

    std::uint64_t next_u64() {
        counter_ += kGamma;
        return mix64(key_ + counter_);
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound) via multiply-shift; bound = 0 returns 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const auto wide = static_cast<unsigned __int128>(next_u64()) *
                          static_cast<unsigned __int128>(bound);
        return static_cast<std::uint64_t>(wide >> 64);
    }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace mlrgg
