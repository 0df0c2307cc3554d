#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mlrgg {

// Fixed-size bit vector tuned for the set algebra the reachability code
// needs: word-wise union, early-exit intersection tests and ordered scans.
// Bits beyond size() are kept zero by every operation.
class BitVector {
public:
    BitVector() = default;

    explicit BitVector(std::size_t size)
        : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    void set(std::size_t i) { words_[i >> 6] |= 1ull << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(1ull << (i & 63)); }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void clear() {
        for (auto& w : words_) w = 0;
    }

    void set_all() {
        for (auto& w : words_) w = ~0ull;
        trim();
    }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    BitVector& operator|=(const BitVector& other) {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= other.words_[i];
        return *this;
    }

    bool operator==(const BitVector& other) const {
        return size_ == other.size_ && words_ == other.words_;
    }

    // True when the two sets share at least one element; stops at the first
    // overlapping word.
    bool intersects(const BitVector& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & other.words_[i]) return true;
        return false;
    }

    // Smallest index set in both vectors, or npos.
    std::size_t first_common(const BitVector& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            const std::uint64_t w = words_[i] & other.words_[i];
            if (w) return i * 64 + static_cast<std::size_t>(std::countr_zero(w));
        }
        return npos;
    }

    // Smallest set index >= from, or npos.
    std::size_t find_next(std::size_t from) const {
        if (from >= size_) return npos;
        std::size_t wi = from >> 6;
        std::uint64_t w = words_[wi] & (~0ull << (from & 63));
        while (true) {
            if (w) return wi * 64 + static_cast<std::size_t>(std::countr_zero(w));
            if (++wi == words_.size()) return npos;
            w = words_[wi];
        }
    }

    template <typename Fn>
    void for_each_set(Fn&& fn) const {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                fn(wi * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    const std::uint64_t* words() const { return words_.data(); }
    std::uint64_t* words_mut() { return words_.data(); }
    std::size_t word_count() const { return words_.size(); }

    static constexpr std::size_t npos = ~static_cast<std::size_t>(0);

private:
    void trim() {
        if (size_ & 63) words_.back() &= ~0ull >> (64 - (size_ & 63));
        if (size_ == 0 && !words_.empty()) words_.back() = 0;
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace mlrgg
