// Fixed-size bitset over grid indices.

#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace ivl {

class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::size_t size() const { return n_; }
    void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto word : w_) c += static_cast<std::size_t>(__builtin_popcountll(word));
        return c;
    }
    bool any() const {
        for (auto word : w_) if (word) return true;
        return false;
    }
    bool is_subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    // Count of bits set here but clear in `covered`.
    std::size_t count_uncovered_in(const Bits& covered) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < w_.size(); ++i)
            c += static_cast<std::size_t>(__builtin_popcountll(w_[i] & ~covered.w_[i]));
        return c;
    }
    void or_with(const Bits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    }

    bool operator==(const Bits& o) const = default;
    bool operator<(const Bits& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        return w_ < o.w_;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace ivl
