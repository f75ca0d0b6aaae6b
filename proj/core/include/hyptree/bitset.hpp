#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace hyptree {

/// Fixed-size dynamic bitset used for element subsets of a universe.
/// All binary operations require equal sizes.
class DynBitset {
public:
    DynBitset() = default;
    explicit DynBitset(std::size_t size, bool fill = false)
        : size_(size), words_((size + 63) / 64, fill ? ~std::uint64_t{0} : 0) {
        trim();
    }

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    /// Index of the lowest set bit; size() if none.
    std::size_t first() const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(words_[k]));
        return size_;
    }

    DynBitset& operator&=(const DynBitset& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    DynBitset& operator|=(const DynBitset& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    /// this &= ~o
    DynBitset& andnot(const DynBitset& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }
    DynBitset operator&(const DynBitset& o) const {
        DynBitset r = *this;
        r &= o;
        return r;
    }
    DynBitset operator|(const DynBitset& o) const {
        DynBitset r = *this;
        r |= o;
        return r;
    }
    DynBitset flipped() const {
        DynBitset r = *this;
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    bool is_subset_of(const DynBitset& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }
    bool intersects(const DynBitset& o) const {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }

    bool operator==(const DynBitset& o) const = default;

    std::size_t hash() const {
        std::size_t h = 0xcbf29ce484222325ull ^ size_;
        for (auto w : words_) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for (std::size_t i = 0; i < size_; ++i)
            if (test(i)) out.push_back(i);
        return out;
    }

private:
    void trim() {
        if (size_ & 63) words_.back() &= (~std::uint64_t{0}) >> (64 - (size_ & 63));
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

struct DynBitsetHash {
    std::size_t operator()(const DynBitset& b) const { return b.hash(); }
};

}  // namespace hyptree
