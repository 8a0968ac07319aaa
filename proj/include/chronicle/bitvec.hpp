#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "chronicle/hashmix.hpp"

namespace chronicle {

// Packed bit vector over 64-bit words. Weight and intersection counts are
// popcount loops, O(nbits/64). Bit p lives in word p/64 at bit p%64; the
// byte serialization is little-endian, LSB-first within each byte.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t nbits)
        : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    bool test(std::size_t p) const {
        return (words_[p >> 6] >> (p & 63)) & 1u;
    }
    void set(std::size_t p) { words_[p >> 6] |= std::uint64_t{1} << (p & 63); }
    void clear(std::size_t p) { words_[p >> 6] &= ~(std::uint64_t{1} << (p & 63)); }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += std::popcount(w);
        return c;
    }

    std::size_t and_count(const BitVec& other) const {
        std::size_t c = 0;
        for (std::size_t i = 0; i < words_.size(); ++i) {
            c += std::popcount(words_[i] & other.words_[i]);
        }
        return c;
    }

    BitVec complemented() const {
        BitVec r(nbits_);
        for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = ~words_[i];
        r.mask_tail();
        return r;
    }

    bool operator==(const BitVec& other) const {
        return nbits_ == other.nbits_ && words_ == other.words_;
    }

    std::vector<std::uint8_t> to_bytes() const {
        std::vector<std::uint8_t> out((nbits_ + 7) / 8);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = static_cast<std::uint8_t>(words_[i >> 3] >> (8 * (i & 7)));
        }
        return out;
    }

    static BitVec from_bytes(const std::uint8_t* data, std::size_t nbits) {
        BitVec r(nbits);
        const std::size_t nbytes = (nbits + 7) / 8;
        for (std::size_t i = 0; i < nbytes; ++i) {
            r.words_[i >> 3] |= static_cast<std::uint64_t>(data[i]) << (8 * (i & 7));
        }
        r.mask_tail();
        return r;
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::uint64_t hash() const {
        std::uint64_t h = mix64(nbits_);
        for (std::uint64_t w : words_) h = hash_combine(h, w);
        return h;
    }

private:
    void mask_tail() {
        const std::size_t rem = nbits_ & 63;
        if (rem != 0 && !words_.empty()) {
            words_.back() &= (std::uint64_t{1} << rem) - 1;
        }
    }

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const {
        return static_cast<std::size_t>(v.hash());
    }
};

}  // namespace chronicle
