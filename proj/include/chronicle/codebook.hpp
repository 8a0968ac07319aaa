#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "chronicle/bitvec.hpp"
#include "chronicle/chronicle.hpp"

namespace chronicle {

// Injective map from every chronicle in a space to a constant-weight binary
// vector over the vocabulary. Rows are stored in full enumeration order and
// the whole object is a pure function of its parameters: rebuilding with the
// same tuple reproduces bit-identical rows.
struct Codebook {
    ChronicleSpace space;
    std::uint32_t vocab_size = 0;
    double rho = 0.5;
    std::uint32_t base_dim = 64;
    std::uint64_t seed = 0;
    std::vector<BitVec> rows;

    // floor(rho * vocab_size), the Hamming weight shared by every row.
    std::uint32_t weight() const {
        return static_cast<std::uint32_t>(rho * vocab_size);
    }

    // Row for chronicle x. Throws std::domain_error when x is outside the
    // space.
    const BitVec& lookup(const Chronicle& x) const;
};

// C(d, k), saturating at UINT64_MAX.
std::uint64_t binomial_capacity(std::uint32_t d, std::uint32_t k);

// (n+1)^T pairwise-distinct vectors of length base_dim, each of weight
// floor(rho * base_dim), drawn by rejection sampling. Deterministic in the
// seed. Throws CapacityError when the constant-weight space cannot hold the
// requested count or the attempt budget (1000 per row) runs out.
std::vector<BitVec> build_base(const ChronicleSpace& space, std::uint32_t base_dim,
                               double rho, std::uint64_t seed);

// Tile `base` to vocab_size bits, then fix the weight to floor(rho *
// vocab_size) by setting or clearing bits scanned from the end.
BitVec expand(const BitVec& base, std::uint32_t vocab_size, double rho);

// build_base + expand + post-expansion distinctness check.
Codebook build_codebook(const ChronicleSpace& space, std::uint32_t vocab_size,
                        double rho, std::uint32_t base_dim, std::uint64_t seed);

/*
 * On-disk format (all integers little-endian):
 *
 *   magic   "CHBK"  4 bytes
 *   version u16     currently 1
 *   n, T, vocab_size, base_dim   u32 each
 *   rho     f64 (IEEE-754 bits)
 *   seed    u64
 *   rows    u64
 *   row data: rows * ceil(vocab_size/8) bytes, LSB-first packed bits
 *   crc32   u32 over every preceding byte, magic included
 */
void save_codebook(const Codebook& cb, const std::filesystem::path& path);
Codebook load_codebook(const std::filesystem::path& path);

}  // namespace chronicle
