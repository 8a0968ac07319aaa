#include "chronicle/codebook.hpp"

#include <zlib.h>

#include <cstring>
#include <fstream>
#include <random>
#include <unordered_set>

#include "chronicle/errors.hpp"
#include "chronicle/hashmix.hpp"

namespace chronicle {

const BitVec& Codebook::lookup(const Chronicle& x) const {
    const std::uint64_t idx = index_of(x, space);  // validates symbols and length
    return rows[idx];
}

std::uint64_t binomial_capacity(std::uint32_t d, std::uint32_t k) {
    if (k > d) return 0;
    if (k > d - k) k = d - k;
    // C(d,k) = prod_{i=1..k} (d-k+i)/i, integral at every prefix.
    std::uint64_t acc = 1;
    for (std::uint32_t i = 1; i <= k; ++i) {
        const std::uint64_t num = d - k + i;
        const std::uint64_t g = acc / i;  // split acc*num/i to dodge overflow
        const std::uint64_t r = acc % i;
        std::uint64_t hi, lo;
        if (__builtin_mul_overflow(g, num, &hi)) return UINT64_MAX;
        if (__builtin_mul_overflow(r, num, &lo)) return UINT64_MAX;
        if (__builtin_add_overflow(hi, lo / i, &acc)) return UINT64_MAX;
    }
    return acc;
}

std::vector<BitVec> build_base(const ChronicleSpace& space, std::uint32_t base_dim,
                               double rho, std::uint64_t seed) {
    if (rho <= 0.0 || rho >= 1.0) {
        throw std::domain_error("build_base: rho must lie in (0,1)");
    }
    const std::uint64_t count = space.cardinality();
    const auto k_min = static_cast<std::uint32_t>(rho * base_dim);
    if (k_min == 0 || k_min >= base_dim) {
        throw CapacityError("build_base: weight floor(rho*d) = " + std::to_string(k_min) +
                            " leaves no room for distinct patterns at d = " +
                            std::to_string(base_dim));
    }
    const std::uint64_t capacity = binomial_capacity(base_dim, k_min);
    if (capacity < count) {
        throw CapacityError("build_base: C(" + std::to_string(base_dim) + "," +
                            std::to_string(k_min) + ") = " + std::to_string(capacity) +
                            " cannot hold " + std::to_string(count) +
                            " distinct codewords; raise base_dim");
    }

    std::mt19937_64 rng(seed);
    std::unordered_set<BitVec, BitVecHash> seen;
    std::vector<BitVec> out;
    out.reserve(count);

    std::vector<std::uint32_t> positions(base_dim);
    std::uint64_t attempts = 0;
    std::uint64_t budget;
    if (__builtin_mul_overflow(count, std::uint64_t{1000}, &budget)) budget = UINT64_MAX;

    while (out.size() < count) {
        if (++attempts > budget) {
            throw CapacityError("build_base: rejection budget exhausted after " +
                                std::to_string(attempts - 1) + " attempts");
        }
        // Partial Fisher-Yates: the first k_min entries become the set bits.
        for (std::uint32_t i = 0; i < base_dim; ++i) positions[i] = i;
        BitVec cw(base_dim);
        for (std::uint32_t i = 0; i < k_min; ++i) {
            const auto j = i + static_cast<std::uint32_t>(uniform_below(rng, base_dim - i));
            std::swap(positions[i], positions[j]);
            cw.set(positions[i]);
        }
        if (seen.insert(cw).second) {
            out.push_back(std::move(cw));
        }
    }
    return out;
}

BitVec expand(const BitVec& base, std::uint32_t vocab_size, double rho) {
    const std::size_t d = base.size();
    if (d == 0 || d > vocab_size) {
        throw std::domain_error("expand: base dimension must be in 1..vocab_size");
    }
    BitVec out(vocab_size);
    for (std::uint32_t p = 0; p < vocab_size; ++p) {
        if (base.test(p % d)) out.set(p);
    }
    const auto target = static_cast<std::uint32_t>(rho * vocab_size);
    std::size_t w = out.count();
    for (std::uint32_t p = vocab_size; w > target && p-- > 0;) {
        if (out.test(p)) {
            out.clear(p);
            --w;
        }
    }
    for (std::uint32_t p = vocab_size; w < target && p-- > 0;) {
        if (!out.test(p)) {
            out.set(p);
            ++w;
        }
    }
    return out;
}

Codebook build_codebook(const ChronicleSpace& space, std::uint32_t vocab_size,
                        double rho, std::uint32_t base_dim, std::uint64_t seed) {
    Codebook cb;
    cb.space = space;
    cb.vocab_size = vocab_size;
    cb.rho = rho;
    cb.base_dim = base_dim;
    cb.seed = seed;

    const std::vector<BitVec> base = build_base(space, base_dim, rho, seed);
    cb.rows.reserve(base.size());
    std::unordered_set<BitVec, BitVecHash> seen;
    for (const BitVec& b : base) {
        BitVec row = expand(b, vocab_size, rho);
        if (!seen.insert(row).second) {
            throw ConstructionError(
                "build_codebook: expansion collided two rows; re-seed or raise base_dim");
        }
        cb.rows.push_back(std::move(row));
    }
    return cb;
}

namespace {

constexpr char kMagic[4] = {'C', 'H', 'B', 'K'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::vector<std::uint8_t>& buf, std::uint16_t v) {
    for (int i = 0; i < 2; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<std::uint8_t>& buf, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

struct Reader {
    const std::uint8_t* p;
    const std::uint8_t* end;

    void need(std::size_t n) const {
        if (static_cast<std::size_t>(end - p) < n) {
            throw IoError("codebook file truncated");
        }
    }
    std::uint16_t u16() {
        need(2);
        std::uint16_t v = 0;
        for (int i = 0; i < 2; ++i) v |= static_cast<std::uint16_t>(*p++) << (8 * i);
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(*p++) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(*p++) << (8 * i);
        return v;
    }
};

}  // namespace

void save_codebook(const Codebook& cb, const std::filesystem::path& path) {
    std::vector<std::uint8_t> buf;
    buf.insert(buf.end(), kMagic, kMagic + 4);
    put_u16(buf, kVersion);
    put_u32(buf, cb.space.agents);
    put_u32(buf, cb.space.steps);
    put_u32(buf, cb.vocab_size);
    put_u32(buf, cb.base_dim);
    std::uint64_t rho_bits;
    static_assert(sizeof(rho_bits) == sizeof(cb.rho));
    std::memcpy(&rho_bits, &cb.rho, sizeof(rho_bits));
    put_u64(buf, rho_bits);
    put_u64(buf, cb.seed);
    put_u64(buf, cb.rows.size());
    for (const BitVec& row : cb.rows) {
        const auto bytes = row.to_bytes();
        buf.insert(buf.end(), bytes.begin(), bytes.end());
    }
    const auto crc = static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(buf.size())));
    put_u32(buf, crc);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("short write to " + path.string());
}

Codebook load_codebook(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> buf((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
    if (buf.size() < 4 + 2 + 4 * 4 + 8 * 3 + 4) throw IoError("codebook file truncated");

    const std::size_t payload = buf.size() - 4;
    const auto want = static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(payload)));
    std::uint32_t got = 0;
    for (int i = 0; i < 4; ++i) got |= static_cast<std::uint32_t>(buf[payload + i]) << (8 * i);
    if (want != got) throw IoError("codebook checksum mismatch");

    Reader r{buf.data(), buf.data() + payload};
    r.need(4);
    if (std::memcmp(r.p, kMagic, 4) != 0) throw IoError("not a codebook file (bad magic)");
    r.p += 4;
    const std::uint16_t version = r.u16();
    if (version != kVersion) {
        throw IoError("unsupported codebook version " + std::to_string(version));
    }

    Codebook cb;
    cb.space.agents = r.u32();
    cb.space.steps = r.u32();
    cb.vocab_size = r.u32();
    cb.base_dim = r.u32();
    const std::uint64_t rho_bits = r.u64();
    std::memcpy(&cb.rho, &rho_bits, sizeof(cb.rho));
    cb.seed = r.u64();
    const std::uint64_t nrows = r.u64();
    std::uint64_t expected_rows = 0;
    try {
        expected_rows = cb.space.cardinality();
    } catch (const std::overflow_error&) {
        throw IoError("codebook header implies an oversized chronicle space");
    }
    if (nrows != expected_rows) {
        throw IoError("codebook row count disagrees with space size");
    }

    const std::uint64_t row_bytes = (cb.vocab_size + 7) / 8;
    const auto remaining = static_cast<std::uint64_t>(r.end - r.p);
    if (static_cast<unsigned __int128>(nrows) * row_bytes != remaining) {
        throw IoError("codebook row data size mismatch");
    }
    cb.rows.reserve(nrows);
    const std::uint32_t w = cb.weight();
    for (std::uint64_t i = 0; i < nrows; ++i) {
        BitVec row = BitVec::from_bytes(r.p, cb.vocab_size);
        r.p += row_bytes;
        if (row.count() != w) throw IoError("codebook row has wrong weight");
        cb.rows.push_back(std::move(row));
    }
    return cb;
}

}  // namespace chronicle
