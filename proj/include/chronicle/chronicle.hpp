#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chronicle {

// Agent identity at one generative step. 0 is the null / not-yet-assigned
// agent; real agents are 1..n.
using AgentId = std::uint8_t;

// Fixed-length record of which agent generated at each step. Always length
// T; unassigned trailing steps are zero.
struct Chronicle {
    std::vector<AgentId> symbols;

    Chronicle() = default;
    explicit Chronicle(std::vector<AgentId> s) : symbols(std::move(s)) {}

    std::size_t length() const { return symbols.size(); }
    bool operator==(const Chronicle&) const = default;
};

// The space of all records for n agents over T steps: (n+1)^T sequences.
struct ChronicleSpace {
    std::uint32_t agents = 0;  // n; valid symbols are 0..n
    std::uint32_t steps = 0;   // T

    // (n+1)^T; throws std::overflow_error past 64 bits.
    std::uint64_t cardinality() const;

    bool operator==(const ChronicleSpace&) const = default;
};

enum class EnumMode { Full, PrefixValid };

Chronicle zero_chronicle(std::uint32_t steps);

// Insert `agent` at 1-based position t, keeping the prefix and zeroing
// everything after t. Throws std::out_of_range if t is not in 1..T.
Chronicle update(const Chronicle& prev, AgentId agent, std::size_t t);

// 1-based position of the first zero symbol; T+1 when the record is full.
std::size_t infer_timestep(const Chronicle& x);

// True when no nonzero symbol appears after the first zero.
bool is_prefix_valid(const Chronicle& x);

// Base-(n+1) positional encoding, first symbol most significant. Bijective
// with full lexicographic enumeration order. Throws std::domain_error on
// symbols above n or a length mismatch.
std::uint64_t index_of(const Chronicle& x, const ChronicleSpace& space);

// Inverse of index_of. Throws std::out_of_range if index >= cardinality.
Chronicle chronicle_at(const ChronicleSpace& space, std::uint64_t index);

// Streams the space in lexicographic order (symbol 0 smallest). Each
// enumerator owns its cursor; streams are independently re-creatable.
class ChronicleEnumerator {
public:
    ChronicleEnumerator(ChronicleSpace space, EnumMode mode);

    // Writes the next chronicle into `out`; false once exhausted.
    bool next(Chronicle& out);
    void reset();

private:
    bool advance();

    ChronicleSpace space_;
    EnumMode mode_;
    Chronicle cur_;
    bool started_ = false;
    bool done_ = false;
};

std::vector<Chronicle> enumerate_chronicles(const ChronicleSpace& space, EnumMode mode);

// Number of prefix-valid chronicles: sum over t=0..T of n^t.
std::uint64_t prefix_valid_count(const ChronicleSpace& space);

// Text form used by the CLI and JSON files: "2,1,0".
std::string format_chronicle(const Chronicle& x);
Chronicle parse_chronicle(const std::string& text);

// (n+1)^T in decimal, exact at any magnitude.
std::string space_size_str(std::uint32_t agents, std::uint32_t steps);

}  // namespace chronicle
