#include "chronicle/chronicle.hpp"

#include <charconv>
#include <stdexcept>

namespace chronicle {

std::uint64_t ChronicleSpace::cardinality() const {
    std::uint64_t acc = 1;
    const std::uint64_t base = static_cast<std::uint64_t>(agents) + 1;
    for (std::uint32_t i = 0; i < steps; ++i) {
        if (__builtin_mul_overflow(acc, base, &acc)) {
            throw std::overflow_error("chronicle space cardinality exceeds 64 bits");
        }
    }
    return acc;
}

Chronicle zero_chronicle(std::uint32_t steps) {
    return Chronicle(std::vector<AgentId>(steps, 0));
}

Chronicle update(const Chronicle& prev, AgentId agent, std::size_t t) {
    const std::size_t len = prev.length();
    if (t < 1 || t > len) {
        throw std::out_of_range("update: timestep " + std::to_string(t) +
                                " outside 1.." + std::to_string(len));
    }
    Chronicle out = prev;
    out.symbols[t - 1] = agent;
    for (std::size_t i = t; i < len; ++i) out.symbols[i] = 0;
    return out;
}

std::size_t infer_timestep(const Chronicle& x) {
    for (std::size_t i = 0; i < x.length(); ++i) {
        if (x.symbols[i] == 0) return i + 1;
    }
    return x.length() + 1;
}

bool is_prefix_valid(const Chronicle& x) {
    bool seen_zero = false;
    for (AgentId s : x.symbols) {
        if (s == 0) {
            seen_zero = true;
        } else if (seen_zero) {
            return false;
        }
    }
    return true;
}

std::uint64_t index_of(const Chronicle& x, const ChronicleSpace& space) {
    if (x.length() != space.steps) {
        throw std::domain_error("index_of: chronicle length " + std::to_string(x.length()) +
                                " does not match space steps " + std::to_string(space.steps));
    }
    const std::uint64_t base = static_cast<std::uint64_t>(space.agents) + 1;
    std::uint64_t idx = 0;
    for (AgentId s : x.symbols) {
        if (s > space.agents) {
            throw std::domain_error("index_of: symbol " + std::to_string(s) +
                                    " above agent population " + std::to_string(space.agents));
        }
        idx = idx * base + s;
    }
    return idx;
}

Chronicle chronicle_at(const ChronicleSpace& space, std::uint64_t index) {
    if (index >= space.cardinality()) {
        throw std::out_of_range("chronicle_at: index outside the space");
    }
    const std::uint64_t base = static_cast<std::uint64_t>(space.agents) + 1;
    Chronicle out = zero_chronicle(space.steps);
    for (std::uint32_t i = space.steps; i-- > 0;) {
        out.symbols[i] = static_cast<AgentId>(index % base);
        index /= base;
    }
    return out;
}

ChronicleEnumerator::ChronicleEnumerator(ChronicleSpace space, EnumMode mode)
    : space_(space), mode_(mode) {
    reset();
}

void ChronicleEnumerator::reset() {
    cur_ = zero_chronicle(space_.steps);
    started_ = false;
    done_ = false;
}

bool ChronicleEnumerator::next(Chronicle& out) {
    if (done_) return false;
    if (!started_) {
        started_ = true;
        out = cur_;
        return true;
    }
    if (!advance()) {
        done_ = true;
        return false;
    }
    out = cur_;
    return true;
}

// Lexicographic successor. In prefix-valid mode the smallest extension of a
// partial record appends symbol 1; a full record carries like a base-n
// counter over its nonzero prefix.
bool ChronicleEnumerator::advance() {
    const std::uint32_t n = space_.agents;
    const std::size_t len = cur_.length();

    if (mode_ == EnumMode::PrefixValid) {
        const std::size_t filled = infer_timestep(cur_) - 1;
        if (filled < len && n >= 1) {
            cur_.symbols[filled] = 1;
            return true;
        }
        for (std::size_t i = filled; i-- > 0;) {
            if (cur_.symbols[i] < n) {
                ++cur_.symbols[i];
                for (std::size_t j = i + 1; j < len; ++j) cur_.symbols[j] = 0;
                return true;
            }
        }
        return false;
    }

    for (std::size_t i = len; i-- > 0;) {
        if (cur_.symbols[i] < n) {
            ++cur_.symbols[i];
            for (std::size_t j = i + 1; j < len; ++j) cur_.symbols[j] = 0;
            return true;
        }
    }
    return false;
}

std::vector<Chronicle> enumerate_chronicles(const ChronicleSpace& space, EnumMode mode) {
    std::vector<Chronicle> out;
    ChronicleEnumerator en(space, mode);
    Chronicle x;
    while (en.next(x)) out.push_back(x);
    return out;
}

std::uint64_t prefix_valid_count(const ChronicleSpace& space) {
    const std::uint64_t n = space.agents;
    std::uint64_t total = 0;
    std::uint64_t term = 1;  // n^t
    for (std::uint32_t t = 0; t <= space.steps; ++t) {
        if (__builtin_add_overflow(total, term, &total)) {
            throw std::overflow_error("prefix-valid count exceeds 64 bits");
        }
        if (t < space.steps && __builtin_mul_overflow(term, n, &term)) {
            throw std::overflow_error("prefix-valid count exceeds 64 bits");
        }
    }
    return total;
}

std::string format_chronicle(const Chronicle& x) {
    std::string out;
    for (std::size_t i = 0; i < x.length(); ++i) {
        if (i != 0) out += ',';
        out += std::to_string(static_cast<unsigned>(x.symbols[i]));
    }
    return out;
}

Chronicle parse_chronicle(const std::string& text) {
    Chronicle out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        unsigned value = 0;
        const char* first = text.data() + pos;
        const char* last = text.data() + comma;
        auto [ptr, ec] = std::from_chars(first, last, value);
        if (ec != std::errc{} || ptr != last || first == last || value > 255) {
            throw std::domain_error("parse_chronicle: bad symbol in \"" + text + "\"");
        }
        out.symbols.push_back(static_cast<AgentId>(value));
        if (comma == text.size()) break;
        pos = comma + 1;
    }
    if (out.symbols.empty()) {
        throw std::domain_error("parse_chronicle: empty chronicle");
    }
    return out;
}

std::string space_size_str(std::uint32_t agents, std::uint32_t steps) {
    // Decimal bignum: little-endian digit limbs in base 1e9.
    const std::uint64_t base = static_cast<std::uint64_t>(agents) + 1;
    std::vector<std::uint32_t> limbs{1};
    for (std::uint32_t i = 0; i < steps; ++i) {
        std::uint64_t carry = 0;
        for (auto& limb : limbs) {
            const std::uint64_t v = static_cast<std::uint64_t>(limb) * base + carry;
            limb = static_cast<std::uint32_t>(v % 1000000000u);
            carry = v / 1000000000u;
        }
        while (carry != 0) {
            limbs.push_back(static_cast<std::uint32_t>(carry % 1000000000u));
            carry /= 1000000000u;
        }
    }
    std::string out = std::to_string(limbs.back());
    for (std::size_t i = limbs.size() - 1; i-- > 0;) {
        std::string part = std::to_string(limbs[i]);
        out += std::string(9 - part.size(), '0') + part;
    }
    return out;
}

}  // namespace chronicle
