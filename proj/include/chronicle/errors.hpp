#pragma once

#include <stdexcept>

namespace chronicle {

// Constant-weight vector space too small for the requested number of rows.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Codebook rows collided after expansion.
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// External logit provider misbehaved (protocol, shape, or transport).
struct ProviderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Decoding asked for without evidence (empty token sequence).
struct DecodeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File format / checksum / version failures.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace chronicle
