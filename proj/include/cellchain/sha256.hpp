#pragma once

#include <cstddef>

#include "cellchain/bytes.hpp"

namespace cellchain {

/// Incremental SHA-256 (FIPS 180-4).
class Sha256 {
public:
    Sha256() { reset(); }

    void reset();
    void update(const uint8_t* data, size_t len);
    void update(const Bytes& data) { update(data.data(), data.size()); }
    Digest finish();

private:
    void process_block(const uint8_t* block);

    uint32_t state_[8];
    uint8_t buffer_[64];
    size_t buffered_ = 0;
    uint64_t total_bytes_ = 0;
};

Digest sha256(const uint8_t* data, size_t len);
Digest sha256(const Bytes& data);
Digest sha256(const std::string& data);

}  // namespace cellchain
