#pragma once

#include <vector>

#include "cellchain/transaction.hpp"

namespace cellchain {

struct Block {
    uint64_t height = 0;
    Digest prev_hash{};  // all zero for the genesis block
    int64_t timestamp = 0;
    std::string validator;
    std::vector<Transaction> transactions;
    Digest block_hash{};

    /// Digest over all fields preceding block_hash, in canonical serialization.
    Digest compute_hash() const;

    void encode(Encoder& enc) const;
    Bytes serialize() const;
    static Block decode(Decoder& dec);

private:
    void encode_body(Encoder& enc) const;
};

}  // namespace cellchain
