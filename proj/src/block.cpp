#include "cellchain/block.hpp"

#include "cellchain/sha256.hpp"

namespace cellchain {

void Block::encode_body(Encoder& enc) const {
    enc.put_u64(height);
    enc.put_digest(prev_hash);
    enc.put_i64(timestamp);
    enc.put_string(validator);
    enc.put_u32(static_cast<uint32_t>(transactions.size()));
    for (const auto& tx : transactions) tx.encode(enc);
}

Digest Block::compute_hash() const {
    Encoder enc;
    encode_body(enc);
    return sha256(enc.bytes());
}

void Block::encode(Encoder& enc) const {
    encode_body(enc);
    enc.put_digest(block_hash);
}

Bytes Block::serialize() const {
    Encoder enc;
    encode(enc);
    return enc.take();
}

Block Block::decode(Decoder& dec) {
    Block b;
    b.height = dec.get_u64();
    b.prev_hash = dec.get_digest();
    b.timestamp = dec.get_i64();
    b.validator = dec.get_string();
    // no reserve: count comes from untrusted bytes and truncation must
    // surface as a CodecError, not an allocation failure
    uint32_t count = dec.get_u32();
    for (uint32_t i = 0; i < count; ++i) {
        b.transactions.push_back(Transaction::decode(dec));
    }
    b.block_hash = dec.get_digest();
    return b;
}

}  // namespace cellchain
