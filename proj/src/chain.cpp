#include "cellchain/chain.hpp"

#include <stdexcept>

#include "cellchain/sha256.hpp"

namespace cellchain {

Chain::Chain(std::vector<std::string> validators)
    : validators_(std::move(validators)) {
    if (validators_.empty()) {
        throw std::invalid_argument("validator set must not be empty");
    }
}

SubmitReceipt Chain::submit(const Transaction& tx) {
    std::lock_guard<std::mutex> lock(*intake_mutex_);
    SubmitReceipt receipt;
    if (tx.sender.empty()) {
        receipt.error = "missing sender";
        return receipt;
    }
    if (!tx.payload_matches_kind()) {
        receipt.error = "malformed payload: body does not match kind";
        return receipt;
    }
    if (tx.kind == TxKind::RobotEvent) {
        const auto& p = std::get<RobotEventPayload>(tx.payload);
        if (p.effort < 0.0) {
            receipt.error = "malformed payload: negative effort";
            return receipt;
        }
    }
    uint64_t expected = 0;
    if (auto it = next_nonce_.find(tx.sender); it != next_nonce_.end()) {
        expected = it->second;
    }
    if (tx.nonce != expected) {
        receipt.error = tx.nonce < expected ? "stale nonce: replay rejected"
                                            : "nonce gap";
        return receipt;
    }
    next_nonce_[tx.sender] = expected + 1;
    receipt.accepted = true;
    receipt.pool_position = pending_.size();
    pending_.push_back(tx);
    return receipt;
}

uint64_t Chain::next_nonce(const std::string& sender) const {
    std::lock_guard<std::mutex> lock(*intake_mutex_);
    auto it = next_nonce_.find(sender);
    return it == next_nonce_.end() ? 0 : it->second;
}

const std::string& Chain::expected_validator(uint64_t height) const {
    return validators_[height % validators_.size()];
}

SealOutcome Chain::seal_block(const std::string& validator, int64_t now) {
    std::lock_guard<std::mutex> lock(*intake_mutex_);
    SealOutcome out;
    uint64_t height = blocks_.size();
    const std::string& expected = validators_[height % validators_.size()];
    if (validator != expected) {
        out.error = "out-of-turn validator: height " + std::to_string(height) +
                    " belongs to " + expected;
        return out;
    }
    Block b;
    b.height = height;
    b.prev_hash = blocks_.empty() ? Digest{} : blocks_.back().block_hash;
    b.timestamp = now;
    b.validator = validator;
    b.transactions = std::move(pending_);
    pending_.clear();
    b.block_hash = b.compute_hash();
    blocks_.push_back(b);
    out.ok = true;
    out.block = std::move(b);
    return out;
}

Digest Chain::head_hash() const {
    return blocks_.empty() ? Digest{} : blocks_.back().block_hash;
}

std::vector<std::pair<uint64_t, Transaction>> Chain::query(const TxFilter& filter) const {
    std::vector<std::pair<uint64_t, Transaction>> out;
    for (const auto& b : blocks_) {
        if (filter.time_min && b.timestamp < *filter.time_min) continue;
        if (filter.time_max && b.timestamp > *filter.time_max) continue;
        for (const auto& tx : b.transactions) {
            if (filter.sender && tx.sender != *filter.sender) continue;
            if (filter.kind && tx.kind != *filter.kind) continue;
            out.emplace_back(b.height, tx);
        }
    }
    return out;
}

Bytes Chain::serialize() const {
    Encoder enc;
    for (const auto& b : blocks_) b.encode(enc);
    return enc.take();
}

ChainVerdict Chain::verify_blocks(const std::vector<Block>& blocks) {
    ChainVerdict v;
    Digest prev{};
    for (size_t i = 0; i < blocks.size(); ++i) {
        const Block& b = blocks[i];
        if (b.height != i) {
            return {false, i, "height mismatch"};
        }
        if (b.prev_hash != prev) {
            return {false, i, "broken hash linkage"};
        }
        if (b.compute_hash() != b.block_hash) {
            return {false, i, "block hash mismatch"};
        }
        prev = b.block_hash;
    }
    return v;
}

std::vector<Block> Chain::load_blocks(const Bytes& bytes) {
    std::vector<Block> blocks;
    Decoder dec(bytes);
    while (!dec.at_end()) {
        blocks.push_back(Block::decode(dec));
    }
    return blocks;
}

ChainVerdict Chain::verify_bytes(const Bytes& bytes) {
    std::vector<Block> blocks;
    Decoder dec(bytes);
    while (!dec.at_end()) {
        try {
            blocks.push_back(Block::decode(dec));
        } catch (const CodecError& e) {
            ChainVerdict v;
            v.valid = false;
            v.first_bad_height = blocks.size();
            v.detail = std::string("parse error at offset ") +
                       std::to_string(e.offset) + ": " + e.what();
            return v;
        }
    }
    return verify_blocks(blocks);
}

}  // namespace cellchain
