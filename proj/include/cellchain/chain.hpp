#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cellchain/block.hpp"

namespace cellchain {

struct SubmitReceipt {
    bool accepted = false;
    size_t pool_position = 0;
    std::string error;
};

struct SealOutcome {
    bool ok = false;
    std::string error;
    Block block;
};

/// Verdict of chain verification. When valid is false, first_bad_height is
/// the height of the earliest block whose hash, linkage, or encoding fails.
struct ChainVerdict {
    bool valid = true;
    uint64_t first_bad_height = 0;
    std::string detail;
};

struct TxFilter {
    std::optional<std::string> sender;
    std::optional<TxKind> kind;
    std::optional<int64_t> time_min;  // inclusive, on block timestamps
    std::optional<int64_t> time_max;
};

/// Append-only hash-chained ledger with a pending pool and deterministic
/// round-robin sealing over a fixed validator set. Single sealer; transaction
/// intake is serialized.
class Chain {
public:
    explicit Chain(std::vector<std::string> validators);
    Chain(Chain&&) = default;
    Chain& operator=(Chain&&) = default;

    /// Accepts a transaction into the pending pool. Rejects stale or
    /// out-of-order nonces and payloads that do not match the declared kind.
    SubmitReceipt submit(const Transaction& tx);

    /// Next expected nonce for a sender, counting both sealed and pending txs.
    uint64_t next_nonce(const std::string& sender) const;

    /// Drains the pool into a new block. Only the validator whose turn it is
    /// (height mod validator count) may seal. An empty pool seals an empty
    /// block so time keeps advancing.
    SealOutcome seal_block(const std::string& validator, int64_t now);

    const std::string& expected_validator(uint64_t height) const;
    const std::vector<std::string>& validators() const { return validators_; }

    size_t size() const { return blocks_.size(); }
    size_t pending_count() const { return pending_.size(); }
    const Block& block(size_t height) const { return blocks_.at(height); }
    const std::vector<Block>& blocks() const { return blocks_; }
    Digest head_hash() const;

    std::vector<std::pair<uint64_t, Transaction>> query(const TxFilter& filter) const;

    /// Canonical bytes of the whole chain: blocks concatenated in order.
    Bytes serialize() const;

    static ChainVerdict verify_blocks(const std::vector<Block>& blocks);
    /// Parses and verifies serialized chain bytes. A parse failure is reported
    /// as invalid at the height where parsing stopped, with the byte offset in
    /// the detail message.
    static ChainVerdict verify_bytes(const Bytes& bytes);
    /// Parses chain bytes; throws CodecError on a truncated or corrupt tail.
    static std::vector<Block> load_blocks(const Bytes& bytes);

private:
    std::vector<std::string> validators_;
    std::vector<Block> blocks_;
    std::vector<Transaction> pending_;
    std::map<std::string, uint64_t> next_nonce_;
    std::unique_ptr<std::mutex> intake_mutex_ = std::make_unique<std::mutex>();
};

}  // namespace cellchain
