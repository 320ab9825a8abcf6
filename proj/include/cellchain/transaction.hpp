#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "cellchain/bytes.hpp"
#include "cellchain/codec.hpp"

namespace cellchain {

enum class TxKind : uint8_t {
    RobotEvent = 0,
    ImageAnchor = 1,
    ContractCall = 2,
};

const char* tx_kind_name(TxKind kind);

/// Robot state log: pose label plus the velocity in seconds per movement
/// (0 means stopped at home) and a nominal effort reading.
struct RobotEventPayload {
    int64_t timestamp = 0;
    std::string position;
    uint32_t velocity = 0;
    double effort = 0.0;
};

/// On-chain (hash, id) pair binding a ledger entry to off-chain image bytes.
struct ImageAnchorPayload {
    Digest image_hash{};
    std::string image_id;
};

struct ContractCallPayload {
    std::string address;
    std::string entry;
    std::string argument;
};

using TxPayload =
    std::variant<RobotEventPayload, ImageAnchorPayload, ContractCallPayload>;

struct Transaction {
    TxKind kind = TxKind::RobotEvent;
    std::string sender;       // key-hash label of the submitting identity
    std::string description;  // free-text documentation, always present
    uint64_t nonce = 0;
    TxPayload payload;

    /// True when the payload alternative matches `kind`.
    bool payload_matches_kind() const;

    void encode(Encoder& enc) const;
    static Transaction decode(Decoder& dec);

    static Transaction robot_event(std::string sender, uint64_t nonce,
                                   std::string description,
                                   RobotEventPayload payload);
    static Transaction image_anchor(std::string sender, uint64_t nonce,
                                    std::string description,
                                    ImageAnchorPayload payload);
    static Transaction contract_call(std::string sender, uint64_t nonce,
                                     std::string description,
                                     ContractCallPayload payload);
};

}  // namespace cellchain
