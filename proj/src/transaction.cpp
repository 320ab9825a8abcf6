#include "cellchain/transaction.hpp"

namespace cellchain {

const char* tx_kind_name(TxKind kind) {
    switch (kind) {
        case TxKind::RobotEvent: return "robot_event";
        case TxKind::ImageAnchor: return "image_anchor";
        case TxKind::ContractCall: return "contract_call";
    }
    return "unknown";
}

bool Transaction::payload_matches_kind() const {
    return payload.index() == static_cast<size_t>(kind);
}

void Transaction::encode(Encoder& enc) const {
    enc.put_u8(static_cast<uint8_t>(kind));
    enc.put_string(sender);
    enc.put_string(description);
    enc.put_u64(nonce);
    switch (kind) {
        case TxKind::RobotEvent: {
            const auto& p = std::get<RobotEventPayload>(payload);
            enc.put_i64(p.timestamp);
            enc.put_string(p.position);
            enc.put_u32(p.velocity);
            enc.put_f64(p.effort);
            break;
        }
        case TxKind::ImageAnchor: {
            const auto& p = std::get<ImageAnchorPayload>(payload);
            enc.put_digest(p.image_hash);
            enc.put_string(p.image_id);
            break;
        }
        case TxKind::ContractCall: {
            const auto& p = std::get<ContractCallPayload>(payload);
            enc.put_string(p.address);
            enc.put_string(p.entry);
            enc.put_string(p.argument);
            break;
        }
    }
}

Transaction Transaction::decode(Decoder& dec) {
    Transaction tx;
    size_t kind_at = dec.offset();
    uint8_t raw_kind = dec.get_u8();
    if (raw_kind > 2) throw CodecError("unknown transaction kind", kind_at);
    tx.kind = static_cast<TxKind>(raw_kind);
    tx.sender = dec.get_string();
    tx.description = dec.get_string();
    tx.nonce = dec.get_u64();
    switch (tx.kind) {
        case TxKind::RobotEvent: {
            RobotEventPayload p;
            p.timestamp = dec.get_i64();
            p.position = dec.get_string();
            p.velocity = dec.get_u32();
            p.effort = dec.get_f64();
            tx.payload = std::move(p);
            break;
        }
        case TxKind::ImageAnchor: {
            ImageAnchorPayload p;
            p.image_hash = dec.get_digest();
            p.image_id = dec.get_string();
            tx.payload = std::move(p);
            break;
        }
        case TxKind::ContractCall: {
            ContractCallPayload p;
            p.address = dec.get_string();
            p.entry = dec.get_string();
            p.argument = dec.get_string();
            tx.payload = std::move(p);
            break;
        }
    }
    return tx;
}

Transaction Transaction::robot_event(std::string sender, uint64_t nonce,
                                     std::string description,
                                     RobotEventPayload payload) {
    Transaction tx;
    tx.kind = TxKind::RobotEvent;
    tx.sender = std::move(sender);
    tx.description = std::move(description);
    tx.nonce = nonce;
    tx.payload = std::move(payload);
    return tx;
}

Transaction Transaction::image_anchor(std::string sender, uint64_t nonce,
                                      std::string description,
                                      ImageAnchorPayload payload) {
    Transaction tx;
    tx.kind = TxKind::ImageAnchor;
    tx.sender = std::move(sender);
    tx.description = std::move(description);
    tx.nonce = nonce;
    tx.payload = std::move(payload);
    return tx;
}

Transaction Transaction::contract_call(std::string sender, uint64_t nonce,
                                       std::string description,
                                       ContractCallPayload payload) {
    Transaction tx;
    tx.kind = TxKind::ContractCall;
    tx.sender = std::move(sender);
    tx.description = std::move(description);
    tx.nonce = nonce;
    tx.payload = std::move(payload);
    return tx;
}

}  // namespace cellchain
