#pragma once

#include "cellchain/blobstore.hpp"
#include "cellchain/chain.hpp"
#include "cellchain/contract.hpp"
#include "cellchain/pipeline.hpp"

namespace cellchain {

/// The trusted off-chain party: anchors every frame it processes (image bytes
/// to the blob store, the (hash, id) tuple to the ledger) and reports the
/// detected ball count to the velocity contract. Anchoring always precedes
/// reporting.
class OracleAgent {
public:
    OracleAgent(std::string key, Chain& chain, BlobStore& blobs, ContractHost& host,
                std::string contract_address, PipelineConfig cfg = {});

    struct Observation {
        int count = 0;
        std::string image_id;
        Digest image_hash{};
        bool reported = false;
        std::string error;
        std::vector<EmittedOperation> operations;
    };

    Observation observe(const Frame& frame);

    const std::string& key() const { return key_; }
    const PipelineConfig& config() const { return cfg_; }

private:
    std::string key_;
    Chain& chain_;
    BlobStore& blobs_;
    ContractHost& host_;
    std::string contract_address_;
    PipelineConfig cfg_;
};

}  // namespace cellchain
