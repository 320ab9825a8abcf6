#include "cellchain/oracle.hpp"

#include "cellchain/velocity.hpp"

namespace cellchain {

OracleAgent::OracleAgent(std::string key, Chain& chain, BlobStore& blobs,
                         ContractHost& host, std::string contract_address,
                         PipelineConfig cfg)
    : key_(std::move(key)),
      chain_(chain),
      blobs_(blobs),
      host_(host),
      contract_address_(std::move(contract_address)),
      cfg_(cfg) {}

OracleAgent::Observation OracleAgent::observe(const Frame& frame) {
    Observation obs;

    Bytes image = encode_ppm(frame);
    auto [digest, id] = blobs_.anchor(image);
    obs.image_hash = digest;
    obs.image_id = id;

    auto anchor_tx = Transaction::image_anchor(
        key_, chain_.next_nonce(key_), "pick-zone frame " + id,
        ImageAnchorPayload{digest, id});
    auto receipt = chain_.submit(anchor_tx);
    if (!receipt.accepted) {
        obs.error = "anchor rejected: " + receipt.error;
        return obs;
    }

    obs.count = count_balls(frame, cfg_);

    auto outcome = host_.call(contract_address_, velocity_contract::kEntryReportCount,
                              key_, {Value{int64_t(obs.count)}});
    if (!outcome.ok) {
        obs.error = "report rejected: " + outcome.error;
        return obs;
    }
    obs.reported = true;
    obs.operations = std::move(outcome.operations);
    return obs;
}

}  // namespace cellchain
