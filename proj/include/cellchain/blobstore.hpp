#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cellchain/bytes.hpp"

namespace cellchain {

/// Directory-backed image store: one file per image_id, filename = image_id.
/// The ledger holds only the (hash, id) anchor; the bytes live here.
class BlobStore {
public:
    explicit BlobStore(std::filesystem::path dir);

    /// Persists the bytes under a fresh id and returns (digest, id).
    /// Throws std::invalid_argument on empty input and std::runtime_error on
    /// persistence failure.
    std::pair<Digest, std::string> anchor(const Bytes& image);

    Bytes read(const std::string& image_id) const;
    bool contains(const std::string& image_id) const;

    /// Recomputes the digest of the stored bytes and compares. False when the
    /// blob is missing or its bytes no longer hash to `expected`.
    bool verify(const std::string& image_id, const Digest& expected) const;

    std::vector<std::string> ids() const;
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    uint64_t next_id_ = 0;
};

}  // namespace cellchain
