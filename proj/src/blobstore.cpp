#include "cellchain/blobstore.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "cellchain/sha256.hpp"

namespace cellchain {

namespace fs = std::filesystem;

namespace {

std::string id_for(uint64_t n) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "img-%06llu", static_cast<unsigned long long>(n));
    return buf;
}

}  // namespace

BlobStore::BlobStore(fs::path dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
    // continue numbering past any blobs already present
    for (const auto& entry : fs::directory_iterator(dir_)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("img-", 0) == 0) {
            uint64_t n = std::strtoull(name.c_str() + 4, nullptr, 10);
            next_id_ = std::max(next_id_, n + 1);
        }
    }
}

std::pair<Digest, std::string> BlobStore::anchor(const Bytes& image) {
    if (image.empty()) throw std::invalid_argument("empty image");
    Digest digest = sha256(image);
    std::string id = id_for(next_id_);
    fs::path path = dir_ / id;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open blob file " + path.string());
    out.write(reinterpret_cast<const char*>(image.data()),
              static_cast<std::streamsize>(image.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for blob " + path.string());
    ++next_id_;
    return {digest, id};
}

Bytes BlobStore::read(const std::string& image_id) const {
    fs::path path = dir_ / image_id;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing blob " + image_id);
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

bool BlobStore::contains(const std::string& image_id) const {
    return fs::exists(dir_ / image_id);
}

bool BlobStore::verify(const std::string& image_id, const Digest& expected) const {
    if (!contains(image_id)) return false;
    return sha256(read(image_id)) == expected;
}

std::vector<std::string> BlobStore::ids() const {
    std::vector<std::string> out;
    for (const auto& entry : fs::directory_iterator(dir_)) {
        out.push_back(entry.path().filename().string());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace cellchain
