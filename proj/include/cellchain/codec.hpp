#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "cellchain/bytes.hpp"

namespace cellchain {

/// Raised by Decoder on truncated or non-canonical input. Carries the byte
/// offset at which decoding failed.
struct CodecError : std::runtime_error {
    CodecError(std::string msg, size_t at)
        : std::runtime_error(std::move(msg)), offset(at) {}
    size_t offset;
};

/// Canonical encoder: fields in declaration order, integers big-endian,
/// variable-length data with a u32 length prefix.
class Encoder {
public:
    void put_u8(uint8_t v) { buf_.push_back(v); }
    void put_u32(uint32_t v);
    void put_u64(uint64_t v);
    void put_i64(int64_t v) { put_u64(static_cast<uint64_t>(v)); }
    void put_f64(double v);
    void put_bool(bool v) { put_u8(v ? 1 : 0); }
    void put_raw(const uint8_t* data, size_t len);
    void put_digest(const Digest& d) { put_raw(d.data(), d.size()); }
    void put_bytes(const Bytes& b);
    void put_string(const std::string& s);

    const Bytes& bytes() const { return buf_; }
    Bytes take() { return std::move(buf_); }

private:
    Bytes buf_;
};

class Decoder {
public:
    Decoder(const uint8_t* data, size_t len) : data_(data), len_(len) {}
    explicit Decoder(const Bytes& b) : Decoder(b.data(), b.size()) {}

    uint8_t get_u8();
    uint32_t get_u32();
    uint64_t get_u64();
    int64_t get_i64() { return static_cast<int64_t>(get_u64()); }
    double get_f64();
    bool get_bool();
    void get_raw(uint8_t* out, size_t len);
    Digest get_digest();
    Bytes get_bytes();
    std::string get_string();

    size_t offset() const { return pos_; }
    size_t remaining() const { return len_ - pos_; }
    bool at_end() const { return pos_ == len_; }

private:
    void need(size_t n) const;

    const uint8_t* data_;
    size_t len_;
    size_t pos_ = 0;
};

}  // namespace cellchain
