#include "cellchain/codec.hpp"

#include <bit>
#include <cstring>

namespace cellchain {

void Encoder::put_u32(uint32_t v) {
    for (int i = 3; i >= 0; --i) buf_.push_back(uint8_t(v >> (8 * i)));
}

void Encoder::put_u64(uint64_t v) {
    for (int i = 7; i >= 0; --i) buf_.push_back(uint8_t(v >> (8 * i)));
}

void Encoder::put_f64(double v) { put_u64(std::bit_cast<uint64_t>(v)); }

void Encoder::put_raw(const uint8_t* data, size_t len) {
    buf_.insert(buf_.end(), data, data + len);
}

void Encoder::put_bytes(const Bytes& b) {
    put_u32(static_cast<uint32_t>(b.size()));
    put_raw(b.data(), b.size());
}

void Encoder::put_string(const std::string& s) {
    put_u32(static_cast<uint32_t>(s.size()));
    put_raw(reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

void Decoder::need(size_t n) const {
    if (len_ - pos_ < n) throw CodecError("input truncated", pos_);
}

uint8_t Decoder::get_u8() {
    need(1);
    return data_[pos_++];
}

uint32_t Decoder::get_u32() {
    need(4);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_++];
    return v;
}

uint64_t Decoder::get_u64() {
    need(8);
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | data_[pos_++];
    return v;
}

double Decoder::get_f64() { return std::bit_cast<double>(get_u64()); }

bool Decoder::get_bool() {
    uint8_t v = get_u8();
    if (v > 1) throw CodecError("non-canonical bool", pos_ - 1);
    return v == 1;
}

void Decoder::get_raw(uint8_t* out, size_t len) {
    need(len);
    std::memcpy(out, data_ + pos_, len);
    pos_ += len;
}

Digest Decoder::get_digest() {
    Digest d;
    get_raw(d.data(), d.size());
    return d;
}

Bytes Decoder::get_bytes() {
    uint32_t n = get_u32();
    need(n);
    Bytes out(data_ + pos_, data_ + pos_ + n);
    pos_ += n;
    return out;
}

std::string Decoder::get_string() {
    uint32_t n = get_u32();
    need(n);
    std::string out(reinterpret_cast<const char*>(data_ + pos_), n);
    pos_ += n;
    return out;
}

}  // namespace cellchain
