#include <doctest.h>

#include "cellchain/codec.hpp"
#include "cellchain/rng.hpp"

using namespace cellchain;

TEST_CASE("integers encode big-endian") {
    Encoder enc;
    enc.put_u32(0x01020304u);
    enc.put_u64(0x0807060504030201ull);
    CHECK(enc.bytes() == Bytes{0x01, 0x02, 0x03, 0x04, 0x08, 0x07, 0x06, 0x05, 0x04,
                               0x03, 0x02, 0x01});
}

TEST_CASE("strings are length-prefixed") {
    Encoder enc;
    enc.put_string("hi");
    CHECK(enc.bytes() == Bytes{0x00, 0x00, 0x00, 0x02, 'h', 'i'});
}

TEST_CASE("round trip of every field type") {
    Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        uint64_t u = rng.next_u64();
        int64_t s = int64_t(rng.next_u64());
        double d = rng.uniform(-1e9, 1e9);
        bool b = rng.next_u64() & 1;
        std::string str(rng.uniform_int(0, 40), 'x');

        Encoder enc;
        enc.put_u64(u);
        enc.put_i64(s);
        enc.put_f64(d);
        enc.put_bool(b);
        enc.put_string(str);

        Decoder dec(enc.bytes());
        CHECK(dec.get_u64() == u);
        CHECK(dec.get_i64() == s);
        CHECK(dec.get_f64() == d);
        CHECK(dec.get_bool() == b);
        CHECK(dec.get_string() == str);
        CHECK(dec.at_end());
    }
}

TEST_CASE("truncated input reports the failing offset") {
    Encoder enc;
    enc.put_u64(7);
    enc.put_string("hello");
    Bytes full = enc.take();

    Bytes cut(full.begin(), full.begin() + 10);
    Decoder dec(cut);
    dec.get_u64();
    try {
        dec.get_string();
        FAIL("expected CodecError");
    } catch (const CodecError& e) {
        CHECK(e.offset >= 8);
    }
}

TEST_CASE("bool decoding is canonical") {
    Bytes raw{0x02};
    Decoder dec(raw);
    CHECK_THROWS_AS(dec.get_bool(), CodecError);
}
