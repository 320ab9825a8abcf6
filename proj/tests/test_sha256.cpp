#include <doctest.h>

#include "cellchain/sha256.hpp"

using namespace cellchain;

// FIPS 180-4 reference vectors
TEST_CASE("sha256 known vectors") {
    CHECK(to_hex(sha256(std::string(""))) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(to_hex(sha256(std::string("abc"))) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(to_hex(sha256(std::string(
              "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"))) ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("sha256 incremental updates match one-shot") {
    std::string a_million(1000000, 'a');
    CHECK(to_hex(sha256(a_million)) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");

    Sha256 h;
    for (int i = 0; i < 1000; ++i) {
        h.update(reinterpret_cast<const uint8_t*>(a_million.data()), 1000);
    }
    CHECK(to_hex(h.finish()) ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("hex round trip") {
    Bytes b{0x00, 0x7f, 0xff, 0x10};
    CHECK(to_hex(b) == "007fff10");
    CHECK(from_hex("007fff10") == b);
    CHECK_THROWS(from_hex("0g"));
    CHECK_THROWS(from_hex("abc"));
}
