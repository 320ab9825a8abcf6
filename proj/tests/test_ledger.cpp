#include <doctest.h>

#include <fstream>
#include <thread>

#include "cellchain/blobstore.hpp"
#include "cellchain/chain.hpp"
#include "cellchain/rng.hpp"
#include "cellchain/sha256.hpp"
#include "test_util.hpp"

using namespace cellchain;

namespace {

Transaction event_tx(const std::string& sender, uint64_t nonce, int64_t t = 0,
                     uint32_t velocity = 2) {
    return Transaction::robot_event(sender, nonce, "robot log",
                                    {t, "pick_zone", velocity, 1.0});
}

Chain make_chain() { return Chain({"val-a", "val-b", "val-c"}); }

}  // namespace

TEST_CASE("submit accepts the first nonce and rejects replays") {
    Chain chain = make_chain();

    auto r0 = chain.submit(event_tx("S", 0));
    CHECK(r0.accepted);
    CHECK(r0.pool_position == 0);

    auto replay = chain.submit(event_tx("S", 0));
    CHECK_FALSE(replay.accepted);
    CHECK(replay.error.find("stale nonce") != std::string::npos);

    auto gap = chain.submit(event_tx("S", 5));
    CHECK_FALSE(gap.accepted);

    auto r1 = chain.submit(event_tx("S", 1));
    CHECK(r1.accepted);
    CHECK(r1.pool_position == 1);
}

TEST_CASE("submit rejects a payload that does not match the kind") {
    Chain chain = make_chain();
    Transaction tx = event_tx("S", 0);
    tx.kind = TxKind::ImageAnchor;  // payload still holds a robot event
    auto r = chain.submit(tx);
    CHECK_FALSE(r.accepted);
    CHECK(r.error.find("malformed payload") != std::string::npos);
}

TEST_CASE("sealing drains the pool and follows the round-robin order") {
    Chain chain = make_chain();
    for (uint64_t i = 0; i < 3; ++i) CHECK(chain.submit(event_tx("S", i)).accepted);

    auto wrong = chain.seal_block("val-b", 10);
    CHECK_FALSE(wrong.ok);

    auto sealed = chain.seal_block("val-a", 10);
    REQUIRE(sealed.ok);
    CHECK(sealed.block.height == 0);
    CHECK(sealed.block.transactions.size() == 3);
    CHECK(sealed.block.prev_hash == Digest{});
    CHECK(chain.pending_count() == 0);

    // empty pool still seals, so time keeps advancing
    auto empty = chain.seal_block("val-b", 11);
    REQUIRE(empty.ok);
    CHECK(empty.block.transactions.empty());
    CHECK(empty.block.prev_hash == sealed.block.block_hash);

    // wrong validator at height 2 with 3 validators
    auto out_of_turn = chain.seal_block("val-a", 12);
    CHECK_FALSE(out_of_turn.ok);
    CHECK(out_of_turn.error.find("out-of-turn") != std::string::npos);
}

namespace {

Chain build_chain(int blocks, int txs_per_block) {
    Chain chain = make_chain();
    uint64_t nonce = 0;
    for (int h = 0; h < blocks; ++h) {
        for (int i = 0; i < txs_per_block; ++i) {
            REQUIRE(chain.submit(event_tx("robot", nonce, h, 2 + (nonce % 3))).accepted);
            ++nonce;
        }
        REQUIRE(chain.seal_block(chain.expected_validator(h), h).ok);
    }
    return chain;
}

}  // namespace

TEST_CASE("verify accepts an untouched chain and any truncation prefix") {
    Chain chain = build_chain(10, 2);
    CHECK(Chain::verify_blocks(chain.blocks()).valid);

    auto blocks = chain.blocks();
    blocks.pop_back();
    CHECK(Chain::verify_blocks(blocks).valid);
}

TEST_CASE("verify pinpoints a tampered block") {
    Chain chain = build_chain(10, 2);
    auto blocks = chain.blocks();
    std::get<RobotEventPayload>(blocks[4].transactions[1].payload).velocity = 6;
    auto verdict = Chain::verify_blocks(blocks);
    CHECK_FALSE(verdict.valid);
    CHECK(verdict.first_bad_height == 4);
}

TEST_CASE("single-byte mutations of the serialized chain are always flagged") {
    Chain chain = build_chain(12, 3);
    Bytes bytes = chain.serialize();
    CHECK(Chain::verify_bytes(bytes).valid);

    // byte offset -> owning block height, for the locality check below
    std::vector<size_t> block_end_offsets;
    {
        size_t offset = 0;
        for (const auto& b : chain.blocks()) {
            offset += b.serialize().size();
            block_end_offsets.push_back(offset);
        }
    }

    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Bytes mutated = bytes;
        size_t pos = size_t(rng.uniform_int(0, int64_t(bytes.size()) - 1));
        uint8_t delta = uint8_t(rng.uniform_int(1, 255));
        mutated[pos] ^= delta;
        auto verdict = Chain::verify_bytes(mutated);
        CHECK_FALSE(verdict.valid);

        uint64_t mutated_height = 0;
        while (pos >= block_end_offsets[mutated_height]) ++mutated_height;
        CHECK(verdict.first_bad_height <= mutated_height + 1);
    }
}

TEST_CASE("sealing never rewrites earlier blocks") {
    Chain chain = build_chain(5, 2);
    Bytes before = chain.serialize();
    REQUIRE(chain.submit(event_tx("robot", 10, 99)).accepted);
    REQUIRE(chain.seal_block(chain.expected_validator(5), 99).ok);
    Bytes after = chain.serialize();
    REQUIRE(after.size() > before.size());
    CHECK(Bytes(after.begin(), after.begin() + before.size()) == before);
}

TEST_CASE("identical streams produce identical chains") {
    Chain a = build_chain(8, 2);
    Chain b = build_chain(8, 2);
    CHECK(a.head_hash() == b.head_hash());
    CHECK(a.serialize() == b.serialize());
}

TEST_CASE("query matches a linear scan") {
    Chain chain = make_chain();
    REQUIRE(chain.submit(event_tx("robot", 0, 1)).accepted);
    REQUIRE(chain.submit(Transaction::image_anchor("oracle", 0, "frame",
                                                   {sha256(std::string("x")), "img-1"}))
                .accepted);
    REQUIRE(chain.submit(event_tx("robot", 1, 2)).accepted);
    REQUIRE(chain.seal_block("val-a", 5).ok);
    REQUIRE(chain.submit(event_tx("robot", 2, 7)).accepted);
    REQUIRE(chain.seal_block("val-b", 7).ok);

    TxFilter by_kind;
    by_kind.kind = TxKind::RobotEvent;
    CHECK(chain.query(by_kind).size() == 3);

    TxFilter by_sender;
    by_sender.sender = "oracle";
    auto anchors = chain.query(by_sender);
    REQUIRE(anchors.size() == 1);
    CHECK(anchors[0].first == 0);

    // time range covering only the first sealed block
    TxFilter by_time;
    by_time.time_min = 0;
    by_time.time_max = 5;
    auto in_range = chain.query(by_time);

    // oracle against a straight scan over all blocks
    size_t expected = 0;
    for (const auto& b : chain.blocks()) {
        if (b.timestamp >= 0 && b.timestamp <= 5) expected += b.transactions.size();
    }
    CHECK(in_range.size() == expected);
    CHECK(in_range.size() == 3);

    TxFilter none;
    CHECK(Chain({"v"}).query(none).empty());
}

TEST_CASE("blob anchors are content-addressed and verifiable") {
    testutil::TempDir tmp("blobs");
    BlobStore store(tmp.path());

    Bytes image{1, 2, 3, 4};
    auto [h1, id1] = store.anchor(image);
    auto [h2, id2] = store.anchor(image);
    CHECK(h1 == h2);
    CHECK(id1 != id2);
    CHECK(store.verify(id1, h1));
    CHECK(store.verify(id2, h2));

    Bytes tiny{42};
    auto [h3, id3] = store.anchor(tiny);
    CHECK(store.verify(id3, h3));

    CHECK_THROWS_AS(store.anchor(Bytes{}), std::invalid_argument);
}

TEST_CASE("mutating a stored blob breaks anchor verification") {
    testutil::TempDir tmp("blobs");
    BlobStore store(tmp.path());
    auto [digest, id] = store.anchor(Bytes{9, 9, 9, 9});
    REQUIRE(store.verify(id, digest));

    {
        std::ofstream f(tmp.path() / id, std::ios::binary | std::ios::trunc);
        f << "tampered";
    }
    CHECK_FALSE(store.verify(id, digest));
    CHECK_FALSE(store.verify("img-999999", digest));
}

TEST_CASE("concurrent submitters all land in the pool exactly once") {
    Chain chain = make_chain();
    const int threads = 4, per_thread = 100;
    std::vector<std::thread> workers;
    for (int t = 0; t < threads; ++t) {
        workers.emplace_back([&chain, t] {
            std::string sender = "robot-" + std::to_string(t);
            for (uint64_t n = 0; n < per_thread; ++n) {
                auto receipt = chain.submit(event_tx(sender, n));
                if (!receipt.accepted) std::abort();
            }
        });
    }
    for (auto& w : workers) w.join();
    CHECK(chain.pending_count() == size_t(threads) * per_thread);
    REQUIRE(chain.seal_block("val-a", 1).ok);
    CHECK(chain.block(0).transactions.size() == size_t(threads) * per_thread);
}

TEST_CASE("an anchor whose blob is absent fails verification later") {
    testutil::TempDir tmp("blobs");
    BlobStore store(tmp.path());
    Chain chain = make_chain();

    // the chain happily records the anchor; only verification catches it
    Digest digest = sha256(std::string("ghost image"));
    auto r = chain.submit(
        Transaction::image_anchor("oracle", 0, "ghost", {digest, "img-000042"}));
    CHECK(r.accepted);
    REQUIRE(chain.seal_block("val-a", 1).ok);

    const auto& anchor =
        std::get<ImageAnchorPayload>(chain.block(0).transactions[0].payload);
    CHECK_FALSE(store.verify(anchor.image_id, anchor.image_hash));
}
