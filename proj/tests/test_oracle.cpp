#include <doctest.h>

#include <memory>

#include "cellchain/oracle.hpp"
#include "cellchain/renderer.hpp"
#include "cellchain/velocity.hpp"
#include "test_util.hpp"

using namespace cellchain;

namespace {

struct OracleFixture {
    testutil::TempDir tmp{"oracle"};
    Chain chain{std::vector<std::string>{"val-a"}};
    BlobStore blobs{tmp.path()};
    ContractHost host{chain};
    std::string address;
    std::unique_ptr<OracleAgent> oracle_ptr;

    OracleFixture() {
        auto out = host.deploy(velocity_contract::make(),
                               velocity_contract::init_args("oracle-1", "controller-1"),
                               "controller-1");
        REQUIRE(out.ok);
        address = out.address;
        oracle_ptr = std::make_unique<OracleAgent>("oracle-1", chain, blobs, host, address);
    }

    OracleAgent& oracle() { return *oracle_ptr; }
};

}  // namespace

TEST_CASE("the oracle anchors every frame before reporting") {
    OracleFixture fx;
    for (uint64_t seed = 1; seed <= 5; ++seed) {
        Frame f = render_scene(SceneSpec::random(int(seed % 4), seed));
        auto obs = fx.oracle().observe(f);
        CHECK(obs.reported);
        CHECK(fx.blobs.verify(obs.image_id, obs.image_hash));
    }
    REQUIRE(fx.chain.seal_block("val-a", 1).ok);

    TxFilter anchors;
    anchors.kind = TxKind::ImageAnchor;
    TxFilter reports;
    reports.kind = TxKind::ContractCall;
    reports.sender = "oracle-1";
    CHECK(fx.chain.query(reports).size() <= fx.chain.query(anchors).size());
    CHECK(fx.chain.query(anchors).size() == 5);
}

TEST_CASE("observation updates the contract with the detected count") {
    OracleFixture fx;
    Frame f = render_scene(SceneSpec::random(2, 21));
    auto obs = fx.oracle().observe(f);
    REQUIRE(obs.reported);
    CHECK(obs.count == 2);
    CHECK(velocity_contract::ball_count(fx.host.storage(fx.address)) == 2);
    REQUIRE(obs.operations.size() == 1);
    CHECK(obs.operations[0].value == 3);
}

TEST_CASE("detection accuracy across seeded scenes") {
    // smaller version of the acceptance sweep
    PipelineConfig cfg;
    for (int k = 0; k <= 3; ++k) {
        int exact = 0;
        const int trials = 60;
        for (int t = 0; t < trials; ++t) {
            Frame f = render_scene(SceneSpec::random(k, uint64_t(k) * 10000 + t));
            int n = count_balls(f, cfg);
            CHECK(n <= k + 1);
            if (n == k) ++exact;
        }
        if (k == 0) {
            CHECK(exact == trials);
        } else {
            CHECK(double(exact) >= 0.95 * trials);
        }
    }
}
