#include <doctest.h>

#include <set>

#include "cellchain/runio.hpp"
#include "cellchain/sim.hpp"
#include "test_util.hpp"

using namespace cellchain;

namespace {

int sample_at(const std::vector<VelocitySample>& samples, int64_t t) {
    for (const auto& s : samples) {
        if (s.time == t) return s.velocity;
    }
    FAIL("no sample at requested time");
    return -1;
}

}  // namespace

TEST_CASE("gate schedules") {
    GateSchedule fixed{GateSchedule::Mode::Fixed, 5, 0, 0};
    CHECK(fixed.interval_after(0) == 5);
    CHECK(fixed.interval_after(7) == 5);

    GateSchedule inc{GateSchedule::Mode::Incremental, 0, 20, 5};
    CHECK(inc.interval_after(0) == 20);
    CHECK(inc.interval_after(1) == 25);
    CHECK(inc.interval_after(4) == 40);
}

TEST_CASE("presets match the experiment definitions") {
    CHECK(ExperimentConfig::preset('A').gate.interval == 5);
    CHECK(ExperimentConfig::preset('B').gate.interval == 15);
    CHECK(ExperimentConfig::preset('C').gate.interval == 40);
    auto d = ExperimentConfig::preset('D');
    CHECK(d.gate.mode == GateSchedule::Mode::Incremental);
    CHECK(d.gate.initial == 20);
    CHECK(d.gate.step == 5);
    CHECK(ExperimentConfig::preset('A').sample_times.size() == 14);
    CHECK_THROWS_AS(ExperimentConfig::preset('E'), std::invalid_argument);
}

TEST_CASE("an empty cell stays home until a ball arrives") {
    testutil::TempDir tmp("sim");
    ExperimentConfig cfg = ExperimentConfig::preset('A');
    cfg.initial_pick_zone = 0;
    cfg.duration = 30;
    // no balls circulate, so the gate never has anything to release
    CellSimulation sim(cfg, tmp / "blobs");
    sim.run();
    CHECK(sim.state().robot_mode == RobotMode::Home);
    CHECK(sim.state().current_velocity == 0);
    for (const auto& s : sim.samples()) CHECK(s.velocity == 0);
    CHECK(sim.conservation_violations() == 0);
}

TEST_CASE("a single ball drives one slow cycle then a stop") {
    testutil::TempDir tmp("sim");
    ExperimentConfig cfg = ExperimentConfig::preset('C');
    cfg.initial_pick_zone = 1;
    cfg.duration = 39;  // before the first gate opening at t=40
    cfg.sample_times = {5, 10, 16, 30, 39};
    CellSimulation sim(cfg, tmp / "blobs");
    sim.run();

    // x=1 while approaching and while carrying: the slow bound, 6 s
    CHECK(sample_at(sim.samples(), 5) == 6);
    // pick at t=6, carry 6..12, place 12..18, stop at 18
    bool picked = false, stopped = false;
    for (const auto& e : sim.events()) {
        if (e.event == "pick") picked = true;
        if (e.event == "stop") {
            stopped = true;
            CHECK(e.time == 18);
        }
    }
    CHECK(picked);
    CHECK(stopped);
    CHECK(sample_at(sim.samples(), 30) == 0);
    CHECK(sim.state().robot_mode == RobotMode::Home);
    // the ball went back behind the gate
    CHECK(sim.state().gate_queue == 1);
    CHECK(sim.conservation_violations() == 0);
}

TEST_CASE("experiment A starts at the fastest bound") {
    testutil::TempDir tmp("sim");
    ExperimentConfig cfg = ExperimentConfig::preset('A');
    cfg.duration = 30;
    cfg.sample_times = {10, 20, 30};
    auto result = run_experiment(cfg, tmp / "blobs");
    CHECK(sample_at(result.samples, 10) == 2);
    CHECK(result.conservation_violations == 0);
}

TEST_CASE("velocity domain and conservation hold over a full run") {
    testutil::TempDir tmp("sim");
    ExperimentConfig cfg = ExperimentConfig::preset('B');
    cfg.duration = 120;
    CellSimulation sim(cfg, tmp / "blobs");
    sim.run();

    CHECK(sim.conservation_violations() == 0);
    std::set<int> allowed{0, 2, 3, 6};
    for (const auto& s : sim.samples()) CHECK(allowed.count(s.velocity) == 1);

    // every robot event on the ledger respects velocity = 0 iff home
    TxFilter robot;
    robot.kind = TxKind::RobotEvent;
    for (const auto& [height, tx] : sim.chain().query(robot)) {
        const auto& p = std::get<RobotEventPayload>(tx.payload);
        CHECK((p.velocity == 0) == (p.position == "home"));
    }
}

TEST_CASE("the ledger records the full closed loop") {
    testutil::TempDir tmp("sim");
    ExperimentConfig cfg = ExperimentConfig::preset('A');
    cfg.duration = 25;
    CellSimulation sim(cfg, tmp / "blobs");
    sim.run();

    CHECK(Chain::verify_blocks(sim.chain().blocks()).valid);

    TxFilter anchors;
    anchors.kind = TxKind::ImageAnchor;
    auto anchored = sim.chain().query(anchors);
    // one control tick per second, 0..25 inclusive
    CHECK(anchored.size() == 26);
    for (const auto& [height, tx] : anchored) {
        const auto& p = std::get<ImageAnchorPayload>(tx.payload);
        CHECK(sim.blobs().verify(p.image_id, p.image_hash));
    }

    // oracle reports never outnumber anchored frames
    TxFilter oracle_calls;
    oracle_calls.kind = TxKind::ContractCall;
    oracle_calls.sender = cfg.oracle_key;
    CHECK(sim.chain().query(oracle_calls).size() <= anchored.size());

    // all successful contract calls are on the ledger
    TxFilter calls;
    calls.kind = TxKind::ContractCall;
    CHECK(sim.chain().query(calls).size() == sim.host().successful_calls());
}

TEST_CASE("same config and seed replay to the identical trace and chain") {
    testutil::TempDir tmp("sim");
    ExperimentConfig cfg = ExperimentConfig::preset('D');
    cfg.duration = 90;
    auto a = run_experiment(cfg, tmp / "a");
    auto b = run_experiment(cfg, tmp / "b");

    REQUIRE(a.samples.size() == b.samples.size());
    for (size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].time == b.samples[i].time);
        CHECK(a.samples[i].velocity == b.samples[i].velocity);
    }
    CHECK(a.head_hash == b.head_hash);
    CHECK(a.blocks == b.blocks);

    ExperimentConfig other = cfg;
    other.seed = cfg.seed + 1;
    auto c = run_experiment(other, tmp / "c");
    CHECK(c.head_hash != a.head_hash);
}

TEST_CASE("faster arrivals never slow the steady state") {
    testutil::TempDir tmp("sim");
    auto fast = run_experiment(ExperimentConfig::preset('A'), tmp / "fast");
    auto slow = run_experiment(ExperimentConfig::preset('C'), tmp / "slow");
    CHECK(mean_pace(fast.samples, 200, 300) <= mean_pace(slow.samples, 200, 300));
}

TEST_CASE("the incremental gate opens at growing intervals") {
    testutil::TempDir tmp("sim");
    ExperimentConfig cfg = ExperimentConfig::preset('D');
    cfg.duration = 120;
    CellSimulation sim(cfg, tmp / "blobs");
    sim.run();

    std::vector<int64_t> openings;
    for (const auto& e : sim.events()) {
        if (e.event == "gate_open") openings.push_back(e.time);
    }
    CHECK(openings == std::vector<int64_t>{20, 45, 75, 110});
}

TEST_CASE("gate openings with an empty queue are logged no-ops") {
    testutil::TempDir tmp("sim");
    ExperimentConfig cfg = ExperimentConfig::preset('A');
    cfg.duration = 12;
    CellSimulation sim(cfg, tmp / "blobs");
    sim.run();
    bool saw_noop = false;
    for (const auto& e : sim.events()) {
        if (e.event == "gate_open" && e.detail.find("no ball") != std::string::npos) {
            saw_noop = true;
        }
    }
    // at t=5 all three balls are still in the zone or in the arm
    CHECK(saw_noop);
}
