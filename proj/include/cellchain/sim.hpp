#pragma once

#include <memory>
#include <queue>

#include "cellchain/oracle.hpp"
#include "cellchain/renderer.hpp"
#include "cellchain/velocity.hpp"

namespace cellchain {

enum class RobotMode : uint8_t { Home, MovingToPick, Transporting, Placing };

const char* robot_mode_name(RobotMode mode);

/// Gate release schedule: Fixed opens every n seconds; Incremental waits
/// initial + k*step seconds before the (k+1)-th opening.
struct GateSchedule {
    enum class Mode { Fixed, Incremental } mode = Mode::Fixed;
    int64_t interval = 5;
    int64_t initial = 20;
    int64_t step = 5;

    int64_t interval_after(int openings) const {
        return mode == Mode::Fixed ? interval : initial + int64_t(openings) * step;
    }

    /// Empty when usable: Fixed needs interval > 0, Incremental initial > 0.
    std::string validate() const;
};

struct CellState {
    int64_t sim_time = 0;
    int pick_zone = 0;   // balls visible to the camera, <= 3
    int gate_queue = 0;  // balls waiting behind the gate
    int64_t gate_next_open = 0;
    RobotMode robot_mode = RobotMode::Home;
    int current_velocity = 0;  // seconds per movement; 0 = stopped
    bool transporting = false; // mirrors robot_mode == Transporting
};

struct VelocitySample {
    int64_t time = 0;
    int velocity = 0;
};

struct SimEventRecord {
    int64_t time = 0;
    std::string event;
    std::string detail;
};

struct ExperimentConfig {
    char label = 'A';
    GateSchedule gate;
    int initial_pick_zone = 3;
    int64_t duration = 300;
    // t=0 is always sampled in addition to these
    std::vector<int64_t> sample_times = default_sample_times();
    uint64_t seed = 1;
    int64_t control_period = 1;
    RenderConfig render;
    PipelineConfig pipeline;
    std::vector<std::string> validators{"validator-1", "validator-2", "validator-3"};
    std::string oracle_key = "oracle-1";
    std::string controller_key = "controller-1";

    /// Table row grid: 10,20,30,50 then every 25 s up to 300.
    static std::vector<int64_t> default_sample_times();

    /// A: gate n=5s, B: n=15s, C: n=40s, D: incremental 20s + 5s per opening.
    static ExperimentConfig preset(char label);
};

/// Closed-loop pick-and-place cell simulation. Single-threaded deterministic
/// event loop; events at equal timestamps process in the order
/// gate < robot < sample < control. The contract decides every velocity via
/// the oracle/controller entry calls; decisions take effect at phase
/// boundaries, never mid-phase.
class CellSimulation {
public:
    CellSimulation(ExperimentConfig cfg, std::filesystem::path blob_dir);
    ~CellSimulation();

    /// Processes all events with timestamp <= t (spec operation `step`).
    void run_until(int64_t t);
    /// Runs the configured duration and seals any trailing transactions.
    void run();

    const ExperimentConfig& config() const { return cfg_; }
    const CellState& state() const { return state_; }
    const std::vector<VelocitySample>& samples() const { return samples_; }
    const std::vector<SimEventRecord>& events() const { return events_; }
    int conservation_violations() const { return conservation_violations_; }

    Chain& chain() { return *chain_; }
    const Chain& chain() const { return *chain_; }
    BlobStore& blobs() { return *blobs_; }
    ContractHost& host() { return *host_; }
    const std::string& contract_address() const { return contract_address_; }

private:
    enum class EventKind : uint8_t { Gate = 0, Robot = 1, Sample = 2, Control = 3 };

    struct Event {
        int64_t time;
        EventKind kind;
        uint64_t seq;
        bool operator>(const Event& other) const {
            if (time != other.time) return time > other.time;
            if (kind != other.kind) return kind > other.kind;
            return seq > other.seq;
        }
    };

    void schedule(int64_t time, EventKind kind);
    void handle_gate(int64_t now);
    void handle_robot(int64_t now);
    void handle_sample(int64_t now);
    void handle_control(int64_t now);
    void apply_operations(int64_t now, const std::vector<EmittedOperation>& ops);
    void begin_phase(int64_t now, RobotMode mode);
    void log_event(int64_t now, const std::string& event, const std::string& detail);
    void submit_robot_event(int64_t now, const std::string& position);
    void seal_pending(int64_t now);
    void check_conservation(int64_t now);

    ExperimentConfig cfg_;
    CellState state_;
    std::unique_ptr<Chain> chain_;
    std::unique_ptr<BlobStore> blobs_;
    std::unique_ptr<ContractHost> host_;
    std::unique_ptr<OracleAgent> oracle_;
    std::string contract_address_;

    std::priority_queue<Event, std::vector<Event>, std::greater<Event>> queue_;
    uint64_t next_seq_ = 0;
    int gate_openings_ = 0;
    bool reported_transporting_ = false;
    int64_t processed_through_ = -1;
    std::vector<VelocitySample> samples_;
    std::vector<SimEventRecord> events_;
    int conservation_violations_ = 0;
};

struct ExperimentResult {
    std::vector<VelocitySample> samples;
    std::vector<SimEventRecord> events;
    Digest head_hash{};
    size_t blocks = 0;
    int conservation_violations = 0;
};

/// Runs a full experiment against a fresh chain and blob directory, verifies
/// the resulting ledger, and returns the trace.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::filesystem::path& blob_dir);

}  // namespace cellchain
