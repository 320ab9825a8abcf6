#include "cellchain/sim.hpp"

#include <sstream>
#include <stdexcept>

namespace cellchain {

const char* robot_mode_name(RobotMode mode) {
    switch (mode) {
        case RobotMode::Home: return "home";
        case RobotMode::MovingToPick: return "moving_to_pick";
        case RobotMode::Transporting: return "transporting";
        case RobotMode::Placing: return "placing";
    }
    return "unknown";
}

std::string GateSchedule::validate() const {
    if (mode == Mode::Fixed && interval <= 0) return "gate_interval must be > 0";
    if (mode == Mode::Incremental && initial <= 0) return "gate_initial must be > 0";
    if (mode == Mode::Incremental && step < 0) return "gate_step must be >= 0";
    return {};
}

std::vector<int64_t> ExperimentConfig::default_sample_times() {
    return {10, 20, 30, 50, 75, 100, 125, 150, 175, 200, 225, 250, 275, 300};
}

ExperimentConfig ExperimentConfig::preset(char label) {
    ExperimentConfig cfg;
    cfg.label = label;
    switch (label) {
        case 'A':
            cfg.gate = {GateSchedule::Mode::Fixed, 5, 0, 0};
            break;
        case 'B':
            cfg.gate = {GateSchedule::Mode::Fixed, 15, 0, 0};
            break;
        case 'C':
            cfg.gate = {GateSchedule::Mode::Fixed, 40, 0, 0};
            break;
        case 'D':
            cfg.gate = {GateSchedule::Mode::Incremental, 0, 20, 5};
            break;
        default:
            throw std::invalid_argument("unknown experiment label");
    }
    return cfg;
}

CellSimulation::CellSimulation(ExperimentConfig cfg, std::filesystem::path blob_dir)
    : cfg_(std::move(cfg)) {
    if (cfg_.initial_pick_zone < 0 || cfg_.initial_pick_zone > 3) {
        throw std::invalid_argument("initial_pick_zone must be in [0, 3]");
    }
    if (cfg_.control_period < 1) {
        throw std::invalid_argument("control_period must be >= 1 second");
    }
    if (std::string gate_problem = cfg_.gate.validate(); !gate_problem.empty()) {
        throw std::invalid_argument(gate_problem);
    }

    chain_ = std::make_unique<Chain>(cfg_.validators);
    blobs_ = std::make_unique<BlobStore>(std::move(blob_dir));
    host_ = std::make_unique<ContractHost>(*chain_);

    auto deployed = host_->deploy(
        velocity_contract::make(),
        velocity_contract::init_args(cfg_.oracle_key, cfg_.controller_key),
        cfg_.controller_key);
    if (!deployed.ok) throw std::runtime_error("contract deploy failed: " + deployed.error);
    contract_address_ = deployed.address;

    oracle_ = std::make_unique<OracleAgent>(cfg_.oracle_key, *chain_, *blobs_, *host_,
                                            contract_address_, cfg_.pipeline);

    state_.pick_zone = cfg_.initial_pick_zone;
    state_.gate_next_open = cfg_.gate.interval_after(0);

    log_event(0, "init", "pick_zone=" + std::to_string(state_.pick_zone));
    submit_robot_event(0, "home");

    if (state_.gate_next_open <= cfg_.duration) schedule(state_.gate_next_open, EventKind::Gate);
    schedule(0, EventKind::Sample);
    for (int64_t t : cfg_.sample_times) {
        if (t > 0 && t <= cfg_.duration) schedule(t, EventKind::Sample);
    }
    schedule(0, EventKind::Control);
}

CellSimulation::~CellSimulation() = default;

void CellSimulation::schedule(int64_t time, EventKind kind) {
    queue_.push(Event{time, kind, next_seq_++});
}

void CellSimulation::log_event(int64_t now, const std::string& event,
                               const std::string& detail) {
    events_.push_back({now, event, detail});
}

void CellSimulation::submit_robot_event(int64_t now, const std::string& position) {
    RobotEventPayload payload;
    payload.timestamp = now;
    payload.position = position;
    payload.velocity = uint32_t(state_.current_velocity);
    payload.effort = state_.current_velocity > 0 ? 1.0 : 0.0;
    auto tx = Transaction::robot_event(cfg_.controller_key,
                                       chain_->next_nonce(cfg_.controller_key),
                                       "robot at " + position, std::move(payload));
    auto receipt = chain_->submit(tx);
    if (!receipt.accepted) {
        throw std::logic_error("robot event rejected: " + receipt.error);
    }
}

void CellSimulation::seal_pending(int64_t now) {
    if (chain_->pending_count() == 0) return;
    auto outcome = chain_->seal_block(chain_->expected_validator(chain_->size()), now);
    if (!outcome.ok) throw std::logic_error("seal failed: " + outcome.error);
}

void CellSimulation::check_conservation(int64_t now) {
    int total = state_.pick_zone + state_.gate_queue + (state_.transporting ? 1 : 0);
    if (total != cfg_.initial_pick_zone) {
        ++conservation_violations_;
        log_event(now, "conservation_violation",
                  "pick_zone=" + std::to_string(state_.pick_zone) +
                      " gate_queue=" + std::to_string(state_.gate_queue) +
                      " transporting=" + std::to_string(state_.transporting));
    }
    if (state_.transporting != (state_.robot_mode == RobotMode::Transporting)) {
        throw std::logic_error("transporting flag out of sync with robot mode");
    }
    if (state_.robot_mode == RobotMode::Home && state_.current_velocity != 0) {
        throw std::logic_error("home with nonzero velocity");
    }
}

void CellSimulation::run_until(int64_t t) {
    while (!queue_.empty() && queue_.top().time <= t) {
        Event e = queue_.top();
        queue_.pop();
        if (processed_through_ >= 0 && e.time > processed_through_) {
            seal_pending(processed_through_);
        }
        processed_through_ = e.time;
        state_.sim_time = e.time;
        switch (e.kind) {
            case EventKind::Gate: handle_gate(e.time); break;
            case EventKind::Robot: handle_robot(e.time); break;
            case EventKind::Sample: handle_sample(e.time); break;
            case EventKind::Control: handle_control(e.time); break;
        }
        check_conservation(e.time);
    }
    if (processed_through_ >= 0) seal_pending(processed_through_);
    if (t > state_.sim_time) state_.sim_time = std::min(t, cfg_.duration);
}

void CellSimulation::run() {
    run_until(cfg_.duration);
    seal_pending(cfg_.duration);
}

void CellSimulation::handle_gate(int64_t now) {
    if (state_.gate_queue > 0 && state_.pick_zone < 3) {
        --state_.gate_queue;
        ++state_.pick_zone;
        log_event(now, "gate_open", "ball released, pick_zone=" + std::to_string(state_.pick_zone));
    } else {
        log_event(now, "gate_open", "no ball waiting");
    }
    ++gate_openings_;
    state_.gate_next_open = now + cfg_.gate.interval_after(gate_openings_);
    if (state_.gate_next_open <= cfg_.duration) {
        schedule(state_.gate_next_open, EventKind::Gate);
    }
}

void CellSimulation::begin_phase(int64_t now, RobotMode mode) {
    if (state_.current_velocity <= 0) {
        throw std::logic_error("phase started with zero velocity");
    }
    state_.robot_mode = mode;
    state_.transporting = (mode == RobotMode::Transporting);
    schedule(now + state_.current_velocity, EventKind::Robot);
}

void CellSimulation::handle_robot(int64_t now) {
    switch (state_.robot_mode) {
        case RobotMode::MovingToPick: {
            // pick completes
            if (state_.pick_zone <= 0) throw std::logic_error("pick from empty zone");
            --state_.pick_zone;
            log_event(now, "pick", "pick_zone=" + std::to_string(state_.pick_zone));
            begin_phase(now, RobotMode::Transporting);
            submit_robot_event(now, "pick_zone");
            break;
        }
        case RobotMode::Transporting: {
            // carry completes; the ball re-enters the track behind the gate
            state_.transporting = false;
            ++state_.gate_queue;
            log_event(now, "release", "gate_queue=" + std::to_string(state_.gate_queue));
            begin_phase(now, RobotMode::Placing);
            submit_robot_event(now, "track_start");
            break;
        }
        case RobotMode::Placing: {
            if (state_.current_velocity > 0) {
                log_event(now, "cycle", "next approach");
                begin_phase(now, RobotMode::MovingToPick);
                submit_robot_event(now, "transit");
            } else {
                state_.robot_mode = RobotMode::Home;
                state_.transporting = false;
                log_event(now, "stop", "stopped at home");
                submit_robot_event(now, "home");
            }
            break;
        }
        case RobotMode::Home:
            // no phases run while stopped
            break;
    }
}

void CellSimulation::handle_sample(int64_t now) {
    samples_.push_back({now, state_.current_velocity});
}

void CellSimulation::apply_operations(int64_t now,
                                      const std::vector<EmittedOperation>& ops) {
    for (const auto& op : ops) {
        if (op.kind == OpKind::SetVelocity) {
            state_.current_velocity = int(op.value);
            if (state_.robot_mode == RobotMode::Home) {
                log_event(now, "wake", "velocity=" + std::to_string(op.value));
                begin_phase(now, RobotMode::MovingToPick);
                submit_robot_event(now, "transit");
            }
        } else {
            // stop takes effect when the current movement completes
            state_.current_velocity = 0;
        }
    }
}

void CellSimulation::handle_control(int64_t now) {
    if (state_.transporting != reported_transporting_) {
        auto outcome = host_->call(contract_address_,
                                   velocity_contract::kEntrySetTransporting,
                                   cfg_.controller_key, {Value{state_.transporting}});
        if (outcome.ok) {
            reported_transporting_ = state_.transporting;
            apply_operations(now, outcome.operations);
        } else {
            log_event(now, "contract_reject", outcome.error);
        }
    }

    SceneSpec scene = SceneSpec::random(state_.pick_zone,
                                        mix_seed(cfg_.seed, uint64_t(now) + 1), cfg_.render);
    Frame frame = render_scene(scene);
    auto obs = oracle_->observe(frame);
    if (obs.reported) {
        apply_operations(now, obs.operations);
    } else {
        log_event(now, "contract_reject", obs.error);
    }
    log_event(now, "control",
              "count=" + std::to_string(obs.count) +
                  " velocity=" + std::to_string(state_.current_velocity));

    int64_t next = now + cfg_.control_period;
    if (next <= cfg_.duration) schedule(next, EventKind::Control);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::filesystem::path& blob_dir) {
    CellSimulation sim(cfg, blob_dir);
    sim.run();

    auto verdict = Chain::verify_blocks(sim.chain().blocks());
    if (!verdict.valid) {
        throw std::logic_error("experiment produced an invalid chain at height " +
                               std::to_string(verdict.first_bad_height));
    }

    ExperimentResult result;
    result.samples = sim.samples();
    result.events = sim.events();
    result.head_hash = sim.chain().head_hash();
    result.blocks = sim.chain().size();
    result.conservation_violations = sim.conservation_violations();
    return result;
}

}  // namespace cellchain
