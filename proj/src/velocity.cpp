#include "cellchain/velocity.hpp"

#include <algorithm>
#include <stdexcept>

namespace cellchain {

int64_t compute_x(int64_t ball_count, bool transporting) {
    if (ball_count < 0) throw std::logic_error("negative ball count");
    return ball_count + (transporting ? 1 : 0);
}

EmittedOperation compute_velocity(int64_t x, int64_t max_speed, int64_t mean_speed) {
    if (x < 0) throw std::logic_error("contract fault: negative x");
    if (x == 0) return {OpKind::StopAtHome, 0};
    int64_t v = (max_speed + mean_speed) / x;
    v = std::clamp(v, max_speed, max_speed + mean_speed);
    return {OpKind::SetVelocity, v};
}

namespace velocity_contract {

namespace {

enum FieldIndex {
    kOracle = 0,
    kController = 1,
    kBallCount = 2,
    kTransporting = 3,
    kMaxSpeed = 4,
    kMeanSpeed = 5,
    kCurrentVelocity = 6,
};

// Shared recompute step: applies the velocity law to the updated storage and
// emits the resulting operation.
EntryResult recompute(Storage storage) {
    EntryResult result;
    int64_t count = std::get<int64_t>(storage[kBallCount].second);
    bool carrying = std::get<bool>(storage[kTransporting].second);
    int64_t max_speed = std::get<int64_t>(storage[kMaxSpeed].second);
    int64_t mean_speed = std::get<int64_t>(storage[kMeanSpeed].second);

    EmittedOperation op =
        compute_velocity(compute_x(count, carrying), max_speed, mean_speed);
    storage[kCurrentVelocity].second =
        op.kind == OpKind::SetVelocity ? op.value : int64_t{0};

    result.ok = true;
    result.operations.push_back(op);
    result.storage = std::move(storage);
    return result;
}

EntryResult reject(std::string why) {
    EntryResult result;
    result.error = std::move(why);
    return result;
}

EntryResult entry_report_count(const std::string& caller,
                               const std::vector<Value>& params,
                               const Storage& storage) {
    if (caller != std::get<std::string>(storage[kOracle].second)) {
        return reject("untrusted caller: only the oracle may report counts");
    }
    if (params.size() != 1 || !std::holds_alternative<int64_t>(params[0])) {
        return reject("report_count expects one integer parameter");
    }
    int64_t count = std::get<int64_t>(params[0]);
    if (count < 0 || count > kMaxVisibleBalls) {
        return reject("count out of range [0, 3]");
    }
    Storage next = storage;
    next[kBallCount].second = count;
    return recompute(std::move(next));
}

EntryResult entry_set_transporting(const std::string& caller,
                                   const std::vector<Value>& params,
                                   const Storage& storage) {
    if (caller != std::get<std::string>(storage[kController].second)) {
        return reject("unauthorized caller: only the controller may set transporting");
    }
    if (params.size() != 1 || !std::holds_alternative<bool>(params[0])) {
        return reject("set_transporting expects one boolean parameter");
    }
    Storage next = storage;
    next[kTransporting].second = std::get<bool>(params[0]);
    return recompute(std::move(next));
}

}  // namespace

ContractDef make() {
    ContractDef def;
    def.version = kVersion;
    def.storage_schema = {
        {"trusted_oracle", ValueTag::Str},  {"controller", ValueTag::Str},
        {"ball_count", ValueTag::Int},      {"transporting", ValueTag::Bool},
        {"max_speed", ValueTag::Int},       {"mean_speed", ValueTag::Int},
        {"current_velocity", ValueTag::Int},
    };
    def.init = [](const std::vector<Value>& args) -> Storage {
        if (args.size() != 2 || !std::holds_alternative<std::string>(args[0]) ||
            !std::holds_alternative<std::string>(args[1])) {
            throw ContractError("init expects [oracle key, controller key]");
        }
        const auto& oracle = std::get<std::string>(args[0]);
        const auto& controller = std::get<std::string>(args[1]);
        if (oracle.empty() || controller.empty()) {
            throw ContractError("identity keys must not be empty");
        }
        return Storage{
            {"trusted_oracle", oracle},
            {"controller", controller},
            {"ball_count", int64_t{0}},
            {"transporting", false},
            {"max_speed", kFastestSeconds},
            {"mean_speed", kMeanSeconds},
            {"current_velocity", int64_t{0}},
        };
    };
    def.entry_points = {
        {kEntryReportCount, entry_report_count},
        {kEntrySetTransporting, entry_set_transporting},
    };
    return def;
}

std::vector<Value> init_args(const std::string& oracle, const std::string& controller) {
    return {Value{oracle}, Value{controller}};
}

int64_t ball_count(const Storage& s) { return std::get<int64_t>(s[kBallCount].second); }
bool transporting(const Storage& s) { return std::get<bool>(s[kTransporting].second); }
int64_t current_velocity(const Storage& s) {
    return std::get<int64_t>(s[kCurrentVelocity].second);
}
std::string trusted_oracle(const Storage& s) {
    return std::get<std::string>(s[kOracle].second);
}
std::string controller(const Storage& s) {
    return std::get<std::string>(s[kController].second);
}

}  // namespace velocity_contract

}  // namespace cellchain
