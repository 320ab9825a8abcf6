#pragma once

#include "cellchain/contract.hpp"

namespace cellchain {

// Control-law constants: the fastest movement takes kFastestSeconds per
// movement and the slowest kFastestSeconds + kMeanSeconds. At most
// kMaxVisibleBalls sit in the pick zone.
inline constexpr int64_t kFastestSeconds = 2;   // storage field max_speed
inline constexpr int64_t kMeanSeconds = 4;      // storage field mean_speed
inline constexpr int kMaxVisibleBalls = 3;

/// Workload term: visible ball count plus 1 while the robot carries a ball.
int64_t compute_x(int64_t ball_count, bool transporting);

/// Velocity law. x = 0 orders a stop at home; otherwise the movement duration
/// is floor((max_speed + mean_speed) / x), clamped to
/// [max_speed, max_speed + mean_speed] seconds per movement.
/// Throws std::logic_error on negative x (unreachable from valid storage).
EmittedOperation compute_velocity(int64_t x, int64_t max_speed = kFastestSeconds,
                                  int64_t mean_speed = kMeanSeconds);

/// The velocity-control contract: storage holds the trusted oracle and
/// controller identities, the oracle's last ball count, the transporting flag,
/// the speed constants, and the current velocity. Entry points:
///   report_count(count)      -- trusted oracle only, 0 <= count <= 3
///   set_transporting(flag)   -- controller only
/// Both recompute x and the velocity and emit the resulting operation.
namespace velocity_contract {

inline constexpr const char* kVersion = "1.0";
inline constexpr const char* kEntryReportCount = "report_count";
inline constexpr const char* kEntrySetTransporting = "set_transporting";

ContractDef make();

/// init args = [oracle key-hash, controller key-hash]
std::vector<Value> init_args(const std::string& oracle, const std::string& controller);

int64_t ball_count(const Storage& s);
bool transporting(const Storage& s);
int64_t current_velocity(const Storage& s);
std::string trusted_oracle(const Storage& s);
std::string controller(const Storage& s);

}  // namespace velocity_contract

}  // namespace cellchain
