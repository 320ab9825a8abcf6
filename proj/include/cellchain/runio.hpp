#pragma once

#include "cellchain/config.hpp"

namespace cellchain {

/// Fixed artifact names inside a run directory.
namespace run_files {
inline constexpr const char* kSamplesCsv = "samples.csv";
inline constexpr const char* kEventLog = "events.log";
inline constexpr const char* kChainFile = "chain.bin";
inline constexpr const char* kBlobDir = "blobs";
inline constexpr const char* kManifest = "manifest.txt";
inline constexpr const char* kConfig = "config.txt";
}  // namespace run_files

struct RunOutcome {
    std::filesystem::path dir;
    char label = 'A';
    Digest head_hash{};
    size_t blocks = 0;
    std::vector<VelocitySample> samples;
    int conservation_violations = 0;
};

/// Executes a run and writes all artifacts: samples CSV, event log, chain
/// file, blob directory, the effective config, and a manifest of digests.
RunOutcome run_to_directory(const ExperimentConfig& cfg,
                            const std::filesystem::path& out_dir);

std::string samples_to_csv(const std::vector<VelocitySample>& samples);
std::vector<VelocitySample> parse_samples_csv(const std::string& text);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> failures;

    std::string summary() const;
};

/// Re-checks a run directory: artifacts present, manifest digests match,
/// chain hashes link up, and every image anchor matches its blob bytes.
VerifyReport verify_run_directory(const std::filesystem::path& dir);

/// Renders the time-by-experiment velocity table from completed run
/// directories (one per label, any order). Throws std::invalid_argument when
/// the sample grids disagree or fewer than two runs are given.
std::string render_table(const std::vector<std::filesystem::path>& run_dirs);

/// Mean seconds-per-movement over samples with time in [from, to]. Stopped
/// samples (velocity 0) count at the slowest bound so that "stopped" compares
/// as slower than any movement.
double mean_pace(const std::vector<VelocitySample>& samples, int64_t from, int64_t to);

/// Replays the chain's contract calls through a fresh host and returns the
/// final storage dump of the velocity contract.
std::string replay_storage_dump(const std::filesystem::path& dir,
                                const std::string& address = {});

}  // namespace cellchain
