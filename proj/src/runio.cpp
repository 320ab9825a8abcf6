#include "cellchain/runio.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "cellchain/sha256.hpp"

namespace cellchain {

namespace fs = std::filesystem;

namespace {

Bytes read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_file(const fs::path& path, const Bytes& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

std::string file_digest_hex(const fs::path& path) {
    return to_hex(sha256(read_file(path)));
}

/// Digest of a blob directory: hash over sorted "id:digest" lines.
std::string blob_dir_digest_hex(const fs::path& dir) {
    std::vector<std::string> lines;
    if (fs::exists(dir)) {
        for (const auto& entry : fs::directory_iterator(dir)) {
            lines.push_back(entry.path().filename().string() + ":" +
                            file_digest_hex(entry.path()));
        }
    }
    std::sort(lines.begin(), lines.end());
    std::string joined;
    for (const auto& l : lines) joined += l + "\n";
    return to_hex(sha256(joined));
}

std::map<std::string, std::string> parse_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto eq = line.find('=');
        if (line.empty() || eq == std::string::npos) continue;
        out[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
}

}  // namespace

std::string samples_to_csv(const std::vector<VelocitySample>& samples) {
    std::string out = "time,velocity\n";
    for (const auto& s : samples) {
        out += std::to_string(s.time) + "," + std::to_string(s.velocity) + "\n";
    }
    return out;
}

std::vector<VelocitySample> parse_samples_csv(const std::string& text) {
    std::vector<VelocitySample> out;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "time,velocity") {
        throw std::invalid_argument("samples csv: missing header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw std::invalid_argument("samples csv: malformed row: " + line);
        }
        out.push_back({std::stoll(line.substr(0, comma)),
                       std::stoi(line.substr(comma + 1))});
    }
    return out;
}

RunOutcome run_to_directory(const ExperimentConfig& cfg, const fs::path& out_dir) {
    fs::create_directories(out_dir);

    CellSimulation sim(cfg, out_dir / run_files::kBlobDir);
    sim.run();

    auto verdict = Chain::verify_blocks(sim.chain().blocks());
    if (!verdict.valid) {
        throw std::logic_error("run produced an invalid chain at height " +
                               std::to_string(verdict.first_bad_height));
    }

    write_file(out_dir / run_files::kSamplesCsv, samples_to_csv(sim.samples()));

    std::string log;
    for (const auto& e : sim.events()) {
        log += std::to_string(e.time) + "\t" + e.event + "\t" + e.detail + "\n";
    }
    write_file(out_dir / run_files::kEventLog, log);

    write_file(out_dir / run_files::kChainFile, sim.chain().serialize());
    write_file(out_dir / run_files::kConfig, config_to_text(cfg));

    RunOutcome outcome;
    outcome.dir = out_dir;
    outcome.label = cfg.label;
    outcome.head_hash = sim.chain().head_hash();
    outcome.blocks = sim.chain().size();
    outcome.samples = sim.samples();
    outcome.conservation_violations = sim.conservation_violations();

    std::ostringstream manifest;
    manifest << "label=" << cfg.label << "\n";
    manifest << "seed=" << cfg.seed << "\n";
    manifest << "blocks=" << outcome.blocks << "\n";
    manifest << "head_hash=" << to_hex(outcome.head_hash) << "\n";
    manifest << "samples_csv_sha256=" << file_digest_hex(out_dir / run_files::kSamplesCsv)
             << "\n";
    manifest << "event_log_sha256=" << file_digest_hex(out_dir / run_files::kEventLog)
             << "\n";
    manifest << "chain_sha256=" << file_digest_hex(out_dir / run_files::kChainFile) << "\n";
    manifest << "config_sha256=" << file_digest_hex(out_dir / run_files::kConfig) << "\n";
    manifest << "blob_dir_sha256=" << blob_dir_digest_hex(out_dir / run_files::kBlobDir)
             << "\n";
    write_file(out_dir / run_files::kManifest, manifest.str());
    return outcome;
}

std::string VerifyReport::summary() const {
    if (ok) return "valid";
    std::string out;
    for (const auto& f : failures) out += f + "\n";
    return out;
}

VerifyReport verify_run_directory(const fs::path& dir) {
    VerifyReport report;
    auto fail = [&](const std::string& why) {
        report.ok = false;
        report.failures.push_back(why);
    };

    for (const char* name : {run_files::kSamplesCsv, run_files::kEventLog,
                             run_files::kChainFile, run_files::kManifest}) {
        if (!fs::exists(dir / name)) fail(std::string("missing artifact: ") + name);
    }
    if (!fs::exists(dir / run_files::kBlobDir)) fail("missing artifact: blobs/");
    if (!report.ok) return report;

    auto manifest = parse_manifest(dir / run_files::kManifest);
    auto check_digest = [&](const std::string& key, const std::string& actual,
                            const std::string& what) {
        auto it = manifest.find(key);
        if (it == manifest.end()) {
            fail("manifest missing " + key);
        } else if (it->second != actual) {
            fail(what + " digest mismatch (manifest " + key + ")");
        }
    };
    check_digest("samples_csv_sha256", file_digest_hex(dir / run_files::kSamplesCsv),
                 "samples.csv");
    check_digest("event_log_sha256", file_digest_hex(dir / run_files::kEventLog),
                 "events.log");
    check_digest("chain_sha256", file_digest_hex(dir / run_files::kChainFile), "chain.bin");
    check_digest("blob_dir_sha256", blob_dir_digest_hex(dir / run_files::kBlobDir),
                 "blob directory");

    Bytes chain_bytes = read_file(dir / run_files::kChainFile);
    auto verdict = Chain::verify_bytes(chain_bytes);
    if (!verdict.valid) {
        fail("chain invalid at height " + std::to_string(verdict.first_bad_height) +
             (verdict.detail.empty() ? "" : ": " + verdict.detail));
        return report;
    }

    // anchor soundness: every on-chain (hash, id) must match the stored bytes
    auto blocks = Chain::load_blocks(chain_bytes);
    for (const auto& block : blocks) {
        for (const auto& tx : block.transactions) {
            if (tx.kind != TxKind::ImageAnchor) continue;
            const auto& anchor = std::get<ImageAnchorPayload>(tx.payload);
            fs::path blob = dir / run_files::kBlobDir / anchor.image_id;
            if (!fs::exists(blob)) {
                fail("anchor mismatch: blob missing for " + anchor.image_id);
                continue;
            }
            if (sha256(read_file(blob)) != anchor.image_hash) {
                fail("anchor mismatch: bytes of " + anchor.image_id +
                     " do not hash to the on-chain digest");
            }
        }
    }
    return report;
}

std::string render_table(const std::vector<fs::path>& run_dirs) {
    if (run_dirs.size() < 2) {
        throw std::invalid_argument("table needs at least two completed runs");
    }
    struct Column {
        char label;
        std::vector<VelocitySample> samples;
    };
    std::vector<Column> columns;
    for (const auto& dir : run_dirs) {
        auto manifest = parse_manifest(dir / run_files::kManifest);
        auto it = manifest.find("label");
        if (it == manifest.end() || it->second.size() != 1) {
            throw std::invalid_argument("run " + dir.string() + " has no label");
        }
        Bytes csv = read_file(dir / run_files::kSamplesCsv);
        columns.push_back(
            {it->second[0], parse_samples_csv(std::string(csv.begin(), csv.end()))});
    }
    // stable label order regardless of argument order
    std::sort(columns.begin(), columns.end(),
              [](const Column& a, const Column& b) { return a.label < b.label; });
    for (size_t i = 1; i < columns.size(); ++i) {
        if (columns[i].label == columns[i - 1].label) {
            throw std::invalid_argument("duplicate experiment label in table input");
        }
    }

    // the t=0 at-rest reading is not a table row
    std::vector<int64_t> times;
    for (const auto& s : columns[0].samples) {
        if (s.time > 0) times.push_back(s.time);
    }
    for (const auto& col : columns) {
        std::vector<int64_t> other;
        for (const auto& s : col.samples) {
            if (s.time > 0) other.push_back(s.time);
        }
        if (other != times) {
            throw std::invalid_argument("mismatched sample grids between runs");
        }
    }

    std::ostringstream out;
    out << "Time (s)";
    for (const auto& col : columns) out << "\t" << col.label;
    out << "\n";
    for (size_t row = 0; row < times.size(); ++row) {
        out << times[row];
        for (const auto& col : columns) {
            int velocity = 0;
            for (const auto& s : col.samples) {
                if (s.time == times[row]) {
                    velocity = s.velocity;
                    break;
                }
            }
            out << "\t" << velocity;
        }
        out << "\n";
    }
    return out.str();
}

double mean_pace(const std::vector<VelocitySample>& samples, int64_t from, int64_t to) {
    const int64_t slowest = kFastestSeconds + kMeanSeconds;
    double sum = 0.0;
    int n = 0;
    for (const auto& s : samples) {
        if (s.time < from || s.time > to) continue;
        sum += s.velocity == 0 ? double(slowest) : double(s.velocity);
        ++n;
    }
    return n == 0 ? 0.0 : sum / n;
}

std::string replay_storage_dump(const fs::path& dir, const std::string& address) {
    Bytes chain_bytes = read_file(dir / run_files::kChainFile);
    auto blocks = Chain::load_blocks(chain_bytes);

    Chain scratch({"replay"});
    ContractHost host(scratch);
    std::string target = address;

    for (const auto& block : blocks) {
        for (const auto& tx : block.transactions) {
            if (tx.kind != TxKind::ContractCall) continue;
            const auto& call = std::get<ContractCallPayload>(tx.payload);
            if (call.entry == "(deploy)") {
                auto outcome = host.deploy(velocity_contract::make(),
                                           argument_to_params(call.argument), tx.sender);
                if (!outcome.ok) {
                    throw std::runtime_error("replay deploy failed: " + outcome.error);
                }
                if (outcome.address != call.address) {
                    throw std::runtime_error("replay produced a different address");
                }
                if (target.empty()) target = outcome.address;
            } else {
                auto outcome = host.call(call.address, call.entry, tx.sender,
                                         argument_to_params(call.argument));
                if (!outcome.ok) {
                    throw std::runtime_error("replay call failed: " + outcome.error);
                }
            }
        }
    }
    if (target.empty() || !host.deployed(target)) {
        throw std::runtime_error("no contract found to dump");
    }
    return host.dump_storage(target);
}

}  // namespace cellchain
