#include "cellchain/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cellchain {

namespace {

std::string join_i64(const std::vector<int64_t>& values) {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ",";
        out += std::to_string(values[i]);
    }
    return out;
}

std::string join_str(const std::vector<std::string>& values) {
    std::string out;
    for (size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ",";
        out += values[i];
    }
    return out;
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<int64_t> split_i64(const std::string& text) {
    std::vector<int64_t> out;
    for (const auto& item : split_csv(text)) out.push_back(std::stoll(item));
    return out;
}

std::string rgb_text(const std::array<uint8_t, 3>& c) {
    return std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]);
}

std::array<uint8_t, 3> parse_rgb(const std::string& text) {
    auto parts = split_i64(text);
    if (parts.size() != 3) throw std::invalid_argument("expected r,g,b: " + text);
    std::array<uint8_t, 3> out{};
    for (int i = 0; i < 3; ++i) {
        if (parts[i] < 0 || parts[i] > 255) throw std::invalid_argument("channel out of range");
        out[i] = uint8_t(parts[i]);
    }
    return out;
}

}  // namespace

std::string config_to_text(const ExperimentConfig& cfg) {
    std::ostringstream out;
    out << "label=" << cfg.label << "\n";
    out << "gate_mode="
        << (cfg.gate.mode == GateSchedule::Mode::Fixed ? "fixed" : "incremental") << "\n";
    out << "gate_interval=" << cfg.gate.interval << "\n";
    out << "gate_initial=" << cfg.gate.initial << "\n";
    out << "gate_step=" << cfg.gate.step << "\n";
    out << "initial_pick_zone=" << cfg.initial_pick_zone << "\n";
    out << "duration=" << cfg.duration << "\n";
    out << "sample_times=" << join_i64(cfg.sample_times) << "\n";
    out << "seed=" << cfg.seed << "\n";
    out << "control_period=" << cfg.control_period << "\n";
    out << "frame_width=" << cfg.render.width << "\n";
    out << "frame_height=" << cfg.render.height << "\n";
    out << "ball_radius_min=" << cfg.render.ball_r_min << "\n";
    out << "ball_radius_max=" << cfg.render.ball_r_max << "\n";
    out << "scene_margin=" << cfg.render.margin << "\n";
    out << "background=" << rgb_text(cfg.render.background) << "\n";
    out << "ball_color=" << rgb_text(cfg.render.ball_color) << "\n";
    out << "noise_amplitude=" << cfg.render.noise_amplitude << "\n";
    out << "validators=" << join_str(cfg.validators) << "\n";
    out << "oracle_key=" << cfg.oracle_key << "\n";
    out << "controller_key=" << cfg.controller_key << "\n";
    out << cfg.pipeline.to_key_values();
    return out.str();
}

ExperimentConfig config_from_text(const std::string& text) {
    // first pass: pick the preset
    ExperimentConfig cfg;
    std::istringstream scan(text);
    std::string line;
    while (std::getline(scan, line)) {
        if (line.rfind("label=", 0) == 0 && line.size() == 7 && line[6] >= 'A' &&
            line[6] <= 'D') {
            cfg = ExperimentConfig::preset(line[6]);
        }
    }

    std::istringstream in(text);
    std::string pipeline_lines;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("malformed config line: " + line);
        }
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        if (key == "label") {
            if (value.size() != 1) throw std::invalid_argument("label must be one character");
            cfg.label = value[0];
        } else if (key == "gate_mode") {
            if (value == "fixed") cfg.gate.mode = GateSchedule::Mode::Fixed;
            else if (value == "incremental") cfg.gate.mode = GateSchedule::Mode::Incremental;
            else throw std::invalid_argument("gate_mode must be fixed or incremental");
        } else if (key == "gate_interval") {
            cfg.gate.interval = std::stoll(value);
        } else if (key == "gate_initial") {
            cfg.gate.initial = std::stoll(value);
        } else if (key == "gate_step") {
            cfg.gate.step = std::stoll(value);
        } else if (key == "initial_pick_zone") {
            cfg.initial_pick_zone = std::stoi(value);
        } else if (key == "duration") {
            cfg.duration = std::stoll(value);
            if (cfg.duration < 0) throw std::invalid_argument("duration must be >= 0");
        } else if (key == "sample_times") {
            cfg.sample_times = split_i64(value);
        } else if (key == "seed") {
            cfg.seed = std::stoull(value);
        } else if (key == "control_period") {
            cfg.control_period = std::stoll(value);
        } else if (key == "frame_width") {
            cfg.render.width = std::stoi(value);
        } else if (key == "frame_height") {
            cfg.render.height = std::stoi(value);
        } else if (key == "ball_radius_min") {
            cfg.render.ball_r_min = std::stof(value);
        } else if (key == "ball_radius_max") {
            cfg.render.ball_r_max = std::stof(value);
        } else if (key == "scene_margin") {
            cfg.render.margin = std::stoi(value);
        } else if (key == "background") {
            cfg.render.background = parse_rgb(value);
        } else if (key == "ball_color") {
            cfg.render.ball_color = parse_rgb(value);
        } else if (key == "noise_amplitude") {
            cfg.render.noise_amplitude = std::stoi(value);
        } else if (key == "validators") {
            cfg.validators = split_csv(value);
            if (cfg.validators.empty()) throw std::invalid_argument("validators must not be empty");
        } else if (key == "oracle_key") {
            cfg.oracle_key = value;
        } else if (key == "controller_key") {
            cfg.controller_key = value;
        } else {
            // delegate pipeline threshold keys; rejects anything unknown
            pipeline_lines += line + "\n";
        }
    }
    if (!pipeline_lines.empty()) {
        std::string merged = cfg.pipeline.to_key_values() + pipeline_lines;
        cfg.pipeline = PipelineConfig::from_key_values(merged);
    }
    if (std::string gate_problem = cfg.gate.validate(); !gate_problem.empty()) {
        throw std::invalid_argument(gate_problem);
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_text(buf.str());
}

void save_config_file(const std::filesystem::path& path, const ExperimentConfig& cfg) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write config " + path.string());
    out << config_to_text(cfg);
}

}  // namespace cellchain
