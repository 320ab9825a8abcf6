#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cellchain/runio.hpp"
#include "cellchain/sha256.hpp"

namespace py = pybind11;
using namespace cellchain;

namespace {

Bytes to_bytes_vec(const py::bytes& b) {
    std::string s = b;
    return Bytes(s.begin(), s.end());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Ledger-mediated pick-and-place cell testbed";

    m.def("compute_x", &compute_x, py::arg("ball_count"), py::arg("transporting"),
          "Workload term: ball count plus 1 while transporting.");

    m.def(
        "compute_velocity",
        [](int64_t x) {
            EmittedOperation op = compute_velocity(x);
            return py::make_tuple(
                op.kind == OpKind::SetVelocity ? "set_velocity" : "stop_at_home",
                op.value);
        },
        py::arg("x"),
        "Velocity law: returns (kind, seconds_per_movement); kind is "
        "'stop_at_home' when x == 0.");

    m.def(
        "sha256_hex",
        [](const py::bytes& data) { return to_hex(sha256(to_bytes_vec(data))); },
        py::arg("data"));

    m.def(
        "render_scene_ppm",
        [](int ball_count, uint64_t seed) {
            Frame f = render_scene(SceneSpec::random(ball_count, seed));
            Bytes ppm = encode_ppm(f);
            return py::bytes(reinterpret_cast<const char*>(ppm.data()), ppm.size());
        },
        py::arg("ball_count"), py::arg("seed"),
        "Renders a random pick-zone scene and returns binary PPM bytes.");

    m.def(
        "count_balls",
        [](const py::bytes& ppm) { return count_balls(parse_ppm(to_bytes_vec(ppm))); },
        py::arg("ppm"), "Runs the detection pipeline over a PPM image.");

    m.def(
        "detect_circles",
        [](const py::bytes& ppm) {
            std::vector<py::tuple> out;
            for (const auto& c : detect_circles(parse_ppm(to_bytes_vec(ppm)))) {
                out.push_back(py::make_tuple(c.cx, c.cy, c.r, c.votes));
            }
            return out;
        },
        py::arg("ppm"), "Returns (cx, cy, r, votes) per detected circle.");

    m.def(
        "preset_config",
        [](const std::string& label) {
            if (label.size() != 1) throw std::invalid_argument("label must be A-D");
            return config_to_text(ExperimentConfig::preset(label[0]));
        },
        py::arg("label"), "Returns the key=value config text of a preset experiment.");

    m.def(
        "run_experiment",
        [](const std::string& config_text, const std::string& out_dir,
           std::optional<uint64_t> seed) {
            ExperimentConfig cfg = config_from_text(config_text);
            if (seed) cfg.seed = *seed;
            RunOutcome outcome = run_to_directory(cfg, out_dir);
            py::dict d;
            d["label"] = std::string(1, outcome.label);
            d["dir"] = outcome.dir.string();
            d["blocks"] = outcome.blocks;
            d["head_hash"] = to_hex(outcome.head_hash);
            std::vector<py::tuple> samples;
            for (const auto& s : outcome.samples) {
                samples.push_back(py::make_tuple(s.time, s.velocity));
            }
            d["samples"] = samples;
            return d;
        },
        py::arg("config_text"), py::arg("out_dir"), py::arg("seed") = std::nullopt,
        "Runs an experiment from config text and writes a run directory.");

    m.def(
        "verify_run",
        [](const std::string& dir) {
            VerifyReport report = verify_run_directory(dir);
            return py::make_tuple(report.ok, report.summary());
        },
        py::arg("dir"), "Verifies chain hashes and image anchors of a run directory.");

    m.def(
        "render_table",
        [](const std::vector<std::string>& dirs) {
            return render_table(std::vector<std::filesystem::path>(dirs.begin(), dirs.end()));
        },
        py::arg("dirs"));

    m.def(
        "dump_storage",
        [](const std::string& dir, const std::string& address) {
            return replay_storage_dump(dir, address);
        },
        py::arg("dir"), py::arg("address") = std::string{},
        "Replays the chain's contract calls and dumps the final storage.");
}
