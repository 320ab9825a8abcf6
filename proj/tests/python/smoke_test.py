"""Smoke tests for the _core extension module (run via ctest)."""

import sys
import tempfile
from pathlib import Path

import _core


def test_velocity_law():
    assert _core.compute_x(3, False) == 3
    assert _core.compute_x(2, True) == 3
    assert _core.compute_velocity(0) == ("stop_at_home", 0)
    assert _core.compute_velocity(1) == ("set_velocity", 6)
    assert _core.compute_velocity(2) == ("set_velocity", 3)
    assert _core.compute_velocity(3) == ("set_velocity", 2)
    assert _core.compute_velocity(4) == ("set_velocity", 2)


def test_sha256():
    assert (
        _core.sha256_hex(b"abc")
        == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
    )


def test_detection_pipeline():
    for k in range(4):
        ppm = _core.render_scene_ppm(k, 1234 + k)
        assert ppm.startswith(b"P6")
        assert _core.count_balls(ppm) == k
    circles = _core.detect_circles(_core.render_scene_ppm(2, 99))
    assert len(circles) == 2
    for cx, cy, r, votes in circles:
        assert r > 0 and votes > 0


def test_run_and_verify(tmp: Path):
    config = _core.preset_config("A")
    config = config.replace("duration=300", "duration=40")
    config = config.replace("sample_times=10,20,30,50,75,100,125,150,175,200,225,250,275,300",
                            "sample_times=10,20,30,40")

    out = _core.run_experiment(config, str(tmp / "run-a"))
    assert out["label"] == "A"
    assert out["blocks"] > 0
    samples = dict(out["samples"])
    assert samples[10] == 2
    assert all(v in (0, 2, 3, 6) for v in samples.values())

    ok, message = _core.verify_run(out["dir"])
    assert ok, message

    # determinism: same config, same seed, same chain head
    again = _core.run_experiment(config, str(tmp / "run-a2"))
    assert again["head_hash"] == out["head_hash"]

    storage = _core.dump_storage(out["dir"])
    assert "trusted_oracle = oracle-1" in storage
    assert "current_velocity" in storage

    # tampering with a stored frame must break verification
    blob = next((tmp / "run-a" / "blobs").iterdir())
    data = bytearray(blob.read_bytes())
    data[50] ^= 0xFF
    blob.write_bytes(bytes(data))
    ok, message = _core.verify_run(out["dir"])
    assert not ok
    assert "anchor mismatch" in message


def main():
    test_velocity_law()
    test_sha256()
    test_detection_pipeline()
    with tempfile.TemporaryDirectory(prefix="cellchain-smoke-") as tmp:
        test_run_and_verify(Path(tmp))
    print("python smoke tests passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
