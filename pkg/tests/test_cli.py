import json
import os

import pytest

from memviz.cli import run


def _run(*argv):
    return run(list(argv))


@pytest.fixture
def walk_trace(tmp_path):
    path = tmp_path / "walk.txt"
    assert _run("gen", "walk3d", "--dims", "2,2,2", "--elem", "8", "-o", str(path)) == 0
    return path


@pytest.fixture
def bmm_trace(tmp_path):
    path = tmp_path / "bmm.txt"
    assert _run("gen", "bmm", "--n", "4", "--block", "2", "-o", str(path)) == 0
    return path


class TestExitCodes:
    def test_unknown_subcommand_is_usage_error(self, capsys):
        assert _run("frobnicate") == 1
        assert "usage" in capsys.readouterr().err

    def test_missing_required_flag_is_usage_error(self, tmp_path):
        assert _run("gen", "bmm", "--n", "4", "-o", str(tmp_path / "t.txt")) == 1

    def test_missing_input_file_is_io_error(self, tmp_path, capsys):
        assert _run("stats", str(tmp_path / "absent.txt"), "-o", str(tmp_path / "s.csv")) == 2
        assert "i/o error" in capsys.readouterr().err

    def test_array_scene_without_layout_is_usage_error(self, walk_trace, tmp_path):
        assert (
            _run("scene", str(walk_trace), "--kind", "array3d", "-o", str(tmp_path / "s.json"))
            == 1
        )

    def test_layout_mismatch_is_data_error(self, walk_trace, tmp_path, capsys):
        out = tmp_path / "s.json"
        code = _run(
            "scene",
            str(walk_trace),
            "--kind",
            "array3d",
            "--var",
            "V",
            "--layout",
            "2x2x2x16",
            "-o",
            str(out),
        )
        assert code == 3
        assert "data error" in capsys.readouterr().err
        assert not out.exists()

    def test_malformed_beyond_threshold_is_data_error(self, tmp_path, monkeypatch):
        trace = tmp_path / "bad.txt"
        trace.write_text("L 0x10 4 0 G f v\njunk\njunk\njunk\n")
        out = tmp_path / "report.json"
        monkeypatch.setenv("MEMVIZ_MAX_MALFORMED", "2")
        assert _run("parse", str(trace), "--report", str(out)) == 3
        assert not out.exists()
        monkeypatch.setenv("MEMVIZ_MAX_MALFORMED", "3")
        assert _run("parse", str(trace), "--report", str(out)) == 0
        assert out.exists()


class TestPipeline:
    def test_gen_then_scene_array3d(self, walk_trace, tmp_path):
        out = tmp_path / "s.json"
        code = _run(
            "scene",
            str(walk_trace),
            "--kind",
            "array3d",
            "--var",
            "V",
            "--layout",
            "2x2x2x8",
            "-o",
            str(out),
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["kind"] == "array3d"
        assert len(doc["points"]) == 8

    def test_scene_complete(self, bmm_trace, tmp_path):
        out = tmp_path / "c.json"
        assert _run("scene", str(bmm_trace), "--kind", "complete", "-o", str(out)) == 0
        doc = json.loads(out.read_text())
        assert doc["kind"] == "complete_map"
        assert len(doc["points"]) == 192
        assert doc["total_events"] == 192

    def test_scene_array2d(self, bmm_trace, tmp_path):
        out = tmp_path / "b.json"
        code = _run(
            "scene",
            str(bmm_trace),
            "--kind",
            "array2d",
            "--var",
            "B",
            "--layout",
            "4x4x8",
            "-o",
            str(out),
        )
        assert code == 0
        doc = json.loads(out.read_text())
        assert len(doc["points"]) == 16
        assert all(p["y"] == 4 for p in doc["points"])

    def test_parse_report_json(self, tmp_path):
        trace = tmp_path / "t.txt"
        trace.write_text(
            "L 0x10 4 0 G f a 0\n# c\nL 0x14 4 0 U f -\nL 0x18 4 0 G f a 2\n"
        )
        out = tmp_path / "r.json"
        assert _run("parse", str(trace), "--drop-unattributed", "--report", str(out)) == 0
        doc = json.loads(out.read_text())
        assert doc["lines_read"] == 4
        assert doc["events_emitted"] == 2
        assert doc["events_filtered"] == 1
        assert doc["lines_skipped"] == 1
        assert doc["reduction_percent"] == pytest.approx(100 / 3)

    def test_parse_keep_fn(self, tmp_path):
        trace = tmp_path / "t.txt"
        trace.write_text("L 0x10 4 0 G f a 0\nL 0x14 4 0 G g a 1\n")
        out = tmp_path / "r.json"
        assert _run("parse", str(trace), "--keep-fn", "f", "--report", str(out)) == 0
        doc = json.loads(out.read_text())
        assert doc["events_emitted"] == 1
        assert doc["events_filtered"] == 1

    def test_stats_csv(self, walk_trace, tmp_path):
        out = tmp_path / "stats.csv"
        assert _run("stats", str(walk_trace), "-o", str(out)) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "address,variable,loads,stores,modifies,appearances,first_ts,last_ts"
        assert len(lines) == 9  # header + 8 addresses
        assert lines[1] == "0x400000,V,1,0,0,1,0,0"

    def test_store_dump(self, walk_trace, tmp_path):
        out = tmp_path / "store.json"
        assert _run("store", str(walk_trace), "--dump", str(out)) == 0
        doc = json.loads(out.read_text())
        assert doc["total_events"] == 8
        assert len(doc["lut"]) == 8
        assert set(doc["by_address"]) == {f"0x{0x400000 + off:x}" for off in range(0, 64, 8)}

    def test_report_directory(self, walk_trace, tmp_path):
        out = tmp_path / "out"
        code = _run(
            "report",
            str(walk_trace),
            "--var",
            "V",
            "--layout",
            "2x2x2x8",
            "-o",
            str(out),
        )
        assert code == 0
        names = sorted(os.listdir(out))
        assert names == [
            "array3d.json",
            "array3d.png",
            "complete_map.json",
            "complete_map.png",
            "stats.csv",
        ]
        assert (out / "array3d.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
        doc = json.loads((out / "array3d.json").read_text())
        assert len(doc["points"]) == 8

    def test_report_rejects_half_layout_flags(self, walk_trace, tmp_path):
        assert _run("report", str(walk_trace), "--var", "V", "-o", str(tmp_path / "o")) == 1


class TestDeterminism:
    def test_gen_random_is_reproducible(self, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        for path in (a, b):
            assert _run("gen", "random", "--seed", "7", "--events", "500", "-o", str(path)) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_scene_output_is_reproducible(self, bmm_trace, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for path in (a, b):
            assert _run("scene", str(bmm_trace), "--kind", "complete", "-o", str(path)) == 0
        assert a.read_bytes() == b.read_bytes()
