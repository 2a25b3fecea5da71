"""Acceptance suite: one test per release criterion.

Each test prints a single ``[acceptance] <criterion>: PASS/FAIL`` line; run
with ``pytest -s tests/test_acceptance.py`` to see them inline.
"""

import json
import random
import time
from collections import Counter, defaultdict
from contextlib import contextmanager

from memviz.analytics import compute_stats
from memviz.cli import run
from memviz.generators import BmmSpec, Walk3dSpec, gen_bmm, gen_random, gen_walk3d
from memviz.parser import FilterRule, parse_trace, reduction_percent, serialize_trace
from memviz.scenes import ArrayLayout, build_2d_array_scene, build_3d_array_scene, build_complete_map
from memviz.store import build


@contextmanager
def criterion(name):
    try:
        yield
    except BaseException:
        print(f"[acceptance] {name}: FAIL", flush=True)
        raise
    print(f"[acceptance] {name}: PASS", flush=True)


def test_round_trip_100_seeds():
    with criterion("round-trip over 100 random seeds"):
        started = time.monotonic()
        for seed in range(100):
            events = gen_random(seed, 300)
            reparsed, _, report = parse_trace(serialize_trace(events).splitlines())
            assert reparsed == events
            assert report.lines_malformed == 0
            assert report.events_filtered == 0
        assert time.monotonic() - started < 10.0


def test_store_matches_brute_force_oracle():
    with criterion("store vs brute-force oracle on 10^4 events"):
        events = gen_random(7, 10_000)
        store = build(events)
        assert len(store.lut) == len({(e.address, e.size, e.thread, e.var) for e in events})
        lengths = Counter(e.address for e in events)
        assert {addr: len(entries) for addr, entries in store.by_address.items()} == lengths
        histograms = defaultdict(Counter)
        for e in events:
            histograms[e.address][e.op] += 1
        for addr, entries in store.by_address.items():
            assert Counter(entry.op for entry in entries) == histograms[addr]


def test_conservation_everywhere():
    with criterion("conservation of appearances and report counters"):
        for seed in (1, 7, 42):
            events = gen_random(seed, 2000)
            store = build(events)
            stats = compute_stats(store)
            assert sum(st.appearances for st in stats.values()) == store.total_events
        for events in (gen_bmm(BmmSpec(n=4, block=2)), gen_walk3d(Walk3dSpec(dims=(4, 3, 2)))):
            store = build(events)
            stats = compute_stats(store)
            assert sum(st.appearances for st in stats.values()) == store.total_events
        # counter balance must survive malformed fuzz
        rng = random.Random(99)
        alphabet = "LxSM A0#- \t19fGU"
        fuzz = ["".join(rng.choice(alphabet) for _ in range(rng.randrange(30))) for _ in range(5000)]
        valid = serialize_trace(gen_random(5, 500)).splitlines()
        mixed = fuzz + valid
        rng.shuffle(mixed)
        _, _, report = parse_trace(mixed, FilterRule(keep_threads=frozenset([0])))
        assert (
            report.events_emitted
            + report.events_filtered
            + report.lines_skipped
            + report.lines_malformed
            == report.lines_read
            == len(mixed)
        )


def test_bmm_fig1b_reconstruction():
    with criterion("BMM figure 1b reconstruction (n=4, block=2)"):
        started = time.monotonic()
        spec = BmmSpec(n=4, block=2)
        store = build(gen_bmm(spec))
        stats = compute_stats(store)
        layout = ArrayLayout("B", spec.base_b, spec.element_size, (4, 4))
        scene_b = build_2d_array_scene(store, stats, layout)
        assert len(scene_b.points) == 16
        assert all(point.y == 4 for point in scene_b.points)
        complete = build_complete_map(store, stats)
        assert len(complete.points) == 192
        assert time.monotonic() - started < 1.0


def test_walk3d_fig1c_reconstruction():
    with criterion("walk3d figure 1c reconstruction (2x2x2)"):
        started = time.monotonic()
        spec = Walk3dSpec(dims=(2, 2, 2))
        store = build(gen_walk3d(spec))
        stats = compute_stats(store)
        layout = ArrayLayout("V", spec.base, spec.element_size, (2, 2, 2))
        scene = build_3d_array_scene(store, stats, layout)
        times = {(p.z, p.x, p.y): p.t for p in scene.points}
        for r in range(2):
            for c in range(2):
                for d in range(2):
                    assert abs(times[(r, c, d)] - (4 * r + 2 * c + d) / 7) < 1e-12
        depth_delta = times[(0, 0, 1)] - times[(0, 0, 0)]
        col_delta = times[(0, 1, 0)] - times[(0, 0, 0)]
        row_delta = times[(1, 0, 0)] - times[(0, 0, 0)]
        assert abs(depth_delta - 1 / 7) < 1e-12
        assert abs(col_delta - 2 / 7) < 1e-12
        assert abs(row_delta - 4 / 7) < 1e-12
        assert depth_delta < col_delta < row_delta
        assert time.monotonic() - started < 1.0


def test_reduction_percentages_exact():
    with criterion("filter reduction arithmetic (25% and 83%)"):
        # exactly 1 in 4 events unattributed
        lines = []
        for i in range(100):
            if i % 4 == 0:
                lines.append(f"L 0x{0x9000 + i * 4:x} 4 0 U probe -")
            else:
                lines.append(f"L 0x{0x1000 + i * 4:x} 4 0 G main a {i}")
        _, _, report = parse_trace(lines, FilterRule(drop_unattributed=True))
        assert reduction_percent(report) == 25.0
        # 83 of 100 events dropped by a function filter
        lines = []
        for i in range(100):
            fn = "keep" if i < 17 else "drop"
            lines.append(f"L 0x{0x1000 + i * 4:x} 4 0 G {fn} a {i}")
        _, _, report = parse_trace(lines, FilterRule(keep_functions=frozenset(["keep"])))
        assert reduction_percent(report) == 83.0


def test_cli_determinism(tmp_path):
    with criterion("byte-identical CLI outputs across runs"):
        # identical inputs means identical flag values, including input paths,
        # so both passes read the same traces and write to separate trees
        inputs = tmp_path / "inputs"
        inputs.mkdir()
        trace = inputs / "bmm.txt"
        walk = inputs / "walk.txt"
        rand = inputs / "rand.txt"
        assert run(["gen", "bmm", "--n", "4", "--block", "2", "-o", str(trace)]) == 0
        assert run(["gen", "walk3d", "--dims", "2,2,2", "-o", str(walk)]) == 0
        assert run(["gen", "random", "--seed", "7", "--events", "800", "-o", str(rand)]) == 0

        def everything(root):
            root.mkdir()
            assert run(["gen", "bmm", "--n", "4", "--block", "2", "-o", str(root / "bmm.txt")]) == 0
            assert run(["gen", "walk3d", "--dims", "2,2,2", "-o", str(root / "walk.txt")]) == 0
            assert (
                run(["gen", "random", "--seed", "7", "--events", "800", "-o", str(root / "rand.txt")])
                == 0
            )
            assert (
                run(
                    [
                        "parse",
                        str(rand),
                        "--drop-unattributed",
                        "--keep-thread",
                        "0,1",
                        "--report",
                        str(root / "report.json"),
                    ]
                )
                == 0
            )
            assert run(["stats", str(rand), "-o", str(root / "stats.csv")]) == 0
            assert run(["scene", str(trace), "--kind", "complete", "-o", str(root / "c.json")]) == 0
            assert (
                run(
                    [
                        "scene",
                        str(trace),
                        "--kind",
                        "array2d",
                        "--var",
                        "B",
                        "--layout",
                        "4x4x8",
                        "-o",
                        str(root / "b.json"),
                    ]
                )
                == 0
            )
            assert (
                run(
                    [
                        "scene",
                        str(walk),
                        "--kind",
                        "array3d",
                        "--var",
                        "V",
                        "--layout",
                        "2x2x2x8",
                        "-o",
                        str(root / "v.json"),
                    ]
                )
                == 0
            )
            assert run(["store", str(rand), "--dump", str(root / "store.json")]) == 0
            assert (
                run(
                    [
                        "report",
                        str(walk),
                        "--var",
                        "V",
                        "--layout",
                        "2x2x2x8",
                        "-o",
                        str(root / "report"),
                    ]
                )
                == 0
            )

        first = tmp_path / "one"
        second = tmp_path / "two"
        everything(first)
        everything(second)
        outputs = [
            "bmm.txt",
            "walk.txt",
            "rand.txt",
            "report.json",
            "stats.csv",
            "c.json",
            "b.json",
            "v.json",
            "store.json",
            "report/stats.csv",
            "report/complete_map.json",
            "report/complete_map.png",
            "report/array3d.json",
            "report/array3d.png",
        ]
        for name in outputs:
            assert (first / name).read_bytes() == (second / name).read_bytes(), name


def test_viewer_fixture_scenes_validate():
    # every scene kind the acceptance runs emit must satisfy the export schema
    with criterion("exported scenes satisfy the JSON schema"):
        spec = BmmSpec(n=4, block=2)
        store = build(gen_bmm(spec))
        stats = compute_stats(store)
        from memviz.scenes import scene_json_text

        scenes = [
            build_complete_map(store, stats, source="bmm"),
            build_2d_array_scene(
                store, stats, ArrayLayout("B", spec.base_b, 8, (4, 4)), source="bmm"
            ),
        ]
        walk = Walk3dSpec(dims=(2, 2, 2))
        walk_store = build(gen_walk3d(walk))
        walk_stats = compute_stats(walk_store)
        scenes.append(
            build_3d_array_scene(
                walk_store, walk_stats, ArrayLayout("V", walk.base, 8, (2, 2, 2)), source="walk"
            )
        )
        for scene in scenes:
            doc = json.loads(scene_json_text(scene))
            assert doc["kind"] in ("complete_map", "array2d", "array3d")
            assert set(doc["axis_labels"]) == {"x", "y", "z"}
            assert doc["color_convention"] in ("per_event", "last_access", "first_access")
            assert doc["out_of_layout"] >= 0
            for point in doc["points"]:
                assert 0.0 <= point["t"] <= 1.0
                assert point["meta"]["address"].startswith("0x")
                for key in ("loads", "stores", "modifies", "timestamp"):
                    assert point["meta"][key] >= 0
