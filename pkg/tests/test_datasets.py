import json
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relsc import (
    LabelRecord,
    PipelineConfig,
    build_ast_graph,
    build_relsc_h,
    build_relsc_m,
    deserialize_graph,
    ingest_labels,
    make_splits,
    normalize_targets,
    parse_source,
    run_pipeline,
    serialize_graph,
)
from relsc.datasets import LabelError, read_splits_csv


def write_labels(path, rows, header="path,seconds"):
    lines = [header] + [",".join(str(c) for c in row) for row in rows]
    path.write_text("\n".join(lines) + "\n")


class TestIngestLabels:
    def test_duplicate_rows_average(self, tmp_path):
        csv_path = tmp_path / "labels.csv"
        write_labels(csv_path, [("a.java", 2.0), ("a.java", 4.0), ("b.java", 0.5)])
        records, warnings = ingest_labels(csv_path)
        by_path = {r.path: r for r in records}
        assert by_path["a.java"].raw_seconds == 3.0
        assert by_path["a.java"].runs == 2
        assert by_path["b.java"].raw_seconds == 0.5
        assert warnings == []

    def test_runs_column(self, tmp_path):
        csv_path = tmp_path / "labels.csv"
        write_labels(csv_path, [("a.java", 2.0, 5)], header="path,seconds,runs")
        (records, _) = ingest_labels(csv_path)
        assert records[0].runs == 5

    def test_negative_seconds_rejected(self, tmp_path):
        csv_path = tmp_path / "labels.csv"
        write_labels(csv_path, [("a.java", -1)])
        with pytest.raises(LabelError, match="positive"):
            ingest_labels(csv_path)

    def test_non_numeric_reports_line(self, tmp_path):
        csv_path = tmp_path / "labels.csv"
        write_labels(csv_path, [("a.java", 1.0), ("b.java", "fast")])
        with pytest.raises(LabelError, match=r":3:"):
            ingest_labels(csv_path)

    def test_missing_file_warns_but_keeps(self, tmp_path):
        csv_path = tmp_path / "labels.csv"
        write_labels(csv_path, [("gone.java", 1.0)])
        records, warnings = ingest_labels(csv_path, root=tmp_path)
        assert len(records) == 1
        assert any("gone.java" in w for w in warnings)


class TestNormalizeTargets:
    def test_published_endpoint_examples(self):
        oss = [LabelRecord("a", 0.5), LabelRecord("b", 4751.51)]
        targets, params = normalize_targets(oss, dataset_name="ossbuilds")
        assert targets == [0.0, 1.0]
        assert (params.min_seconds, params.max_seconds) == (0.5, 4751.51)
        hadoop = [LabelRecord("a", 0.2), LabelRecord("b", 1059.67)]
        targets, _ = normalize_targets(hadoop, dataset_name="hadoop")
        assert targets == [0.0, 1.0]

    def test_midpoint_maps_to_half(self):
        records = [LabelRecord("a", 1.0), LabelRecord("b", 2.0), LabelRecord("c", 3.0)]
        targets, _ = normalize_targets(records)
        assert targets[1] == pytest.approx(0.5)

    def test_degenerate_range_rejected(self):
        with pytest.raises(ValueError, match="degenerate"):
            normalize_targets([LabelRecord("a", 1.0), LabelRecord("b", 1.0)])

    def test_inference_mode_clamps(self):
        _, params = normalize_targets([LabelRecord("a", 1.0), LabelRecord("b", 3.0)])
        targets, _ = normalize_targets([LabelRecord("x", 0.5), LabelRecord("y", 9.0)], params=params)
        assert targets == [0.0, 1.0]

    @given(st.lists(st.floats(0.001, 1e6), min_size=2, unique=True))
    @settings(max_examples=50, deadline=None)
    def test_round_trip_invertible(self, values):
        records = [LabelRecord(f"f{i}", v) for i, v in enumerate(values)]
        targets, params = normalize_targets(records)
        for v, t in zip(values, targets):
            assert params.denormalize(t) == pytest.approx(v, rel=1e-9, abs=1e-12)


class TestMakeSplits:
    def test_sizes_922(self):
        triples = [(f"g{i:04d}", "synth", "synth") for i in range(922)]
        assignments = make_splits(triples, seed=7)
        sizes = {s: sum(1 for a in assignments if a.split == s) for s in ("train", "val", "test")}
        assert sizes == {"train": 645, "val": 138, "test": 139}

    def test_sizes_20(self):
        triples = [(f"g{i}", "d", "p") for i in range(20)]
        assignments = make_splits(triples, seed=0)
        sizes = {s: sum(1 for a in assignments if a.split == s) for s in ("train", "val", "test")}
        assert sizes == {"train": 14, "val": 3, "test": 3}

    def test_determinism(self):
        triples = [(f"g{i}", "d", f"p{i % 3}") for i in range(60)]
        a = make_splits(triples, seed=42)
        b = make_splits(triples, seed=42)
        assert a == b
        c = make_splits(triples, seed=43)
        assert a != c

    def test_tiny_project_rejected(self):
        with pytest.raises(ValueError, match=">= 3"):
            make_splits([("g1", "d", "p"), ("g2", "d", "p")])

    def test_ratio_validation(self):
        triples = [(f"g{i}", "d", "p") for i in range(10)]
        with pytest.raises(ValueError, match="sum to 1"):
            make_splits(triples, ratios=(0.5, 0.2, 0.2))

    @given(st.integers(3, 200), st.integers(0, 10))
    @settings(max_examples=40, deadline=None)
    def test_partition_property(self, n, seed):
        triples = [(f"g{i}", "d", "p") for i in range(n)]
        assignments = make_splits(triples, seed=seed)
        assert len(assignments) == n
        assert {a.graph_id for a in assignments} == {t[0] for t in triples}
        n_train = sum(1 for a in assignments if a.split == "train")
        n_val = sum(1 for a in assignments if a.split == "val")
        assert n_train == int(n * 0.7 + 1e-9)
        assert n_val == int(n * 0.15 + 1e-9)


class TestSerialization:
    def test_round_trip_all_variants(self, factorial_unit, factorial_graph):
        variants = [
            build_ast_graph(factorial_unit),
            factorial_graph,
            build_relsc_m(factorial_graph),
        ]
        for g in variants:
            again = deserialize_graph(serialize_graph(g))
            assert again == g

    def test_ast_only_has_no_relation_fields(self, factorial_unit):
        record = json.loads(serialize_graph(build_ast_graph(factorial_unit)))
        assert all("relation" not in e and "inverse" not in e for e in record["edges"])

    def test_m_variant_has_relation_fields(self, factorial_graph):
        record = json.loads(serialize_graph(build_relsc_m(factorial_graph)))
        assert all("relation" in e and "inverse" in e for e in record["edges"])

    def test_seven_node_graph_lists_seven_nodes(self):
        unit = parse_source("class A { int m() { return 1; } }", "Seven.java")
        assert unit.node_count == 7
        record = json.loads(serialize_graph(build_relsc_h(unit)))
        assert len(record["nodes"]) == 7

    def test_features_serialized_as_int_arrays(self, factorial_graph):
        record = json.loads(serialize_graph(factorial_graph))
        for n in record["nodes"]:
            assert len(n["feature"]) == 83
            assert all(isinstance(v, int) for v in n["feature"])


def make_corpus(root, files):
    for rel, src in files.items():
        path = root / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(src)


GOOD_A = "class A { int m() { return 1; } }"
GOOD_B = "class B { void m(int n) { while (n > 0) { n--; } } }"
BAD = "class Broken { void m( {} }"


class TestPipeline:
    def test_single_file_all_variants(self, tmp_path):
        root = tmp_path / "mini"
        make_corpus(root / "projA", {"A.java": GOOD_A, "B.java": GOOD_B, "C.java": GOOD_A})
        labels = tmp_path / "labels.csv"
        write_labels(labels, [("projA/A.java", 1.0), ("projA/B.java", 2.0), ("projA/C.java", 3.0)])
        out = tmp_path / "out"
        config = PipelineConfig(
            input_roots=[str(root)], out_dir=str(out), labels_csv=str(labels),
            variants=("ast_only", "relsc_h", "relsc_m"), seed=3,
        )
        manifest = run_pipeline(config)
        assert len(manifest.graphs) == 3
        for name in ("graphs_ast.jsonl", "graphs_h.jsonl", "graphs_m.jsonl", "splits.csv", "manifest.json"):
            assert (out / name).exists()
        for entry in manifest.graphs:
            assert 0.0 <= entry["target"] <= 1.0

    def test_unparseable_file_is_rejected_not_fatal(self, tmp_path):
        root = tmp_path / "mini"
        make_corpus(root / "p", {"A.java": GOOD_A, "B.java": GOOD_B, "X.java": BAD, "C.java": GOOD_A})
        out = tmp_path / "out"
        config = PipelineConfig(input_roots=[str(root)], out_dir=str(out), seed=0)
        manifest = run_pipeline(config)
        assert len(manifest.graphs) == 3
        assert any("X.java" in r["path"] for r in manifest.rejected)

    def test_interface_only_exclusion_flag(self, tmp_path):
        root = tmp_path / "mini"
        make_corpus(root / "p", {
            "I.java": "interface I { void m(); }",
            "A.java": GOOD_A, "B.java": GOOD_B, "C.java": GOOD_A,
        })
        out = tmp_path / "out"
        manifest = run_pipeline(PipelineConfig(
            input_roots=[str(root)], out_dir=str(out), exclude_interfaces=True,
        ))
        assert any("interface-only" in r["reason"] for r in manifest.rejected)
        assert all("I.java" not in g["id"] for g in manifest.graphs)

    def test_rerun_is_byte_identical_modulo_timestamp(self, tmp_path):
        root = tmp_path / "mini"
        make_corpus(root / "p", {"A.java": GOOD_A, "B.java": GOOD_B, "C.java": GOOD_A})
        outs = []
        for sub in ("out1", "out2"):
            out = tmp_path / sub
            run_pipeline(PipelineConfig(
                input_roots=[str(root)], out_dir=str(out),
                variants=("relsc_h", "relsc_m"), seed=11,
            ))
            text = (out / "manifest.json").read_text()
            outs.append(re.sub(r'"created_at": "[^"]*"', '"created_at": "T"', text))
            assert (out / "graphs_h.jsonl").read_text() == (tmp_path / "out1" / "graphs_h.jsonl").read_text()
        assert outs[0] == outs[1]

    def test_split_nesting_containment(self, tmp_path):
        root = tmp_path / "oss"
        files = {}
        for proj, count in (("p1", 5), ("p2", 7), ("p3", 4)):
            for i in range(count):
                files[f"{proj}/F{i}.java"] = GOOD_A
        make_corpus(root, files)
        out = tmp_path / "out"
        run_pipeline(PipelineConfig(input_roots=[str(root)], out_dir=str(out), seed=5))
        assignments = read_splits_csv(out / "splits.csv")
        dataset_split = {s: {a.graph_id for a in assignments if a.split == s} for s in ("train", "val", "test")}
        for proj in ("p1", "p2", "p3"):
            for s in ("train", "val", "test"):
                proj_ids = {a.graph_id for a in assignments if a.project == proj and a.split == s}
                assert proj_ids <= dataset_split[s]

    def test_zero_graphs_raises(self, tmp_path):
        root = tmp_path / "mini"
        make_corpus(root / "p", {"X.java": BAD})
        with pytest.raises(RuntimeError, match="zero graphs"):
            run_pipeline(PipelineConfig(input_roots=[str(root)], out_dir=str(tmp_path / "out")))

    def test_pipeline_writes_stats_report(self, tmp_path):
        root = tmp_path / "mini"
        make_corpus(root / "p", {"A.java": GOOD_A, "B.java": GOOD_B, "C.java": GOOD_A})
        labels = tmp_path / "labels.csv"
        write_labels(labels, [("p/A.java", 1.0), ("p/B.java", 2.0), ("p/C.java", 3.0)])
        out = tmp_path / "out"
        run_pipeline(PipelineConfig(
            input_roots=[str(root)], out_dir=str(out), labels_csv=str(labels),
            variants=("relsc_h", "relsc_m"),
        ))
        report = json.loads((out / "stats.json").read_text())
        variants_in_sizes = {r["variant"] for r in report["size_stats"]}
        assert variants_in_sizes == {"relsc_h", "relsc_m"}
        entry = report["datasets"]["mini"]
        assert "mean_relation_matrix" in entry
        assert entry["statistics_variant"] == "relsc_h"
        assert sum(entry["target_histogram"]) == 3  # one variant per file
        assert "share" in entry["low_target_share"]

    def test_dump_ast_writes_debug_json(self, tmp_path):
        root = tmp_path / "mini"
        make_corpus(root / "p", {"A.java": GOOD_A, "B.java": GOOD_B, "C.java": GOOD_A})
        out = tmp_path / "out"
        dumps = tmp_path / "asts"
        run_pipeline(PipelineConfig(
            input_roots=[str(root)], out_dir=str(out), dump_ast_dir=str(dumps),
        ))
        files = sorted(dumps.glob("*.json"))
        assert len(files) == 3
        doc = json.loads(files[0].read_text())
        assert {"id", "type", "children", "source_order"} <= set(doc["nodes"][0])

    def test_parallel_build_matches_serial(self, tmp_path):
        root = tmp_path / "mini"
        files = {f"p/F{i}.java": GOOD_A if i % 2 else GOOD_B for i in range(8)}
        make_corpus(root, files)
        serial = tmp_path / "serial"
        parallel = tmp_path / "parallel"
        for out, workers in ((serial, 1), (parallel, 3)):
            run_pipeline(PipelineConfig(
                input_roots=[str(root)], out_dir=str(out),
                variants=("relsc_h", "relsc_m"), seed=8, workers=workers,
            ))
        for name in ("graphs_h.jsonl", "graphs_m.jsonl", "splits.csv"):
            assert (serial / name).read_text() == (parallel / name).read_text()
