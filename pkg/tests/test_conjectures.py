"""Canonical enumeration, checkpointing, and the conjecture scans."""

import itertools
import json
from fractions import Fraction

import pytest

from sumsetlab.conjectures import (
    MatroidMap,
    ScanState,
    canonical_form,
    check_matroid_pair,
    enumerate_canonical,
    load_state,
    save_state,
    scan_doubling_tripling,
    scan_log_span,
)
from sumsetlab.groups import GroupContext, PointSet
from sumsetlab.search import SearchConfig, canonical_subsets

F = Fraction
Z1 = GroupContext(1)


class TestCanonicalForm:
    def test_transform_invariance(self):
        pts = [(0, 0), (1, 0), (2, 1)]
        dims = (3, 3)
        base = canonical_form(pts, dims)
        # reflections and the transpose give the same class
        assert canonical_form([(-x, y) for x, y in pts], dims) == base
        assert canonical_form([(y, x) for x, y in pts], dims) == base
        assert canonical_form([(x + 4, y - 2) for x, y in pts], dims) == base

    def test_collision_counting(self):
        # every anchored subset maps to exactly one enumerated representative
        d, side, max_size = 2, 3, 3
        reps = enumerate_canonical(d, side, max_size)
        rep_set = set(reps)
        assert len(rep_set) == len(reps)
        ctx = GroupContext(d)
        box = ((0, side - 1),) * d
        for pts in canonical_subsets(ctx, box, max_size):
            assert canonical_form(pts, (side,) * d) in rep_set

    def test_line_enumeration(self):
        reps = enumerate_canonical(1, 3, 2)
        assert reps == [((0,),), ((0,), (1,)), ((0,), (2,))]


class TestScanState:
    def test_roundtrip(self, tmp_path):
        s = ScanState("log_span", 3, 10, 2, 1, [], None, {"d": 1})
        s.push_near(F(5, 4), {"index": 0})
        path = str(tmp_path / "state.json")
        save_state(s, path)
        assert load_state(path) == s

    def test_near_ledger_sorted(self):
        s = ScanState("log_span", 0, 0, 0, 0, [], None, {})
        for m in (F(3), F(1), F(2)):
            s.push_near(m, {"index": int(m)})
        assert [e["margin"] for e in s.near] == ["1/1", "2/1", "3/1"]


class TestLogSpanScan:
    CFG = SearchConfig(box=((-2, 3),), max_cardinality=3)

    def test_full_run(self, tmp_path):
        out = str(tmp_path / "reports.jsonl")
        state = scan_log_span(1, 3, 3, self.CFG, out_path=out)
        assert state.counterexample is None
        assert state.cursor == state.total
        # {0,1,2} fails the log-span precondition and is skipped
        assert state.skipped == 1
        records = [json.loads(l) for l in open(out)]
        assert all(r["type"] == "margin" for r in records)
        assert len(records) == state.examined

    def test_resume_reproduces_stream(self, tmp_path):
        full = str(tmp_path / "full.jsonl")
        scan_log_span(1, 3, 3, self.CFG, out_path=full, shard_size=2)

        part = str(tmp_path / "part.jsonl")
        ckpt = str(tmp_path / "state.json")
        st1 = scan_log_span(1, 3, 3, self.CFG, checkpoint_path=ckpt,
                            out_path=part, shard_size=2, max_shards=1)
        assert st1.cursor < st1.total
        st2 = scan_log_span(1, 3, 3, self.CFG, checkpoint_path=ckpt,
                            out_path=part, shard_size=2)
        assert st2.cursor == st2.total
        assert open(part).read() == open(full).read()

    def test_checkpoint_config_mismatch(self, tmp_path):
        ckpt = str(tmp_path / "state.json")
        scan_log_span(1, 3, 3, self.CFG, checkpoint_path=ckpt, max_shards=1)
        other = SearchConfig(box=((-2, 3),), max_cardinality=2)
        with pytest.raises(ValueError):
            scan_log_span(1, 3, 3, other, checkpoint_path=ckpt)


class TestDoublingTriplingScan:
    def test_small_line(self, tmp_path):
        cfg = SearchConfig(box=((0, 1),), max_cardinality=2)
        out = str(tmp_path / "dt.jsonl")
        state = scan_doubling_tripling(1, 2, 2, cfg, out_path=out)
        assert state.counterexample is None
        records = [json.loads(l) for l in open(out)]
        by_u = {tuple(tuple(p) for p in r["U"]): r for r in records}
        # U = {0,1}: beta_sq = 4, alpha_sq = 9/4, margin (9/4)^2 - 4 = 17/16
        assert by_u[((0,), (1,))]["doubling_tripling"] == "17/16"
        assert by_u[((0,),)]["doubling_tripling"] == "0/1"

    def test_margins_nonnegative(self, tmp_path):
        cfg = SearchConfig(box=((-2, 3),), max_cardinality=3)
        state = scan_doubling_tripling(1, 3, 3, cfg)
        assert state.counterexample is None
        assert all(e["margin_float"] >= 0 for e in state.near)


class TestMatroid:
    def test_pairing_validation(self):
        U = PointSet.of(Z1, [(0,), (1,)])
        V = PointSet.of(Z1, [(0,), (2,)])
        with pytest.raises(ValueError):
            MatroidMap(U, V, ((0, 0), (0, 1)))

    def test_dilation_pair(self):
        U = PointSet.of(Z1, [(0,), (1,)])
        V = PointSet.of(Z1, [(0,), (2,)])
        m = MatroidMap(U, V, ((0, 0), (1, 1)))
        cfg = SearchConfig(box=((-2, 3),), max_cardinality=4)
        res = check_matroid_pair(m, cfg)
        assert res["applicable"]
        assert res["beta_sq_source"] == res["beta_sq_target"] == "4/1"
        assert not res["evidence_against"]
        assert res["conclusive"] is False

    def test_dimension_increase_inapplicable(self):
        ctx2 = GroupContext(2)
        U = PointSet.of(ctx2, [(0, 0), (1, 0)])
        V = PointSet.of(ctx2, [(0, 0), (0, 0)])  # degenerate target
        with pytest.raises(ValueError):
            MatroidMap(U, V, ((0, 0), (1, 1)))  # sizes differ after dedup
