"""Text formats and the command-line surface: exit codes, reports, manifests."""

import json
from fractions import Fraction

import pytest

from sumsetlab import cli, io_formats
from sumsetlab.functional import WeightedFunction
from sumsetlab.groups import GroupContext, PointSet

F = Fraction
Z1 = GroupContext(1)


class TestPointSetFormat:
    def test_parse_line(self):
        A = io_formats.parse_point_set("group 1\n0\n1\n")
        assert set(A.points) == {(0,), (1,)}

    def test_parse_plane(self):
        A = io_formats.parse_point_set("group 2\n0 0\n1 1\n")
        assert set(A.points) == {(0, 0), (1, 1)}

    def test_comments_and_blanks(self):
        A = io_formats.parse_point_set("# header comment\ngroup 1\n\n0  # a point\n2\n")
        assert set(A.points) == {(0,), (2,)}

    def test_torsion_header(self):
        A = io_formats.parse_point_set("group 1 mod 2 3\n0 1 2\n1 3 5\n")
        assert A.context == GroupContext(1, (2, 3))
        assert set(A.points) == {(0, 1, 2), (1, 1, 2)}  # residues reduced mod 2, 3

    def test_torsion_collision_after_reduction(self):
        with pytest.raises(io_formats.FormatError):
            io_formats.parse_point_set("group 1 mod 2 3\n0 1 2\n0 3 5\n")

    def test_duplicate_rejected(self):
        with pytest.raises(io_formats.FormatError):
            io_formats.parse_point_set("group 1\n0\n0\n")

    def test_arity_mismatch(self):
        with pytest.raises(io_formats.FormatError):
            io_formats.parse_point_set("group 2\n0\n")

    def test_bad_header(self):
        for text in ("points 1\n0\n", "group\n", "group 1 mod\n0\n", ""):
            with pytest.raises(io_formats.FormatError):
                io_formats.parse_point_set(text)

    def test_canonical_roundtrip(self):
        A = PointSet.of(Z1, [(3,), (-1,), (0,)])
        text = io_formats.format_point_set(A)
        assert text == "group 1\n-1\n0\n3\n"
        assert io_formats.parse_point_set(text) == A


class TestFunctionFormat:
    def test_parse_two_point(self):
        f = io_formats.parse_function("group 1\n0 1\n1 1/2\n")
        assert f.exact
        assert f.entries == (((0,), F(1)), ((1,), F(1, 2)))

    def test_numeric_mode(self):
        f = io_formats.parse_function("group 1\n0 1.5\n")
        assert not f.exact

    def test_duplicate_coordinate_rejected(self):
        with pytest.raises(io_formats.FormatError):
            io_formats.parse_function("group 1\n0 1\n0 2\n")

    def test_negative_weight_rejected(self):
        with pytest.raises(io_formats.FormatError):
            io_formats.parse_function("group 1\n0 -1/2\n")

    def test_roundtrip(self):
        f = WeightedFunction.of(Z1, [((0,), F(1)), ((1,), F(1, 2)), ((2,), F(3))])
        text = io_formats.format_function(f)
        assert text == "group 1\n0 1\n1 1/2\n2 3\n"
        assert io_formats.parse_function(text) == f


@pytest.fixture
def u01(tmp_path):
    p = tmp_path / "u01.txt"
    p.write_text("group 1\n0\n1\n")
    return str(p)


@pytest.fixture
def f_half(tmp_path):
    p = tmp_path / "f.txt"
    p.write_text("group 1\n0 1\n1 1/2\n")
    return str(p)


def run_json(args, out_path):
    code = cli.main(args + ["--out", str(out_path)])
    return code, json.loads(out_path.read_text())


class TestEstimateCommand:
    def test_beta_report(self, u01, tmp_path):
        code, doc = run_json(
            ["estimate", "beta", "--set", u01, "--box", "-2..3", "--max-card", "4"],
            tmp_path / "r.json",
        )
        assert code == 0
        assert doc["quantity"] == "beta"
        assert doc["value_exact"] == "4/1"
        assert doc["value_float"] == 2.0
        assert doc["complete"] is True
        assert doc["manifest"]["tool_version"]
        assert u01 in doc["manifest"]["input_digests"]

    def test_gamma_function(self, f_half, tmp_path):
        code, doc = run_json(
            ["estimate", "gamma", "--fn", f_half, "--box", "-1..1", "--max-card", "2"],
            tmp_path / "r.json",
        )
        assert code == 0 and doc["quantity"] == "gamma"

    def test_p_validation(self, u01):
        code = cli.main(
            ["estimate", "beta", "--set", u01, "--p", "1/2", "--box", "0..1", "--max-card", "2"]
        )
        assert code == 64

    def test_missing_set(self):
        code = cli.main(["estimate", "beta", "--box", "0..1", "--max-card", "2"])
        assert code == 64

    def test_unknown_flag(self):
        assert cli.main(["estimate", "beta", "--frobnicate"]) == 64

    def test_missing_file(self, tmp_path):
        code = cli.main(
            ["estimate", "beta", "--set", str(tmp_path / "nope.txt"),
             "--box", "0..1", "--max-card", "2"]
        )
        assert code == 74

    def test_unwritable_out(self, u01, tmp_path):
        code = cli.main(
            ["estimate", "beta", "--set", u01, "--box", "0..1", "--max-card", "2",
             "--out", str(tmp_path / "no" / "dir" / "r.json")]
        )
        assert code == 74

    def test_bad_box(self, u01):
        code = cli.main(["estimate", "beta", "--set", u01, "--box", "3..1", "--max-card", "2"])
        assert code == 64

    def test_determinism_excluding_wall_clock(self, u01, tmp_path):
        docs = []
        for _ in range(2):
            _, doc = run_json(
                ["estimate", "beta", "--set", u01, "--box", "-2..3", "--max-card", "4"],
                tmp_path / "r.json",
            )
            doc["manifest"].pop("wall_clock_ms")
            docs.append(json.dumps(doc, sort_keys=True))
        assert docs[0] == docs[1]


class TestQuasicubeCommand:
    def test_gen_then_check(self, tmp_path):
        out = tmp_path / "q.txt"
        assert cli.main(["quasicube", "gen", "--depth", "2", "--seed", "3",
                         "--out", str(out)]) == 0
        text = out.read_text()
        assert text.startswith("# spec: ")
        res = tmp_path / "check.json"
        code = cli.main(["quasicube", "check", "--set", str(out), "--out", str(res)])
        assert code == 0
        doc = json.loads(res.read_text())
        assert doc["quasicube"] is True and doc["size"] == 4


class TestCompressCommand:
    def test_compress(self, tmp_path):
        src = tmp_path / "a.txt"
        src.write_text("group 2\n0 0\n0 3\n1 7\n")
        out = tmp_path / "c.txt"
        assert cli.main(["compress", "--set", str(src), "--coord", "1",
                         "--out", str(out)]) == 0
        C = io_formats.parse_point_set(out.read_text())
        assert set(C.points) == {(0, 0), (0, 1), (1, 0)}


class TestLawsCommand:
    def test_suite_run(self, tmp_path):
        out = tmp_path / "verdicts.jsonl"
        code = cli.main(["laws", "run", "--suite", "independence", "--out", str(out)])
        assert code == 0
        lines = [json.loads(l) for l in out.read_text().splitlines()]
        summary = lines[-1]
        assert summary["failures"] == 0 and summary["verdicts"] == len(lines) - 1
        assert all(v["holds"] for v in lines[:-1])

    def test_unknown_suite(self):
        assert cli.main(["laws", "run", "--suite", "bogus"]) == 64


class TestConjectureCommand:
    def test_log_span_scan(self, tmp_path):
        out = tmp_path / "r.jsonl"
        ckpt = tmp_path / "s.json"
        code = cli.main([
            "conjecture", "scan", "--id", "log_span", "--box", "-1..2",
            "--max-size", "3", "--max-card", "3",
            "--checkpoint", str(ckpt), "--out", str(out),
        ])
        assert code == 0
        state = json.loads(ckpt.read_text())
        assert state["counterexample"] is None
        assert state["cursor"] == state["total"]

    def test_noncubical_box_rejected(self):
        code = cli.main(["conjecture", "scan", "--id", "log_span", "--box", "0..1,0..2"])
        assert code == 64

    def test_exit_codes_on_counterexample(self, monkeypatch, tmp_path):
        from sumsetlab.conjectures import ScanState

        def fake_scan(kind):
            def scan(*a, **k):
                return ScanState("x", 0, 1, 1, 0, [],
                                 {"kind": kind, "index": 0}, {})
            return scan

        monkeypatch.setattr(cli, "scan_log_span", fake_scan("disproof"))
        assert cli.main(["conjecture", "scan", "--id", "log_span", "--box", "0..1"]) == 3
        monkeypatch.setattr(cli, "scan_log_span", fake_scan("bug"))
        assert cli.main(["conjecture", "scan", "--id", "log_span", "--box", "0..1"]) == 2


class TestTwoPointCommand:
    def test_report(self, tmp_path):
        out = tmp_path / "tp.json"
        code = cli.main(["two-point", "--delta", "1/2", "--p", "2/1", "--out", str(out)])
        assert code == 0
        doc = json.loads(out.read_text())
        assert doc["c_delta"] == 1.5
        assert doc["geometric_ratios"][0] == pytest.approx(1.5)

    def test_delta_range(self):
        assert cli.main(["two-point", "--delta", "2"]) == 64


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as e:
        cli.main(["--version"])
    assert e.value.code == 0
