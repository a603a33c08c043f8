"""Checkpointed counterexample scans for the open conjectures.

Candidate sets are enumerated in a canonical form (translate the min-corner
to the origin, then minimize lexicographically over the signed coordinate
permutations preserving the box), so each translation/unimodular class is
visited once.  Scans proceed in fixed-size shards; the checkpoint is a
single JSON file written atomically at shard boundaries, and resuming from
it reproduces the identical report stream.

A disproof record is conclusive only when it re-verifies by direct exact
recomputation of the witness ratio; estimate reversals (matroid pairs) are
evidence, not disproofs, since estimates bound the infima from above.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import tempfile
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .groups import GroupContext, PointSet, Vec, dimension, sumset
from .quasicube import log_span_check
from .search import (
    SearchConfig,
    alpha_estimate,
    beta_estimate,
    canonical_subsets,
    frac_str,
)

NEAR_LEDGER_SIZE = 100
SHARD_SIZE = 64

CONJECTURES = ("log_span", "matroid", "doubling_tripling")


@dataclass
class ScanState:
    conjecture: str
    cursor: int
    total: int
    examined: int
    skipped: int
    near: list[dict]  # smallest margins seen, ascending
    counterexample: Optional[dict]
    config: dict

    def to_json_dict(self) -> dict:
        return {
            "conjecture": self.conjecture,
            "cursor": self.cursor,
            "total": self.total,
            "examined": self.examined,
            "skipped": self.skipped,
            "near": self.near,
            "counterexample": self.counterexample,
            "config": self.config,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "ScanState":
        return ScanState(
            conjecture=d["conjecture"],
            cursor=d["cursor"],
            total=d["total"],
            examined=d["examined"],
            skipped=d["skipped"],
            near=d["near"],
            counterexample=d["counterexample"],
            config=d["config"],
        )

    def push_near(self, margin: Fraction, record: dict) -> None:
        entry = {"margin": frac_str(margin), "margin_float": float(margin), **record}
        self.near.append(entry)
        self.near.sort(key=lambda e: (e["margin_float"], json.dumps(e, sort_keys=True)))
        del self.near[NEAR_LEDGER_SIZE:]


def save_state(state: ScanState, path: str) -> None:
    """Atomic write: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(state.to_json_dict(), fh, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_state(path: str) -> ScanState:
    with open(path) as fh:
        return ScanState.from_json_dict(json.load(fh))


# --- canonical enumeration modulo translation and signed permutations -------


def box_transforms(dims: Sequence[int]) -> list[Callable[[Vec], Vec]]:
    """Signed coordinate permutations preserving the box shape (8 for a
    square 2-d box, 4 for a rectangle, 2 on a line)."""
    d = len(dims)
    perms = [p for p in itertools.permutations(range(d))
             if all(dims[p[i]] == dims[i] for i in range(d))]
    out = []
    for perm in perms:
        for signs in itertools.product((1, -1), repeat=d):
            out.append(lambda p, perm=perm, signs=signs: tuple(
                signs[i] * p[perm[i]] for i in range(d)
            ))
    return out


def canonical_form(points: Sequence[Vec], dims: Sequence[int]) -> tuple[Vec, ...]:
    d = len(dims)
    best = None
    for t in box_transforms(dims):
        imgs = [t(p) for p in points]
        mins = [min(q[i] for q in imgs) for i in range(d)]
        norm = tuple(sorted(tuple(q[i] - mins[i] for i in range(d)) for q in imgs))
        if best is None or norm < best:
            best = norm
    assert best is not None
    return best


def enumerate_canonical(d: int, side: int, max_size: int) -> list[tuple[Vec, ...]]:
    """Anchored box subsets that are minimal in their unimodular class."""
    ctx = GroupContext(d)
    dims = (side,) * d
    box = ((0, side - 1),) * d
    out = []
    for pts in canonical_subsets(ctx, box, max_size):
        if pts == canonical_form(pts, dims):
            out.append(pts)
    return out


def _emit(out_path: Optional[str], lines: list[str]) -> None:
    if out_path is None:
        return
    with open(out_path, "a") as fh:
        for line in lines:
            fh.write(line + "\n")


def scan_log_span(
    d: int,
    side: int,
    max_size: int,
    cfg: SearchConfig,
    checkpoint_path: Optional[str] = None,
    out_path: Optional[str] = None,
    shard_size: int = SHARD_SIZE,
    max_shards: Optional[int] = None,
) -> ScanState:
    """For each canonical V with the log-span property, exhaustively check
    that no scanned pair drops the squared tripling ratio below |V|^2.

    An exact witness below |V|^2 disproves the conjecture conclusively (the
    window minimum is an upper bound on the infimum)."""
    candidates = enumerate_canonical(d, side, max_size)
    config_echo = {"d": d, "side": side, "max_size": max_size, "search": cfg.echo()}
    if checkpoint_path and os.path.exists(checkpoint_path):
        state = load_state(checkpoint_path)
        if state.config != config_echo:
            raise ValueError("checkpoint was created with a different configuration")
    else:
        state = ScanState("log_span", 0, len(candidates), 0, 0, [], None, config_echo)
    ctx = GroupContext(d)
    shards_done = 0
    while state.cursor < state.total and state.counterexample is None:
        if max_shards is not None and shards_done >= max_shards:
            break
        shards_done += 1
        shard_end = min(state.cursor + shard_size, state.total)
        lines = []
        for idx in range(state.cursor, shard_end):
            pts = candidates[idx]
            V = PointSet.of(ctx, pts)
            ok, _ = log_span_check(V)
            if not ok:
                state.skipped += 1
                continue
            report = beta_estimate(V, cfg)
            margin = report.value_exact - len(V) ** 2
            state.examined += 1
            record = {"index": idx, "V": [list(p) for p in pts]}
            if margin < 0:
                # conclusive: re-verify the witness ratio directly
                A = PointSet.of(ctx, report.witness_a)
                B = PointSet.of(ctx, report.witness_b)
                n = len(sumset(sumset(A, B), V))
                assert Fraction(n * n, len(A) * len(B)) == report.value_exact
                state.counterexample = {
                    **record,
                    "A": [list(p) for p in report.witness_a],
                    "B": [list(p) for p in report.witness_b],
                    "ratio_squared": frac_str(report.value_exact),
                }
                lines.append(json.dumps(
                    {"type": "disproof", **state.counterexample}, sort_keys=True))
                break
            state.push_near(margin, record)
            lines.append(json.dumps(
                {"type": "margin", **record, "margin": frac_str(margin)}, sort_keys=True))
        state.cursor = shard_end if state.counterexample is None else state.cursor
        _emit(out_path, lines)
        if checkpoint_path:
            save_state(state, checkpoint_path)
        if state.counterexample is not None:
            break
    return state


@dataclass(frozen=True)
class MatroidMap:
    source: PointSet
    target: PointSet
    pairing: tuple[tuple[int, int], ...]  # (source index, target index)

    def __post_init__(self) -> None:
        if len(self.source) != len(self.target):
            raise ValueError("matroid map needs equal cardinalities")
        src = [i for i, _ in self.pairing]
        tgt = [j for _, j in self.pairing]
        if sorted(src) != list(range(len(self.source))) or sorted(tgt) != list(
            range(len(self.target))
        ):
            raise ValueError("pairing must be a bijection on indices")


def check_matroid_pair(m: MatroidMap, cfg: SearchConfig) -> dict:
    """If the map weakly drops dimension on every subset, compare matched
    exhaustive tripling estimates; a strict exact reversal on complete
    windows is evidence against the conjecture (never conclusive)."""
    U, V = m.source, m.target
    if len(U) > 8:
        raise ValueError("subset dimension enumeration capped at |U| <= 8")
    img = dict(m.pairing)
    for r in range(1, len(U) + 1):
        for I in itertools.combinations(range(len(U)), r):
            sub_u = PointSet.of(U.context, [U.points[i] for i in I])
            sub_v = PointSet.of(V.context, [V.points[img[i]] for i in I])
            if dimension(sub_v) > dimension(sub_u):
                return {
                    "applicable": False,
                    "reason": f"dimension increases on subset {list(I)}",
                }
    ru = beta_estimate(U, cfg)
    rv = beta_estimate(V, cfg)
    reversal = (
        ru.complete and rv.complete and rv.value_exact is not None
        and rv.value_exact > ru.value_exact
    )
    return {
        "applicable": True,
        "beta_sq_source": frac_str(ru.value_exact),
        "beta_sq_target": frac_str(rv.value_exact),
        "evidence_against": reversal,
        "conclusive": False,
    }


def scan_doubling_tripling(
    d: int,
    side: int,
    max_size: int,
    cfg: SearchConfig,
    checkpoint_path: Optional[str] = None,
    out_path: Optional[str] = None,
    shard_size: int = SHARD_SIZE,
    max_shards: Optional[int] = None,
) -> ScanState:
    """For each canonical U compute the six estimates on matched windows;
    exact violations of the proved variant chains are bugs, margins of the
    conjectural equalities and of beta <= alpha^2 are recorded."""
    candidates = enumerate_canonical(d, side, max_size)
    config_echo = {"d": d, "side": side, "max_size": max_size, "search": cfg.echo()}
    if checkpoint_path and os.path.exists(checkpoint_path):
        state = load_state(checkpoint_path)
        if state.config != config_echo:
            raise ValueError("checkpoint was created with a different configuration")
    else:
        state = ScanState("doubling_tripling", 0, len(candidates), 0, 0, [], None, config_echo)
    ctx = GroupContext(d)
    box_pts = {p for p in itertools.product(*[range(lo, hi + 1) for lo, hi in cfg.box])}
    shards_done = 0
    while state.cursor < state.total and state.counterexample is None:
        if max_shards is not None and shards_done >= max_shards:
            break
        shards_done += 1
        shard_end = min(state.cursor + shard_size, state.total)
        lines = []
        for idx in range(state.cursor, shard_end):
            pts = candidates[idx]
            U = PointSet.of(ctx, pts)
            if not set(U.points) <= box_pts:
                state.skipped += 1
                continue
            est = {}
            for variant in ("unrestricted", "isometric", "isomeric"):
                cfgv = replace(cfg, variant=variant)
                est[("beta", variant)] = beta_estimate(U, cfgv).value_exact
                est[("alpha", variant)] = alpha_estimate(
                    U, replace(cfgv, max_cardinality=max(cfg.max_cardinality, len(U)))
                ).value_exact
            b = [est[("beta", v)] for v in ("unrestricted", "isometric", "isomeric")]
            a = [est[("alpha", v)] for v in ("unrestricted", "isometric", "isomeric")]
            if not (b[0] <= b[1] <= b[2] and a[0] <= a[1] <= a[2]):
                # proved chain violated: implementation bug, stop the scan
                state.counterexample = {
                    "index": idx, "U": [list(p) for p in pts], "kind": "bug",
                    "beta_sq": [frac_str(x) for x in b],
                    "alpha_sq": [frac_str(x) for x in a],
                }
                lines.append(json.dumps({"type": "bug", **state.counterexample}, sort_keys=True))
                break
            state.examined += 1
            # beta <= alpha^2  <=>  beta^2 <= (alpha^2)^2 on squared ratios
            dt_margin = a[0] * a[0] - b[0]
            record = {"index": idx, "U": [list(p) for p in pts]}
            state.push_near(dt_margin, record)
            lines.append(json.dumps({
                "type": "margins", **record,
                "doubling_tripling": frac_str(dt_margin),
                "alpha_variants_gap": frac_str(a[2] - a[0]),
                "beta_variants_gap": frac_str(b[2] - b[0]),
            }, sort_keys=True))
        state.cursor = shard_end if state.counterexample is None else state.cursor
        _emit(out_path, lines)
        if checkpoint_path:
            save_state(state, checkpoint_path)
        if state.counterexample is not None:
            break
    return state
