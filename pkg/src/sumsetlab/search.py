"""Witnessed upper-bound estimation of the doubling/tripling functionals.

The functionals are infima over all finite sets (or functions), so any
finite search yields an upper bound together with a witness; reports carry
the witness and are replayable: the reported value is recomputable from the
witness alone.  Exhaustive enumeration runs over canonical representatives
modulo translation (every target ratio is translation invariant), anchoring
the min-corner of each set at the box origin.  Ties break to the
lexicographically least canonical pair, so reports are deterministic at any
parallelism level.

Ratio comparisons at rational p = pa/pb are exact: with normalizer
|A|^(1/p) |B|^(1-1/p), compare s1^pa a2^pb b2^(pa-pb) against
s2^pa a1^pb b1^(pa-pb) in big integers.
"""

from __future__ import annotations

import itertools
import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .functional import (
    WeightedFunction,
    gamma_ratio,
    l1_norm,
    lp_norm,
    max_convolve,
)
from .groups import GroupContext, PointSet, Vec, sumset

TOOL_VERSION = "0.1.0"
DEFAULT_NODE_CEILING = 5_000_000
NODE_CEILING_ENV = "SUMSETLAB_NODE_CEILING"

VARIANTS = ("unrestricted", "isometric", "isomeric")
STRATEGIES = ("exhaustive", "hill_climb", "geometric_family")


def node_ceiling_default() -> int:
    env = os.environ.get(NODE_CEILING_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_NODE_CEILING


@dataclass(frozen=True)
class SearchConfig:
    box: tuple[tuple[int, int], ...]  # inclusive (lo, hi) per free coordinate
    max_cardinality: int
    p: Fraction = Fraction(2)
    variant: str = "unrestricted"
    strategy: str = "exhaustive"
    seed: int = 0
    parallelism: int = 1
    node_ceiling: int | None = None
    budget_ms: int | None = None
    geometric_max_r: int = 8
    hill_climb_restarts: int = 20

    def __post_init__(self) -> None:
        if self.max_cardinality < 1:
            raise ValueError("max_cardinality must be >= 1")
        if any(lo > hi for lo, hi in self.box):
            raise ValueError("box intervals must be nonempty")
        if Fraction(self.p) <= 1:
            raise ValueError("p must exceed 1")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be >= 1")

    @property
    def effective_node_ceiling(self) -> int:
        return self.node_ceiling if self.node_ceiling is not None else node_ceiling_default()

    def echo(self) -> dict:
        return {
            "box": [[lo, hi] for lo, hi in self.box],
            "max_cardinality": self.max_cardinality,
            "p": frac_str(self.p),
            "variant": self.variant,
            "strategy": self.strategy,
            "seed": self.seed,
            "parallelism": self.parallelism,
            "node_ceiling": self.effective_node_ceiling,
            "budget_ms": self.budget_ms,
            "geometric_max_r": self.geometric_max_r,
        }


def frac_str(x: Fraction | int) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class EstimateReport:
    quantity: str
    p: Fraction
    variant: str
    value_float: float
    value_exact: Optional[Fraction]  # squared ratio at p=2
    witness_a: tuple[Vec, ...]
    witness_b: tuple[Vec, ...]
    nodes: int
    complete: bool
    config: dict
    history: tuple[tuple[float, tuple[Vec, ...], tuple[Vec, ...]], ...] = ()
    tool_version: str = TOOL_VERSION

    def to_json_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "p": frac_str(self.p),
            "variant": self.variant,
            "value_float": self.value_float,
            "value_exact": frac_str(self.value_exact) if self.value_exact is not None else None,
            "witness_a": [list(p) for p in self.witness_a],
            "witness_b": [list(p) for p in self.witness_b],
            "nodes": self.nodes,
            "complete": self.complete,
            "config": self.config,
            "tool_version": self.tool_version,
        }


# --- exact ratio ordering ---------------------------------------------------


def compare_ratios(
    s1: int, a1: int, b1: int, s2: int, a2: int, b2: int, p: Fraction
) -> int:
    """Sign of s1/(a1^(1/p) b1^(1/q)) - s2/(a2^(1/p) b2^(1/q)), exactly."""
    pa, pb = Fraction(p).numerator, Fraction(p).denominator
    lhs = s1**pa * a2**pb * b2 ** (pa - pb)
    rhs = s2**pa * a1**pb * b1 ** (pa - pb)
    return (lhs > rhs) - (lhs < rhs)


def ratio_float(s: int, a: int, b: int, p: Fraction) -> float:
    invp = 1.0 / float(p)
    return s / (a**invp * b ** (1.0 - invp))


# --- canonical enumeration --------------------------------------------------


def box_points(ctx: GroupContext, box: Sequence[tuple[int, int]]) -> list[Vec]:
    """All group elements whose free part lies in the box (torsion full)."""
    if len(box) != ctx.free_rank:
        raise ValueError("box arity does not match the free rank")
    free_ranges = [range(lo, hi + 1) for lo, hi in box]
    tors_ranges = [range(m) for m in ctx.torsion_moduli]
    pts = [
        tuple(f) + tuple(t)
        for f in itertools.product(*free_ranges)
        for t in itertools.product(*tors_ranges)
    ]
    return sorted(pts, key=ctx.sort_key)


def _anchored(points: Sequence[Vec], ctx: GroupContext, box: Sequence[tuple[int, int]]) -> bool:
    d = ctx.free_rank
    return all(
        min(p[i] for p in points) == box[i][0] for i in range(d)
    )


def canonical_subsets(
    ctx: GroupContext, box: Sequence[tuple[int, int]], max_card: int
) -> list[tuple[Vec, ...]]:
    """Subsets of the box, min-corner anchored at the box origin, sorted.

    These are representatives of box subsets modulo free translation.
    """
    pts = box_points(ctx, box)
    out = []
    for k in range(1, max_card + 1):
        for combo in itertools.combinations(pts, k):
            if ctx.free_rank == 0 or _anchored(combo, ctx, box):
                out.append(combo)
    out.sort()
    return out


def _pair_stream(n: int, variant: str) -> Iterable[tuple[int, int]]:
    if variant == "isomeric":
        for i in range(n):
            yield i, i
    else:
        for i in range(n):
            for j in range(n):
                yield i, j


def _merge_histories(chunks, p: Fraction):
    """Filter concatenated chunk-local improvement lists to the global
    improvement sequence; identical to the sequential scan's history."""
    best = None
    history = []
    for chunk in chunks:
        for key, wa, wb in chunk:
            if best is None or compare_ratios(*key, *best, p) < 0:
                best = key
                history.append((key, wa, wb))
    return best, history


def _scan_pairs(
    sets: list[tuple[Vec, ...]],
    U: Optional[PointSet],
    ctx: GroupContext,
    cfg: SearchConfig,
    quantity: str,
) -> EstimateReport:
    """Shared exhaustive pair scan for alpha (U folded into the candidate
    sets already) and beta (U added to every pair sum)."""
    p = Fraction(cfg.p)
    n = len(sets)
    ceiling = cfg.effective_node_ceiling

    upoints = U.points if U is not None else None

    if ctx.is_torsion_free and ctx.free_rank == 1:
        # bitmask fast path: sumsets on Z are shift-or-popcount
        glb = min(p[0] for s in sets for p in s)
        masks = [sum(1 << (p[0] - glb) for p in s) for s in sets]
        shifts = [[p[0] - glb for p in s] for s in sets]
        ushifts = None
        if upoints is not None:
            umin = min(p[0] for p in upoints)
            ushifts = [p[0] - umin for p in upoints]

        def eval_pair(i: int, j: int) -> tuple[int, int, int]:
            m = masks[i]
            s = 0
            for b in shifts[j]:
                s |= m << b
            if ushifts is not None:
                t = 0
                for u in ushifts:
                    t |= s << u
                s = t
            return s.bit_count(), len(sets[i]), len(sets[j])
    else:
        def eval_pair(i: int, j: int) -> tuple[int, int, int]:
            A, B = sets[i], sets[j]
            ab = {ctx.add(a, b) for a in A for b in B}
            if upoints is not None:
                s = {ctx.add(x, u) for x in ab for u in upoints}
            else:
                s = ab
            return len(s), len(A), len(B)

    pairs = list(_pair_stream(n, cfg.variant))
    if cfg.variant == "isometric":
        pairs = [(i, j) for i, j in pairs if len(sets[i]) == len(sets[j])]

    complete = True
    if len(pairs) > ceiling:
        pairs = pairs[:ceiling]
        complete = False

    chunk_size = 4096
    chunks = [pairs[k : k + chunk_size] for k in range(0, len(pairs), chunk_size)]

    def run_chunk(chunk):
        local_best = None
        improvements = []
        for i, j in chunk:
            key = eval_pair(i, j)
            if local_best is None or compare_ratios(*key, *local_best, p) < 0:
                local_best = key
                improvements.append((key, sets[i], sets[j]))
        return improvements

    if cfg.parallelism > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=cfg.parallelism) as ex:
            results = list(ex.map(run_chunk, chunks))
    else:
        results = [run_chunk(c) for c in chunks]

    best, history = _merge_histories(results, p)
    assert best is not None
    s, a, b = best
    wa, wb = next((wa, wb) for key, wa, wb in reversed(history) if key == best)
    value_exact = Fraction(s * s, a * b) if p == 2 else None
    return EstimateReport(
        quantity=quantity,
        p=p,
        variant=cfg.variant,
        value_float=ratio_float(s, a, b, p),
        value_exact=value_exact,
        witness_a=wa,
        witness_b=wb,
        nodes=len(pairs),
        complete=complete,
        config=cfg.echo(),
        history=tuple((ratio_float(*k, p), x, y) for k, x, y in history),
    )


def beta_estimate(U: PointSet, cfg: SearchConfig) -> EstimateReport:
    """Upper bound on beta_p(U): min over enumerated (A, B) of
    |A+B+U| / (|A|^(1/p) |B|^(1-1/p)), canonical modulo translation."""
    if not U.points:
        raise ValueError("U must be nonempty")
    ctx = U.context
    if cfg.strategy == "hill_climb":
        return _beta_hill_climb(U, cfg)
    sets = canonical_subsets(ctx, cfg.box, cfg.max_cardinality)
    return _scan_pairs(sets, U, ctx, cfg, "beta")


def alpha_estimate(U: PointSet, cfg: SearchConfig) -> EstimateReport:
    """Upper bound on alpha(U): min over enumerated A, B containing U of
    |A+B| / (|A|^(1/p) |B|^(1-1/p))."""
    if not U.points:
        raise ValueError("U must be nonempty")
    ctx = U.context
    pts = box_points(ctx, cfg.box)
    upts = set(U.points)
    if not upts <= set(pts):
        raise ValueError("U must lie inside the search box for alpha")
    extra = [q for q in pts if q not in upts]
    room = cfg.max_cardinality - len(U)
    if room < 0:
        raise ValueError("max_cardinality below |U|")
    sets = []
    for k in range(0, room + 1):
        for combo in itertools.combinations(extra, k):
            sets.append(tuple(sorted(U.points + combo)))
    sets.sort()
    return _scan_pairs(sets, None, ctx, cfg, "alpha")


def _beta_hill_climb(U: PointSet, cfg: SearchConfig) -> EstimateReport:
    """Seeded random-restart local search: add/remove one point of A or B,
    accept strict ratio decrease."""
    ctx = U.context
    p = Fraction(cfg.p)
    rng = random.Random(cfg.seed)
    pts = box_points(ctx, cfg.box)
    nodes = 0

    def key_of(A: frozenset, B: frozenset) -> tuple[int, int, int]:
        SA = PointSet.of(ctx, A)
        SB = PointSet.of(ctx, B)
        return len(sumset(sumset(SA, SB), U)), len(A), len(B)

    best_key = None
    best_wit = None
    for _ in range(cfg.hill_climb_restarts):
        A = frozenset(rng.sample(pts, rng.randint(1, cfg.max_cardinality)))
        B = frozenset(rng.sample(pts, rng.randint(1, cfg.max_cardinality)))
        if cfg.variant == "isomeric":
            B = A
        cur = key_of(A, B)
        nodes += 1
        improved = True
        while improved:
            improved = False
            for side in (0, 1):
                base = A if side == 0 else B
                moves = [base | {q} for q in pts if q not in base and len(base) < cfg.max_cardinality]
                moves += [base - {q} for q in base if len(base) > 1]
                for cand in moves:
                    na, nb = (cand, B) if side == 0 else (A, cand)
                    if cfg.variant == "isomeric":
                        na = nb = cand
                    if cfg.variant == "isometric" and len(na) != len(nb):
                        continue
                    k = key_of(na, nb)
                    nodes += 1
                    if compare_ratios(*k, *cur, p) < 0:
                        A, B, cur = na, nb, k
                        improved = True
                        break
                if improved:
                    break
        if best_key is None or compare_ratios(*cur, *best_key, p) < 0:
            best_key = cur
            best_wit = (
                tuple(sorted(A, key=ctx.sort_key)),
                tuple(sorted(B, key=ctx.sort_key)),
            )
    assert best_key is not None and best_wit is not None
    s, a, b = best_key
    return EstimateReport(
        quantity="beta",
        p=p,
        variant=cfg.variant,
        value_float=ratio_float(s, a, b, p),
        value_exact=Fraction(s * s, a * b) if p == 2 else None,
        witness_a=best_wit[0],
        witness_b=best_wit[1],
        nodes=nodes,
        complete=False,  # heuristic search never certifies the window
        config=cfg.echo(),
    )


# --- gamma ------------------------------------------------------------------


def gamma_indicator_estimate(f: WeightedFunction, cfg: SearchConfig) -> EstimateReport:
    """Min of ||f*1_A*1_B||_1 / (|A|^(1/p) |B|^(1/q)) over canonical box
    subsets, evaluated through the max-convolution machinery."""
    if not f.entries:
        raise ValueError("f must have nonempty support")
    ctx = f.context
    p = Fraction(cfg.p)
    pa, pb = p.numerator, p.denominator
    sets = canonical_subsets(ctx, cfg.box, cfg.max_cardinality)
    ceiling = cfg.effective_node_ceiling

    best = None  # (num: Fraction, a, b)
    best_wit = None
    nodes = 0
    complete = True
    for i, j in _pair_stream(len(sets), cfg.variant):
        A, B = sets[i], sets[j]
        if cfg.variant == "isometric" and len(A) != len(B):
            continue
        if nodes >= ceiling:
            complete = False
            break
        nodes += 1
        one = Fraction(1) if f.exact else 1.0
        ga = WeightedFunction.of(ctx, [(q, one) for q in A])
        gb = WeightedFunction.of(ctx, [(q, one) for q in B])
        num = l1_norm(max_convolve(max_convolve(f, ga), gb))
        if f.exact:
            num = Fraction(num)
        key = (num, len(A), len(B))
        if best is None or _gamma_less(key, best, pa, pb):
            best = key
            best_wit = (A, B)
    assert best is not None and best_wit is not None
    num, a, b = best
    invp = 1.0 / float(p)
    val = float(num) / (a**invp * b ** (1.0 - invp))
    value_exact = num * num / Fraction(a * b) if p == 2 and f.exact else None
    return EstimateReport(
        quantity="gamma",
        p=p,
        variant=cfg.variant,
        value_float=val,
        value_exact=value_exact,
        witness_a=best_wit[0],
        witness_b=best_wit[1],
        nodes=nodes,
        complete=complete,
        config=cfg.echo(),
    )


def _gamma_less(k1, k2, pa: int, pb: int) -> bool:
    n1, a1, b1 = k1
    n2, a2, b2 = k2
    lhs = n1**pa * a2**pb * b2 ** (pa - pb)
    rhs = n2**pa * a1**pb * b1 ** (pa - pb)
    return lhs < rhs


def refine_weights_coordinate_descent(
    f: WeightedFunction,
    support_g: Sequence[Vec],
    support_h: Sequence[Vec],
    p: Fraction | float,
    init_g: Sequence[float] | None = None,
    init_h: Sequence[float] | None = None,
    rel_tol: float = 1e-10,
    max_sweeps: int = 200,
) -> tuple[float, list[float], list[float]]:
    """Cyclic single-weight optimization of the gamma ratio on fixed
    supports; stops when a full sweep improves by less than rel_tol."""
    from scipy.optimize import minimize_scalar

    ctx = f.context
    ff = WeightedFunction.of(ctx, [(q, float(w)) for q, w in f.entries]) if f.exact else f
    gw = [float(x) for x in (init_g if init_g is not None else [1.0] * len(support_g))]
    hw = [float(x) for x in (init_h if init_h is not None else [1.0] * len(support_h))]

    def build(ws, supp):
        return WeightedFunction.of(ctx, [(q, w) for q, w in zip(supp, ws) if w > 0])

    def objective() -> float:
        g = build(gw, support_g)
        h = build(hw, support_h)
        if not g.entries or not h.entries:
            return math.inf
        return gamma_ratio(ff, g, h, float(p))

    cur = objective()
    for _ in range(max_sweeps):
        start = cur
        for ws in (gw, hw):
            for idx in range(len(ws)):
                saved = ws[idx]

                def one(x: float, idx=idx, ws=ws) -> float:
                    ws[idx] = max(x, 0.0)
                    v = objective()
                    return v

                res = minimize_scalar(one, bounds=(0.0, 4.0), method="bounded")
                if res.fun < cur:
                    ws[idx] = max(float(res.x), 0.0)
                    cur = float(res.fun)
                else:
                    ws[idx] = saved
        if start - cur < rel_tol * max(abs(start), 1.0):
            break
    return cur, gw, hw


def gamma_estimate(f: WeightedFunction, cfg: SearchConfig) -> EstimateReport:
    """Upper bound on gamma_p(f).

    exhaustive: indicator pairs in the box, then coordinate-descent weight
    refinement on the best supports.  geometric_family: g = h =
    (1, delta, ..., delta^r) for a two-point f (1-dimensional only).
    """
    if cfg.strategy == "geometric_family":
        return _gamma_geometric(f, cfg)
    report = gamma_indicator_estimate(f, cfg)
    refined, gw, hw = refine_weights_coordinate_descent(
        f, report.witness_a, report.witness_b, cfg.p
    )
    if refined < report.value_float - 1e-12:
        return replace(report, value_float=refined, value_exact=None)
    return report


def _two_point_delta(f: WeightedFunction) -> Fraction | float:
    if f.context.free_rank != 1 or f.context.torsion_moduli or len(f.entries) != 2:
        raise ValueError("geometric_family needs a two-point function on Z")
    (x0, w0), (x1, w1) = f.entries
    if x1[0] - x0[0] != 1:
        raise ValueError("two-point support must be adjacent integers")
    return w1 / w0 if w1 <= w0 else w0 / w1


def _gamma_geometric(f: WeightedFunction, cfg: SearchConfig) -> EstimateReport:
    delta = _two_point_delta(f)
    best = math.inf
    best_r = 0
    for r in range(cfg.geometric_max_r + 1):
        val = geometric_family_ratio(float(delta), float(cfg.p), r, r)
        if val < best:
            best = val
            best_r = r
    witness = tuple((i,) for i in range(best_r + 1))
    return EstimateReport(
        quantity="gamma",
        p=Fraction(cfg.p),
        variant=cfg.variant,
        value_float=best,
        value_exact=None,
        witness_a=witness,
        witness_b=witness,
        nodes=cfg.geometric_max_r + 1,
        complete=False,
        config=cfg.echo(),
    )


# --- closed forms for the two-point family ----------------------------------


def geometric_family_ratio(delta: float, p: float, r: int, s: int) -> float:
    """Ratio ||f_delta * g * h||_1 / (||g||_p ||h||_q) for g = (1, ..., delta^r),
    h = (1, ..., delta^s), f_delta = (1, delta)."""
    if not 0 <= delta <= 1:
        raise ValueError("delta must lie in [0, 1]")
    if p <= 1:
        raise ValueError("p must exceed 1")
    q = p / (p - 1.0)
    num = sum(delta**j for j in range(r + s + 2))
    gp = sum(delta ** (p * i) for i in range(r + 1)) ** (1.0 / p)
    hq = sum(delta ** (q * j) for j in range(s + 1)) ** (1.0 / q)
    return num / (gp * hq)


def geometric_family_ratio_squared_exact(delta: Fraction, r: int, s: int) -> Fraction:
    """Exact square of the p=2 geometric-family ratio for rational delta."""
    d = Fraction(delta)
    if not 0 <= d <= 1:
        raise ValueError("delta must lie in [0, 1]")
    num = sum((d**j for j in range(r + s + 2)), Fraction(0))
    g2 = sum((d ** (2 * i) for i in range(r + 1)), Fraction(0))
    h2 = sum((d ** (2 * j) for j in range(s + 1)), Fraction(0))
    return num * num / (g2 * h2)


def two_point_constant(delta: float, p: float) -> float:
    """c_delta(p) = (1-delta^p)^(1/p) (1-delta^q)^(1/q) / (1-delta), the
    limit of the geometric-family ratios; at p=2 this is 1+delta.  The
    endpoints are limits: c_0 = 1 and c_1 = p^(1/p) q^(1/q)."""
    if not 0 <= delta <= 1:
        raise ValueError("delta must lie in [0, 1]")
    if p <= 1:
        raise ValueError("p must exceed 1")
    q = p / (p - 1.0)
    if delta == 0:
        return 1.0
    if delta == 1:
        return p ** (1.0 / p) * q ** (1.0 / q)
    if p == 2:
        return 1.0 + delta
    return ((1 - delta**p) ** (1.0 / p) * (1 - delta**q) ** (1.0 / q)) / (1 - delta)


def two_point_constant_exact(delta: Fraction) -> Fraction:
    """c_delta at p=2, exactly: 1 + delta."""
    d = Fraction(delta)
    if not 0 <= d <= 1:
        raise ValueError("delta must lie in [0, 1]")
    return 1 + d


#: limit of c_p as p -> 1+ (p^(1/p) -> 1, q^(1/q) -> 1)
C_P_LIMIT_AT_ONE = Fraction(1, 2)


def c_p_constant(p: float | Fraction) -> float:
    """c_p = p^(1/p) q^(1/q) / 2 <= 1, with equality exactly at p = 2."""
    pf = float(p)
    if pf <= 1:
        raise ValueError("p must exceed 1")
    if pf == 2.0:
        return 1.0
    q = pf / (pf - 1.0)
    return pf ** (1.0 / pf) * q ** (1.0 / q) / 2.0
