"""Vectorized exhaustive tripling verification over small boxes.

Verifies, for every canonical pair (A, B) of box subsets and a given set V,
that |A+B+V|^2 >= |V|^2 |A| |B| with exact integer arithmetic, and that
equality is attained (singleton pairs give |A+B+V| = |V|).  The pair space
is large (~10^8 for a 6x6 box at cardinality 4), so pairs are packed into
bitmask grids and screened by one numpy popcount pass; only pairs failing an
exact integer certificate are re-checked per V with exact big-int masks.

The certificate: in a torsion-free commutative group, |X+Y| >= |X|+|Y|-1
for finite nonempty X, Y (project along an injective-on-X-union-Y linear
functional to Z; the |X|+|Y|-1 distinct sums of sorted prefixes survive).
Hence |A+B+V| >= s+v-1 with s = |A+B|, v = |V|, and a pair is safe for
every V of size v once (s+v-1)^2 >= v^2 |A| |B|.  The inequality itself is
property-tested in the suite; survivors are decided by direct computation,
so the scan stays exact.

Grid packing: point (x, y) of the box maps to bit y*stride + x with stride
2*w-1 (w the box width), so all sums A+B stay in distinct rows; A fits one
uint64 word and A+B fits two.  Exact rechecks use Python ints at stride 64.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

Pt = tuple[int, ...]

WIDE = 64  # stride of the Python-int masks used for exact rechecks
CHUNK = 256  # fixed outer-loop chunk; results merge in chunk order


@dataclass
class ExhaustiveBetaScan:
    dims: tuple[int, ...]
    max_card: int
    max_v: int
    sets: list[tuple[Pt, ...]]
    sizes: np.ndarray
    surv_i: np.ndarray
    surv_j: np.ndarray
    surv_pop: np.ndarray
    surv_ab: np.ndarray
    surv_masks: list[int]  # wide-stride masks of A+B for surviving pairs
    pair_count: int


def anchored_subsets(dims: Sequence[int], max_card: int) -> list[tuple[Pt, ...]]:
    """Nonempty box subsets with min coordinate 0 in every axis, sorted.

    These represent subsets of any translated box modulo translation.
    """
    d = len(dims)
    pts = list(itertools.product(*[range(n) for n in dims]))
    out = []
    for k in range(1, max_card + 1):
        for combo in itertools.combinations(pts, k):
            if all(min(p[i] for p in combo) == 0 for i in range(d)):
                out.append(combo)
    out.sort()
    return out


def _largest_unsafe_s(ab: int, v: int) -> int:
    # largest s with (s+v-1)^2 < v^2*ab; 0 when no such s >= 1
    s = 0
    while (s + v) ** 2 < v * v * ab:
        s += 1
    return s


def _wide_mask(points) -> int:
    m = 0
    for p in points:
        x = p[0]
        y = p[1] if len(p) > 1 else 0
        m |= 1 << (y * WIDE + x)
    return m


def build_scan(
    dims: Sequence[int], max_card: int, max_v: int = 4, threads: int = 1
) -> ExhaustiveBetaScan:
    """One popcount pass over all canonical unordered pairs, recording the
    pairs the integer certificate cannot clear at any v in [2, max_v]."""
    dims = tuple(dims)
    d = len(dims)
    if d not in (1, 2):
        raise ValueError("bit scan supports dimensions 1 and 2 only")
    stride = 1 if d == 1 else 2 * dims[0] - 1

    def idx(p: Pt) -> int:
        return p[0] if d == 1 else p[1] * stride + p[0]

    max_pt = idx(tuple(n - 1 for n in dims))
    max_sum = idx(tuple(2 * (n - 1) for n in dims))
    if max_pt > 63 or max_sum > 127:
        raise ValueError("box too large for the two-word bit scan")

    sets = anchored_subsets(dims, max_card)
    n = len(sets)
    sizes = np.array([len(s) for s in sets], dtype=np.int64)
    masks = np.zeros(n, dtype=np.uint64)
    shifts = np.full((n, max_card), -1, dtype=np.int64)
    for i, s in enumerate(sets):
        m = 0
        for k, p in enumerate(s):
            m |= 1 << idx(p)
            shifts[i, k] = idx(p)
        masks[i] = m

    abmax = max_card * max_card
    smax_any = np.zeros(abmax + 1, dtype=np.int64)
    for ab in range(1, abmax + 1):
        smax_any[ab] = max(_largest_unsafe_s(ab, v) for v in range(2, max_v + 1))

    def run_chunk(c0: int):
        out_i, out_j, out_pop = [], [], []
        hi_end = min(c0 + CHUNK, n)
        for i in range(c0, hi_end):
            a_mask = masks[i]
            a_size = int(sizes[i])
            m = n - i
            lo = np.zeros(m, dtype=np.uint64)
            hi = np.zeros(m, dtype=np.uint64)
            for k in range(max_card):
                sv = shifts[i:, k]
                valid = sv >= 0
                svu = np.where(valid, sv, 0).astype(np.uint64)
                lo |= np.where(valid, a_mask << svu, np.uint64(0))
                hs = np.where(sv > 0, 64 - sv, 63).astype(np.uint64)
                hi |= np.where(sv > 0, a_mask >> hs, np.uint64(0))
            pop = np.bitwise_count(lo).astype(np.int64) + np.bitwise_count(hi).astype(np.int64)
            ab = a_size * sizes[i:]
            assert np.all(pop >= a_size + sizes[i:] - 1)
            surv = pop <= smax_any[ab]
            if np.any(surv):
                jj = np.nonzero(surv)[0]
                out_i.append(np.full(len(jj), i, dtype=np.int64))
                out_j.append(jj + i)
                out_pop.append(pop[jj])
        cat = lambda xs: np.concatenate(xs) if xs else np.zeros(0, dtype=np.int64)
        return cat(out_i), cat(out_j), cat(out_pop)

    starts = list(range(0, n, CHUNK))
    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            chunks = list(ex.map(run_chunk, starts))
    else:
        chunks = [run_chunk(c) for c in starts]

    surv_i = np.concatenate([c[0] for c in chunks])
    surv_j = np.concatenate([c[1] for c in chunks])
    surv_pop = np.concatenate([c[2] for c in chunks])
    surv_ab = sizes[surv_i] * sizes[surv_j]

    surv_masks = []
    for i, j in zip(surv_i.tolist(), surv_j.tolist()):
        A, B = sets[i], sets[j]
        surv_masks.append(
            _wide_mask({tuple(a + b for a, b in zip(p, q)) for p in A for q in B})
        )

    pair_count = n * (n + 1) // 2
    return ExhaustiveBetaScan(
        dims, max_card, max_v, sets, sizes, surv_i, surv_j, surv_pop, surv_ab,
        surv_masks, pair_count,
    )


def verify_subset_beta(scan: ExhaustiveBetaScan, v_points: Sequence[Pt]) -> dict:
    """Exact verdict that min |A+B+V|^2 / (|A||B|) over the scanned pairs is
    exactly |V|^2, attained at the singleton pair.

    V must be translated to nonnegative coordinates with min 0 per axis.
    """
    d = len(scan.dims)
    vpts = sorted({tuple(p) for p in v_points})
    if not vpts or any(len(p) != d for p in vpts):
        raise ValueError("V must be nonempty with matching dimension")
    for i in range(d):
        if min(p[i] for p in vpts) != 0:
            raise ValueError("V must be normalized to min coordinate 0")
    v = len(vpts)
    if v > scan.max_v:
        raise ValueError(f"|V| = {v} above the scan's certificate bound {scan.max_v}")
    if max(p[0] for p in vpts) + 2 * (scan.dims[0] - 1) >= WIDE:
        raise ValueError("V too wide for the exact recheck stride")

    result = {
        "size": v,
        "min_ratio_squared": Fraction(v * v),
        "attained_at_singletons": True,  # A = B = {0} gives |A+B+V| = |V|
        "pair_count": scan.pair_count,
        "holds": True,
        "counterexample": None,
    }
    if v == 1:
        # (s+v-1)^2 >= v^2*ab reduces to (a+b-1)^2 >= ab, true for all a, b
        result["checked_pairs"] = 0
        return result

    # survivors whose certificate fails at this particular v
    need = (scan.surv_pop + (v - 1)) ** 2 < v * v * scan.surv_ab
    cand = np.nonzero(need)[0]
    vshifts = [(p[1] if d > 1 else 0) * WIDE + p[0] for p in vpts]
    worst: Optional[int] = None
    worst_pair = None
    for c in cand.tolist():
        s_mask = scan.surv_masks[c]
        t = 0
        for sh in vshifts:
            t |= s_mask << sh
        slack = t.bit_count() ** 2 - v * v * int(scan.surv_ab[c])
        if worst is None or slack < worst:
            worst = slack
            worst_pair = c
    result["checked_pairs"] = int(len(cand))
    if worst is not None and worst < 0:
        c = worst_pair
        i, j = int(scan.surv_i[c]), int(scan.surv_j[c])
        result["holds"] = False
        result["counterexample"] = {
            "A": scan.sets[i],
            "B": scan.sets[j],
            "V": tuple(vpts),
            "slack": worst,
        }
    return result
