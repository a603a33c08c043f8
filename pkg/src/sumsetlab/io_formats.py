"""Text formats for point sets, weighted functions, and quasicube specs.

Point set:
    group <free_rank> [mod <m1> <m2> ...]
    <free_rank + k integers per line>
Function files use the same header; each line carries the coordinates
followed by one weight token, a decimal (numeric mode) or `a/b` rational /
plain integer (exact mode).  `#` starts a comment.  Output is canonical:
sorted lines, LF-terminated.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .functional import WeightedFunction
from .groups import GroupContext, PointSet


class FormatError(ValueError):
    pass


def _parse_header(line: str) -> GroupContext:
    toks = line.split()
    if not toks or toks[0] != "group":
        raise FormatError(f"expected 'group' header, got {line!r}")
    try:
        free_rank = int(toks[1])
    except (IndexError, ValueError):
        raise FormatError("header must be 'group <free_rank> [mod <m1> ...]'")
    moduli: tuple[int, ...] = ()
    rest = toks[2:]
    if rest:
        if rest[0] != "mod":
            raise FormatError(f"unexpected header token {rest[0]!r}")
        try:
            moduli = tuple(int(t) for t in rest[1:])
        except ValueError:
            raise FormatError("moduli must be integers")
        if not moduli:
            raise FormatError("'mod' requires at least one modulus")
    try:
        return GroupContext(free_rank, moduli)
    except ValueError as e:
        raise FormatError(str(e))


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_point_set(text: str) -> PointSet:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty input")
    ctx = _parse_header(lines[0])
    pts = []
    seen = set()
    for line in lines[1:]:
        toks = line.split()
        if len(toks) != ctx.arity:
            raise FormatError(f"expected {ctx.arity} coordinates, got {line!r}")
        try:
            p = ctx.reduce(tuple(int(t) for t in toks))
        except ValueError as e:
            raise FormatError(str(e))
        if p in seen:
            raise FormatError(f"duplicate point {p}")
        seen.add(p)
        pts.append(p)
    if not pts:
        raise FormatError("point set has no points")
    return PointSet.of(ctx, pts)


def _format_header(ctx: GroupContext) -> str:
    head = f"group {ctx.free_rank}"
    if ctx.torsion_moduli:
        head += " mod " + " ".join(str(m) for m in ctx.torsion_moduli)
    return head


def format_point_set(A: PointSet) -> str:
    lines = [_format_header(A.context)]
    for p in A.points:
        lines.append(" ".join(str(x) for x in p))
    return "\n".join(lines) + "\n"


def _parse_weight(tok: str) -> Union[Fraction, float]:
    if "/" in tok:
        num, den = tok.split("/", 1)
        try:
            return Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError):
            raise FormatError(f"bad rational weight {tok!r}")
    if "." in tok or "e" in tok or "E" in tok:
        try:
            return float(tok)
        except ValueError:
            raise FormatError(f"bad decimal weight {tok!r}")
    try:
        return Fraction(int(tok))
    except ValueError:
        raise FormatError(f"bad weight token {tok!r}")


def _format_weight(w: Union[Fraction, float]) -> str:
    if isinstance(w, Fraction):
        return str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"
    return repr(w)


def parse_function(text: str) -> WeightedFunction:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty input")
    ctx = _parse_header(lines[0])
    entries = []
    seen = set()
    for line in lines[1:]:
        toks = line.split()
        if len(toks) != ctx.arity + 1:
            raise FormatError(f"expected {ctx.arity} coordinates and a weight, got {line!r}")
        try:
            p = ctx.reduce(tuple(int(t) for t in toks[:-1]))
        except ValueError as e:
            raise FormatError(str(e))
        if p in seen:
            raise FormatError(f"duplicate coordinate line for {p}")
        seen.add(p)
        w = _parse_weight(toks[-1])
        if isinstance(w, float) and w < 0 or isinstance(w, Fraction) and w < 0:
            raise FormatError("negative weight")
        entries.append((p, w))
    if not entries:
        raise FormatError("function has no support")
    try:
        return WeightedFunction.of(ctx, entries)
    except ValueError as e:
        raise FormatError(str(e))


def format_function(f: WeightedFunction) -> str:
    lines = [_format_header(f.context)]
    for p, w in f.entries:
        lines.append(" ".join(str(x) for x in p) + " " + _format_weight(w))
    return "\n".join(lines) + "\n"
