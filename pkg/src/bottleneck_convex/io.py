"""Instance text files and solution JSON files.

Instance format, one item per line::

    # free comment
    #! key=value        metadata entry
    k=3
    1 2
    5/2 -7

Coordinates are integers or ``p/q`` rationals.  Point indices follow line
order.  Solutions are JSON objects with ``sets``, ``value``, ``solver``,
``elapsed`` and ``k``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .geometry import PointSet
from .solution import Solution


class ParseError(ValueError):
    pass


_NUMBER = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")


@dataclass
class InstanceFile:
    points: PointSet
    k: Optional[int] = None
    metadata: dict[str, str] = field(default_factory=dict)


@dataclass
class SolutionFile:
    sets: list[list[int]]
    value: int
    solver: str = ""
    elapsed: float = 0.0
    k: Optional[int] = None

    @classmethod
    def from_solution(cls, sol: Solution, elapsed: float = 0.0) -> "SolutionFile":
        return cls(sol.sorted_sets(), sol.value, sol.solver, elapsed, sol.k)

    def to_solution(self) -> Solution:
        return Solution.of(self.sets, self.solver)


def _number(tok: str, where: str) -> Fraction:
    if not _NUMBER.match(tok):
        raise ParseError(f"{where}: {tok!r} is not an integer or p/q rational")
    try:
        return Fraction(tok)
    except ZeroDivisionError:
        raise ParseError(f"{where}: zero denominator in {tok!r}") from None


def format_number(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def parse_instance(text: str, name: str = "<instance>") -> InstanceFile:
    pts = []
    k = None
    meta: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        where = f"{name}:{lineno}"
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#!"):
            key, sep, val = line[2:].strip().partition("=")
            if not sep or not key.strip():
                raise ParseError(f"{where}: metadata must look like '#! key=value'")
            meta[key.strip()] = val.strip()
            continue
        if line.startswith("#"):
            continue
        if line.startswith("k="):
            if k is not None:
                raise ParseError(f"{where}: k given twice")
            val = line[2:].strip()
            if not val.isdigit() or int(val) < 1:
                raise ParseError(f"{where}: k must be a positive integer")
            k = int(val)
            continue
        toks = line.split()
        if len(toks) != 2:
            raise ParseError(f"{where}: expected 'x y', got {line!r}")
        pts.append((_number(toks[0], where), _number(toks[1], where)))
    try:
        ps = PointSet(pts)
    except ValueError as exc:
        raise ParseError(f"{name}: {exc}") from exc
    return InstanceFile(ps, k, meta)


def format_instance(inst: InstanceFile) -> str:
    lines = []
    for key in sorted(inst.metadata):
        lines.append(f"#! {key}={inst.metadata[key]}")
    if inst.k is not None:
        lines.append(f"k={inst.k}")
    for p in inst.points:
        lines.append(f"{format_number(p.x)} {format_number(p.y)}")
    return "\n".join(lines) + "\n"


def read_instance(path) -> InstanceFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return parse_instance(text, str(path))


def write_instance(path, inst: InstanceFile) -> None:
    Path(path).write_text(format_instance(inst))


def format_solution(sol: SolutionFile) -> str:
    data = {
        "elapsed": sol.elapsed,
        "k": sol.k,
        "sets": sol.sets,
        "solver": sol.solver,
        "value": sol.value,
    }
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def parse_solution(text: str, name: str = "<solution>") -> SolutionFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{name}: {exc}") from exc
    if not isinstance(data, dict) or not isinstance(data.get("sets"), list):
        raise ParseError(f"{name}: expected an object with a 'sets' array")
    sets = data["sets"]
    for s in sets:
        if not isinstance(s, list) or not all(isinstance(i, int) and not isinstance(i, bool) for i in s):
            raise ParseError(f"{name}: every set must be an array of integer indices")
    value = data.get("value", min((len(s) for s in sets), default=0))
    k = data.get("k", len(sets))
    elapsed = data.get("elapsed", 0.0)
    if not isinstance(value, int) or (k is not None and not isinstance(k, int)):
        raise ParseError(f"{name}: 'value' and 'k' must be integers")
    if not isinstance(elapsed, (int, float)):
        raise ParseError(f"{name}: 'elapsed' must be a number")
    return SolutionFile(sets, value, str(data.get("solver", "")), float(elapsed), k)


def read_solution(path) -> SolutionFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return parse_solution(text, str(path))


def write_solution(path, sol: SolutionFile) -> None:
    Path(path).write_text(format_solution(sol))
