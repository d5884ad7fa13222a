"""Problem files: a JSON document describing a framed quiver (Q, v, w).

    {
      "vertices": ["a", "b"],
      "edges": [["a", "b", 2]],
      "v": {"a": 2, "b": 2},
      "w": {"a": 1},
      "lambda": {"a": "1/2"}        # optional, rationals as "p/q"
    }

Missing entries of ``v``, ``w`` and ``lambda`` are zero.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .quiver import INFINITY, FramedProblem, Quiver, build_framed


class ProblemError(ValueError):
    def __init__(self, code: str, message: str, line: int | None = None):
        self.code = code
        self.message = message
        self.line = line
        where = f"line {line}: " if line else ""
        super().__init__(f"{where}{message} [{code}]")


# error codes
SYNTAX = "E_SYNTAX"
SCHEMA = "E_SCHEMA"
DUPLICATE_VERTEX = "E_DUPLICATE_VERTEX"
RESERVED_VERTEX = "E_RESERVED_VERTEX"
UNKNOWN_VERTEX = "E_UNKNOWN_VERTEX"
SELF_EDGE = "E_SELF_EDGE"
MULTIPLICITY = "E_MULTIPLICITY"
NEGATIVE = "E_NEGATIVE_ENTRY"
ZERO_FRAMING = "E_ZERO_FRAMING"
RATIONAL = "E_RATIONAL"


@dataclass(frozen=True)
class ProblemFile:
    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, int], ...]
    v: dict
    w: dict
    lam: dict | None = None

    def quiver(self) -> Quiver:
        return Quiver.from_edges(self.vertices, self.edges)

    def framed(self) -> FramedProblem:
        q = self.quiver()
        return build_framed(q, q.vector(self.v), q.vector(self.w))

    def weight(self):
        if self.lam is None:
            return None
        return tuple(self.lam.get(x, Fraction(0)) for x in self.vertices)

    def permuted(self, seed: int) -> "ProblemFile":
        """Same problem with vertices and edges listed in a shuffled order."""
        rng = random.Random(seed)
        verts = list(self.vertices)
        rng.shuffle(verts)
        edges = [(b, a, m) if rng.random() < 0.5 else (a, b, m) for a, b, m in self.edges]
        rng.shuffle(edges)
        return ProblemFile(tuple(verts), tuple(edges), dict(self.v), dict(self.w), self.lam)


def _line_of(text: str, pattern: str, after: str | None = None) -> int | None:
    start = 0
    if after is not None:
        m = re.search(after, text)
        if m:
            start = m.end()
    m = re.compile(pattern).search(text, start)
    if not m:
        return None
    return text.count("\n", 0, m.start()) + 1


def _q(name) -> str:
    return re.escape(json.dumps(name))


def parse_rational(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError(x)
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str) and re.fullmatch(r"\s*-?\d+(\s*/\s*\d+)?\s*", x):
        return Fraction(x.replace(" ", ""))
    raise ValueError(x)


def parse_text(text: str) -> ProblemFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemError(SYNTAX, e.msg, e.lineno) from None
    if not isinstance(doc, dict):
        raise ProblemError(SCHEMA, "top level must be an object", 1)
    unknown = set(doc) - {"vertices", "edges", "v", "w", "lambda"}
    if unknown:
        key = sorted(unknown)[0]
        raise ProblemError(SCHEMA, f"unknown key {key!r}", _line_of(text, _q(key)))
    for key in ("vertices", "edges", "v", "w"):
        if key not in doc:
            raise ProblemError(SCHEMA, f"missing key {key!r}")

    verts = doc["vertices"]
    if not isinstance(verts, list) or not all(isinstance(x, str) for x in verts):
        raise ProblemError(SCHEMA, "vertices must be a list of strings", _line_of(text, r'"vertices"'))
    seen = set()
    for x in verts:
        if x == INFINITY:
            raise ProblemError(RESERVED_VERTEX, f"vertex name {x!r} is reserved", _line_of(text, _q(x), r'"vertices"'))
        if x in seen:
            # point at the repeat, not the first declaration
            here = _line_of(text, _q(x), r'"vertices"[\s\S]*?' + _q(x))
            raise ProblemError(DUPLICATE_VERTEX, f"duplicate vertex {x!r}", here)
        seen.add(x)

    edges = []
    if not isinstance(doc["edges"], list):
        raise ProblemError(SCHEMA, "edges must be a list", _line_of(text, r'"edges"'))
    for e in doc["edges"]:
        if not (isinstance(e, list) and len(e) in (2, 3)):
            raise ProblemError(SCHEMA, f"edge {e!r} must be [a, b] or [a, b, multiplicity]", _line_of(text, r'"edges"'))
        a, b = e[0], e[1]
        m = e[2] if len(e) == 3 else 1
        here = _line_of(text, r"\[\s*" + _q(a) + r"\s*,\s*" + _q(b), r'"edges"') if isinstance(a, str) and isinstance(b, str) else None
        for x in (a, b):
            if x not in seen:
                raise ProblemError(UNKNOWN_VERTEX, f"edge references undeclared vertex {x!r}", here)
        if a == b:
            raise ProblemError(SELF_EDGE, f"self-edge forbidden at vertex {a!r}", here)
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise ProblemError(MULTIPLICITY, f"edge multiplicity must be a positive integer, got {m!r}", here)
        edges.append((a, b, m))

    vecs = {}
    for key in ("v", "w"):
        d = doc[key]
        if not isinstance(d, dict):
            raise ProblemError(SCHEMA, f"{key} must be an object", _line_of(text, f'"{key}"'))
        for x, val in d.items():
            here = _line_of(text, _q(x) + r"\s*:", f'"{key}"\\s*:')
            if x not in seen:
                raise ProblemError(UNKNOWN_VERTEX, f"{key} references undeclared vertex {x!r}", here)
            if isinstance(val, bool) or not isinstance(val, int):
                raise ProblemError(SCHEMA, f"{key}[{x!r}] must be an integer", here)
            if val < 0:
                raise ProblemError(NEGATIVE, f"{key}[{x!r}] is negative", here)
        vecs[key] = {x: val for x, val in d.items() if val}
    if not vecs["w"]:
        raise ProblemError(ZERO_FRAMING, "framing must be nonzero", _line_of(text, r'"w"'))

    lam = None
    if "lambda" in doc:
        if not isinstance(doc["lambda"], dict):
            raise ProblemError(SCHEMA, "lambda must be an object", _line_of(text, r'"lambda"'))
        lam = {}
        for x, val in doc["lambda"].items():
            here = _line_of(text, _q(x) + r"\s*:", r'"lambda"\s*:')
            if x not in seen:
                raise ProblemError(UNKNOWN_VERTEX, f"lambda references undeclared vertex {x!r}", here)
            try:
                lam[x] = parse_rational(val)
            except (ValueError, ZeroDivisionError):
                raise ProblemError(RATIONAL, f"lambda[{x!r}] is not a rational \"p/q\"", here) from None
    return ProblemFile(tuple(verts), tuple(edges), vecs["v"], vecs["w"], lam)


def parse_problem(path) -> ProblemFile:
    return parse_text(Path(path).read_text())
