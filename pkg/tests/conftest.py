import sys
from pathlib import Path

import pytest

from quiverweyl.problem import parse_problem
from quiverweyl.quiver import Quiver

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"
FIXTURES = ["example1", "example2", "example3", "example4", "kronecker"]

sys.path.insert(0, str(Path(__file__).resolve().parent))


def load(name):
    return parse_problem(PROBLEMS / f"{name}.json")


def framed(name):
    return load(name).framed()


def vec(q: Quiver, **entries):
    """Vector on q from keyword entries; use inf= for the framing vertex and
    a leading underscore for numeric names (_0=3)."""
    return q.vector({k.lstrip("_"): v for k, v in entries.items()})


def path_quiver(n, prefix=""):
    names = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Quiver.from_edges(names, [(names[i], names[i + 1], 1) for i in range(n - 1)])


KRONECKER = Quiver.from_edges(["0", "1"], [("0", "1", 2)])
A2 = path_quiver(2)
A3 = path_quiver(3)
TRIANGLE = Quiver.from_edges(["0", "1", "2"], [("0", "1", 1), ("1", "2", 1), ("0", "2", 1)])


@pytest.fixture(params=FIXTURES)
def fixture_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}")
