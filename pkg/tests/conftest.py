import random
from pathlib import Path

import pytest

from eawg.semilattice import standard_indices, standard_semilattice
from eawg.weylgroup import WeylContext

ROOT = Path(__file__).resolve().parent.parent
SCHEMAS = ROOT / "schemas"

TYPES = [("A", 1), ("A", 2), ("A", 3), ("D", 4)]


def all_configs(nullities=(1, 2, 3)):
    """(type, rank, nu, index) over every tabulated class, lattices only when rank >= 2."""
    out = []
    for t, l in TYPES:
        for nu in nullities:
            for m in standard_indices(nu):
                S = standard_semilattice(nu, m)
                if l >= 2 and not S.is_lattice():
                    continue
                out.append((t, l, nu, m))
    return out


_CTX = {}


def context(t, l, nu, m=None):
    key = (t, l, nu, m)
    if key not in _CTX:
        _CTX[key] = WeylContext.build(t, l, nu, m)
    return _CTX[key]


@pytest.fixture
def rng():
    return random.Random(12345)


_ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    """Record one PASS/FAIL summary line per acceptance criterion."""
    def record(number, title, ok, detail):
        _ACCEPTANCE[number] = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
        print(_ACCEPTANCE[number])
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[k])
