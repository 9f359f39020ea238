"""Shared builders and the test-algebra zoo."""

import random
from fractions import Fraction as F

import pytest

from leibsuper import FamilySpec, SuperAlgebra, build_remark21, build_theorem21, build_theorem22
from leibsuper.families import class_param_names

POOL = [F(c) for c in (-2, -1, 0, 1, 2, 3)] + [F(1, 2)]


def null_filiform(n):
    return build_theorem21("first", n, 0)


def class_instance(cls, n, partition, rng=None, **params):
    if rng is not None:
        for name in class_param_names(cls, n):
            params.setdefault(name, rng.choice(POOL))
    spec = FamilySpec(f"thm22-{cls}", n, tuple(partition), params=params)
    return build_theorem22(cls, spec)


def valid_zoo():
    """A small zoo of valid algebras used across property tests."""
    rng = random.Random(5)
    zoo = [
        null_filiform(3),
        null_filiform(5),
        build_remark21(3, 4),
        build_remark21(2, 2),
        SuperAlgebra(2, 1),
    ]
    for cls in "abc":
        for n, part in ((4, (2, 1)), (5, (2, 2))):
            built = class_instance(cls, n, part, rng)
            assert built.report.holds
            zoo.append(built.algebra)
    return zoo


@pytest.fixture(scope="session")
def zoo():
    return valid_zoo()


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for key in sorted(lines):
            terminalreporter.write_line(lines[key])
