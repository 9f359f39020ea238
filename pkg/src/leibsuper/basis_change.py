"""Grading-respecting changes of basis and the adapted-basis normalisations.

Convention: a :class:`BasisChange` holds a matrix ``T`` with
``new_coords = T @ old_coords`` (column vectors).  The new basis vectors,
written in old coordinates, are the columns of ``T^{-1}``; ``new_basis()``
returns them as rows.  Example in dimension 2 with ``T = [[2, 0], [0, 1]]``:
the new first basis vector is ``b1/2``, so ``[b1, b1] = b2`` becomes
``[b1', b1'] = b2/4 = (1/4) b2'``.

Structure constants transform as
``c'^s_ij = sum P_ik P_jl c^r_kl T_sr`` with ``P = new_basis()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import linalg
from .algebra import IdentityReport, SuperAlgebra, evaluate_product
from .linalg import ONE, ZERO, to_fraction

CASES = {
    "a1": "a", "a2": "a", "a3": "a",
    "b1": "b", "b2": "b",
    "c1": "c", "c2": "c",
}
# cases whose proof needs a sufficiently big (or small) auxiliary parameter a
BIG_A = {"a2", "b2", "c2"}
SMALL_A = {"a3"}


class DependentBasisError(ValueError):
    """The recursively generated primed vectors are linearly dependent."""

    def __init__(self, name: str):
        super().__init__(f"primed vector {name} is dependent on the earlier ones")
        self.name = name


@dataclass(frozen=True)
class BasisChange:
    n: int
    m: int
    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        T = linalg.as_matrix(self.matrix)
        dim = self.n + self.m
        if linalg.shape(T) != (dim, dim) and dim:
            raise ValueError(f"basis change must be {dim}x{dim}")
        for r in range(dim):
            for c in range(dim):
                if T[r][c] and (r < self.n) != (c < self.n):
                    raise ValueError("basis change mixes even and odd coordinates")
        if dim and not linalg.is_invertible(T):
            raise ValueError("basis change is singular")
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in T))

    @classmethod
    def identity(cls, n: int, m: int) -> "BasisChange":
        return cls(n, m, linalg.identity(n + m))

    @classmethod
    def from_new_basis(cls, n: int, m: int, rows: Sequence[Sequence]) -> "BasisChange":
        """Build from the new basis vectors given as rows in old coordinates."""
        P = linalg.as_matrix(rows)
        return cls(n, m, linalg.inverse(linalg.transpose(P)))

    def new_basis(self) -> list[list[Fraction]]:
        return linalg.transpose(linalg.inverse(self.matrix))

    def to_new_coords(self, v: Sequence[Fraction]) -> list[Fraction]:
        return linalg.matvec(self.matrix, v)

    def inverse(self) -> "BasisChange":
        return BasisChange(self.n, self.m, linalg.inverse(self.matrix))


def change_basis(A: SuperAlgebra, T: BasisChange) -> SuperAlgebra:
    """The same algebra written in the new basis described by ``T``."""
    if (A.n, A.m) != (T.n, T.m):
        raise ValueError("basis change and algebra dimensions differ")
    P = T.new_basis()
    prods = {}
    for i in range(A.dim):
        for j in range(A.dim):
            w = evaluate_product(A, P[i], P[j])
            if any(w):
                prods[(i, j)] = linalg.matvec(T.matrix, w)
    return SuperAlgebra(A.n, A.m, prods)


@dataclass(frozen=True)
class Lemma31Case:
    """One branch of the normalisation ``x -> x1`` with its scalars.

    ``x = A1 x1 + A2 x2`` is the even element driving the odd chain.
    """

    case: str
    A1: Fraction
    A2: Fraction
    a: Fraction | None = None

    def __post_init__(self):
        if self.case not in CASES:
            raise ValueError(f"unknown case {self.case!r}; expected one of {sorted(CASES)}")
        object.__setattr__(self, "A1", to_fraction(self.A1))
        object.__setattr__(self, "A2", to_fraction(self.A2))
        if self.a is not None:
            object.__setattr__(self, "a", to_fraction(self.a))
        problem = self.violation()
        if problem:
            raise ValueError(f"case {self.case}: {problem}")

    @property
    def cls(self) -> str:
        return CASES[self.case]

    @property
    def needs_a(self) -> bool:
        return self.case in BIG_A or self.case in SMALL_A

    def violation(self) -> str | None:
        A1, A2, a = self.A1, self.A2, self.a
        if not A1 and not A2:
            return "(A1, A2) must not both vanish"
        if self.needs_a and (a is None or not a):
            return "needs a nonzero parameter a"
        case = self.case
        if case == "a1" and not A1 * (A1 + A2):
            return "needs A1 (A1 + A2) != 0"
        if case in ("a2", "b2", "c2") and A1:
            return "needs A1 = 0"
        if case == "a2" and not 1 + a * A2:
            return "needs a (1 + a A2) != 0"
        if case == "a3" and not (A1 and A1 == -A2):
            return "needs A1 != 0 and A1 = -A2"
        if case in ("b1", "c1") and not A1:
            return "needs A1 != 0"
        return None

    @classmethod
    def parse(cls, label: str, A1, A2, a=None) -> "Lemma31Case":
        """Accept ``a1`` or ``a.1`` style labels."""
        return cls(label.replace(".", "").lower(), A1, A2, a)


def _x(A: SuperAlgebra, i: int) -> list[Fraction]:
    return list(A.basis_vector(i - 1))


def _lin(*terms: tuple[Fraction, Sequence[Fraction]]) -> list[Fraction]:
    out = None
    for c, v in terms:
        if out is None:
            out = [ZERO] * len(v)
        if c:
            out = [o + c * x for o, x in zip(out, v)]
    return out


def odd_blocks_from_driver(A: SuperAlgebra, driver: Sequence[Fraction]) -> list[int]:
    """1-based odd indices ``j`` where ``[y_j, driver] = 0`` (block ends)."""
    ends = []
    for j in range(1, A.m + 1):
        if not any(evaluate_product(A, A.basis_vector(A.n + j - 1), driver)):
            ends.append(j)
    return ends


def primed_basis(
    A: SuperAlgebra,
    case: Lemma31Case,
    partition: Sequence[int] | None = None,
    formula: str = "printed",
) -> list[list[Fraction]]:
    """Rows ``x'_1..x'_n, y'_1..y'_m`` in old coordinates.

    ``formula="corrected"`` only affects case a2: it uses ``(1 + a A2) x2``
    in place of the printed ``(1 + A2) x2`` for the ``x2`` coefficient of
    ``x'_2``, which is what the case-1 formula gives for ``x'_1 = x1 + a A2 x2``.
    """
    if formula not in ("printed", "corrected"):
        raise ValueError("formula must be 'printed' or 'corrected'")
    n, m = A.n, A.m
    if n < 4:
        raise ValueError("the normalisation is stated for n >= 4")
    A1, A2, a = case.A1, case.A2, case.a
    x1, x2, xn1 = _x(A, 1), _x(A, 2), _x(A, n - 1)
    theta = A.coefficient(0, 1, n - 1)
    alpha_n = A.coefficient(1, 1, n - 1)
    gamma = A.coefficient(1, 1, n - 1)

    c = case.case
    if c == "a1":
        p1 = _lin((A1, x1), (A2, x2))
        p2 = _lin((A1 + A2, x2), (A2 * (theta - alpha_n), xn1))
    elif c == "a2":
        lead = 1 + A2 if formula == "printed" else 1 + a * A2
        p1 = _lin((ONE, x1), (a * A2, x2))
        p2 = _lin((lead, x2), (a * A2 * (theta - alpha_n), xn1))
    elif c == "a3":
        p1 = _lin((A1, x1), (a - A1, x2))
        p2 = _lin((a, x2), ((a - A1) * (theta - alpha_n), xn1))
    elif c == "b1":
        p1 = _lin((A1, x1), (A2, x2))
        p2 = _lin((ONE, x2), (-A2 * gamma / A1, xn1))
    elif c == "b2":
        p1 = _lin((ONE, x1), (a * A2, x2))
        p2 = _lin((ONE, x2), (-a * A2 * gamma, xn1))
    elif c == "c1":
        p1 = _lin((A1, x1), (A2, x2))
        p2 = list(x2)
    else:
        p1 = _lin((ONE, x1), (a * A2, x2))
        p2 = list(x2)

    xs = [p1, p2]
    for i in range(3, n + 1):
        if case.cls == "b" and i == 3:
            xs.append(list(evaluate_product(A, p1, p1)))
        else:
            xs.append(list(evaluate_product(A, xs[-1], p1)))

    if partition is None:
        ends = odd_blocks_from_driver(A, _lin((A1, x1), (A2, x2)))
        if not ends or ends[-1] != m:
            ends = ends + [m] if m else ends
    else:
        if sum(partition) != m:
            raise ValueError(f"partition {tuple(partition)} does not sum to m={m}")
        total, ends = 0, []
        for part in partition:
            total += part
            ends.append(total)
    head_set = {1} | {e + 1 for e in ends[:-1]}

    ys: list[list[Fraction]] = []
    for j in range(1, m + 1):
        yj = list(A.basis_vector(n + j - 1))
        if c in ("a1", "b1", "c1") or j in head_set:
            ys.append(yj)
        else:
            ys.append(list(evaluate_product(A, ys[-1], p1)))

    rows = xs + ys
    names = [f"x{i}'" for i in range(1, n + 1)] + [f"y{j}'" for j in range(1, m + 1)]
    for k in range(1, len(rows) + 1):
        if linalg.rank(rows[:k]) < k:
            raise DependentBasisError(names[k - 1])
    return rows


def lemma31_transform(
    A: SuperAlgebra,
    case: Lemma31Case,
    partition: Sequence[int] | None = None,
    formula: str = "printed",
) -> tuple[BasisChange, SuperAlgebra]:
    """Apply one normalisation branch; returns the change and the new table."""
    rows = primed_basis(A, case, partition, formula)
    T = BasisChange.from_new_basis(A.n, A.m, rows)
    return T, change_basis(A, T)


def protected_products(A: SuperAlgebra, cls: str) -> list[tuple[str, int, int]]:
    """The even-part relations a normalisation must keep, as index pairs."""
    n = A.n
    if cls == "a":
        return [("x1x1", 0, 0)] + [("chain", i - 1, 0) for i in range(2, n)]
    if cls == "b":
        return [("x1x1", 0, 0)] + [("chain", i - 1, 0) for i in range(3, n)]
    if cls == "c":
        return [("chain", i - 1, 0) for i in range(2, n)] + [
            ("anti-chain", 0, i - 1) for i in range(3, n)
        ]
    raise ValueError(f"unknown class {cls!r}")


def verify_preserved_products(
    original: SuperAlgebra,
    transformed: SuperAlgebra,
    cls: str,
    driver: Sequence[Fraction] | None = None,
) -> IdentityReport:
    """Compare the protected product groups of two tables.

    The even relations are compared slot by slot.  The odd chain compares
    ``[y_j, driver]`` in ``original`` (``driver`` defaults to ``x1``) with
    ``[y_j, x1]`` in ``transformed``; the block ends are those ``j`` where
    the original product vanishes.
    """
    if (original.n, original.m) != (transformed.n, transformed.m):
        raise ValueError("algebras have different dimensions")
    report = IdentityReport(f"preserved-products-{cls}")
    for _, i, j in protected_products(original, cls):
        diff = tuple(t - o for t, o in zip(transformed.product(i, j), original.product(i, j)))
        if any(diff):
            report.violations.append(((i, j), diff))
    drv = list(driver) if driver is not None else list(original.basis_vector(0))
    n = original.n
    for j in range(original.m):
        y = original.basis_vector(n + j)
        before = evaluate_product(original, y, drv)
        after = transformed.product(n + j, 0)
        diff = tuple(t - o for t, o in zip(after, before))
        if any(diff):
            report.violations.append(((n + j, 0), diff))
    return report


class RetryOutcome(NamedTuple):
    case: Lemma31Case | None
    change: BasisChange | None
    algebra: SuperAlgebra | None
    report: IdentityReport | None
    tries: int

    @property
    def exhausted(self) -> bool:
        return self.case is None


def a_schedule(case: str, max_tries: int = 20) -> list[Fraction | None]:
    """Deterministic values of the auxiliary parameter to try in order."""
    if case in BIG_A:
        return [Fraction(2) ** t for t in range(max_tries)]
    if case in SMALL_A:
        return [Fraction(1, 2**t) for t in range(max_tries)]
    return [None]


def lemma31_with_retry(
    A: SuperAlgebra,
    case: str,
    A1,
    A2,
    partition: Sequence[int] | None = None,
    formula: str = "printed",
    max_tries: int = 20,
) -> RetryOutcome:
    """Search the schedule for an ``a`` making the normalisation work.

    A try succeeds when the case condition holds, the primed vectors are a
    basis, and the protected products match with ``A1 x1 + A2 x2`` as the
    original driver.
    """
    A1, A2 = to_fraction(A1), to_fraction(A2)
    driver = [ZERO] * A.dim
    driver[0], driver[1] = A1, A2
    tries = 0
    for a in a_schedule(case, max_tries):
        tries += 1
        try:
            lc = Lemma31Case(case, A1, A2, a)
            T, B = lemma31_transform(A, lc, partition, formula)
        except (ValueError, ZeroDivisionError):
            continue
        report = verify_preserved_products(A, B, lc.cls, driver)
        if report.holds:
            return RetryOutcome(lc, T, B, report, tries)
    return RetryOutcome(None, None, None, None, tries)
