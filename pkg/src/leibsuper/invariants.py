"""Right multiplications, Jordan types and the characteristic sequence."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import (
    NotNilpotentError,
    SuperAlgebra,
    element_parity,
    even_square,
    lower_central_series,
)
from .linalg import Matrix, ZERO, to_fraction

DEFAULT_POOL = tuple(Fraction(c) for c in (-2, -1, 0, 1, 2, 3))


@dataclass(frozen=True)
class CharSeq:
    """Pair of Jordan-type partitions ``(even | odd)``."""

    even: tuple[int, ...]
    odd: tuple[int, ...] = ()

    def __post_init__(self):
        for part in (self.even, self.odd):
            if any(p <= 0 for p in part):
                raise ValueError(f"block sizes must be positive: {part}")
            if list(part) != sorted(part, reverse=True):
                raise ValueError(f"block sizes must be weakly decreasing: {part}")

    @classmethod
    def target(cls, n: int, partition: Sequence[int]) -> "CharSeq":
        """``(n-1, 1 | sorted partition)``."""
        return cls((n - 1, 1), tuple(sorted(partition, reverse=True)))

    def __str__(self) -> str:
        even = ", ".join(map(str, self.even))
        odd = ", ".join(map(str, self.odd)) if self.odd else "-"
        return f"({even} | {odd})"


@dataclass(frozen=True)
class SamplingConfig:
    """How to search ``L_0 \\ [L_0, L_0]`` for the lexicographic maximum."""

    sample_count: int = 8
    seed: int = 0
    coefficient_pool: tuple[Fraction, ...] = DEFAULT_POOL

    def __post_init__(self):
        if self.sample_count < 1:
            raise ValueError("sample_count must be at least 1")
        object.__setattr__(
            self, "coefficient_pool", tuple(to_fraction(c) for c in self.coefficient_pool)
        )
        if not any(self.coefficient_pool):
            raise ValueError("coefficient pool needs a nonzero value")


def right_mult_operator(A: SuperAlgebra, x: Sequence[Fraction]) -> tuple[Matrix, Matrix]:
    """Matrices of ``R_x : y -> [y, x]`` on ``L_0`` and on ``L_1``.

    Column ``c`` holds the image of the ``c``-th basis vector of the block.
    """
    if len(x) != A.dim:
        raise ValueError(f"element has length {len(x)}, algebra has dimension {A.dim}")
    x = [to_fraction(c) for c in x]
    if any(x) and element_parity(A, x) != 0:
        raise ValueError("R_x is only taken for even elements x")
    support = [(j, c) for j, c in enumerate(x) if c]
    images = []
    for i in range(A.dim):
        img = [ZERO] * A.dim
        for j, c in support:
            for k, v in A.sparse_product(i, j):
                img[k] += c * v
        images.append(img)
    n = A.n
    M0 = [[images[col][row] for col in range(n)] for row in range(n)]
    M1 = [[images[n + col][n + row] for col in range(A.m)] for row in range(A.m)]
    return M0, M1


def jordan_sequence(M: Sequence[Sequence[Fraction]]) -> tuple[int, ...]:
    """Block sizes of a nilpotent matrix, descending, read off rank differences."""
    ranks = linalg.rank_power_sequence(M)
    if ranks[-1] != 0:
        raise NotNilpotentError("jordan_sequence needs a nilpotent matrix")
    ranks = ranks + [0]
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    sizes: list[int] = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        sizes.extend([k] * exact)
    return tuple(sizes)


def _candidates(A: SuperAlgebra, cfg: SamplingConfig):
    square = even_square(A)
    for i in A.even_indices:
        v = A.basis_vector(i)
        if not square.contains(v):
            yield v
    n = A.n
    for idx in range(cfg.sample_count):
        rng = random.Random(cfg.seed * 1_000_003 + idx)
        coeffs = [rng.choice(cfg.coefficient_pool) for _ in range(n)]
        v = tuple(coeffs) + (ZERO,) * A.m
        if any(v) and not square.contains(v):
            yield v


def characteristic_sequence(
    A: SuperAlgebra, cfg: SamplingConfig | None = None, joint: bool = False
) -> CharSeq:
    """Lexicographic maxima of the Jordan types of ``R_x`` over candidate ``x``.

    Candidates are the even basis vectors outside ``[L_0, L_0]`` plus
    ``cfg.sample_count`` seeded random combinations.  Random points reach
    the generic (maximal) Jordan type with high probability, so this is a
    heuristic for the supremum, not a certificate.

    By default the even and odd maxima are taken independently; with
    ``joint=True`` a single ``x`` maximising the concatenation is used.
    """
    cfg = cfg or SamplingConfig()
    best_even: tuple[int, ...] | None = None
    best_odd: tuple[int, ...] | None = None
    best_joint = None
    for x in _candidates(A, cfg):
        M0, M1 = right_mult_operator(A, x)
        c0, c1 = jordan_sequence(M0), jordan_sequence(M1)
        if joint:
            key = c0 + c1
            if best_joint is None or key > best_joint[0]:
                best_joint = (key, c0, c1)
        else:
            if best_even is None or c0 > best_even:
                best_even = c0
            if best_odd is None or c1 > best_odd:
                best_odd = c1
    if joint:
        if best_joint is None:
            raise ValueError("L_0 = [L_0, L_0]: no admissible element x")
        return CharSeq(best_joint[1], best_joint[2])
    if best_even is None:
        raise ValueError("L_0 = [L_0, L_0]: no admissible element x")
    return CharSeq(best_even, best_odd)


def _dim_at(series, i: int) -> int:
    if i <= len(series):
        return series[i - 1].dim
    return series[-1].dim


def is_filiform(A: SuperAlgebra) -> bool:
    """``dim L^i = n - i`` for ``2 <= i <= n`` (plain Leibniz algebras only)."""
    if A.m != 0:
        raise ValueError("filiform detection is for algebras with m = 0")
    series = lower_central_series(A)
    return all(_dim_at(series, i) == A.n - i for i in range(2, A.n + 1))


def lemma21_crosscheck(
    A: SuperAlgebra, cfg: SamplingConfig | None = None
) -> tuple[bool, bool, bool]:
    """The three equivalent filiform criteria, each computed independently.

    ``(C(L) == (n-1, 1), filiform dimensions, L^{n-1} != 0 and L^n == 0)``
    """
    if A.m != 0:
        raise ValueError("the cross-check is for algebras with m = 0")
    n = A.n
    if n < 2:
        raise ValueError("the cross-check needs n >= 2")
    charseq = characteristic_sequence(A, cfg)
    by_charseq = charseq.even == (n - 1, 1)
    series = lower_central_series(A)
    by_powers = _dim_at(series, n - 1) != 0 and _dim_at(series, n) == 0
    return by_charseq, is_filiform(A), by_powers
