"""Constructors for the explicit multiplication tables.

* ``build_theorem21`` -- the two superalgebras of maximal nilindex
  ``n + m + 1`` (the null-filiform algebra and its odd-generated twin).
* ``build_remark21`` -- the odd-generated one written in a graded basis.
* ``build_theorem22`` -- the three adapted-basis classes a), b), c) for
  characteristic sequence ``(n-1, 1 | m_1, ..., m_k)``.

Index conventions follow the printed tables: ``x1..xn`` even, ``y1..ym``
odd, all 1-based in parameter names.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

from .algebra import IdentityReport, SuperAlgebra, check_identity
from .linalg import ONE, ZERO, to_fraction

FAMILIES = ("thm21-first", "thm21-second", "remark21", "thm22-a", "thm22-b", "thm22-c")
CLASSES = ("a", "b", "c")
HALF = Fraction(1, 2)


def boundaries(partition: Sequence[int]) -> list[int]:
    """Cumulative sums ``m1, m1+m2, ...`` (1-based odd indices ending a block)."""
    out, total = [], 0
    for part in partition:
        total += part
        out.append(total)
    return out


def heads(partition: Sequence[int]) -> list[int]:
    """1-based indices of the first odd vector of each block."""
    return [1] + [b + 1 for b in boundaries(partition)[:-1]]


def class_param_names(cls: str, n: int) -> list[str]:
    """Names of the even-part parameters of a class (not the class-c triangle)."""
    if cls == "a":
        return [f"alpha{k}" for k in range(4, n + 1)] + ["theta"]
    if cls == "b":
        return [f"beta{k}" for k in range(4, n + 1)] + ["gamma"]
    if cls == "c":
        return ["theta1", "theta2", "theta3"]
    raise ValueError(f"unknown class {cls!r}")


def class_c_triangle(n: int) -> list[tuple[int, int, int]]:
    """Slots ``(i, j, k)``: coefficient of ``x_k`` in ``[x_i, x_j]``, 2 <= i < j <= n-2."""
    return [
        (i, j, k)
        for i in range(2, n - 1)
        for j in range(i + 1, n - 1)
        for k in range(i + j + 1, n + 1)
    ]


@dataclass
class FamilySpec:
    """Parameters selecting one member of a model family.

    ``params`` holds named scalars (``alpha4``, ``theta``, ``beta5``,
    ``gamma``, ``theta1`` ... and ``c_i_j_k`` for the class-c triangle).
    ``mixed`` holds extra products keyed by basis-name pairs, e.g.
    ``{("x1", "y1"): {"y3": 1}}``.  ``driver`` is the even element
    ``A1 x1 + A2 x2`` whose right action chains the odd basis; ``odd_split``
    fixes the remaining freedom in how that action is shared between
    ``x1`` and ``x2``.
    """

    family: str
    n: int
    partition: tuple[int, ...] = ()
    m: int | None = None
    params: dict[str, Fraction] = field(default_factory=dict)
    mixed: dict[tuple[str, str], dict[str, Fraction]] = field(default_factory=dict)
    driver: tuple[Fraction, Fraction] = (ONE, ZERO)
    odd_split: Fraction | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        self.partition = tuple(int(p) for p in self.partition)
        if any(p <= 0 for p in self.partition):
            raise ValueError(f"partition entries must be positive: {self.partition}")
        self.params = {k: to_fraction(v) for k, v in self.params.items()}
        self.driver = tuple(to_fraction(a) for a in self.driver)
        if self.odd_split is not None:
            self.odd_split = to_fraction(self.odd_split)
        if self.family.startswith("thm22"):
            if self.n < 4:
                raise ValueError("the adapted-basis classes need n >= 4")
            if self.m is not None and self.m != sum(self.partition):
                raise ValueError(f"partition {self.partition} does not sum to m={self.m}")
            self.m = sum(self.partition)
        elif self.m is None:
            self.m = sum(self.partition)

    @property
    def cls(self) -> str:
        return self.family.rsplit("-", 1)[1]


class Built(NamedTuple):
    algebra: SuperAlgebra
    report: IdentityReport


def _table(n: int):
    prods: dict[tuple[int, int], dict[int, Fraction]] = {}

    def add(a: int, b: int, k: int, c) -> None:
        c = to_fraction(c)
        if c:
            slot = prods.setdefault((a, b), {})
            slot[k] = slot.get(k, ZERO) + c

    return prods, add


def build_theorem21(variant: str, n: int, m: int) -> SuperAlgebra:
    """Maximal-nilindex superalgebras, nilindex ``n + m + 1``."""
    if variant == "first":
        if m != 0:
            raise ValueError("the first algebra has no odd part (m must be 0)")
        if n < 0:
            raise ValueError("n must be non-negative")
        prods, add = _table(n)
        for i in range(n - 1):
            add(i, 0, i + 1, 1)
        return SuperAlgebra(n, 0, prods)
    if variant == "second":
        return build_remark21(n, m)
    raise ValueError(f"unknown variant {variant!r}")


def build_remark21(n: int, m: int, literal: bool = False) -> SuperAlgebra:
    """Odd-generated maximal-nilindex superalgebra in the graded basis.

    The default table is the graded form obtained from
    ``[e_i, e_1] = e_{i+1}, [e_i, e_2] = 2 e_{i+2}`` with ``y_j ~ e_{2j-1}``
    and ``x_i ~ e_{2i}`` after rescaling::

        [y_j, x1] = y_{j+1}          1 <= j <= m-1
        [x_i, y1] = 1/2 y_{i+1}      1 <= i <= min(n, m-1)
        [y_j, y1] = x_j              1 <= j <= min(n, m)
        [x_i, x1] = x_{i+1}          1 <= i <= n-1

    ``literal=True`` reproduces the commonly printed variant
    (``[x_i, y1] = 1/2 y_i`` for ``i >= 2``, ``[y_j, y1] = x_{j+1}`` for
    ``j >= 2``), which does not satisfy the Leibniz superidentity; it is
    kept only so that the discrepancy can be exhibited.
    """
    if m not in (n, n + 1):
        raise ValueError(f"need m = n or m = n + 1, got n={n}, m={m}")
    prods, add = _table(n)

    def X(i):
        return i - 1

    def Y(j):
        return n + j - 1

    for j in range(1, m):
        add(Y(j), X(1), Y(j + 1), 1)
    if literal:
        if m >= 2 and n >= 1:
            add(X(1), Y(1), Y(2), HALF)
        for i in range(2, min(n, m) + 1):
            add(X(i), Y(1), Y(i), HALF)
        if n >= 1:
            add(Y(1), Y(1), X(1), 1)
        for j in range(2, min(n - 1, m) + 1):
            add(Y(j), Y(1), X(j + 1), 1)
    else:
        for i in range(1, min(n, m - 1) + 1):
            add(X(i), Y(1), Y(i + 1), HALF)
        for j in range(1, min(n, m) + 1):
            add(Y(j), Y(1), X(j), 1)
    for i in range(1, n):
        add(X(i), X(1), X(i + 1), 1)
    return SuperAlgebra(n, m, prods)


def theorem21_second_chain(total: int) -> tuple[SuperAlgebra, list[int]]:
    """The ungraded form ``[e_i,e_1]=e_{i+1}, [e_i,e_2]=2e_{i+2}`` regraded.

    Returns the algebra in the graded basis ordering (even ``e_2, e_4, ...``
    then odd ``e_1, e_3, ...``) and the list mapping graded index to ``e``
    index.  No rescaling is applied.
    """
    order = [e for e in range(2, total + 1, 2)] + [e for e in range(1, total + 1, 2)]
    pos = {e: k for k, e in enumerate(order)}
    n = total // 2
    prods, add = _table(n)
    for i in range(1, total):
        add(pos[i], pos[1], pos[i + 1], 1)
    for i in range(1, total - 1):
        add(pos[i], pos[2], pos[i + 2], 2)
    return SuperAlgebra(n, total - n, prods), order


def _even_part(cls: str, n: int, params: Mapping[str, Fraction], add) -> None:
    p = dict(params)
    known = set(class_param_names(cls, n))
    if cls == "c":
        triangle = {f"c_{i}_{j}_{k}" for i, j, k in class_c_triangle(n)}
        bad = [k for k in p if k.startswith("c_") and k not in triangle]
        if bad:
            raise ValueError(
                f"class-c coefficient(s) {bad} outside [x_i, x_j] in lin<x_(i+j+1)..x_n>, "
                "2 <= i < j <= n-2"
            )
        known |= triangle
    unknown = [k for k in p if k not in known]
    if unknown:
        raise ValueError(f"unknown parameter(s) for class {cls}: {unknown}")

    def get(name):
        return p.get(name, ZERO)

    def X(i):
        return i - 1

    if cls == "a":
        add(X(1), X(1), X(3), 1)
        for i in range(2, n):
            add(X(i), X(1), X(i + 1), 1)
        for k in range(4, n):
            add(X(1), X(2), X(k), get(f"alpha{k}"))
        add(X(1), X(2), X(n), get("theta"))
        for j in range(2, n - 1):
            for k in range(4, n + 3 - j):
                add(X(j), X(2), X(k + j - 2), get(f"alpha{k}"))
    elif cls == "b":
        add(X(1), X(1), X(3), 1)
        for i in range(3, n):
            add(X(i), X(1), X(i + 1), 1)
        for k in range(4, n + 1):
            add(X(1), X(2), X(k), get(f"beta{k}"))
        add(X(2), X(2), X(n), get("gamma"))
        for j in range(3, n - 1):
            for k in range(4, n + 3 - j):
                add(X(j), X(2), X(k + j - 2), get(f"beta{k}"))
    elif cls == "c":
        for i in range(2, n):
            add(X(i), X(1), X(i + 1), 1)
        for i in range(3, n):
            add(X(1), X(i), X(i + 1), -1)
        add(X(1), X(1), X(n), get("theta1"))
        add(X(1), X(2), X(3), -1)
        add(X(1), X(2), X(n), get("theta2"))
        add(X(2), X(2), X(n), get("theta3"))
        for i, j, k in class_c_triangle(n):
            c = get(f"c_{i}_{j}_{k}")
            add(X(i), X(j), X(k), c)
            add(X(j), X(i), X(k), -c)
    else:
        raise ValueError(f"unknown class {cls!r}")


def odd_action_weights(driver, odd_split=None) -> tuple[Fraction, Fraction]:
    """Weights ``(p, q)`` with ``R_x1 = p S`` and ``R_x2 = q S`` on the odd part.

    They satisfy ``A1 p + A2 q = 1`` so that the driver ``A1 x1 + A2 x2``
    acts as the block shift ``S``.
    """
    a1, a2 = (to_fraction(a) for a in driver)
    s = None if odd_split is None else to_fraction(odd_split)
    if not a1 and not a2:
        raise ValueError("driver must be nonzero")
    if not a2:
        return 1 / a1, (s or ZERO)
    if not a1:
        return (s or ZERO), 1 / a2
    p = 1 / a1 if s is None else s
    return p, (1 - a1 * p) / a2


def build_theorem22(cls: str, spec: FamilySpec) -> Built:
    """Adapted-basis class a), b) or c) with the odd chain driven by ``x1``.

    Products the classes leave open (``[x_i, y_j]``, ``[y_i, y_j]`` and
    ``[y_j, x_i]`` for ``i >= 2``) are zero unless given in ``spec.mixed``.
    The identity report is returned alongside because arbitrary parameters
    need not satisfy the Leibniz superidentity.
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown class {cls!r}")
    n = spec.n
    if n < 4:
        raise ValueError("the adapted-basis classes need n >= 4")
    partition = spec.partition
    m = sum(partition)
    prods, add = _table(n)
    _even_part(cls, n, spec.params, add)

    p, q = odd_action_weights(spec.driver, spec.odd_split)
    ends = set(boundaries(partition))
    for j in range(1, m + 1):
        if j not in ends:
            add(n + j - 1, 0, n + j, p)
            add(n + j - 1, 1, n + j, q)

    probe = SuperAlgebra(n, m)
    for (left, right), value in spec.mixed.items():
        a, b = probe.index(left), probe.index(right)
        if probe.parity(a) == 0 and probe.parity(b) == 0:
            raise ValueError(f"[{left}, {right}] is fixed by the class table")
        if probe.parity(a) == 1 and b == 0:
            raise ValueError(f"[{left}, x1] is fixed by the odd chain")
        for name, c in value.items():
            add(a, b, probe.index(name), c)

    A = SuperAlgebra(n, m, prods)
    return Built(A, check_identity(A, "leibniz-super"))


def build(spec: FamilySpec) -> Built:
    """Dispatch on ``spec.family``; identity report included for every family."""
    fam = spec.family
    if fam == "thm21-first":
        A = build_theorem21("first", spec.n, spec.m or 0)
    elif fam == "thm21-second":
        A = build_theorem21("second", spec.n, spec.m)
    elif fam == "remark21":
        A = build_remark21(spec.n, spec.m)
    else:
        return build_theorem22(spec.cls, spec)
    return Built(A, check_identity(A, "leibniz-super"))
