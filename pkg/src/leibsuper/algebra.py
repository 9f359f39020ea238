"""Finite-dimensional superalgebras given by structure constants.

The basis is ``x1..xn`` (even) followed by ``y1..ym`` (odd); internally
index ``i`` refers to ``x{i+1}`` for ``i < n`` and to ``y{i-n+1}`` otherwise.
Elements are tuples of :class:`~fractions.Fraction` of length ``n + m``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from . import linalg
from .linalg import ONE, ZERO, to_fraction

Element = tuple[Fraction, ...]

IDENTITY_KINDS = ("leibniz-super", "jacobi-super", "grading", "antisymmetry")

_NAME_RE = re.compile(r"^([xy])([1-9][0-9]*)$")


class GradingError(ValueError):
    """A product would land in the wrong parity."""


class NotNilpotentError(ValueError):
    pass


def _vec_from(value, dim: int) -> Element:
    if isinstance(value, Mapping):
        v = [ZERO] * dim
        for k, c in value.items():
            v[k] += to_fraction(c)
        return tuple(v)
    v = tuple(to_fraction(c) for c in value)
    if len(v) != dim:
        raise ValueError(f"product vector has length {len(v)}, expected {dim}")
    return v


class SuperAlgebra:
    """Immutable superalgebra with a dense structure-constant tensor.

    ``products`` maps index pairs ``(i, j)`` to the coordinates of
    ``[b_i, b_j]``, either as a full sequence or as a sparse ``{k: coeff}``
    mapping.  Omitted pairs are zero.  Grading is validated on construction.
    """

    __slots__ = ("n", "m", "_table", "_sparse", "_hash")

    def __init__(self, n: int, m: int, products: Mapping | None = None):
        if n < 0 or m < 0:
            raise ValueError("dimensions must be non-negative")
        self.n = n
        self.m = m
        dim = n + m
        zero = (ZERO,) * dim
        table = [[zero] * dim for _ in range(dim)]
        for (i, j), value in (products or {}).items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise IndexError(f"product index ({i}, {j}) out of range for dim {dim}")
            vec = _vec_from(value, dim)
            target = (self.parity(i) + self.parity(j)) % 2
            bad = [k for k, c in enumerate(vec) if c and self.parity(k) != target]
            if bad:
                raise GradingError(
                    f"[{self.name(i)}, {self.name(j)}] has a component on "
                    f"{self.name(bad[0])}, which has the wrong parity"
                )
            table[i][j] = vec
        self._table = tuple(tuple(row) for row in table)
        self._sparse = tuple(
            tuple(tuple((k, c) for k, c in enumerate(vec) if c) for vec in row)
            for row in self._table
        )
        self._hash = None

    # -- basis bookkeeping -------------------------------------------------

    @property
    def dim(self) -> int:
        return self.n + self.m

    def parity(self, i: int) -> int:
        return 0 if i < self.n else 1

    def name(self, i: int) -> str:
        return f"x{i + 1}" if i < self.n else f"y{i - self.n + 1}"

    def index(self, name: str) -> int:
        match = _NAME_RE.match(name)
        if not match:
            raise KeyError(f"not a basis name: {name!r}")
        k = int(match.group(2)) - 1
        if match.group(1) == "x":
            if k >= self.n:
                raise KeyError(f"{name} out of range (dim_even {self.n})")
            return k
        if k >= self.m:
            raise KeyError(f"{name} out of range (dim_odd {self.m})")
        return self.n + k

    @property
    def even_indices(self) -> range:
        return range(self.n)

    @property
    def odd_indices(self) -> range:
        return range(self.n, self.dim)

    # -- products ----------------------------------------------------------

    def product(self, i: int, j: int) -> Element:
        """Coordinates of ``[b_i, b_j]``."""
        return self._table[i][j]

    def sparse_product(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        return self._sparse[i][j]

    def coefficient(self, i: int, j: int, k: int) -> Fraction:
        return self._table[i][j][k]

    def nonzero_products(self) -> Iterator[tuple[int, int, Element]]:
        for i in range(self.dim):
            for j in range(self.dim):
                if self._sparse[i][j]:
                    yield i, j, self._table[i][j]

    def products(self) -> dict[tuple[int, int], Element]:
        return {(i, j): v for i, j, v in self.nonzero_products()}

    def with_products(self, updates: Mapping) -> "SuperAlgebra":
        """Copy with some products replaced (zero vectors clear a product)."""
        prods: dict = self.products()
        prods.update(updates)
        return SuperAlgebra(self.n, self.m, prods)

    def vector(self, spec: Mapping[str, object] | None = None, **coeffs) -> Element:
        """Build an element from basis names: ``A.vector(x1=1, y2="1/2")``."""
        v = [ZERO] * self.dim
        for name, c in {**(spec or {}), **coeffs}.items():
            v[self.index(name)] += to_fraction(c)
        return tuple(v)

    def basis_vector(self, i: int) -> Element:
        return tuple(ONE if k == i else ZERO for k in range(self.dim))

    def format_element(self, v: Sequence[Fraction]) -> str:
        terms = []
        for k, c in enumerate(v):
            if c:
                terms.append(self.name(k) if c == 1 else f"{c} {self.name(k)}")
        return " + ".join(terms) if terms else "0"

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperAlgebra):
            return NotImplemented
        return (self.n, self.m, self._table) == (other.n, other.m, other._table)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.m, self._table))
        return self._hash

    def __repr__(self) -> str:
        count = sum(1 for _ in self.nonzero_products())
        return f"SuperAlgebra(n={self.n}, m={self.m}, nonzero_products={count})"


def abelian(n: int, m: int) -> SuperAlgebra:
    return SuperAlgebra(n, m)


def element_parity(A: SuperAlgebra, v: Sequence[Fraction]) -> int | None:
    """0 or 1 for a nonzero homogeneous element, None otherwise."""
    even = any(v[i] for i in A.even_indices)
    odd = any(v[i] for i in A.odd_indices)
    if even and not odd:
        return 0
    if odd and not even:
        return 1
    return None


def _check_dim(A: SuperAlgebra, v: Sequence) -> None:
    if len(v) != A.dim:
        raise ValueError(f"element has length {len(v)}, algebra has dimension {A.dim}")


def evaluate_product(A: SuperAlgebra, u: Sequence, v: Sequence) -> Element:
    """Bilinear extension of the bracket: ``[u, v]``."""
    _check_dim(A, u)
    _check_dim(A, v)
    out = [ZERO] * A.dim
    for i, ui in enumerate(u):
        if not ui:
            continue
        ui = to_fraction(ui)
        for j, vj in enumerate(v):
            if not vj:
                continue
            coef = ui * to_fraction(vj)
            for k, c in A.sparse_product(i, j):
                out[k] += coef * c
    return tuple(out)


def _bracket_basis_vec(A: SuperAlgebra, i: int, w: Iterable[tuple[int, Fraction]]) -> dict:
    """``[b_i, w]`` for sparse ``w``."""
    out: dict[int, Fraction] = {}
    for j, cj in w:
        for k, c in A.sparse_product(i, j):
            out[k] = out.get(k, ZERO) + cj * c
    return out


def _bracket_vec_basis(A: SuperAlgebra, w: Iterable[tuple[int, Fraction]], j: int) -> dict:
    """``[w, b_j]`` for sparse ``w``."""
    out: dict[int, Fraction] = {}
    for i, ci in w:
        for k, c in A.sparse_product(i, j):
            out[k] = out.get(k, ZERO) + ci * c
    return out


def _combine(A: SuperAlgebra, *parts: tuple[int, dict]) -> Element:
    out = [ZERO] * A.dim
    for sign, part in parts:
        for k, c in part.items():
            out[k] += sign * c
    return tuple(out)


@dataclass
class IdentityReport:
    """Outcome of an exhaustive identity check on basis tuples."""

    kind: str
    violations: list[tuple[tuple[int, ...], Element]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.holds

    def describe(self, A: SuperAlgebra, limit: int = 10) -> str:
        if self.holds:
            return f"{self.kind}: holds"
        lines = [f"{self.kind}: {len(self.violations)} violation(s)"]
        for idx, res in self.violations[:limit]:
            names = ", ".join(A.name(i) for i in idx)
            lines.append(f"  ({names}) residual {A.format_element(res)}")
        return "\n".join(lines)


def leibniz_residual(A: SuperAlgebra, a: int, b: int, c: int) -> Element:
    """``[a,[b,c]] - [[a,b],c] + (-1)^{|b||c|} [[a,c],b]`` on basis indices."""
    sign = -1 if A.parity(b) and A.parity(c) else 1
    lhs = _bracket_basis_vec(A, a, A.sparse_product(b, c))
    ab_c = _bracket_vec_basis(A, A.sparse_product(a, b), c)
    ac_b = _bracket_vec_basis(A, A.sparse_product(a, c), b)
    return _combine(A, (1, lhs), (-1, ab_c), (sign, ac_b))


def jacobi_residual(A: SuperAlgebra, a: int, b: int, c: int) -> Element:
    pa, pb, pc = A.parity(a), A.parity(b), A.parity(c)
    s1 = -1 if pa * pc else 1
    s2 = -1 if pa * pb else 1
    s3 = -1 if pb * pc else 1
    t1 = _bracket_basis_vec(A, a, A.sparse_product(b, c))
    t2 = _bracket_basis_vec(A, b, A.sparse_product(c, a))
    t3 = _bracket_basis_vec(A, c, A.sparse_product(a, b))
    return _combine(A, (s1, t1), (s2, t2), (s3, t3))


def check_identity(A: SuperAlgebra, kind: str) -> IdentityReport:
    """Check one identity on every basis triple (or pair).

    By multilinearity a clean pass certifies the identity on all
    homogeneous elements.
    """
    report = IdentityReport(kind)
    dim = A.dim
    if kind == "leibniz-super":
        for a in range(dim):
            for b in range(dim):
                for c in range(dim):
                    res = leibniz_residual(A, a, b, c)
                    if any(res):
                        report.violations.append(((a, b, c), res))
    elif kind == "jacobi-super":
        for a in range(dim):
            for b in range(dim):
                for c in range(dim):
                    res = jacobi_residual(A, a, b, c)
                    if any(res):
                        report.violations.append(((a, b, c), res))
    elif kind == "antisymmetry":
        for a in range(dim):
            for b in range(a, dim):
                sign = -1 if A.parity(a) and A.parity(b) else 1
                res = tuple(p + sign * q for p, q in zip(A.product(a, b), A.product(b, a)))
                if any(res):
                    report.violations.append(((a, b), res))
    elif kind == "grading":
        for a in range(dim):
            for b in range(dim):
                target = (A.parity(a) + A.parity(b)) % 2
                res = tuple(
                    c if A.parity(k) != target else ZERO for k, c in enumerate(A.product(a, b))
                )
                if any(res):
                    report.violations.append(((a, b), res))
    else:
        raise ValueError(f"unknown identity {kind!r}; expected one of {IDENTITY_KINDS}")
    return report


def is_leibniz(A: SuperAlgebra) -> bool:
    """Early-exit variant of the leibniz-super check."""
    dim = A.dim
    for a in range(dim):
        for b in range(dim):
            for c in range(dim):
                if any(leibniz_residual(A, a, b, c)):
                    return False
    return True


# -- subspaces ---------------------------------------------------------------


@dataclass(frozen=True)
class Subspace:
    """A subspace of the ambient ``n + m`` space, stored as its rref basis."""

    n: int
    m: int
    basis: tuple[Element, ...] = ()

    @classmethod
    def span(cls, n: int, m: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [list(v) for v in vectors]
        basis = linalg.row_basis(rows, n + m) if rows else []
        return cls(n, m, tuple(tuple(r) for r in basis))

    @classmethod
    def zero(cls, n: int, m: int) -> "Subspace":
        return cls(n, m, ())

    @classmethod
    def whole(cls, n: int, m: int) -> "Subspace":
        return cls(n, m, tuple(tuple(r) for r in linalg.identity(n + m)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def graded_dims(self) -> tuple[int, int]:
        """(even, odd) dimensions; exact for graded subspaces."""
        even = sum(1 for row in self.basis if linalg.pivot_columns([row])[0] < self.n)
        return even, self.dim - even

    def contains(self, v: Sequence) -> bool:
        return linalg.in_row_space(self.basis, [to_fraction(x) for x in v])

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubset(other)

    def is_zero(self) -> bool:
        return not self.basis


def product_space(A: SuperAlgebra, left: Subspace, right: Subspace) -> Subspace:
    """Span of ``[u, v]`` over bases of ``left`` and ``right``."""
    vecs = []
    rb = [tuple((k, c) for k, c in enumerate(v) if c) for v in right.basis]
    for u in left.basis:
        us = [(k, c) for k, c in enumerate(u) if c]
        for vs in rb:
            out: dict[int, Fraction] = {}
            for i, ci in us:
                for j, cj in vs:
                    for k, c in A.sparse_product(i, j):
                        out[k] = out.get(k, ZERO) + ci * cj * c
            if any(out.values()):
                vec = [ZERO] * A.dim
                for k, c in out.items():
                    vec[k] = c
                vecs.append(vec)
    return Subspace.span(A.n, A.m, vecs)


def _times_basis(A: SuperAlgebra, sub: Subspace) -> Subspace:
    vecs = []
    for u in sub.basis:
        us = [(k, c) for k, c in enumerate(u) if c]
        for j in range(A.dim):
            part = _bracket_vec_basis(A, us, j)
            if any(part.values()):
                vec = [ZERO] * A.dim
                for k, c in part.items():
                    vec[k] = c
                vecs.append(vec)
    return Subspace.span(A.n, A.m, vecs)


def lower_central_series(A: SuperAlgebra) -> list[Subspace]:
    """``[L^1, L^2, ...]`` with ``L^{k+1} = [L^k, L]``.

    Stops at the zero subspace or at the first term equal to its
    predecessor (which is then not repeated).
    """
    current = Subspace.whole(A.n, A.m)
    series = [current]
    while not current.is_zero():
        nxt = _times_basis(A, current)
        if nxt == current:
            break
        series.append(nxt)
        current = nxt
    return series


def series_dims(A: SuperAlgebra) -> list[int]:
    return [s.dim for s in lower_central_series(A)]


def nilindex(A: SuperAlgebra) -> int | None:
    """Smallest ``s`` with ``L^s = 0``, or None if the algebra is not nilpotent."""
    series = lower_central_series(A)
    return len(series) if series[-1].is_zero() else None


def is_nilpotent(A: SuperAlgebra) -> bool:
    return nilindex(A) is not None


def derived_square(A: SuperAlgebra) -> Subspace:
    """``L^2 = [L, L]``."""
    whole = Subspace.whole(A.n, A.m)
    return _times_basis(A, whole)


def even_square(A: SuperAlgebra) -> Subspace:
    """``[L_0, L_0]`` as a subspace of the ambient space."""
    vecs = [A.product(i, j) for i in A.even_indices for j in A.even_indices]
    return Subspace.span(A.n, A.m, [v for v in vecs if any(v)])


def right_annihilator(A: SuperAlgebra) -> Subspace:
    """``{z : [y, z] = 0 for all y}``, the kernel of the stacked left multiplications."""
    dim = A.dim
    rows = []
    for i in range(dim):
        for k in range(dim):
            row = [A.coefficient(i, j, k) for j in range(dim)]
            if any(row):
                rows.append(row)
    return Subspace(A.n, A.m, tuple(tuple(r) for r in linalg.kernel(rows, dim)))


def generator_count(A: SuperAlgebra) -> int:
    """``dim L/L^2``: the minimal number of generators of a nilpotent algebra."""
    if not is_nilpotent(A):
        raise NotNilpotentError("generator count is only defined for nilpotent algebras")
    return A.dim - derived_square(A).dim


def even_part(A: SuperAlgebra) -> SuperAlgebra:
    """The Leibniz algebra ``L_0`` on its own (odd coordinates dropped)."""
    n = A.n
    prods = {}
    for i in A.even_indices:
        for j in A.even_indices:
            v = A.product(i, j)
            if any(v):
                prods[(i, j)] = v[:n]
    return SuperAlgebra(n, 0, prods)
