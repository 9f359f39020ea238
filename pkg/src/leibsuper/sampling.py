"""Seeded sampling of valid superalgebras and the verification harness.

Candidates start from an adapted-basis class table with random class
parameters; a random sparse set of the open mixed and odd products is then
filled from the coefficient pool.  A candidate is accepted iff it satisfies
the Leibniz superidentity, is nilpotent and has characteristic sequence
``(n-1, 1 | sorted partition)``.

Every trial draws from its own generator seeded by ``(seed, trial)``, so
results do not depend on batching.  The identity filter runs first on a
numpy batch: entries are integers after scaling by the common denominator
of the pool, and a guard keeps every partial sum below 2**52, so float64
arithmetic is exact and the filter is the identity check itself.
Survivors are rebuilt with rational entries for the nilindex and
characteristic sequence tests.
"""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import (
    SuperAlgebra,
    abelian,
    check_identity,
    derived_square,
    even_part,
    is_leibniz,
    nilindex,
)
from .basis_change import CASES, lemma31_with_retry
from .families import (
    CLASSES,
    FamilySpec,
    build_remark21,
    build_theorem21,
    build_theorem22,
    class_c_triangle,
    class_param_names,
)
from .fileformat import dump_algebra
from .invariants import CharSeq, SamplingConfig, characteristic_sequence, lemma21_crosscheck
from .linalg import to_fraction

THEOREMS = ("3.1", "3.2", "3.3", "2.1-max-nilindex", "lemma-2.1", "lemma-3.1")
MAIN_THEOREMS = ("3.1", "3.2", "3.3")
PLACEMENTS = ("even", "mixed", "odd")
SMALL_POOL = tuple(Fraction(c) for c in (-1, 0, 1))
WIDE_POOL = tuple(Fraction(c) for c in (-2, -1, 0, 1, 2)) + (Fraction(1, 2),)
FILTER_CHUNK = 500


@dataclass(frozen=True)
class VerifyConfig:
    theorem: str
    n: int
    partition: tuple[int, ...] = (2, 1)
    trials: int = 100
    seed: int = 0
    coefficient_pool: tuple[Fraction, ...] = SMALL_POOL
    max_fill: int = 3
    classes: tuple[str, ...] = CLASSES
    charseq_samples: int = 6
    formula: str = "printed"

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem {self.theorem!r}; expected one of {THEOREMS}")
        object.__setattr__(self, "partition", tuple(int(p) for p in self.partition))
        object.__setattr__(
            self, "coefficient_pool", tuple(to_fraction(c) for c in self.coefficient_pool)
        )
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if not self.coefficient_pool:
            raise ValueError("coefficient pool is empty")
        if self.max_fill < 0:
            raise ValueError("max_fill must be non-negative")
        if not self.classes or any(c not in CLASSES for c in self.classes):
            raise ValueError(f"classes must be drawn from {CLASSES}")
        if any(p <= 0 for p in self.partition):
            raise ValueError(f"partition entries must be positive: {self.partition}")
        if list(self.partition) != sorted(self.partition, reverse=True):
            raise ValueError(f"partition must be weakly decreasing: {self.partition}")
        problem = hypothesis_problem(self.theorem, self.n, self.partition)
        if problem:
            raise ValueError(f"theorem {self.theorem}: {problem}")

    @property
    def m(self) -> int:
        return sum(self.partition)


def hypothesis_problem(theorem: str, n: int, partition: Sequence[int]) -> str | None:
    """Why ``(n, partition)`` is outside the theorem's hypotheses, or None."""
    if theorem == "2.1-max-nilindex":
        return None if n >= 1 else "needs n >= 1"
    if theorem == "lemma-2.1":
        return None if n >= 2 else "needs n >= 2"
    if theorem == "lemma-3.1":
        return None if n >= 4 and partition else "needs n >= 4 and a nonempty partition"
    if len(partition) < 2:
        return "needs k >= 2 odd blocks (m2 != 0)"
    if n < 4:
        return "sampling starts from adapted-basis classes, which need n >= 4"
    if theorem in ("3.1", "3.3") and partition[0] < 2:
        return "needs m1 >= 2"
    return None


def theorem_in_scope(theorem: str, n: int, partition: Sequence[int]) -> bool:
    return hypothesis_problem(theorem, n, partition) is None


# ---------------------------------------------------------------- engine


def _tensor(A: SuperAlgebra) -> np.ndarray:
    N = A.dim
    T = np.zeros((N, N, N))
    for i, j, vec in A.nonzero_products():
        for k, c in enumerate(vec):
            if c:
                if c.denominator != 1:
                    raise ValueError("class tables are expected to be integral")
                T[i, j, k] = int(c)
    return T


def free_slots(n: int, m: int) -> np.ndarray:
    """``(i, j, k)`` triples the classes leave open, grading-compatible.

    These are ``[x_i, y_j]``, ``[y_i, y_j]`` and ``[y_j, x_i]`` for
    ``i >= 2``; even-even products and ``[y_j, x1]`` are fixed.
    """
    N = n + m
    out = []
    for i in range(N):
        for j in range(N):
            pi, pj = int(i >= n), int(j >= n)
            if pi == 0 and pj == 0:
                continue
            if pi == 1 and j == 0:
                continue
            target = (pi + pj) % 2
            out.extend((i, j, k) for k in range(N) if int(k >= n) == target)
    return np.array(out, dtype=np.int64).reshape(-1, 3)


def leibniz_mask(C: np.ndarray, n: int) -> np.ndarray:
    """Batched Leibniz superidentity test on integer-valued float tensors.

    ``C[b, i, j, k]`` is the coefficient of basis ``k`` in ``[b_i, b_j]``.
    """
    B, N = C.shape[0], C.shape[1]
    out = np.empty(B, dtype=bool)
    if B and float(np.abs(C).max()) ** 2 * N * 3 >= 2.0 ** 52:
        raise ValueError("entries too large for an exact float64 identity check")
    par = np.array([0] * n + [1] * (N - n))
    sign = np.where(np.outer(par, par) == 1, -1.0, 1.0)[None, None, :, :, None]
    for s in range(0, B, FILTER_CHUNK):
        c = C[s:s + FILTER_CHUNK]
        b = c.shape[0]
        # lhs[x,y,z,k] = sum_w C[y,z,w] C[x,w,k]
        G = np.matmul(c.reshape(b, N * N, N), c.transpose(0, 2, 1, 3).reshape(b, N, N * N))
        lhs = G.reshape(b, N, N, N, N).transpose(0, 3, 1, 2, 4)
        # P[x,a,b,k] = sum_w C[x,a,w] C[w,b,k]
        P = np.matmul(c.reshape(b, N * N, N), c.reshape(b, N, N * N)).reshape(b, N, N, N, N)
        res = lhs - P + sign * P.transpose(0, 1, 3, 2, 4)
        out[s:s + b] = ~np.any(res.reshape(b, -1) != 0, axis=1)
    return out


class _Engine:
    """Proposal generator for one ``(n, partition, pool)`` setting."""

    def __init__(self, n, partition, pool, classes, max_fill):
        self.n = n
        self.partition = tuple(partition)
        self.m = sum(partition)
        self.N = n + self.m
        self.D = math.lcm(*(c.denominator for c in pool))
        self.pool = np.array([int(c * self.D) for c in pool], dtype=float)
        self.classes = tuple(classes)
        self.max_fill = max_fill
        self.slots = free_slots(n, self.m)
        self.families = {}
        for cls in self.classes:
            spec = FamilySpec(f"thm22-{cls}", n, self.partition)
            base = _tensor(build_theorem22(cls, spec).algebra)
            names = list(class_param_names(cls, n))
            if cls == "c":
                names += [f"c_{i}_{j}_{k}" for i, j, k in class_c_triangle(n)]
            units = []
            for name in names:
                spec = FamilySpec(f"thm22-{cls}", n, self.partition, params={name: 1})
                units.append(_tensor(build_theorem22(cls, spec).algebra) - base)
            stack = np.array(units) if units else np.zeros((0,) + base.shape)
            self.families[cls] = (self.D * base, stack)

    def propose(self, seed: int, trial: int) -> np.ndarray:
        rng = np.random.default_rng((seed, trial))
        cls = self.classes[rng.integers(len(self.classes))]
        base, units = self.families[cls]
        values = self.pool[rng.integers(len(self.pool), size=len(units))]
        C = base + np.tensordot(values, units, axes=1) if len(units) else base.copy()
        s = int(rng.integers(0, self.max_fill + 1))
        s = min(s, len(self.slots))
        if s:
            pick = self.slots[rng.choice(len(self.slots), size=s, replace=False)]
            fill = self.pool[rng.integers(len(self.pool), size=s)]
            C[pick[:, 0], pick[:, 1], pick[:, 2]] += fill
        return C

    def exact(self, C: np.ndarray) -> SuperAlgebra:
        prods = {}
        for i, j in zip(*np.nonzero(np.any(C != 0, axis=2))):
            prods[(int(i), int(j))] = {
                int(k): Fraction(int(C[i, j, k]), self.D) for k in np.nonzero(C[i, j])[0]
            }
        return SuperAlgebra(self.n, self.m, prods)


@dataclass
class Placement:
    """Where the generators sit, read off ``L^2``."""

    even_generators: int
    odd_generators: int
    x1_in_square: bool

    @property
    def generators(self) -> int:
        return self.even_generators + self.odd_generators

    @property
    def kind(self) -> str:
        if self.odd_generators == 0:
            return "even"
        if self.even_generators == 0:
            return "odd"
        return "mixed"

    @property
    def theorem(self) -> str | None:
        """Which of the three placement theorems speaks about this case."""
        if self.kind == "mixed":
            return "3.1" if self.x1_in_square else "3.2"
        if self.kind == "odd":
            return "3.3"
        return None


def placement(A: SuperAlgebra) -> Placement:
    """Generator counts per parity: ``dim L_i - dim (L^2 cap L_i)``."""
    sq = derived_square(A)
    d0, d1 = sq.graded_dims
    return Placement(A.n - d0, A.m - d1, sq.contains(A.basis_vector(0)))


@dataclass
class Accepted:
    algebra: SuperAlgebra
    first_trial: int
    multiplicity: int
    nilindex: int
    placement: Placement


@dataclass
class Survey:
    """Everything learned from a run of trials, in trial order."""

    n: int
    partition: tuple[int, ...]
    attempts: int = 0
    accepted_trials: int = 0
    rejections: Counter = field(default_factory=Counter)
    accepted: list[Accepted] = field(default_factory=list)

    @property
    def m(self) -> int:
        return sum(self.partition)


def _judge(engine: _Engine, C: np.ndarray, target: CharSeq, cs_cfg: SamplingConfig):
    A = engine.exact(C)
    s = nilindex(A)
    if s is None:
        return "not-nilpotent", None
    if characteristic_sequence(A, cs_cfg) != target:
        return "charseq", None
    return "accepted", (A, s)


def survey(
    n: int,
    partition: Sequence[int],
    trials: int,
    seed: int = 0,
    pool: Sequence = SMALL_POOL,
    max_fill: int = 3,
    classes: Sequence[str] = CLASSES,
    charseq_samples: int = 6,
    stop_after_first: bool = False,
    batch: int = 2000,
) -> Survey:
    """Run ``trials`` seeded proposals and classify each accepted algebra.

    Identical proposals are judged once; ``Accepted.multiplicity`` counts
    how many trials produced the same table.
    """
    partition = tuple(int(p) for p in partition)
    pool = tuple(to_fraction(c) for c in pool)
    engine = _Engine(n, partition, pool, classes, max_fill)
    target = CharSeq.target(n, partition)
    cs_cfg = SamplingConfig(sample_count=charseq_samples, seed=0)
    out = Survey(n, partition)
    verdicts: dict[bytes, object] = {}
    for start in range(0, trials, batch):
        stop = min(trials, start + batch)
        C = np.array([engine.propose(seed, t) for t in range(start, stop)])
        ok = leibniz_mask(C, n)
        for offset in range(stop - start):
            trial = start + offset
            out.attempts += 1
            if not ok[offset]:
                out.rejections["leibniz"] += 1
                continue
            key = C[offset].tobytes()
            verdict = verdicts.get(key)
            if verdict is None:
                reason, found = _judge(engine, C[offset], target, cs_cfg)
                if reason == "accepted":
                    A, s = found
                    verdict = Accepted(A, trial, 0, s, placement(A))
                    out.accepted.append(verdict)
                else:
                    verdict = reason
                verdicts[key] = verdict
            if isinstance(verdict, Accepted):
                verdict.multiplicity += 1
                out.accepted_trials += 1
                if stop_after_first:
                    return out
            else:
                out.rejections[verdict] += 1
    return out


@dataclass
class SampleResult:
    algebra: SuperAlgebra | None
    attempts: int
    rejections: Counter

    @property
    def found(self) -> bool:
        return self.algebra is not None


def sample_valid_superalgebra(cfg: VerifyConfig) -> SampleResult:
    """First accepted instance within ``cfg.trials`` attempts, or the statistics."""
    s = survey(
        cfg.n, cfg.partition, cfg.trials, cfg.seed, cfg.coefficient_pool,
        cfg.max_fill, cfg.classes, cfg.charseq_samples, stop_after_first=True,
    )
    A = s.accepted[0].algebra if s.accepted else None
    return SampleResult(A, s.attempts, s.rejections)


# ---------------------------------------------------------------- reports


@dataclass
class VerifyReport:
    theorem: str
    instances_tested: int = 0
    instances_valid: int = 0
    counterexamples: list[str] = field(default_factory=list)
    max_nilindex_seen: int = 0
    generator_placement_histogram: dict[str, int] = field(default_factory=dict)
    details: dict[str, object] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_lines(self) -> list[str]:
        """Key/value lines; counterexample tables follow between markers."""
        lines = [
            f"theorem {self.theorem}",
            f"passed {'yes' if self.passed else 'no'}",
            f"instances_tested {self.instances_tested}",
            f"instances_valid {self.instances_valid}",
            f"max_nilindex_seen {self.max_nilindex_seen}",
        ]
        for key in sorted(self.generator_placement_histogram):
            lines.append(f"placement_{key} {self.generator_placement_histogram[key]}")
        for key in sorted(self.details):
            lines.append(f"{key} {self.details[key]}")
        for note in self.notes:
            lines.append(f"note {note}")
        lines.append(f"counterexamples {len(self.counterexamples)}")
        for idx, dump in enumerate(self.counterexamples, start=1):
            lines.append(f"begin_counterexample {idx}")
            lines.extend(dump.rstrip("\n").splitlines())
            lines.append(f"end_counterexample {idx}")
        return lines

    def render(self) -> str:
        return "\n".join(self.to_lines()) + "\n"


def _fmt_pool(pool) -> str:
    return ",".join(str(c) for c in pool)


def bucket_summary(s: Survey) -> dict[str, Counter]:
    """Distinct accepted algebras per placement, per theorem and per generator count."""
    kinds = Counter({k: 0 for k in PLACEMENTS})
    theorems = Counter()
    gens = Counter()
    two = Counter({k: 0 for k in PLACEMENTS})
    for rec in s.accepted:
        kinds[rec.placement.kind] += 1
        theorems[rec.placement.theorem or "none"] += 1
        gens[rec.placement.generators] += 1
        if rec.placement.generators == 2:
            two[rec.placement.kind] += 1
    return {"placement": kinds, "theorem": theorems, "generators": gens, "two": two}


def _verify_main(cfg: VerifyConfig) -> VerifyReport:
    s = survey(
        cfg.n, cfg.partition, cfg.trials, cfg.seed, cfg.coefficient_pool,
        cfg.max_fill, cfg.classes, cfg.charseq_samples,
    )
    rep = VerifyReport(cfg.theorem, s.attempts, s.accepted_trials)
    summary = bucket_summary(s)
    rep.generator_placement_histogram = dict(summary["placement"])
    bound = cfg.n + cfg.m
    matched = 0
    for rec in s.accepted:
        rep.max_nilindex_seen = max(rep.max_nilindex_seen, rec.nilindex)
        if rec.placement.theorem != cfg.theorem:
            continue
        matched += 1
        if rec.nilindex >= bound:
            rep.counterexamples.append(dump_algebra(rec.algebra))
    d = rep.details
    d["n"] = cfg.n
    d["partition"] = ",".join(map(str, cfg.partition))
    d["seed"] = cfg.seed
    d["pool"] = _fmt_pool(cfg.coefficient_pool)
    d["max_fill"] = cfg.max_fill
    d["distinct_valid"] = len(s.accepted)
    d["hypothesis_matched"] = matched
    d["hypothesis_two_generators"] = sum(
        1 for r in s.accepted
        if r.placement.theorem == cfg.theorem and r.placement.generators == 2
    )
    d["nilindex_bound"] = f"< {bound}"
    for reason in ("leibniz", "not-nilpotent", "charseq"):
        d[f"rejected_{reason}"] = s.rejections.get(reason, 0)
    for g, count in sorted(summary["generators"].items()):
        d[f"generators_{g}"] = count
    if not matched:
        rep.notes.append("no sampled instance met the generator hypothesis; nothing to refute")
    return rep


def _verify_max_nilindex(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport(cfg.theorem)
    n = cfg.n
    cases = [("first", build_theorem21("first", n, 0))]
    cases += [(f"second m={m}", build_remark21(n, m)) for m in (n, n + 1)]
    for label, A in cases:
        rep.instances_tested += 1
        s = nilindex(A)
        ok = check_identity(A, "leibniz-super").holds and s == A.n + A.m + 1
        if s is not None:
            rep.max_nilindex_seen = max(rep.max_nilindex_seen, s)
        if ok:
            rep.instances_valid += 1
        else:
            rep.counterexamples.append(dump_algebra(A))
        rep.details[f"nilindex_{label.replace(' ', '_')}"] = s
    return rep


def _draw_params(rng: random.Random, cls: str, n: int, pool) -> dict:
    params = {name: rng.choice(pool) for name in class_param_names(cls, n)}
    if cls == "c":
        for i, j, k in class_c_triangle(n):
            params[f"c_{i}_{j}_{k}"] = rng.choice(pool)
    return params


def _trial_rng(seed: int, *tags) -> random.Random:
    return random.Random(":".join(str(t) for t in (seed,) + tags))


def _verify_lemma21(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport(cfg.theorem)
    n = cfg.n
    cs_cfg = SamplingConfig(sample_count=cfg.charseq_samples)
    cases = []
    if n >= 4:
        for cls in cfg.classes:
            for t in range(cfg.trials):
                rng = _trial_rng(cfg.seed, "lemma21", cls, t)
                spec = FamilySpec(f"thm22-{cls}", n, (1,), params=_draw_params(
                    rng, cls, n, cfg.coefficient_pool))
                cases.append((True, even_part(build_theorem22(cls, spec).algebra)))
    cases.append((False, build_theorem21("first", n, 0)))
    cases.append((False, abelian(n, 0)))
    agree = 0
    for expect_filiform, A in cases:
        if not is_leibniz(A):
            continue
        rep.instances_tested += 1
        votes = lemma21_crosscheck(A, cs_cfg)
        if len(set(votes)) == 1 and votes[0] == expect_filiform:
            agree += 1
            rep.instances_valid += 1
        else:
            rep.counterexamples.append(dump_algebra(A))
        s = nilindex(A)
        if s is not None:
            rep.max_nilindex_seen = max(rep.max_nilindex_seen, s)
    rep.details["agreeing"] = agree
    return rep


def draw_lemma31_instance(rng: random.Random, case: str, n: int, partition, pool):
    """A valid class instance whose odd chain is driven by ``A1 x1 + A2 x2``.

    The scalars satisfy the case condition.  Returns ``(algebra, A1, A2)``.
    """
    cls = CASES[case]
    nonzero = [c for c in pool if c]
    if not nonzero:
        raise ValueError("the pool needs a nonzero value")
    for _ in range(1000):
        A1, A2 = rng.choice(pool), rng.choice(pool)
        if case in ("a2", "b2", "c2"):
            A1 = Fraction(0)
            A2 = rng.choice(nonzero)
        if case == "a3":
            A1 = rng.choice(nonzero)
            A2 = -A1
        if not A1 and not A2:
            continue
        if case == "a1" and not A1 * (A1 + A2):
            continue
        if case in ("b1", "c1") and not A1:
            continue
        params = _draw_params(rng, cls, n, pool)
        spec = FamilySpec(
            f"thm22-{cls}", n, partition, params=params,
            driver=(A1, A2), odd_split=rng.choice(pool),
        )
        built = build_theorem22(cls, spec)
        if built.report.holds:
            return built.algebra, A1, A2
    raise ValueError(f"could not draw a valid instance for case {case}")


def _verify_lemma31(cfg: VerifyConfig) -> VerifyReport:
    rep = VerifyReport(cfg.theorem)
    for case in sorted(CASES):
        exhausted = 0
        for t in range(cfg.trials):
            rng = _trial_rng(cfg.seed, "lemma31", case, cfg.n, t)
            A, A1, A2 = draw_lemma31_instance(rng, case, cfg.n, cfg.partition,
                                              cfg.coefficient_pool)
            rep.instances_tested += 1
            out = lemma31_with_retry(A, case, A1, A2, cfg.partition, cfg.formula)
            if out.exhausted:
                exhausted += 1
                if case[1] == "1":
                    rep.counterexamples.append(dump_algebra(A))
                continue
            if not check_identity(out.algebra, "leibniz-super").holds:
                rep.counterexamples.append(dump_algebra(out.algebra))
                continue
            rep.instances_valid += 1
        rep.details[f"exhausted_{case}"] = f"{exhausted}/{cfg.trials}"
    rep.details["formula"] = cfg.formula
    return rep


def verify_theorem(cfg: VerifyConfig) -> VerifyReport:
    """Run the check named by ``cfg.theorem``; see :data:`THEOREMS`."""
    if cfg.theorem in MAIN_THEOREMS:
        return _verify_main(cfg)
    if cfg.theorem == "2.1-max-nilindex":
        return _verify_max_nilindex(cfg)
    if cfg.theorem == "lemma-2.1":
        return _verify_lemma21(cfg)
    return _verify_lemma31(cfg)
