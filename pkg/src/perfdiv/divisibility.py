"""Perfect divisions and the perfectly-divisible predicates."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import CapExceeded, VertexError
from .graph import Graph, bits, find_homogeneous_sets, induced_subgraph, lift_mask
from .graph6 import emit_graph6
from .rng import random_weights
from .search import (
    Certificate,
    Weights,
    check_weights,
    is_perfect,
    max_clique_weight,
    ones,
    weight_restrict,
)

log = logging.getLogger(__name__)

DIVISION_CAP = 16
DIVISIBLE_CAP = 12
WEIGHT_BUDGET = 1_000_000


@dataclass(frozen=True)
class PerfectDivision:
    """A split of a ground set into ``a`` (perfect side) and ``b`` (lighter side)."""

    a: int
    b: int

    @property
    def ground(self) -> int:
        return self.a | self.b

    def to_json(self) -> dict:
        return {"A": bits(self.a), "B": bits(self.b)}


@dataclass(frozen=True)
class DivisibilityVerdict:
    divisible: bool
    witness: Optional[int] = None
    weights: Optional[Weights] = None

    def certificate(self) -> Optional[Certificate]:
        if self.witness is None:
            return None
        return Certificate("failing_subgraph", tuple(bits(self.witness)))


def verify_division(g: Graph, h: Sequence[int], ground: int, d: PerfectDivision) -> bool:
    """Check a division with the general-purpose perfection and clique routines."""
    g.check_set(ground)
    if (d.a | d.b) & ~ground:
        raise VertexError("division escapes its ground set")
    if d.a | d.b != ground or d.a & d.b:
        return False
    if not ground:
        return True
    if not is_perfect(induced_subgraph(g, d.a)[0])[0]:
        return False
    return max_clique_weight(g, h, d.b)[0] < max_clique_weight(g, h, ground)[0]


@lru_cache(maxsize=4096)
def _imperfect(g: Graph) -> np.ndarray:
    return _kernels.imperfect_table(_kernels.adjacency_array(g.adj), g.n)


def _omega(g: Graph, h: Weights) -> np.ndarray:
    return _kernels.omega_table(_kernels.adjacency_array(g.adj), np.asarray(h, dtype=np.int64), g.n)


def division_table(g: Graph, h: Optional[Sequence[int]] = None) -> np.ndarray:
    """Boolean table over all subsets S of V(g): does g[S] have a perfect division for h|_S."""
    h = ones(g.n) if h is None else check_weights(h, g.n)
    bad = _imperfect(g)
    return _kernels.division_table(bad, _omega(g, h), g.n)


def find_perfect_division(
    g: Graph, h: Optional[Sequence[int]] = None, ground: Optional[int] = None, *, cap: int = DIVISION_CAP
) -> Optional[PerfectDivision]:
    """First valid division of g[ground], enumerating A by increasing mask value."""
    h = ones(g.n) if h is None else check_weights(h, g.n)
    ground = g.full if ground is None else ground
    g.check_set(ground)
    sub, index = induced_subgraph(g, ground)
    if sub.n > cap:
        raise CapExceeded("find_perfect_division", sub.n, cap)
    if not ground:
        return PerfectDivision(0, 0)
    bad = _imperfect(sub)
    a = int(_kernels.first_division(bad, _omega(sub, weight_restrict(h, ground)), sub.full))
    if a < 0:
        return None
    a = lift_mask(a, index)
    return PerfectDivision(a, ground & ~a)


def _lex_key(mask: int) -> tuple[int, ...]:
    return tuple(bits(mask))


def is_perfectly_divisible(
    g: Graph, h: Optional[Sequence[int]] = None, *, cap: int = DIVISIBLE_CAP
) -> DivisibilityVerdict:
    """Does every induced subgraph g[S] have a perfect division for h|_S?

    On failure the witness is the lexicographically smallest failing S
    (comparing sorted vertex tuples).
    """
    if g.n > cap:
        raise CapExceeded("is_perfectly_divisible", g.n, cap)
    h = ones(g.n) if h is None else check_weights(h, g.n)
    ok = division_table(g, h)
    if ok.all():
        return DivisibilityVerdict(True)
    failing = np.flatnonzero(~ok)
    witness = min((int(s) for s in failing), key=_lex_key)
    return DivisibilityVerdict(False, witness, h)


def check_failing_subgraph(g: Graph, h: Sequence[int], subset: int) -> bool:
    """Confirm by brute force that g[subset] has no perfect division at all."""
    h = check_weights(h, g.n)
    g.check_set(subset)
    a = subset
    while True:
        if verify_division(g, h, subset, PerfectDivision(a, subset & ~a)):
            return False
        if not a:
            return True
        a = (a - 1) & subset


def weight_functions(n: int, wmax: int, mode: str = "exhaustive", seed: int = 0, samples: int = 0) -> Iterable[Weights]:
    """Weight functions with values in [1, wmax]: all of them, or ``samples`` seeded draws."""
    if wmax < 1:
        raise ValueError("wmax must be at least 1")
    if mode == "exhaustive":
        if wmax**n > WEIGHT_BUDGET:
            raise CapExceeded(f"exhaustive weights with wmax={wmax}", n, 0)
        return (tuple(h) for h in itertools.product(range(1, wmax + 1), repeat=n))
    if mode == "sampled":
        return (random_weights((seed + j) & (2**64 - 1), n, wmax) for j in range(samples))
    raise ValueError(f"unknown weight mode {mode!r}")


def is_perfectly_weight_divisible_bounded(
    g: Graph,
    wmax: int,
    mode: str = "exhaustive",
    *,
    seed: int = 0,
    samples: int = 20,
    cap: int = DIVISIBLE_CAP,
) -> DivisibilityVerdict:
    """Perfect divisibility for every tested weight function with values in [1, wmax]."""
    for h in weight_functions(g.n, wmax, mode, seed, samples):
        verdict = is_perfectly_divisible(g, h, cap=cap)
        if not verdict.divisible:
            return verdict
    return DivisibilityVerdict(True)


@dataclass
class MinimalRecord:
    graph6: str
    n: int
    divisible: bool
    witness: Optional[list[int]] = None
    hom_sets_empty: Optional[bool] = None

    def to_json(self) -> dict:
        out = {"graph6": self.graph6, "n": self.n, "divisible": self.divisible}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.hom_sets_empty is not None:
            out["hom_sets_empty"] = self.hom_sets_empty
        return out


@dataclass
class MinimalReport:
    scanned: int = 0
    skipped: int = 0
    non_divisible: int = 0
    hits: list[MinimalRecord] = field(default_factory=list)
    violations: list[MinimalRecord] = field(default_factory=list)

    @property
    def vacuous(self) -> bool:
        return not self.hits

    def summary(self) -> dict:
        return {
            "scanned": self.scanned,
            "skipped": self.skipped,
            "non_divisible": self.non_divisible,
            "minimal_hits": len(self.hits),
            "homogeneous_set_violations": len(self.violations),
            "vacuous": self.vacuous,
        }


def classify_minimal(g: Graph, *, cap: int = DIVISIBLE_CAP) -> MinimalRecord:
    """Divisibility of g, and for minimal non-divisible g whether it has no homogeneous set.

    g is minimal non-divisible exactly when V(g) is the only failing subset:
    divisibility is hereditary, so the one-vertex deletions cover all proper subsets.
    """
    if g.n > cap:
        raise CapExceeded("find_minimal_non_divisible", g.n, cap)
    ok = division_table(g)
    word = emit_graph6(g)
    if ok.all():
        return MinimalRecord(word, g.n, True)
    full = g.full
    failing = np.flatnonzero(~ok)
    witness = min((int(s) for s in failing), key=_lex_key)
    record = MinimalRecord(word, g.n, False, bits(witness))
    if len(failing) == 1 and int(failing[0]) == full:
        record.hom_sets_empty = not find_homogeneous_sets(g)
    return record


def find_minimal_non_divisible(
    stream: Iterable[Graph], *, cap: int = DIVISIBLE_CAP, records: Optional[list] = None
) -> MinimalReport:
    """Scan a graph stream for minimal non-perfectly-divisible graphs.

    Every hit must have no homogeneous set; hits that do are collected as
    violations. Graphs beyond ``cap`` are skipped and logged.
    """
    report = MinimalReport()
    for g in stream:
        try:
            rec = classify_minimal(g, cap=cap)
        except CapExceeded as exc:
            log.warning("skipping graph: %s", exc)
            report.skipped += 1
            continue
        report.scanned += 1
        if records is not None:
            records.append(rec)
        if not rec.divisible:
            report.non_divisible += 1
        if rec.hom_sets_empty is not None:
            report.hits.append(rec)
            if not rec.hom_sets_empty:
                report.violations.append(rec)
    return report
