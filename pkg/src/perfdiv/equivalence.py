"""Transport of perfect divisions across clique substitutions.

Substituting a clique X of size h(x) for a vertex x, with unit weight on X,
turns the weighted graph (G, h) into (G_x, h_x). Divisions move both ways:
``lift_division`` takes divisions of (G, h) to divisions of (G_x, h_x), and
``project_division`` brings them back. Chaining lift and project lowers the
weight of one vertex at a time, which turns divisions for the uniform
weight k into divisions for any weight bounded by k.

Providers are demand-driven: they produce a division of one vertex subset
when asked and memoise the answer.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Protocol, Sequence

from .divisibility import (
    PerfectDivision,
    find_perfect_division,
    is_perfectly_divisible,
    verify_division,
    weight_functions,
)
from .errors import CertificateError, NotDivisibleError, ProofGapError, VertexError
from .graph import Graph, SubstitutionRecord, bits, complete_graph, iter_bits, substitute
from .graph6 import emit_graph6
from .search import Weights, check_weights, max_clique_weight, ones, uniform

log = logging.getLogger(__name__)


class DivisionProvider(Protocol):
    graph: Graph
    weights: Weights

    def divide(self, subset: int) -> PerfectDivision: ...


def _checked(provider, stage: str, subset: int, d: PerfectDivision, check: bool, stats: Counter) -> PerfectDivision:
    if check:
        if not verify_division(provider.graph, provider.weights, subset, d):
            raise CertificateError(f"{stage} produced an invalid division of {bits(subset)}")
        stats[f"verified_{stage}"] += 1
    return d


class SearchProvider:
    """Divisions found by exhaustive search; the base of every provider chain."""

    def __init__(self, g: Graph, h: Optional[Sequence[int]] = None, *, check: bool = True, stats: Optional[Counter] = None):
        self.graph = g
        self.weights = ones(g.n) if h is None else check_weights(h, g.n)
        self.check = check
        self.stats = Counter() if stats is None else stats
        self._memo: dict[int, PerfectDivision] = {}

    def divide(self, subset: int) -> PerfectDivision:
        if subset in self._memo:
            return self._memo[subset]
        d = find_perfect_division(self.graph, self.weights, subset)
        if d is None:
            raise NotDivisibleError(subset)
        self.stats["search_queries"] += 1
        d = _checked(self, "search", subset, d, self.check, self.stats)
        self._memo[subset] = d
        return d


class ScaledProvider:
    """Serve an all-ones provider's divisions unchanged as divisions for k·1.

    Both sides of the clique-weight comparison scale by k, so validity is kept.
    """

    def __init__(self, inner: DivisionProvider, k: int, *, check: bool = True, stats: Optional[Counter] = None):
        if inner.weights != ones(inner.graph.n):
            raise ValueError("ScaledProvider needs an all-ones provider")
        self.graph = inner.graph
        self.weights = uniform(inner.graph.n, k)
        self.inner = inner
        self.check = check
        self.stats = Counter() if stats is None else stats

    def divide(self, subset: int) -> PerfectDivision:
        return _checked(self, "scaled", subset, self.inner.divide(subset), self.check, self.stats)


@dataclass(frozen=True)
class CliqueSubstitutionContext:
    """(G, h, x) together with G_x, the inserted clique X and h_x."""

    base: Graph
    x: int
    h: Weights
    gx: Graph
    clique: int
    hx: Weights
    record: SubstitutionRecord = field(compare=False)

    def push(self, mask: int) -> int:
        """Base vertices other than x, renamed into gx."""
        out = 0
        for v in iter_bits(mask):
            out |= 1 << self.record.carry[v]
        return out

    def pull(self, mask: int) -> int:
        """gx vertices outside X, renamed back into the base graph."""
        inverse = self.record.inverse()
        out = 0
        for v in iter_bits(mask):
            out |= 1 << inverse[v]
        return out


def build_context(g: Graph, h: Sequence[int], x: int) -> CliqueSubstitutionContext:
    h = check_weights(h, g.n)
    g.check_vertex(x)
    gx, rec = substitute(g, x, complete_graph(h[x]))
    inverse = rec.inverse()
    hx = tuple(1 if rec.inserted >> v & 1 else h[inverse[v]] for v in range(gx.n))
    return CliqueSubstitutionContext(g, x, h, gx, rec.inserted, hx, rec)


def lift_division(
    ctx: CliqueSubstitutionContext,
    subset: int,
    provider: DivisionProvider,
    *,
    check: bool = True,
    repair: bool = True,
    stats: Optional[Counter] = None,
) -> PerfectDivision:
    """A division of gx[subset] for h_x built from the provider's divisions of (G, h).

    Cases, in order: subset misses X; subset inside X; the clique-cut case
    when the clique weight drops; otherwise x's side of a base division
    decides which side receives X ∩ subset.

    The clique-cut candidate (X ∩ F, F \\ X) is not valid in general: a
    maximum-weight clique of gx[F] may avoid X entirely. When the candidate
    fails its check, ``repair`` replaces it by an exhaustive search on gx[F]
    (counted as ``lift_case_1_repair``); without ``repair`` a
    :class:`ProofGapError` is raised.
    """
    stats = Counter() if stats is None else stats
    gx, hx, clique = ctx.gx, ctx.hx, ctx.clique
    gx.check_set(subset)
    if provider.graph != ctx.base or provider.weights != ctx.h:
        raise ValueError("provider does not serve the context's base graph and weight")

    inside = subset & clique
    outside = subset & ~clique
    if not inside:
        stats["lift_case_0a"] += 1
        d = provider.divide(ctx.pull(subset))
        out = PerfectDivision(ctx.push(d.a), ctx.push(d.b))
        return _checked_gx(ctx, "lift", subset, out, check, stats)
    if not outside:
        stats["lift_case_0b"] += 1
        return _checked_gx(ctx, "lift", subset, PerfectDivision(subset, 0), check, stats)

    xbit = 1 << ctx.x
    base_subset = ctx.pull(outside) | xbit
    w_gx = max_clique_weight(gx, hx, subset)[0]
    w_base = max_clique_weight(ctx.base, ctx.h, base_subset)[0]
    if w_gx > w_base:
        raise AssertionError(f"clique weight grew under substitution on {bits(subset)}")

    if w_gx < w_base:
        stats["lift_case_1"] += 1
        out = PerfectDivision(inside, outside)
        if verify_division(gx, hx, subset, out):
            if check:
                stats["verified_lift"] += 1
            return out
        if not repair:
            raise ProofGapError(subset, f"clique-cut division of {bits(subset)} is invalid")
        stats["lift_case_1_repair"] += 1
        out = find_perfect_division(gx, hx, subset)
        if out is None:
            raise NotDivisibleError(subset, f"gx[{bits(subset)}] has no perfect division")
        return _checked_gx(ctx, "lift", subset, out, check, stats)

    d = provider.divide(base_subset)
    if d.a & xbit:
        stats["lift_case_2"] += 1
        out = PerfectDivision(ctx.push(d.a & ~xbit) | inside, ctx.push(d.b))
    else:
        stats["lift_case_3"] += 1
        out = PerfectDivision(ctx.push(d.a), ctx.push(d.b & ~xbit) | inside)
    return _checked_gx(ctx, "lift", subset, out, check, stats)


def _checked_gx(ctx, stage, subset, d, check, stats):
    if check:
        if not verify_division(ctx.gx, ctx.hx, subset, d):
            raise CertificateError(f"{stage} produced an invalid division of gx[{bits(subset)}]")
        stats[f"verified_{stage}"] += 1
    return d


def project_division(
    ctx: CliqueSubstitutionContext,
    subset: int,
    d: PerfectDivision,
    *,
    check: bool = True,
    stats: Optional[Counter] = None,
) -> PerfectDivision:
    """A division of base[subset] for h from a division ``d`` of gx[subset' ∪ X].

    ``subset'`` is ``subset`` without x, renamed into gx. When x is not in
    ``subset`` the division must live on the renamed subset and is only relabelled.
    """
    stats = Counter() if stats is None else stats
    ctx.base.check_set(subset)
    xbit = 1 << ctx.x
    if subset & xbit:
        expected = ctx.push(subset & ~xbit) | ctx.clique
    else:
        expected = ctx.push(subset)
    if d.ground != expected:
        raise VertexError("division ground does not match the projected subset")
    if check:
        if not verify_division(ctx.gx, ctx.hx, expected, d):
            raise CertificateError(f"projection input is not a valid division of gx[{bits(expected)}]")

    if not subset & xbit:
        out = PerfectDivision(ctx.pull(d.a), ctx.pull(d.b))
    elif d.a & ctx.clique:
        out = PerfectDivision(ctx.pull(d.a & ~ctx.clique) | xbit, ctx.pull(d.b & ~ctx.clique))
    else:
        out = PerfectDivision(ctx.pull(d.a), ctx.pull(d.b & ~ctx.clique) | xbit)
    if check:
        if not verify_division(ctx.base, ctx.h, subset, out):
            raise CertificateError(f"projection produced an invalid division of {bits(subset)}")
        stats["verified_project"] += 1
    return out


class ReducedProvider:
    """Divisions for h' (h with x lowered to ``newval``) derived from a provider for h."""

    def __init__(
        self,
        inner: DivisionProvider,
        x: int,
        newval: int,
        *,
        check: bool = True,
        repair: bool = True,
        stats: Optional[Counter] = None,
    ):
        g, h = inner.graph, inner.weights
        g.check_vertex(x)
        if not 1 <= newval < h[x]:
            raise ValueError(f"new weight {newval} must lie in [1, {h[x] - 1}]")
        self.graph = g
        self.inner = inner
        self.x = x
        self.weights = h[:x] + (newval,) + h[x + 1:]
        self.check = check
        self.repair = repair
        self.stats = Counter() if stats is None else stats
        self.ctx = build_context(g, h, x)
        self.ctx_low = build_context(g, self.weights, x)
        # First ``newval`` vertices of X; in ctx_low they are exactly its clique.
        self.kept = self.ctx_low.clique
        if self.kept & ~self.ctx.clique:
            raise AssertionError("kept clique vertices must come from X")
        self._memo: dict[int, PerfectDivision] = {}

    def divide(self, subset: int) -> PerfectDivision:
        if subset in self._memo:
            return self._memo[subset]
        self.graph.check_set(subset)
        xbit = 1 << self.x
        if not subset & xbit:
            d = self.inner.divide(subset)
        else:
            in_gx = self.ctx.push(subset & ~xbit) | self.kept
            lifted = lift_division(
                self.ctx, in_gx, self.inner, check=self.check, repair=self.repair, stats=self.stats
            )
            d = project_division(self.ctx_low, subset, lifted, check=self.check, stats=self.stats)
        self.stats["reduce_queries"] += 1
        d = _checked(self, "reduce", subset, d, self.check, self.stats)
        self._memo[subset] = d
        return d


def reduce_weight_step(
    g: Graph,
    h: Sequence[int],
    x: int,
    newval: int,
    provider: DivisionProvider,
    **kwargs,
) -> ReducedProvider:
    h = check_weights(h, g.n)
    if provider.graph != g or provider.weights != h:
        raise ValueError("provider does not serve (g, h)")
    return ReducedProvider(provider, x, newval, **kwargs)


def weighted_provider(
    g: Graph,
    h: Sequence[int],
    unweighted: DivisionProvider,
    *,
    order: str = "ascending",
    unit_steps: bool = False,
    check: bool = True,
    repair: bool = True,
    stats: Optional[Counter] = None,
) -> DivisionProvider:
    """Provider for (g, h) obtained from an all-ones provider by weight reductions."""
    h = check_weights(h, g.n)
    stats = Counter() if stats is None else stats
    if unweighted.graph != g or unweighted.weights != ones(g.n):
        raise ValueError("unweighted provider must serve (g, all-ones)")
    if g.n == 0:
        return unweighted
    k = max(h)
    provider: DivisionProvider = ScaledProvider(unweighted, k, check=check, stats=stats) if k > 1 else unweighted
    vertices = range(g.n) if order == "ascending" else range(g.n - 1, -1, -1)
    for v in vertices:
        current = provider.weights[v]
        targets = range(current - 1, h[v] - 1, -1) if unit_steps else ([h[v]] if h[v] < current else [])
        for t in targets:
            provider = ReducedProvider(provider, v, t, check=check, repair=repair, stats=stats)
    return provider


def divide_for_weight(g: Graph, h: Sequence[int], unweighted: DivisionProvider, **kwargs) -> PerfectDivision:
    """A perfect division of g for h, transported from all-ones divisions."""
    return weighted_provider(g, h, unweighted, **kwargs).divide(g.full)


@dataclass
class EquivalenceReport:
    graph6: str
    n: int
    divisible: bool
    weights_checked: int = 0
    subsets_checked: int = 0
    records: list[dict] = field(default_factory=list)
    violations: list[dict] = field(default_factory=list)
    stats: Counter = field(default_factory=Counter)

    def summary(self) -> dict:
        return {
            "divisible": self.divisible,
            "weights_checked": self.weights_checked,
            "subsets_checked": self.subsets_checked,
            "violations": len(self.violations),
            "case1_repairs": self.stats["lift_case_1_repair"],
        }


def check_equivalence(
    g: Graph,
    wmax: int,
    mode: str = "exhaustive",
    *,
    seed: int = 0,
    samples: int = 20,
    unit_steps: bool = False,
    weights: Optional[Iterable[Sequence[int]]] = None,
) -> EquivalenceReport:
    """Run the weight-transport pipeline on every induced subgraph for each tested h.

    A violation is any weight function for which the pipeline fails or
    disagrees with direct exhaustive divisibility; it indicts the
    implementation, not the underlying equivalence.
    """
    report = EquivalenceReport(emit_graph6(g), g.n, is_perfectly_divisible(g).divisible)
    if not report.divisible:
        report.records.append({"graph6": report.graph6, "h": list(ones(g.n)), "status": "not_divisible"})
        return report
    unweighted = SearchProvider(g, stats=report.stats)
    tested = weights if weights is not None else weight_functions(g.n, wmax, mode, seed, samples)
    for h in tested:
        h = check_weights(h, g.n)
        report.weights_checked += 1
        provider = weighted_provider(g, h, unweighted, unit_steps=unit_steps, stats=report.stats)
        record = {"graph6": report.graph6, "h": list(h), "subset": bits(g.full), "status": "ok"}
        try:
            for subset in range(1 << g.n):
                d = provider.divide(subset)
                report.subsets_checked += 1
                if not verify_division(g, h, subset, d):
                    raise CertificateError(f"invalid division of {bits(subset)}")
                if subset == g.full:
                    record["division"] = d.to_json()
        except (CertificateError, NotDivisibleError, AssertionError) as exc:
            violation = {"graph6": report.graph6, "h": list(h), "status": "violation", "violation": str(exc)}
            if isinstance(exc, (NotDivisibleError, ProofGapError)):
                violation["subset"] = bits(exc.subset)
            report.violations.append(violation)
            report.records.append(violation)
            continue
        if not is_perfectly_divisible(g, h).divisible:
            violation = dict(record, status="violation", violation="pipeline succeeded but direct search disagrees")
            report.violations.append(violation)
            report.records.append(violation)
            continue
        report.records.append(record)
    return report
