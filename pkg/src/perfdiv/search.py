"""Exact clique, colouring and perfection routines with checkable certificates.

Weight functions are tuples of positive ints indexed by vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import CapExceeded, VertexError, WeightError
from .graph import Graph, bits, complement, induced_subgraph, iter_bits, popcount

SEARCH_CAP = 32
DEFINITIONAL_CAP = 10
_WEIGHT_LIMIT = 1 << 63

Weights = tuple[int, ...]


def ones(n: int) -> Weights:
    return (1,) * n


def uniform(n: int, k: int) -> Weights:
    """The constant weight function k·1."""
    return check_weights((k,) * n)


def check_weights(h: Sequence[int], n: Optional[int] = None) -> Weights:
    h = tuple(h)
    if n is not None and len(h) != n:
        raise WeightError(f"expected {n} weights, got {len(h)}")
    for w in h:
        if not isinstance(w, int) or isinstance(w, bool) or w < 1:
            raise WeightError(f"weights must be positive integers, got {w!r}")
    if sum(h) >= _WEIGHT_LIMIT:
        raise WeightError("total weight does not fit in 63 bits")
    return h


def weight_restrict(h: Sequence[int], x: int) -> Weights:
    """h|_X, indexed in the induced-subgraph order of ``x``."""
    if x < 0 or x >> len(h):
        raise VertexError(f"vertex set {x:#x} escapes {len(h)} weights")
    return tuple(h[v] for v in iter_bits(x))


def weight_less_than(h1: Sequence[int], h2: Sequence[int]) -> bool:
    """True when ``h1 <= h2`` pointwise with at least one strict coordinate."""
    if len(h1) != len(h2):
        raise WeightError(f"weight functions of lengths {len(h1)} and {len(h2)}")
    return all(a <= b for a, b in zip(h1, h2)) and any(a < b for a, b in zip(h1, h2))


def scale(h: Sequence[int], c: int) -> Weights:
    return check_weights([c * w for w in h])


@dataclass(frozen=True)
class Certificate:
    """A witness that can be re-checked against the graph it came from.

    ``payload`` is a vertex tuple for ``clique``/``odd_hole``/``odd_antihole``/
    ``failing_subgraph`` and a per-vertex colour tuple for ``coloring``.
    """

    kind: str
    payload: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "payload": list(self.payload)}


def _is_clique(g: Graph, vs: Sequence[int]) -> bool:
    m = 0
    for v in vs:
        m |= 1 << v
    return len(set(vs)) == len(vs) and all(g.adj[v] & m == m & ~(1 << v) for v in vs)


def _is_odd_hole(g: Graph, cycle: Sequence[int]) -> bool:
    k = len(cycle)
    if k < 5 or k % 2 == 0 or len(set(cycle)) != k:
        return False
    if any(not 0 <= v < g.n for v in cycle):
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if g.has_edge(cycle[i], cycle[j]) != consecutive:
                return False
    return True


def check_certificate(g: Graph, cert: Certificate, h: Optional[Sequence[int]] = None) -> bool:
    """Independent validity check for clique, colouring and odd-hole witnesses.

    For ``clique`` with weights ``h`` supplied this only checks the clique
    property; optimality is the caller's business.
    """
    p = cert.payload
    if cert.kind == "clique":
        return all(0 <= v < g.n for v in p) and _is_clique(g, p)
    if cert.kind == "coloring":
        if len(p) != g.n:
            return False
        return all(p[u] != p[v] for u, v in g.edges()) and set(p) == set(range(len(set(p))))
    if cert.kind == "odd_hole":
        return _is_odd_hole(g, p)
    if cert.kind == "odd_antihole":
        return _is_odd_hole(complement(g), p)
    raise ValueError(f"check_certificate cannot handle kind {cert.kind!r}")


# -- weighted clique ------------------------------------------------------------


def _colour_bound(g: Graph, h: Sequence[int], cand: int) -> int:
    """Sum over greedy colour classes of the heaviest vertex in each class."""
    bound = 0
    rest = cand
    while rest:
        klass_max = 0
        avail = rest
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            if h[v] > klass_max:
                klass_max = h[v]
            rest &= ~low
            avail &= ~(low | g.adj[v])
        bound += klass_max
    return bound


def max_clique_weight(
    g: Graph, h: Optional[Sequence[int]] = None, within: Optional[int] = None, *, cap: int = SEARCH_CAP
) -> tuple[int, Certificate]:
    """Maximum h-weight of a clique inside ``within`` (default: all of ``g``).

    Among optimal cliques the lexicographically smallest sorted vertex tuple
    is returned. The empty set has weight 0 and the empty clique as witness.
    """
    if g.n > cap:
        raise CapExceeded("max_clique_weight", g.n, cap)
    h = ones(g.n) if h is None else check_weights(h, g.n)
    within = g.full if within is None else within
    g.check_set(within)

    best_w = -1
    best = 0

    # Include-first on the lowest candidate visits cliques in lexicographic
    # order, so pruning ties (bound <= best) keeps the smallest optimum.
    def expand(cur: int, cur_w: int, cand: int) -> None:
        nonlocal best_w, best
        if not cand:
            if cur_w > best_w:
                best_w, best = cur_w, cur
            return
        if cur_w + _colour_bound(g, h, cand) <= best_w:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        expand(cur | low, cur_w + h[v], cand & g.adj[v])
        expand(cur, cur_w, cand & ~low)

    expand(0, 0, within)
    return best_w, Certificate("clique", tuple(bits(best)))


def clique_number(g: Graph, *, cap: int = SEARCH_CAP) -> int:
    return max_clique_weight(g, cap=cap)[0]


# -- chromatic number -------------------------------------------------------------


def _k_colouring(g: Graph, k: int) -> Optional[list[int]]:
    n = g.n
    colour = [-1] * n
    # forbidden[v]: bitmask of colours used by coloured neighbours of v
    forbidden = [0] * n
    uncoloured = g.full

    def pick() -> int:
        best_v, best_key = -1, None
        for v in iter_bits(uncoloured):
            key = (popcount(forbidden[v]), popcount(g.adj[v] & uncoloured), -v)
            if best_key is None or key > best_key:
                best_v, best_key = v, key
        return best_v

    def solve(used: int) -> bool:
        nonlocal uncoloured
        if not uncoloured:
            return True
        v = pick()
        limit = min(k, used + 1)
        for c in range(limit):
            if forbidden[v] >> c & 1:
                continue
            colour[v] = c
            uncoloured &= ~(1 << v)
            touched = []
            for u in iter_bits(g.adj[v] & uncoloured):
                if not forbidden[u] >> c & 1:
                    forbidden[u] |= 1 << c
                    touched.append(u)
            if solve(max(used, c + 1)):
                return True
            for u in touched:
                forbidden[u] &= ~(1 << c)
            uncoloured |= 1 << v
            colour[v] = -1
        return False

    return colour if solve(0) else None


def chromatic_number(g: Graph, *, cap: int = SEARCH_CAP) -> tuple[int, Certificate]:
    """Exact χ(g) with an optimal colouring (colours 0..χ-1, all used)."""
    if g.n > cap:
        raise CapExceeded("chromatic_number", g.n, cap)
    if g.n == 0:
        return 0, Certificate("coloring", ())
    k = clique_number(g, cap=cap)
    while True:
        colouring = _k_colouring(g, k)
        if colouring is not None:
            return k, Certificate("coloring", tuple(colouring))
        k += 1


# -- perfection -------------------------------------------------------------------


def find_odd_hole(g: Graph) -> Optional[list[int]]:
    """First induced odd cycle of length >= 5, in cycle order, or None.

    Starts are tried in increasing order with the start as the smallest
    vertex of the hole; extensions follow increasing neighbour order.
    """
    adj = g.adj

    def extend(path: list[int], blocked: int) -> Optional[list[int]]:
        s = path[0]
        last = path[-1]
        higher = ~((2 << s) - 1)
        for v in iter_bits(adj[last] & ~blocked & higher):
            if adj[s] >> v & 1:
                if len(path) >= 2 and len(path) % 2 == 0 and len(path) + 1 >= 5:
                    return path + [v]
                continue
            # ``last`` becomes interior: nothing further may touch it.
            found = extend(path + [v], blocked | adj[last] | 1 << last)
            if found:
                return found
        return None

    for s in range(g.n):
        for p1 in iter_bits(adj[s] & ~((2 << s) - 1)):
            found = extend([s, p1], 1 << s | 1 << p1)
            if found:
                return found
    return None


def is_perfect(g: Graph, *, cap: int = SEARCH_CAP) -> tuple[bool, Optional[Certificate]]:
    """Perfection via absence of odd holes in ``g`` and in its complement."""
    if g.n > cap:
        raise CapExceeded("is_perfect", g.n, cap)
    hole = find_odd_hole(g)
    if hole:
        return False, Certificate("odd_hole", tuple(hole))
    antihole = find_odd_hole(complement(g))
    if antihole:
        return False, Certificate("odd_antihole", tuple(antihole))
    return True, None


def is_perfect_definitional(g: Graph, *, cap: int = DEFINITIONAL_CAP) -> bool:
    """Check χ(g[S]) = ω(g[S]) for every vertex subset S.

    Both numbers are tabulated over all subsets: ω by the recurrence on the
    lowest vertex, χ by peeling an independent set through the lowest vertex.
    """
    if g.n > cap:
        raise CapExceeded("is_perfect_definitional", g.n, cap)
    size = 1 << g.n
    adj = g.adj
    omega = [0] * size
    independent = [True] * size
    chi = [0] * size
    for s in range(1, size):
        low = s & -s
        v = low.bit_length() - 1
        rest = s ^ low
        omega[s] = max(omega[rest], 1 + omega[rest & adj[v]])
        independent[s] = independent[rest] and not adj[v] & rest
        # independent sets through v lie inside v + (rest minus N(v))
        room = rest & ~adj[v]
        best = size
        t = room
        while True:
            if independent[t]:
                c = chi[rest & ~t]
                if c < best:
                    best = c
            if not t:
                break
            t = (t - 1) & room
        chi[s] = best + 1
        if chi[s] != omega[s]:
            return False
    return True
