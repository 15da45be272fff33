"""Compiled subset-table kernels.

Every table is indexed by a vertex-subset bitmask of one small graph
(n <= 16), so it has 2**n entries.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _connected(adj, s, complemented):
    low = s & -s
    reach = low
    frontier = low
    while frontier:
        v_bit = frontier & -frontier
        frontier ^= v_bit
        v = _popcount(v_bit - 1)
        row = adj[v]
        if complemented:
            row = ~row & ~v_bit
        new = row & s & ~reach
        reach |= new
        frontier |= new
    return reach == s


@njit(cache=True)
def imperfect_table(adj, n):
    """bad[S] is True iff G[S] contains an odd hole or odd antihole.

    Imperfection is hereditary, so G[S] is imperfect iff some G[S - v] is or
    G[S] itself is an odd cycle or the complement of one.
    """
    size = 1 << n
    bad = np.zeros(size, dtype=np.bool_)
    for s in range(1, size):
        rest = s
        hit = False
        while rest:
            low = rest & -rest
            if bad[s ^ low]:
                hit = True
                break
            rest ^= low
        if hit:
            bad[s] = True
            continue
        k = _popcount(s)
        if k < 5 or k % 2 == 0:
            continue
        hole = True
        antihole = True
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            d = _popcount(adj[_popcount(low - 1)] & s)
            if d != 2:
                hole = False
            if d != k - 3:
                antihole = False
        if hole and _connected(adj, s, False):
            bad[s] = True
        elif antihole and _connected(adj, s, True):
            bad[s] = True
    return bad


@njit(cache=True)
def omega_table(adj, w, n):
    """om[S] is the maximum weight of a clique of G[S]."""
    size = 1 << n
    om = np.zeros(size, dtype=np.int64)
    for s in range(1, size):
        low = s & -s
        v = _popcount(low - 1)
        rest = s ^ low
        a = om[rest]
        b = w[v] + om[rest & adj[v]]
        om[s] = a if a > b else b
    return om


@njit(cache=True)
def _first_division(bad, om, s):
    """Smallest A (as a mask) with A ⊆ s, G[A] perfect and om[s - A] < om[s]; -1 if none."""
    target = om[s]
    a = 0
    while True:
        if not bad[a] and om[s ^ a] < target:
            return a
        a = (a - s) & s
        if a == 0:
            return -1


@njit(cache=True)
def division_table(bad, om, n):
    """ok[S] is True iff G[S] has a perfect division."""
    size = 1 << n
    ok = np.zeros(size, dtype=np.bool_)
    ok[0] = True
    for s in range(1, size):
        if not bad[s]:
            ok[s] = True
        else:
            ok[s] = _first_division(bad, om, s) >= 0
    return ok


@njit(cache=True)
def first_division(bad, om, s):
    return _first_division(bad, om, s)


def adjacency_array(adj) -> np.ndarray:
    return np.asarray(adj, dtype=np.int64)
