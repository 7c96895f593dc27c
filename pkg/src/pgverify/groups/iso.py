"""Brute-force isomorphism search between small groups given by tables."""

from __future__ import annotations

import itertools

import numpy as np

from .core import Group


def _words(G: Group, gens: list[int]) -> list[tuple[int, int, int]]:
    """BFS spanning tree: (element, parent, generator slot), identity excluded."""
    seen = {0}
    order = []
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for k, g in enumerate(gens):
                y = int(G.mult[x, g])
                if y not in seen:
                    seen.add(y)
                    order.append((y, x, k))
                    nxt.append(y)
        frontier = nxt
    return order


def find_isomorphism(A: Group, B: Group) -> np.ndarray | None:
    """An index table of an isomorphism A -> B, or None."""
    if A.order != B.order:
        return None
    if not np.array_equal(np.sort(A.elt_order), np.sort(B.elt_order)):
        return None
    gens = A.generators
    words = _words(A, gens)
    choices = [np.flatnonzero(B.elt_order == A.elt_order[g]) for g in gens]
    for imgs in itertools.product(*choices):
        phi = np.zeros(A.order, dtype=np.int64)
        for y, x, k in words:
            phi[y] = B.mult[phi[x], imgs[k]]
        if len(np.unique(phi)) != A.order:
            continue
        if np.array_equal(phi[A.mult], B.mult[phi[:, None], phi[None, :]]):
            return phi
    return None


def is_isomorphic(A: Group, B: Group) -> bool:
    return find_isomorphism(A, B) is not None
