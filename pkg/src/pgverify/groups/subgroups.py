"""Subgroup-level operations: closure, centralizers, enumeration, rank."""

from __future__ import annotations

import numpy as np

from ..errors import MixedOrder, NotRankOne, OrderCap
from .core import (
    ORDER_CAP,
    Group,
    GroupEmbedding,
    SubgroupSet,
    closure_mask,
    mask_from_bool,
    prime_power,
)


def closure(G: Group, gens) -> SubgroupSet:
    return SubgroupSet(G, closure_mask(G, gens))


def centralizer(G: Group, S: SubgroupSet) -> SubgroupSet:
    idx = S.elements
    m = G.mult
    ok = np.all(m[:, idx] == m[idx, :].T, axis=1)
    return SubgroupSet(G, mask_from_bool(ok))


def center(G: Group) -> SubgroupSet:
    cached = G._cache.get("center")
    if cached is None:
        cached = G._cache["center"] = centralizer(G, G.whole)
    return cached


def normalizer(G: Group, S: SubgroupSet) -> SubgroupSet:
    ok = S.bool_mask[G.conj[:, S.elements]].all(axis=1)
    return SubgroupSet(G, mask_from_bool(ok))


def is_normal(G: Group, S: SubgroupSet) -> bool:
    return bool(S.bool_mask[G.conj[:, S.elements]].all())


def conjugates(S: SubgroupSet) -> list[SubgroupSet]:
    """The distinct conjugates of ``S``, sorted by bitset."""
    G = S.parent
    seen = {}
    for g in range(G.order):
        T = S.conjugate(g)
        seen.setdefault(T.mask, T)
    return [seen[k] for k in sorted(seen)]


def canonical_conjugate(S: SubgroupSet) -> SubgroupSet:
    """Least bitset in the conjugation orbit of ``S``."""
    return conjugates(S)[0]


def conjugating_elements(S: SubgroupSet, T: SubgroupSet) -> np.ndarray:
    """All ``g`` with ``g S g^-1 <= T``, ascending."""
    G = S.parent
    return np.flatnonzero(T.bool_mask[G.conj[:, S.elements]].all(axis=1))


def is_subconjugate(S: SubgroupSet, T: SubgroupSet) -> bool:
    return len(conjugating_elements(S, T)) > 0


def _extend_by(G: Group, S: SubgroupSet, x: int, q: int) -> int:
    """Bitset of <S, x> where x normalizes S and x^q lies in S."""
    idx = S.elements
    parts = [idx]
    y = x
    for _ in range(q - 1):
        parts.append(G.mult[idx, y])
        y = int(G.mult[y, x])
    b = np.zeros(G.order, dtype=bool)
    b[np.concatenate(parts)] = True
    return mask_from_bool(b)


def _primes_dividing(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def all_subgroups(G: Group, max_order: int | None = None) -> list[SubgroupSet]:
    """Every subgroup of ``G`` (of order at most ``max_order``), sorted by (order, bitset).

    Layer-by-layer cyclic extension: a subgroup S is extended by each x in
    N_G(S) \\ S with x^q in S for a prime q.  For p-groups (indeed for all
    solvable groups) this reaches every subgroup.
    """
    if G.order > ORDER_CAP:
        raise OrderCap(f"order {G.order} exceeds cap {ORDER_CAP}")
    key = ("subgroups", max_order)
    cached = G._cache.get(key)
    if cached is not None:
        return cached
    primes = _primes_dividing(G.order)
    found: dict[int, SubgroupSet] = {1: G.trivial}
    layer = [G.trivial]
    pow_tables = {q: _power_table(G, q) for q in primes}
    while layer:
        nxt: dict[int, SubgroupSet] = {}
        for S in layer:
            N = normalizer(G, S)
            cand = N.bool_mask & ~S.bool_mask
            for q in primes:
                if max_order is not None and S.order * q > max_order:
                    continue
                ok = cand & S.bool_mask[pow_tables[q]]
                covered = 0
                for x in np.flatnonzero(ok):
                    x = int(x)
                    if (covered >> x) & 1:
                        continue
                    m = _extend_by(G, S, x, q)
                    covered |= m
                    if m not in found and m not in nxt:
                        nxt[m] = SubgroupSet(G, m)
        found.update(nxt)
        layer = sorted(nxt.values())
    out = sorted(found.values())
    G._cache[key] = out
    return out


def _power_table(G: Group, q: int) -> np.ndarray:
    cur = np.zeros(G.order, dtype=np.int64)
    ar = np.arange(G.order)
    for _ in range(q):
        cur = G.mult[cur, ar]
    return cur


def subgroups_of(H: SubgroupSet) -> list[SubgroupSet]:
    """All subgroups of ``H`` as subgroups of the same parent, sorted."""
    G = H.parent
    return [S for S in all_subgroups(G) if S.mask & H.mask == S.mask]


def is_elementary_abelian(H: SubgroupSet) -> bool:
    if H.order == 1:
        return True
    pp = prime_power(H.order)
    if pp is None:
        return False
    p = pp[0]
    return H.is_abelian and bool(np.all(H.parent.elt_order[H.elements[1:]] == p))


def rank(H: SubgroupSet) -> int:
    """Largest r with an elementary abelian subgroup of order p^r in the p-group H.

    Elementary abelian subgroups are enumerated bottom-up: E is extended by an
    order-p element that centralizes E and lies outside it.
    """
    if H.order == 1:
        return 0
    pp = prime_power(H.order)
    if pp is None:
        raise MixedOrder(f"order {H.order} is not a prime power")
    p = pp[0]
    G = H.parent
    cache = G._cache.setdefault("rank", {})
    if H.mask in cache:
        return cache[H.mask]
    order_p = H.elements[G.elt_order[H.elements] == p]
    m = G.mult
    best = 0
    layer = {1: G.trivial}
    r = 0
    while layer:
        best = r
        nxt: dict[int, SubgroupSet] = {}
        for E in layer.values():
            e = E.elements
            comm = np.all(m[np.ix_(order_p, e)] == m[np.ix_(e, order_p)].T, axis=1)
            for x in order_p[comm & ~E.bool_mask[order_p]]:
                mk = _extend_by(G, E, int(x), p)
                nxt.setdefault(mk, SubgroupSet(G, mk))
        layer = nxt
        r += 1
    cache[H.mask] = best
    return best


def omega1(H: SubgroupSet) -> SubgroupSet:
    """The unique subgroup of prime order of a nontrivial rank-one p-group."""
    pp = prime_power(H.order)
    if pp is None:
        raise MixedOrder(f"order {H.order} is not a prime power")
    p = pp[0]
    G = H.parent
    xs = H.elements[G.elt_order[H.elements] == p]
    subs = {closure_mask(G, [int(x)]) for x in xs}
    if len(subs) != 1:
        raise NotRankOne(f"{len(subs)} subgroups of order {p}")
    return SubgroupSet(G, subs.pop())


def as_group(H: SubgroupSet) -> tuple[Group, GroupEmbedding]:
    """Relabel ``H`` as a standalone group (elements in parent-index order)."""
    G = H.parent
    cache = G._cache.setdefault("as_group", {})
    hit = cache.get(H.mask)
    if hit is not None:
        return hit
    idx = H.elements
    local = np.full(G.order, -1, dtype=np.int64)
    local[idx] = np.arange(len(idx))
    table = local[G.mult[np.ix_(idx, idx)]]
    K = Group(table, label=f"{G.label}[{H.hex}]", verify=False)
    emb = GroupEmbedding(K, G, idx, "inclusion")
    cache[H.mask] = (K, emb)
    return K, emb


def local_index(H: SubgroupSet) -> np.ndarray:
    """Map parent index -> index in ``as_group(H)`` (or -1)."""
    local = np.full(H.parent.order, -1, dtype=np.int64)
    local[H.elements] = np.arange(H.order)
    return local


def subgroup_generators(H: SubgroupSet) -> list[int]:
    """A small generating set of ``H``: greedily add the least element not yet generated."""
    G = H.parent
    cache = G._cache.setdefault("subgroup_gens", {})
    hit = cache.get(H.mask)
    if hit is not None:
        return hit
    gens: list[int] = []
    cur = 1
    for x in H.elements:
        x = int(x)
        if not (cur >> x) & 1:
            gens.append(x)
            cur = closure_mask(G, gens)
            if cur == H.mask:
                break
    cache[H.mask] = gens
    return gens


def transversal(G: Group, S: SubgroupSet) -> np.ndarray:
    """Least element of each left coset gS, ascending."""
    return np.unique(G.mult[:, S.elements].min(axis=1))


def local_subgroup(S: SubgroupSet, H: SubgroupSet) -> SubgroupSet:
    """``S <= H`` re-expressed as a subgroup of ``as_group(H)``."""
    if S.mask & H.mask != S.mask:
        raise ValueError("not a subgroup of the given group")
    K, _ = as_group(H)
    b = np.zeros(K.order, dtype=bool)
    b[local_index(H)[S.elements]] = True
    return SubgroupSet(K, mask_from_bool(b))
