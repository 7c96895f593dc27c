"""Finite groups as explicit Cayley tables, subgroups as bitsets."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ..errors import InvalidTable, NotHomomorphism, OrderCap

ORDER_CAP = 4096
FULL_ASSOC_LIMIT = 512
RANDOM_ASSOC_TRIPLES = 100_000


def mask_from_indices(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def indices_from_mask(mask: int, n: int) -> np.ndarray:
    if mask == 0:
        return np.zeros(0, dtype=np.int64)
    raw = np.frombuffer(mask.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    bits = np.unpackbits(raw, bitorder="little")[:n]
    return np.flatnonzero(bits)


def mask_from_bool(arr: np.ndarray) -> int:
    packed = np.packbits(arr.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


class Group:
    """A finite group given by its multiplication table.

    Elements are the indices ``0 .. order-1``; index 0 is the identity.
    All arrays are read-only; derived data is cached lazily.
    """

    def __init__(self, mult: np.ndarray, label: str = "G", *, verify: bool = True,
                 generators: Sequence[int] | None = None):
        mult = np.asarray(mult)
        n = mult.shape[0]
        if n > ORDER_CAP:
            raise OrderCap(f"order {n} exceeds cap {ORDER_CAP}")
        if mult.shape != (n, n) or n == 0:
            raise InvalidTable("multiplication table must be a nonempty square array")
        dtype = np.int16 if n <= 32767 else np.int32
        self.mult = mult.astype(dtype)
        self.mult.flags.writeable = False
        self.order = n
        self.label = label
        self._cache: dict = {}
        self._check_latin()
        inv = np.argmin(self.mult, axis=1)  # position of the identity in each row
        if not np.all(self.mult[np.arange(n), inv] == 0):
            raise InvalidTable("missing inverses")
        self.inv = inv.astype(dtype)
        self.inv.flags.writeable = False
        self._generators = list(generators) if generators is not None else None
        if verify:
            self._check_associative()
        self.elt_order = self._element_orders()
        self.elt_order.flags.writeable = False

    def __repr__(self) -> str:
        return f"Group({self.label!r}, order={self.order})"

    # -- validation ---------------------------------------------------------

    def _check_latin(self) -> None:
        n = self.order
        m = self.mult
        if m.min() < 0 or m.max() >= n:
            raise InvalidTable("entries out of range")
        ar = np.arange(n)
        if not (np.array_equal(m[0], ar) and np.array_equal(m[:, 0], ar)):
            raise InvalidTable("index 0 is not a two-sided identity")
        if not np.all(np.sort(m, axis=1) == ar):
            raise InvalidTable("a row is not a permutation")
        if not np.all(np.sort(m, axis=0) == ar[:, None]):
            raise InvalidTable("a column is not a permutation")

    def _check_associative(self) -> None:
        m = self.mult.astype(np.int64)
        n = self.order
        if n <= FULL_ASSOC_LIMIT:
            for a in range(n):
                # (a b) c  vs  a (b c) for all b, c
                if not np.array_equal(m[m[a]], m[a][m]):
                    raise InvalidTable(f"associativity fails with first factor {a}")
            return
        for g in self.generators:
            # (g b) c = g (b c);  (b g) c = b (g c);  (b c) g = b (c g)
            if not (np.array_equal(m[m[g]], m[g][m])
                    and np.array_equal(m[m[:, g]], m[:, m[g]])
                    and np.array_equal(m[m, g], m[:, m[:, g]])):
                raise InvalidTable(f"associativity fails on a triple involving generator {g}")
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, RANDOM_ASSOC_TRIPLES))
        if not np.array_equal(m[m[a, b], c], m[a, m[b, c]]):
            raise InvalidTable("associativity fails on a random triple")

    def _element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.int64)
        cur = np.arange(n)
        k = 1
        remaining = np.ones(n, dtype=bool)
        m = self.mult
        while remaining.any():
            hit = remaining & (cur == 0)
            orders[hit] = k
            remaining &= ~hit
            cur = m[cur, np.arange(n)]
            k += 1
            if k > n + 1:
                raise InvalidTable("element of infinite order")
        return orders

    # -- basic structure ----------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self.mult[a, b])

    def power(self, a: int, k: int) -> int:
        k %= int(self.elt_order[a])
        r = 0
        for _ in range(k):
            r = int(self.mult[r, a])
        return r

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in np.unique(self.elt_order)))

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    @cached_property
    def conj(self) -> np.ndarray:
        """``conj[g, x] = g x g^-1``."""
        m = self.mult
        t = m[m, self.inv[:, None]]
        t.flags.writeable = False
        return t

    @cached_property
    def generators(self) -> list[int]:
        """A small generating set, chosen greedily by element index (or as supplied)."""
        if self._generators is not None:
            return list(self._generators)
        gens: list[int] = []
        have = 1
        full = (1 << self.order) - 1
        for x in range(1, self.order):
            if not (have >> x) & 1:
                gens.append(x)
                have = closure_mask(self, gens)
                if have == full:
                    break
        return gens

    @cached_property
    def whole(self) -> SubgroupSet:
        return SubgroupSet(self, (1 << self.order) - 1)

    @cached_property
    def trivial(self) -> SubgroupSet:
        return SubgroupSet(self, 1)

    def subgroup(self, elements: Iterable[int]) -> SubgroupSet:
        """Wrap an explicit element set, verifying it is a subgroup."""
        return SubgroupSet.checked(self, mask_from_indices(elements))

    def prime_power(self) -> tuple[int, int] | None:
        """``(p, k)`` if the order is ``p**k`` with ``k >= 1``; None otherwise."""
        return prime_power(self.order)

    def __getstate__(self):
        d = self.__dict__.copy()
        d["_cache"] = {}
        for key in ("conj", "whole", "trivial"):
            d.pop(key, None)
        return d


def prime_power(n: int) -> tuple[int, int] | None:
    if n < 2:
        return None
    p = next(q for q in range(2, n + 1) if n % q == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


def closure_mask(G: Group, gens: Iterable[int]) -> int:
    """Bitset of the subgroup generated by ``gens`` (breadth-first closure)."""
    gens = [int(g) for g in gens if int(g) != 0]
    members = {0}
    frontier = [0]
    m = G.mult
    while frontier:
        nxt = []
        for x in frontier:
            row = m[x]
            for g in gens:
                y = int(row[g])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return mask_from_indices(members)


@dataclass(frozen=True, eq=False)
class SubgroupSet:
    """A subgroup of ``parent`` stored as a bitset over element indices."""

    parent: Group = field(repr=False)
    mask: int

    @classmethod
    def checked(cls, G: Group, mask: int) -> SubgroupSet:
        S = cls(G, mask)
        S.validate()
        return S

    def validate(self) -> None:
        G = self.parent
        if not self.mask & 1:
            raise InvalidTable("subgroup must contain the identity")
        idx = self.elements
        inside = self.bool_mask
        if not inside[G.mult[np.ix_(idx, idx)]].all() or not inside[G.inv[idx]].all():
            raise InvalidTable("element set is not closed")
        if G.order % len(idx):
            raise InvalidTable("subgroup order does not divide group order")

    def __eq__(self, other) -> bool:
        return isinstance(other, SubgroupSet) and self.mask == other.mask and self.parent is other.parent

    def __hash__(self) -> int:
        return hash(self.mask)

    def __lt__(self, other: SubgroupSet) -> bool:
        return self.sort_key < other.sort_key

    def __len__(self) -> int:
        return self.order

    def __contains__(self, x: int) -> bool:
        return bool((self.mask >> int(x)) & 1)

    def __le__(self, other: SubgroupSet) -> bool:
        return self.mask & other.mask == self.mask

    @property
    def sort_key(self) -> tuple[int, int]:
        return (self.order, self.mask)

    @cached_property
    def order(self) -> int:
        return bin(self.mask).count("1")

    @cached_property
    def elements(self) -> np.ndarray:
        idx = indices_from_mask(self.mask, self.parent.order)
        idx.flags.writeable = False
        return idx

    @cached_property
    def bool_mask(self) -> np.ndarray:
        b = np.zeros(self.parent.order, dtype=bool)
        b[self.elements] = True
        b.flags.writeable = False
        return b

    @property
    def hex(self) -> str:
        return format(self.mask, "x")

    def intersect(self, other: SubgroupSet) -> SubgroupSet:
        return SubgroupSet(self.parent, self.mask & other.mask)

    def conjugate(self, g: int) -> SubgroupSet:
        """``g H g^-1``."""
        G = self.parent
        return SubgroupSet(G, mask_from_bool(_scatter(G.order, G.conj[g][self.elements])))

    @cached_property
    def is_cyclic(self) -> bool:
        return bool((self.parent.elt_order[self.elements] == self.order).any())

    @cached_property
    def is_abelian(self) -> bool:
        idx = self.elements
        sub = self.parent.mult[np.ix_(idx, idx)]
        return bool(np.array_equal(sub, sub.T))

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in np.unique(self.parent.elt_order[self.elements])))

    def describe(self) -> str:
        return f"<subgroup order {self.order} mask {self.hex}>"


def _scatter(n: int, idx: np.ndarray) -> np.ndarray:
    b = np.zeros(n, dtype=bool)
    b[idx] = True
    return b


@dataclass(frozen=True)
class ConjugacyPartition:
    classes: tuple[tuple[int, ...], ...]
    class_of: np.ndarray = field(repr=False)

    @property
    def representatives(self) -> list[int]:
        return [c[0] for c in self.classes]

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def __len__(self) -> int:
        return len(self.classes)


def conjugacy_classes(G: Group) -> ConjugacyPartition:
    """Orbits of the conjugation action, ordered by minimal representative."""
    cached = G._cache.get("classes")
    if cached is not None:
        return cached
    n = G.order
    class_of = np.full(n, -1, dtype=np.int64)
    classes = []
    conj = G.conj
    for x in range(n):
        if class_of[x] >= 0:
            continue
        orbit = np.unique(conj[:, x])
        class_of[orbit] = len(classes)
        classes.append(tuple(int(y) for y in orbit))
    class_of.flags.writeable = False
    part = ConjugacyPartition(tuple(classes), class_of)
    G._cache["classes"] = part
    return part


KINDS = ("inclusion", "conjugation", "relabeling")


@dataclass(frozen=True, eq=False)
class GroupEmbedding:
    """An injective homomorphism ``source -> target`` given by an index table."""

    source: Group
    target: Group
    map: np.ndarray = field(repr=False)
    kind: str = "inclusion"
    witness: int | None = None

    def __post_init__(self):
        m = np.asarray(self.map, dtype=np.int64)
        m.flags.writeable = False
        object.__setattr__(self, "map", m)
        if self.kind not in KINDS:
            raise ValueError(f"unknown embedding kind {self.kind!r}")
        S, T = self.source, self.target
        if m.shape != (S.order,) or (S.order and (m.min() < 0 or m.max() >= T.order)):
            raise NotHomomorphism("map table has the wrong shape or range")
        if len(np.unique(m)) != S.order:
            raise NotHomomorphism("map is not injective")
        # map[xy] == map[x] map[y], exhaustively
        lhs = m[S.mult]
        rhs = T.mult[m[:, None], m[None, :]]
        if not np.array_equal(lhs, rhs):
            bad = np.argwhere(lhs != rhs)[0]
            raise NotHomomorphism(f"map(x*y) != map(x)*map(y) at x={bad[0]}, y={bad[1]}")

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    @cached_property
    def image(self) -> SubgroupSet:
        return SubgroupSet(self.target, mask_from_indices(self.map))

    def compose(self, other: GroupEmbedding) -> GroupEmbedding:
        """``other ∘ self``."""
        return GroupEmbedding(self.source, other.target, other.map[self.map], "relabeling")


def random_elements(G: Group, k: int, seed: int = 0) -> list[int]:
    rng = random.Random(seed)
    return [rng.randrange(G.order) for _ in range(k)]
