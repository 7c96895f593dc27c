"""Class functions with exact cyclotomic values: products, restriction, induction."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ..errors import GroupMismatch
from ..groups.core import Group, GroupEmbedding, SubgroupSet, conjugacy_classes
from ..groups.subgroups import as_group
from .cyclotomic import Cyclotomic, as_cyclotomic, totient


def _normalize_value(v, m: int) -> Cyclotomic:
    v = as_cyclotomic(v, m)
    if v.m == m:
        return v
    if v.m % m == 0:
        low = v.descend(m)
        if low is not None:
            return low
        return v
    if m % v.m == 0:
        return v.lift(m)
    return v


class ClassFunction:
    """One exact value per conjugacy class of ``group``.

    Values are written with conductor ``group.exponent`` whenever they lie in
    that field.
    """

    __slots__ = ("group", "values")

    def __init__(self, group: Group, values: Sequence):
        part = conjugacy_classes(group)
        if len(values) != len(part):
            raise ValueError(f"expected {len(part)} class values, got {len(values)}")
        m = group.exponent
        self.group = group
        self.values: tuple[Cyclotomic, ...] = tuple(_normalize_value(v, m) for v in values)

    # -- constructors -----------------------------------------------------------

    @classmethod
    def constant(cls, G: Group, c) -> ClassFunction:
        return cls(G, [c] * len(conjugacy_classes(G)))

    @classmethod
    def trivial(cls, G: Group) -> ClassFunction:
        return cls.constant(G, 1)

    @classmethod
    def regular(cls, G: Group) -> ClassFunction:
        n = len(conjugacy_classes(G))
        return cls(G, [G.order] + [0] * (n - 1))

    @classmethod
    def from_element_function(cls, G: Group, fn: Callable[[int], object]) -> ClassFunction:
        """Evaluate ``fn`` on every element; raises if it is not constant on classes."""
        part = conjugacy_classes(G)
        values = []
        for cl in part.classes:
            v = as_cyclotomic(fn(cl[0]), G.exponent)
            for x in cl[1:]:
                if as_cyclotomic(fn(x), G.exponent) != v:
                    raise ValueError(f"function is not constant on the class of {cl[0]}")
            values.append(v)
        return cls(G, values)

    # -- access ---------------------------------------------------------------------

    @property
    def partition(self):
        return conjugacy_classes(self.group)

    @property
    def degree(self) -> Cyclotomic:
        return self.values[0]

    def __call__(self, x: int) -> Cyclotomic:
        return self.values[int(self.partition.class_of[x])]

    def element_values(self) -> list[Cyclotomic]:
        cls_of = self.partition.class_of
        return [self.values[int(c)] for c in cls_of]

    # -- arithmetic -------------------------------------------------------------

    def _check(self, other: ClassFunction) -> None:
        if other.group is not self.group:
            raise GroupMismatch(f"{self.group!r} vs {other.group!r}")

    def __add__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.group, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: ClassFunction) -> ClassFunction:
        self._check(other)
        return ClassFunction(self.group, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> ClassFunction:
        return ClassFunction(self.group, [-a for a in self.values])

    def __mul__(self, other) -> ClassFunction:
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.group, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.group, [a * other for a in self.values])

    __rmul__ = __mul__

    def conjugate(self) -> ClassFunction:
        return ClassFunction(self.group, [a.conjugate() for a in self.values])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return other.group is self.group and self.values == other.values

    def __hash__(self) -> int:
        return hash(self.values)

    def with_value(self, class_index: int, value) -> ClassFunction:
        vals = list(self.values)
        vals[class_index] = value
        return ClassFunction(self.group, vals)

    def sort_key(self) -> tuple:
        return tuple(v.sort_key() for v in self.values)

    def __repr__(self) -> str:
        return f"ClassFunction({self.group.label}: [{', '.join(map(str, self.values))}])"

    # -- serialization ------------------------------------------------------------

    def serialize(self) -> str:
        m = self.group.exponent
        lines = [f"conductor {m}"]
        for rep, v in zip(self.partition.representatives, self.values):
            w = _normalize_value(v, m)
            if w.m != m:
                raise ValueError("value does not lie in Q(zeta_exponent); cannot serialize")
            lines.append(f"{rep} {w.serialize()}")
        return "\n".join(lines)

    @classmethod
    def parse(cls, G: Group, text: str) -> ClassFunction:
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        head = lines[0].split()
        if head[0] != "conductor":
            raise ValueError("class function block must start with 'conductor'")
        m = int(head[1])
        part = conjugacy_classes(G)
        values: list = [None] * len(part)
        for ln in lines[1:]:
            rep, _, rest = ln.strip().partition(" ")
            values[int(part.class_of[int(rep)])] = Cyclotomic.parse(m, rest)
        if any(v is None for v in values):
            raise ValueError("missing class values")
        return cls(G, values)


def inner_product(f: ClassFunction, g: ClassFunction) -> Cyclotomic:
    """<f, g> = (1/|G|) sum_x f(x) conj(g(x)), summed class-wise."""
    if f.group is not g.group:
        raise GroupMismatch(f"{f.group!r} vs {g.group!r}")
    G = f.group
    total = Cyclotomic.from_rational(0, G.exponent)
    for size, a, b in zip(f.partition.sizes, f.values, g.values):
        if a.is_zero() or b.is_zero():
            continue
        total = total + (a * b.conjugate()) * size
    return total / G.order


def pullback(f: ClassFunction, emb: GroupEmbedding) -> ClassFunction:
    """``f ∘ emb`` as a class function on ``emb.source``."""
    if emb.target is not f.group:
        raise GroupMismatch("embedding target is not the class function's group")
    S = emb.source
    part = conjugacy_classes(S)
    cls_of = f.partition.class_of
    return ClassFunction(S, [f.values[int(cls_of[emb.map[rep]])] for rep in part.representatives])


def restrict(f: ClassFunction, H: SubgroupSet) -> ClassFunction:
    """Restriction to ``H`` (a subgroup of ``f.group``), on ``as_group(H)``."""
    if H.parent is not f.group:
        raise GroupMismatch("subgroup of a different group")
    _, emb = as_group(H)
    return pullback(f, emb)


def induce(f: ClassFunction, G: Group, emb: GroupEmbedding) -> ClassFunction:
    """Induced class function: (Ind f)(g) = (1/|H|) sum_{x in G, x^-1 g x in H} f(x^-1 g x)."""
    H = f.group
    if emb.source is not H or emb.target is not G:
        raise GroupMismatch("embedding does not match the induction data")
    local = np.full(G.order, -1, dtype=np.int64)
    local[emb.map] = np.arange(H.order)
    h_class = H._cache.get("classes") or conjugacy_classes(H)
    h_class_of = h_class.class_of
    n_h = len(h_class)
    conj = G.conj
    values = []
    for rep in conjugacy_classes(G).representatives:
        # {x g x^-1 : x in G} runs over the same multiset as {x^-1 g x}
        imgs = local[conj[:, rep]]
        imgs = imgs[imgs >= 0]
        if len(imgs) == 0:
            values.append(0)
            continue
        counts = np.bincount(h_class_of[imgs], minlength=n_h)
        acc = Cyclotomic.from_rational(0, G.exponent)
        for c in np.flatnonzero(counts):
            acc = acc + f.values[int(c)] * int(counts[c])
        values.append(acc / H.order)
    return ClassFunction(G, values)


def perm_character(G: Group, H: SubgroupSet) -> ClassFunction:
    """Permutation character of G on the cosets G/H: number of fixed cosets."""
    if H.parent is not G:
        raise GroupMismatch("subgroup of a different group")
    idx = H.elements
    # coset label of x = least element of xH
    coset_of = G.mult[:, idx].min(axis=1)
    reps = np.unique(coset_of)
    values = []
    for g in conjugacy_classes(G).representatives:
        moved = coset_of[G.mult[g, reps]]
        values.append(int(np.count_nonzero(moved == reps)))
    return ClassFunction(G, values)


def reduced_perm_character(G: Group, H: SubgroupSet) -> ClassFunction:
    """The reduced permutation character C[G/H] - C."""
    return perm_character(G, H) - ClassFunction.trivial(G)


def fixed_dimensions(f: ClassFunction) -> dict[int, Fraction]:
    """For each class representative h: (1/|<h>|) sum_k f(h^k), the dimension fixed by h."""
    G = f.group
    out = {}
    for rep in f.partition.representatives:
        o = int(G.elt_order[rep])
        acc = Cyclotomic.from_rational(0, G.exponent)
        x = 0
        for _ in range(o):
            acc = acc + f(x)
            x = int(G.mult[x, rep])
        acc = acc / o
        out[rep] = acc.to_fraction() if acc.is_rational() else acc
    return out


def as_integer(v: Cyclotomic) -> int | None:
    if v.is_rational_integer():
        return v.coeffs[0]
    return None


__all__ = [
    "ClassFunction",
    "as_integer",
    "fixed_dimensions",
    "induce",
    "inner_product",
    "perm_character",
    "pullback",
    "reduced_perm_character",
    "restrict",
    "totient",
]
