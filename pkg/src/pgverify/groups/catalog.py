"""Built-in group constructors and the ``name:params`` descriptor grammar."""

from __future__ import annotations

import itertools
from pathlib import Path
from typing import Sequence

import numpy as np

from ..errors import DescriptorError, InvalidTable, OrderCap
from .core import ORDER_CAP, Group


def _from_elements(elements: Sequence, op, label: str) -> Group:
    """Build a table from an element list (identity first) and a product function."""
    n = len(elements)
    if n > ORDER_CAP:
        raise OrderCap(f"order {n} exceeds cap {ORDER_CAP}")
    index = {e: i for i, e in enumerate(elements)}
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[op(a, b)]
    return Group(table, label)


def cyclic(n: int) -> Group:
    if n < 1:
        raise DescriptorError("cyclic order must be positive")
    if n > ORDER_CAP:
        raise OrderCap(f"order {n} exceeds cap {ORDER_CAP}")
    ar = np.arange(n)
    return Group((ar[:, None] + ar[None, :]) % n, f"cyclic:{n}", generators=[1] if n > 1 else [])


def elementary_abelian(p: int, k: int) -> Group:
    if p ** k > ORDER_CAP:
        raise OrderCap(f"order {p ** k} exceeds cap {ORDER_CAP}")
    elements = list(itertools.product(range(p), repeat=k))
    elements.sort(key=lambda v: sum(c * p ** i for i, c in enumerate(v)))
    return _from_elements(elements, lambda a, b: tuple((x + y) % p for x, y in zip(a, b)),
                          f"elemab:{p},{k}")


def _extraspecial(p: int, pairs: int, label: str) -> Group:
    # (x_1, y_1, ..., x_k, y_k, z) with z-component picking up sum x_i * y_i'
    # so that [x_i, y_i] is central of order p.  Exponent p for odd p.
    if p ** (2 * pairs + 1) > ORDER_CAP:
        raise OrderCap(f"order {p ** (2 * pairs + 1)} exceeds cap {ORDER_CAP}")
    dim = 2 * pairs + 1
    elements = list(itertools.product(range(p), repeat=dim))
    elements.sort(key=lambda v: sum(c * p ** i for i, c in enumerate(v)))

    def op(a, b):
        out = [(a[i] + b[i]) % p for i in range(dim)]
        out[-1] = (a[-1] + b[-1] + sum(a[2 * i] * b[2 * i + 1] for i in range(pairs))) % p
        return tuple(out)

    return _from_elements(elements, op, label)


def heisenberg(p: int) -> Group:
    """Extraspecial group of order p^3 (exponent p for odd p)."""
    return _extraspecial(p, 1, f"heisenberg:{p}")


def extraspecial5(p: int) -> Group:
    """Extraspecial group of order p^5 (exponent p for odd p)."""
    return _extraspecial(p, 2, f"extraspecial5:{p}")


def direct_product(*factors: Group) -> Group:
    order = 1
    for F in factors:
        order *= F.order
    if order > ORDER_CAP:
        raise OrderCap(f"order {order} exceeds cap {ORDER_CAP}")
    table = np.zeros((1, 1), dtype=np.int64)
    for F in factors:
        n, f = table.shape[0], F.order
        # index = i + n * j  (earlier factors vary fastest)
        t = np.empty((n * f, n * f), dtype=np.int64)
        A = table
        B = F.mult.astype(np.int64)
        for j1 in range(f):
            for j2 in range(f):
                t[j1 * n:(j1 + 1) * n, j2 * n:(j2 + 1) * n] = A + n * B[j1, j2]
        table = t
    label = "product:" + ",".join(F.label for F in factors)
    return Group(table, label)


def semidirect_product(base: Group, automorphism: Sequence[int], n: int, label: str) -> Group:
    """base ⋊ C_n where the generator of C_n acts by ``automorphism`` (an index permutation).

    Elements (b, i) are indexed b + |base| * i and multiply as
    (b, i)(c, j) = (b * phi^i(c), i + j mod n).
    """
    phi = np.asarray(automorphism, dtype=np.int64)
    N = base.order
    if base.order * n > ORDER_CAP:
        raise OrderCap(f"order {base.order * n} exceeds cap {ORDER_CAP}")
    m = base.mult.astype(np.int64)
    if sorted(phi.tolist()) != list(range(N)) or not np.array_equal(phi[m], m[phi[:, None], phi[None, :]]):
        raise InvalidTable("action is not an automorphism of the base")
    powers = [np.arange(N)]
    for _ in range(n):
        powers.append(phi[powers[-1]])
    if not np.array_equal(powers[n], powers[0]):
        raise InvalidTable("automorphism order does not divide the cyclic order")
    table = np.empty((N * n, N * n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            block = m[:, powers[i]]
            table[i * N:(i + 1) * N, j * N:(j + 1) * N] = block + N * ((i + j) % n)
    return Group(table, label)


def semidirect(p: int, matrix: Sequence[Sequence[int]]) -> Group:
    """(Z/p)^k ⋊ C_n with the generator acting by ``matrix`` (n = its multiplicative order)."""
    M = np.asarray(matrix, dtype=np.int64) % p
    k = M.shape[0]
    if M.shape != (k, k):
        raise DescriptorError("action matrix must be square")
    base = elementary_abelian(p, k)
    weights = p ** np.arange(k)
    vecs = np.array([[(i // p ** t) % p for t in range(k)] for i in range(base.order)], dtype=np.int64)
    image = (vecs @ M.T) % p
    phi = image @ weights
    n, P = 1, M.copy()
    ident = np.eye(k, dtype=np.int64)
    while not np.array_equal(P, ident):
        P = (P @ M) % p
        n += 1
        if n > ORDER_CAP:
            raise DescriptorError("action matrix is not invertible")
    rows = ";".join(",".join(str(int(v)) for v in row) for row in M)
    return semidirect_product(base, phi, n, f"semidirect:{p};{rows}")


def metacyclic(p: int, n: int) -> Group:
    """C_{p^n} ⋊ C_p with the generator acting by k -> k^(1 + p^(n-1)), for n >= 2."""
    if n < 2:
        raise DescriptorError("metacyclic needs n >= 2")
    base = cyclic(p ** n)
    r = 1 + p ** (n - 1)
    phi = (np.arange(base.order) * r) % base.order
    return semidirect_product(base, phi, p, f"metacyclic:{p},{n}")


# -- permutation groups ------------------------------------------------------

def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse cycle notation on points 1..degree into a 0-based image tuple."""
    perm = list(range(degree))
    text = text.strip()
    if text in ("", "()"):
        return tuple(perm)
    if not (text.startswith("(") and text.endswith(")")):
        raise DescriptorError(f"bad cycle notation: {text!r}")
    for chunk in text[1:-1].split(")("):
        pts = [int(t) for t in chunk.replace(",", " ").split()]
        if any(not 1 <= q <= degree for q in pts) or len(set(pts)) != len(pts):
            raise DescriptorError(f"bad cycle {chunk!r} for degree {degree}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a - 1] = b - 1
    return tuple(perm)


def from_permutations(generators: Sequence[Sequence[int]], label: str = "perm") -> Group:
    """Group generated by 0-based permutation images; product xy means 'apply y, then x'."""
    gens = [tuple(int(v) for v in g) for g in generators]
    degree = len(gens[0]) if gens else 1
    ident = tuple(range(degree))

    def compose(a, b):
        return tuple(a[b[i]] for i in range(degree))

    elements = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > ORDER_CAP:
                        raise OrderCap(f"permutation group order exceeds cap {ORDER_CAP}")
        frontier = nxt
    return _from_elements(elements, compose, label)


# -- files and descriptors ---------------------------------------------------

def read_group_file(path: str | Path) -> Group:
    """Read a ``group <label> order <n>`` table or a ``perm <label> degree <d>`` file."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise DescriptorError(f"{path}: empty group file")
    head = lines[0].split()
    if len(head) == 4 and head[0] == "group" and head[2] == "order":
        label, n = head[1], int(head[3])
        rows = [[int(t) for t in ln.split()] for ln in lines[1:]]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise DescriptorError(f"{path}: expected {n} rows of {n} entries")
        return Group(np.array(rows, dtype=np.int64), label)
    if len(head) == 4 and head[0] == "perm" and head[2] == "degree":
        label, d = head[1], int(head[3])
        gens = [parse_cycles(ln, d) for ln in lines[1:]]
        if not gens:
            gens = [tuple(range(d))]
        return from_permutations(gens, label)
    raise DescriptorError(f"{path}: unrecognised header {lines[0]!r}")


def write_group_file(G: Group, path: str | Path) -> None:
    rows = "\n".join(" ".join(str(int(v)) for v in row) for row in G.mult)
    Path(path).write_text(f"group {G.label.replace(' ', '_')} order {G.order}\n{rows}\n")


def _ints(params: str) -> list[int]:
    try:
        return [int(t) for t in params.split(",")]
    except ValueError as exc:
        raise DescriptorError(f"expected integers, got {params!r}") from exc


def _split_product(params: str) -> list[str]:
    # "cyclic:3,elemab:3,2,heisenberg:3" -> ["cyclic:3", "elemab:3,2", "heisenberg:3"]
    parts: list[str] = []
    for tok in params.split(","):
        if tok[:1].isalpha():
            parts.append(tok)
        elif parts:
            parts[-1] += "," + tok
        else:
            raise DescriptorError(f"bad product descriptor {params!r}")
    return parts


def build_catalog_group(spec: str) -> Group:
    """Construct a group from a descriptor such as ``heisenberg:3`` or ``elemab:3,3``."""
    name, _, params = spec.partition(":")
    name = name.strip().lower()
    try:
        if name == "cyclic":
            (n,) = _ints(params)
            return cyclic(n)
        if name in ("elemab", "elementary_abelian"):
            p, k = _ints(params)
            return elementary_abelian(p, k)
        if name == "heisenberg":
            (p,) = _ints(params)
            return heisenberg(p)
        if name == "extraspecial5":
            (p,) = _ints(params)
            return extraspecial5(p)
        if name == "metacyclic":
            p, n = _ints(params)
            return metacyclic(p, n)
        if name == "product":
            return direct_product(*(build_catalog_group(s) for s in _split_product(params)))
        if name == "semidirect":
            head, *rows = params.split(";")
            (p,) = _ints(head)
            return semidirect(p, [_ints(r) for r in rows])
        if name == "file":
            return read_group_file(params)
    except (TypeError, ValueError) as exc:
        raise DescriptorError(f"bad parameters in {spec!r}: {exc}") from exc
    raise DescriptorError(f"unknown group descriptor {spec!r}")


CATALOG: list[tuple[str, str]] = [
    ("cyclic:3", "cyclic group of order 3"),
    ("cyclic:9", "cyclic group of order 9"),
    ("cyclic:27", "cyclic group of order 27"),
    ("elemab:3,2", "elementary abelian group of order 9"),
    ("elemab:3,3", "elementary abelian group of order 27"),
    ("heisenberg:3", "extraspecial 3^(1+2), exponent 3"),
    ("metacyclic:3,2", "C9 ⋊ C3, the other nonabelian group of order 27"),
    ("product:cyclic:3,heisenberg:3", "C3 x 3^(1+2): rank 3, noncyclic center"),
    ("semidirect:3;1,1,0;0,1,1;0,0,1", "C3^3 ⋊ C3 (wreath product C3 wr C3): rank 3, cyclic center"),
    ("extraspecial5:3", "extraspecial 3^(1+4), exponent 3: rank 3, cyclic center"),
]
