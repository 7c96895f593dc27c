"""Irreducible character tables by the Burnside-Dixon method.

Class-sum matrices are simultaneously diagonalized over a prime field F_l with
l = 1 (mod exponent) and l > 2 sqrt(|G|).  Each common eigenvector is a central
character mod l, which determines the degree and the character values mod l.
Exact values are recovered from eigenvalue multiplicities: for g of order o the
multiplicity of zeta^k as an eigenvalue of g is a discrete Fourier coefficient
of k -> chi(g^j), and it must land in [0, deg].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..errors import GroupMismatch, LiftFailure, NotCharacter
from ..groups.core import Group, conjugacy_classes
from .classfunc import ClassFunction
from .cyclotomic import Cyclotomic, _power_table, totient

# -- arithmetic mod a prime -----------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    q = 2
    while q * q <= n:
        if n % q == 0:
            return False
        q += 1
    return True


def dixon_prime(order: int, exponent: int) -> int:
    """Least prime l = 1 (mod exponent) with l > 2 sqrt(order)."""
    l = exponent + 1
    while not (_is_prime(l) and l * l > 4 * order):
        l += exponent
    return l


def _primitive_root(l: int) -> int:
    factors = [q for q in range(2, l) if (l - 1) % q == 0 and _is_prime(q)]
    for g in range(2, l):
        if all(pow(g, (l - 1) // q, l) != 1 for q in factors):
            return g
    return 1


def _nullspace(A: np.ndarray, l: int) -> np.ndarray:
    """Basis (as columns) of the right kernel of A over F_l."""
    A = A.copy() % l
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, l)) % l
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if len(nzr):
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % l
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-A[i, f]) % l
    return basis


def _inverse(A: np.ndarray, l: int) -> np.ndarray:
    n = A.shape[0]
    aug = np.concatenate([A % l, np.eye(n, dtype=np.int64)], axis=1)
    for c in range(n):
        nz = np.flatnonzero(aug[c:, c])
        if len(nz) == 0:
            raise LiftFailure("singular pivot block")
        i = c + int(nz[0])
        if i != c:
            aug[[c, i]] = aug[[i, c]]
        aug[c] = (aug[c] * pow(int(aug[c, c]), -1, l)) % l
        col = aug[:, c].copy()
        col[c] = 0
        nzr = np.flatnonzero(col)
        if len(nzr):
            aug[nzr] = (aug[nzr] - np.outer(col[nzr], aug[c])) % l
    return aug[:, n:]


def _pivot_rows(B: np.ndarray, l: int) -> list[int]:
    """Row indices on which the column basis B is invertible."""
    A = (B.T % l).copy()
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * pow(int(A[r, c]), -1, l)) % l
        col = A[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if len(nzr):
            A[nzr] = (A[nzr] - np.outer(col[nzr], A[r])) % l
        pivots.append(c)
        r += 1
    return pivots


def _charpoly(A: np.ndarray, l: int) -> np.ndarray:
    """Characteristic polynomial mod l (highest degree first) via Hessenberg form."""
    H = A.copy() % l
    n = H.shape[0]
    for j in range(n - 2):
        nz = np.flatnonzero(H[j + 1 :, j])
        if len(nz) == 0:
            continue
        i = j + 1 + int(nz[0])
        if i != j + 1:
            H[[i, j + 1]] = H[[j + 1, i]]
            H[:, [i, j + 1]] = H[:, [j + 1, i]]
        piv_inv = pow(int(H[j + 1, j]), -1, l)
        for k in range(j + 2, n):
            u = (int(H[k, j]) * piv_inv) % l
            if u:
                H[k] = (H[k] - u * H[j + 1]) % l
                H[:, j + 1] = (H[:, j + 1] + u * H[:, k]) % l
    # p_m(x) = (x - h_mm) p_{m-1} - sum_i h_im (prod sub-diagonal) p_{i-1}
    polys = [np.array([1], dtype=np.int64)]
    for m in range(n):
        cur = np.concatenate([polys[m], [0]]) - np.concatenate([[0], H[m, m] * polys[m]])
        prod = 1
        for i in range(m - 1, -1, -1):
            prod = (prod * int(H[i + 1, i])) % l
            if prod == 0:
                break
            coef = (int(H[i, m]) * prod) % l
            if coef:
                tail = np.zeros(len(cur), dtype=np.int64)
                tail[len(cur) - len(polys[i]) :] = polys[i]
                cur = cur - coef * tail
        polys.append(cur % l)
    return polys[n]


def _roots(poly: np.ndarray, l: int) -> list[int]:
    xs = np.arange(l, dtype=np.int64)
    acc = np.zeros(l, dtype=np.int64)
    for c in poly:
        acc = (acc * xs + int(c)) % l
    return [int(x) for x in np.flatnonzero(acc == 0)]


# -- the table ----------------------------------------------------------------------


def _class_matrix(G: Group, part, j: int) -> np.ndarray:
    r = len(part)
    reps = np.asarray(part.representatives)
    xs = np.asarray(part.classes[j])
    prods = G.mult[G.inv[xs]][:, reps]  # x^-1 z_k
    i_idx = part.class_of[prods]
    M = np.zeros((r, r), dtype=np.int64)
    np.add.at(M, (i_idx, np.broadcast_to(np.arange(r), i_idx.shape)), 1)
    return M


def _central_characters(G: Group, part, l: int) -> list[np.ndarray]:
    r = len(part)
    spaces = [np.eye(r, dtype=np.int64)]
    for j in range(1, r):
        if all(B.shape[1] == 1 for B in spaces):
            break
        M = None
        nxt = []
        for B in spaces:
            if B.shape[1] == 1:
                nxt.append(B)
                continue
            if M is None:
                M = _class_matrix(G, part, j) % l
            P = _pivot_rows(B, l)
            A = (_inverse(B[P], l) @ ((M @ B) % l)[P]) % l
            total = 0
            for lam in _roots(_charpoly(A, l), l):
                N = _nullspace((A - lam * np.eye(len(A), dtype=np.int64)) % l, l)
                if N.shape[1]:
                    nxt.append((B @ N) % l)
                    total += N.shape[1]
            if total != B.shape[1]:
                raise LiftFailure("class matrix is not diagonalizable over the Dixon prime")
        spaces = nxt
    if any(B.shape[1] != 1 for B in spaces):
        raise LiftFailure("class matrices do not separate the characters")
    out = []
    for B in spaces:
        v = B[:, 0] % l
        if v[0] == 0:
            raise LiftFailure("central character vanishes at the identity")
        out.append((v * pow(int(v[0]), -1, l)) % l)
    return out


def _power_classes(G: Group, part) -> list[np.ndarray]:
    out = []
    for rep in part.representatives:
        o = int(G.elt_order[rep])
        seq = np.empty(o, dtype=np.int64)
        x = 0
        for j in range(o):
            seq[j] = part.class_of[x]
            x = int(G.mult[x, rep])
        out.append(seq)
    return out


def _lift(G: Group, part, omegas: list[np.ndarray], l: int) -> np.ndarray:
    """Exponent counts: counts[c, i, k] = multiplicity of zeta_e^k as eigenvalue at class i."""
    e = G.exponent
    r = len(part)
    sizes = np.asarray(part.sizes, dtype=np.int64)
    inv_cls = part.class_of[G.inv[np.asarray(part.representatives)]]
    size_inv = np.array([pow(int(s), -1, l) for s in sizes], dtype=np.int64)
    z = pow(_primitive_root(l), (l - 1) // e, l)
    pcs = _power_classes(G, part)
    counts = np.zeros((len(omegas), r, e), dtype=np.int64)
    for c, w in enumerate(omegas):
        s = int(np.sum((w * w[inv_cls]) % l * size_inv % l) % l)
        if s == 0:
            raise LiftFailure("degree sum vanishes mod l")
        d2 = (G.order * pow(s, -1, l)) % l
        d = next((d for d in range(1, l // 2 + 1) if (d * d) % l == d2), None)
        if d is None or G.order % d:
            raise LiftFailure(f"no admissible degree for d^2 = {d2} mod {l}")
        chi = (d * w % l) * size_inv % l
        for i, seq in enumerate(pcs):
            o = len(seq)
            zo = pow(z, e // o, l)
            inv_o = pow(o, -1, l)
            js = np.arange(o)
            pw = np.array([pow(zo, t, l) for t in range(o)], dtype=np.int64)
            vals = chi[seq]
            for k in range(o):
                m = int(np.sum(vals * pw[(-js * k) % o] % l) % l) * inv_o % l
                if m > d:
                    raise LiftFailure(f"multiplicity {m} exceeds degree {d}")
                counts[c, i, (k * (e // o)) % e] = m
            if counts[c, i].sum() != d:
                raise LiftFailure("multiplicities do not sum to the degree")
    return counts


def _conj_pair_sums(A: np.ndarray, B: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """out[x, y, t] = sum_k w_k sum_a A[x,k,a] B[y,k,a-t], i.e. A * conj(B) in Z[C_e]."""
    e = A.shape[-1]
    out = np.zeros((A.shape[0], B.shape[0], e), dtype=np.int64)
    Aw = A * weights[None, :, None]
    for t in range(e):
        out[:, :, t] = np.einsum("xka,yka->xy", Aw, np.roll(B, t, axis=-1))
    return out


def _reduce_counts(X: np.ndarray, e: int) -> np.ndarray:
    table = np.array(_power_table(e), dtype=np.int64)
    return X @ table


@dataclass
class CharacterTable:
    group: Group
    irreducibles: list[ClassFunction]
    counts: np.ndarray = field(repr=False)
    prime: int = 0

    @property
    def degrees(self) -> list[int]:
        return [int(c) for c in self.counts[:, 0, :].sum(axis=1)]

    def __len__(self) -> int:
        return len(self.irreducibles)

    def check(self) -> dict[str, bool]:
        """Exact row and column orthogonality, sum of squared degrees, and class count."""
        G = self.group
        part = conjugacy_classes(G)
        e = G.exponent
        sizes = np.asarray(part.sizes, dtype=np.int64)
        r = len(part)
        rows = _reduce_counts(_conj_pair_sums(self.counts, self.counts, sizes), e)
        want_rows = np.zeros_like(rows)
        want_rows[np.arange(r), np.arange(r), 0] = G.order
        cols_in = np.transpose(self.counts, (1, 0, 2))
        cols = _reduce_counts(_conj_pair_sums(cols_in, cols_in, np.ones(len(self), dtype=np.int64)), e)
        want_cols = np.zeros_like(cols)
        want_cols[np.arange(r), np.arange(r), 0] = G.order // sizes
        return {
            "class_count": len(self) == r,
            "row_orthogonality": bool(np.array_equal(rows, want_rows)),
            "column_orthogonality": bool(np.array_equal(cols, want_cols)),
            "degree_squares": sum(d * d for d in self.degrees) == G.order,
        }

    def inner_products(self, f: ClassFunction) -> list[Cyclotomic]:
        """<f, chi_i> for every irreducible chi_i, exactly."""
        if f.group is not self.group:
            raise GroupMismatch("class function lives on a different group")
        G = self.group
        e = G.exponent
        if any(v.m != e for v in f.values):
            from .classfunc import inner_product

            return [inner_product(f, chi) for chi in self.irreducibles]
        den = math.lcm(*(v.den for v in f.values))
        phi = totient(e)
        A = np.zeros((1, len(f.values), e), dtype=np.int64)
        for k, v in enumerate(f.values):
            A[0, k, :phi] = [c * (den // v.den) for c in v.coeffs]
        sizes = np.asarray(conjugacy_classes(G).sizes, dtype=np.int64)
        red = _reduce_counts(_conj_pair_sums(A, self.counts, sizes), e)[0]
        scale = den * G.order
        return [Cyclotomic(e, [int(x) for x in row], scale) for row in red]

    def multiplicities(self, f: ClassFunction) -> list[int]:
        """Multiplicities of the irreducibles in ``f``; raises NotCharacter otherwise."""
        out = []
        for i, v in enumerate(self.inner_products(f)):
            if not v.is_rational_integer() or v.coeffs[0] < 0:
                q = v.to_fraction() if v.is_rational() else v
                raise NotCharacter(i, q)
            out.append(v.coeffs[0])
        return out

    def serialize(self) -> str:
        return "\n\n".join(chi.serialize() for chi in self.irreducibles)


def character_table(G: Group) -> CharacterTable:
    cached = G._cache.get("character_table")
    if cached is not None:
        return cached
    part = conjugacy_classes(G)
    e = G.exponent
    if G.order == 1:
        counts = np.ones((1, 1, 1), dtype=np.int64)
        table = CharacterTable(G, [ClassFunction.trivial(G)], counts, 2)
        G._cache["character_table"] = table
        return table
    l = dixon_prime(G.order, e)
    omegas = _central_characters(G, part, l)
    counts = _lift(G, part, omegas, l)
    chars = [
        ClassFunction(G, [Cyclotomic.from_exponent_counts(e, counts[c, i]) for i in range(len(part))])
        for c in range(len(omegas))
    ]
    order = sorted(range(len(chars)), key=lambda c: (int(counts[c, 0].sum()), chars[c].sort_key()))
    table = CharacterTable(G, [chars[c] for c in order], counts[order], l)
    G._cache["character_table"] = table
    return table


def is_character(f: ClassFunction, table: CharacterTable | None = None) -> list[int]:
    """Multiplicity vector of ``f`` if it is a character, else raises NotCharacter."""
    table = table or character_table(f.group)
    return table.multiplicities(f)


def fixed_subspace_dimensions(f: ClassFunction) -> dict[int, Fraction]:
    from .classfunc import fixed_dimensions

    return fixed_dimensions(f)


def fixed_point_free(f: ClassFunction, table: CharacterTable | None = None) -> bool:
    """True iff no nonidentity element fixes a nonzero vector."""
    is_character(f, table)
    dims = fixed_subspace_dimensions(f)
    return all(v == 0 for rep, v in dims.items() if rep != 0)


def first_fixed_element(f: ClassFunction) -> tuple[int, Fraction] | None:
    """Least class representative with a nonzero fixed subspace, with its dimension."""
    for rep, v in fixed_subspace_dimensions(f).items():
        if rep != 0 and v != 0:
            return rep, v
    return None
