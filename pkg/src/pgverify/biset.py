"""Fixed points of coset spaces and the composition map

    (G/H)^K ×_{W_G(K)} (G/K)^L  ->  (G/H)^L,   (xH, yK) -> yxH,

for H cyclic of prime-power order, K its subgroup of index p and L <= K.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadShape
from .groups.core import Group, SubgroupSet, prime_power
from .groups.subgroups import all_subgroups, normalizer, subgroups_of
from .parallel import parallel_map
from .verdict import Verdict

SWEEP_CAP = 256


def coset_labels(G: Group, H: SubgroupSet) -> np.ndarray:
    """coset_of[g] = least element of gH."""
    return G.mult[:, H.elements].min(axis=1)


@dataclass
class FixedCosetSet:
    G: Group
    H: SubgroupSet
    L: SubgroupSet
    cosets: np.ndarray  # least representatives g of the cosets gH with g^-1 L g <= H
    weyl: SubgroupSet  # N_G(H); the Weyl group is weyl / H

    def __len__(self) -> int:
        return len(self.cosets)

    @property
    def weyl_order(self) -> int:
        return self.weyl.order // self.H.order


def fixed_cosets(G: Group, H: SubgroupSet, L: SubgroupSet) -> FixedCosetSet:
    labels = np.unique(coset_labels(G, H))
    ok = H.bool_mask[G.conj[G.inv[labels]][:, L.elements]].all(axis=1)
    return FixedCosetSet(G, H, L, labels[ok], normalizer(G, H))


def _weyl_reps(F: FixedCosetSet) -> np.ndarray:
    return np.unique(coset_labels(F.G, F.H)[F.weyl.elements])


def check_weyl_freeness(F: FixedCosetSet) -> Verdict:
    """The right action gH·nH = gnH of W_G(H) on (G/H)^L is well defined and free."""
    claim = "W_G(H) acts freely on (G/H)^L"
    G, H = F.G, F.H
    lab = coset_labels(G, H)
    ns = _weyl_reps(F)
    reps = G.mult[ns][:, H.elements]  # every representative of each nH
    imgs = lab[G.mult[F.cosets[:, None, None], reps[None, :, :]]]  # coset, n, representative

    def bad(mask, reason):
        i, j = np.argwhere(mask)[0][:2]
        return Verdict.of("weyl_free", False, claim, {"coset": int(F.cosets[i]), "n": int(ns[j]),
                                                      "reason": reason})

    varies = (imgs != imgs[..., :1]).any(axis=2)
    if varies.any():
        return bad(varies, "depends on representative")
    imgs = imgs[..., 0]
    outside = ~np.isin(imgs, F.cosets)
    if outside.any():
        return bad(outside, "leaves the fixed set")
    stuck = (imgs == F.cosets[:, None]) & (ns != 0)[None, :]
    if stuck.any():
        return bad(stuck, "fixed coset")
    w = F.weyl_order
    orbits = len(F) // w if w else 0
    return Verdict.of("weyl_free", len(F) % w == 0, claim, {"reason": "size not divisible"},
                      orbits=orbits, weyl_order=w, cosets=len(F))


def _orbit_labels(perms: list[np.ndarray], size: int) -> np.ndarray:
    lab = np.arange(size)
    while True:
        old = lab.copy()
        for p in perms:
            np.minimum.at(lab, p, lab)
            lab = np.minimum(lab, lab[p])
        if np.array_equal(lab, old):
            return lab


def index_p_subgroup(H: SubgroupSet) -> SubgroupSet:
    G = H.parent
    pp = prime_power(H.order)
    if pp is None or not H.is_cyclic or pp[1] < 1:
        raise BadShape("H must be a nontrivial cyclic group of prime-power order")
    gen = next(int(x) for x in H.elements if G.elt_order[x] == H.order)
    from .groups.subgroups import closure

    return closure(G, [G.power(gen, pp[0])])


def check_mu_bijection(G: Group, H: SubgroupSet, K: SubgroupSet, L: SubgroupSet) -> Verdict:
    """Build the fiber product as an explicit orbit set and check that composition is a
    well-defined bijection onto (G/H)^L, together with the counting identities."""
    if index_p_subgroup(H) != K:
        raise BadShape("K must be the index-p subgroup of H")
    if not L <= K:
        raise BadShape("L must lie in K")
    claim = "(xH, yK) -> yxH is a bijection onto (G/H)^L"
    witness_base = {"H": H.hex, "K": K.hex, "L": L.hex}
    X = fixed_cosets(G, H, K)
    Y = fixed_cosets(G, K, L)
    T = fixed_cosets(G, H, L)
    NH, NK, NL = X.weyl, Y.weyl, normalizer(G, L)
    lab_h = coset_labels(G, H)
    lab_k = coset_labels(G, K)

    def fail(reason, **extra):
        return Verdict.of("mu_bijection", False, claim, {**witness_base, "reason": reason, **extra})

    if not (L <= H and H <= NH and NH <= NL):
        return fail("chain L <= H <= N(H) <= N(L) broken")
    nl_cosets = np.unique(lab_h[NL.elements])
    if not np.array_equal(np.sort(T.cosets), nl_cosets):
        return fail("(G/H)^L differs from N_G(L)/H")

    nx, ny = len(X), len(Y)
    x_pos = {int(x): i for i, x in enumerate(X.cosets)}
    y_pos = {int(y): j for j, y in enumerate(Y.cosets)}
    perms = []
    for n in _generators_of(NK):
        px = np.array([x_pos.get(int(lab_h[G.mult[n, x]]), -1) for x in X.cosets])
        py = np.array([y_pos.get(int(lab_k[G.mult[y, G.inv[n]]]), -1) for y in Y.cosets])
        if (px < 0).any() or (py < 0).any():
            return fail("N_G(K) does not preserve the fixed sets", n=int(n))
        perms.append((px[:, None] * ny + py[None, :]).ravel())
    orbit = _orbit_labels(perms, nx * ny)

    # mu on every representative pair: y k x h H for k in K, h in H
    xs_full = G.mult[X.cosets][:, H.elements]  # nx x |H|
    ys_full = G.mult[Y.cosets][:, K.elements]  # ny x |K|
    prod = G.mult[ys_full[:, None, :, None], xs_full[None, :, None, :]]  # ny, nx, |K|, |H|
    mu_all = lab_h[prod].reshape(ny, nx, -1)
    if not (mu_all == mu_all[..., :1]).all():
        return fail("value depends on coset representatives")
    mu = mu_all[..., 0].T.ravel()  # index i * ny + j
    lo = np.full(nx * ny, np.iinfo(np.int64).max)
    hi = np.full(nx * ny, -1)
    np.minimum.at(lo, orbit, mu)
    np.maximum.at(hi, orbit, mu)
    roots = np.unique(orbit)
    if (lo[roots] != hi[roots]).any():
        r = int(roots[np.flatnonzero(lo[roots] != hi[roots])[0]])
        return fail("not constant on a fiber-product class", pair=[int(X.cosets[r // ny]), int(Y.cosets[r % ny])])
    images = set(lo[roots].tolist())
    target = set(int(t) for t in T.cosets)
    if not images <= target:
        return fail("image outside (G/H)^L")
    surjective = images == target
    bijective = surjective and len(images) == len(roots)

    s = NK.order // NH.order
    t = NL.order // NK.order
    m = NL.order // NH.order
    free_t = check_weyl_freeness(T)
    free_y = check_weyl_freeness(Y)
    free_x = check_weyl_freeness(X)
    counts_ok = (
        s * t == m
        and free_t.passed and free_t.details["orbits"] == m
        and free_y.passed and free_y.details["orbits"] == t
        and free_x.passed and free_x.details["orbits"] == s
        and len(roots) == len(T)
    )
    details = dict(sizes=[len(X), len(Y), len(T)], classes=len(roots), s=s, t=t, m=m,
                   surjective=surjective, bijective=bijective, counts=counts_ok)
    if surjective != bijective and len(roots) == len(T):
        return fail("surjective but not injective with equal cardinalities", **details)
    if bijective != counts_ok:
        return fail("bijection and count identity disagree", **details)
    if not bijective:
        return fail("not a bijection", **details)
    return Verdict.of("mu_bijection", True, claim, **details)


def _generators_of(S: SubgroupSet) -> list[int]:
    from .groups.subgroups import subgroup_generators

    return subgroup_generators(S)


def valid_triples(G: Group) -> list[tuple[SubgroupSet, SubgroupSet, SubgroupSet]]:
    out = []
    for H in all_subgroups(G):
        if H.order == 1 or not H.is_cyclic or prime_power(H.order) is None:
            continue
        K = index_p_subgroup(H)
        for L in subgroups_of(K):
            out.append((H, K, L))
    return out


_SWEEP: dict = {}


def _sweep_job(i: int) -> dict:
    H, K, L = _SWEEP["triples"][i]
    v = check_mu_bijection(_SWEEP["G"], H, K, L)
    return {"ok": v.passed, "witness": v.witness, "m": v.details.get("m")}


def sweep_mu(G: Group, jobs: int = 1, cap: int = SWEEP_CAP) -> Verdict:
    claim = "the composition map is a bijection for every cyclic H, index-p K <= H and L <= K"
    if G.order > cap:
        return Verdict.inapplicable("biset_bijection_sweep", f"order {G.order} exceeds the sweep cap {cap}", claim)
    triples = valid_triples(G)
    _SWEEP.update(G=G, triples=triples)
    results = parallel_map(_sweep_job, range(len(triples)), jobs)
    passed = sum(r["ok"] for r in results)
    bad = next((r["witness"] for r in results if not r["ok"]), None)
    return Verdict.of("biset_bijection_sweep", bad is None, claim, bad, triples=len(triples), passed=passed)


def parse_triple(G: Group, text: list[str]) -> tuple[SubgroupSet, SubgroupSet, SubgroupSet]:
    """Three subgroup bitsets in hexadecimal."""
    subs = [SubgroupSet.checked(G, int(t, 16)) for t in text]
    return subs[0], subs[1], subs[2]
