"""When the center has rank at least two, subgroups avoiding two independent central
subgroups of order p have rank at most one."""

from __future__ import annotations

from ..groups.core import Group
from ..groups.subgroups import all_subgroups, center, closure, rank
from ..verdict import Verdict

CLAIM = "H ∩ <c, c'> = 1 implies rank(H) <= 1"


def noncyclic_center_reduction(G: Group) -> Verdict:
    name = "noncyclic_center_reduction"
    pp = G.prime_power()
    if pp is None:
        return Verdict.inapplicable(name, "not a p-group", CLAIM)
    p = pp[0]
    Z = center(G)
    if Z.is_cyclic:
        return Verdict.inapplicable(name, "the center is cyclic", CLAIM)
    zs = [int(x) for x in Z.elements if G.elt_order[x] == p]
    c = zs[0]
    C = closure(G, [c])
    c2 = next(x for x in zs if x not in C)
    both = closure(G, [c, c2]).mask
    C2 = closure(G, [c2]).mask
    checked = 0
    weaker = None
    for H in all_subgroups(G):
        r = None
        if H.mask & both == 1:
            checked += 1
            r = rank(H)
            if r > 1:
                return Verdict.of(name, False, CLAIM, {"H": H.hex, "rank": r}, c=c, c_prime=c2)
        elif weaker is None and H.mask & C.mask == 1 and H.mask & C2 == 1:
            r = rank(H)
            if r > 1:
                weaker = {"H": H.hex, "rank": r}
    return Verdict.of(name, True, CLAIM, c=c, c_prime=c2, subgroups_checked=checked,
                      separate_avoidance_counterexample=weaker)
