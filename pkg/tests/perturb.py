"""Deliberate corruptions used as negative controls."""

import dataclasses

from pgverify.families import QuadrupleBundle
from pgverify.groups import conjugacy_classes


def corrupt_chi(data, delta=1):
    """Shift chi by +delta on the class of the least order-p element outside C_G(Q) and
    by -delta on the class of its inverse; sums over subgroups are unchanged."""
    G = data.G
    x = next(g for g in range(G.order) if g not in data.centralizer_Q and G.elt_order[g] == data.p)
    part = conjugacy_classes(G)
    i, j = int(part.class_of[x]), int(part.class_of[G.inv[x]])
    chi = data.chi.with_value(i, data.chi.values[i] + delta)
    chi = chi.with_value(j, chi.values[j] - delta)
    return dataclasses.replace(data, chi=chi), x


def scale_rep(bundle, node, factor=2):
    reps = dict(bundle.reps)
    reps[node] = reps[node] * factor
    return QuadrupleBundle(bundle.diagram, bundle.groups, reps, bundle.witnesses, bundle.notes)
