"""Superselection sectors of the quantum double of a finite group.

Sectors are labeled by pairs (conjugacy class, irreducible character of the
centralizer of a class representative); the centralizer character tables are
obtained by re-running the group engine on the centralizer subgroup.  The
explicit S and T entries are the standard quantum-double formulas; the source
material only asserts their existence and selfduality, so everything below is
validated through the property suite (unitarity, symmetry, S^2 = C, integer
Verlinde fusion) rather than against printed matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import groups
from .errors import DimensionIdentityFailure, NonUnitaryS
from .verlinde import ModularData


@dataclass
class DoubleSector:
    class_index: int
    centralizer_irrep: int
    qdim: int

    @property
    def label(self) -> str:
        return f"({self.class_index},{self.centralizer_irrep})"


@dataclass
class _CentralizerData:
    subgroup: groups.FiniteGroupData
    conj: groups.ConjugacyData
    table: groups.CharacterTable

    def char_value(self, irrep: int, perm: tuple[int, ...]) -> complex:
        idx = self.subgroup.index_of[perm]
        return complex(self.table.chi[irrep, self.conj.class_of[idx]])


def _centralizer(group: groups.FiniteGroupData, rep_index: int) -> _CentralizerData:
    rep = group.elements[rep_index]
    members = [
        g for g in group.elements
        if groups.compose(g, rep) == groups.compose(rep, g)
    ]
    sub = groups.enumerate_group(group.degree, members)
    conj = groups.conjugacy_classes(sub)
    fusion = groups.class_fusion(sub, conj)
    table = groups.character_table(sub, conj, fusion)
    return _CentralizerData(subgroup=sub, conj=conj, table=table)


def enumerate_double_sectors(group: groups.FiniteGroupData) -> list[DoubleSector]:
    """Sectors ordered by (class index, centralizer irrep index).

    The squared quantum dimensions must sum to |G|^2, the dimension of the
    double as an algebra.
    """
    conj = groups.conjugacy_classes(group)
    sectors = []
    for ci in range(conj.class_count):
        cent = _centralizer(group, conj.reps[ci])
        for ri, d in enumerate(cent.table.dims):
            sectors.append(DoubleSector(class_index=ci, centralizer_irrep=ri,
                                        qdim=conj.sizes[ci] * d))
    total = sum(s.qdim**2 for s in sectors)
    if total != group.order**2:
        raise DimensionIdentityFailure(
            f"sum of squared sector dimensions {total} != |G|^2 = {group.order ** 2}"
        )
    return sectors


def double_modular_data(group: groups.FiniteGroupData, tol: float = 1e-9) -> ModularData:
    """S and T data of the double.

    S_{(a,chi),(b,psi)} = (1/|C(a)||C(b)|) * sum over group elements x with
    [g_a, x g_b x^-1] = 0 of conj(chi(x g_b x^-1)) conj(psi(x^-1 g_a x)),
    and the twist of (a, chi) is chi(g_a)/chi(e).
    """
    conj = groups.conjugacy_classes(group)
    cents = [_centralizer(group, conj.reps[ci]) for ci in range(conj.class_count)]
    sectors = []
    for ci in range(conj.class_count):
        for ri, d in enumerate(cents[ci].table.dims):
            sectors.append((ci, ri, conj.sizes[ci] * d))
    total = sum(q * q for _, _, q in sectors)
    if total != group.order**2:
        raise DimensionIdentityFailure("double dimension identity violated")

    n = len(sectors)
    s = np.zeros((n, n), dtype=complex)
    kappa = np.zeros(n, dtype=complex)
    elements = group.elements
    inv = {g: groups.invert(g) for g in elements}

    for a_idx, (ca, ra, _) in enumerate(sectors):
        g_a = elements[conj.reps[ca]]
        cent_a = cents[ca]
        d_a = cent_a.table.dims[ra]
        kappa[a_idx] = cent_a.char_value(ra, g_a) / d_a
        for b_idx, (cb, rb, _) in enumerate(sectors):
            if b_idx < a_idx:
                continue
            g_b = elements[conj.reps[cb]]
            cent_b = cents[cb]
            acc = 0.0 + 0.0j
            for x in elements:
                gbx = groups.compose(groups.compose(x, g_b), inv[x])
                if groups.compose(g_a, gbx) != groups.compose(gbx, g_a):
                    continue
                gax = groups.compose(groups.compose(inv[x], g_a), x)
                acc += (np.conj(cent_a.char_value(ra, gbx))
                        * np.conj(cent_b.char_value(rb, gax)))
            val = acc / (cent_a.subgroup.order * cent_b.subgroup.order)
            s[a_idx, b_idx] = val
            s[b_idx, a_idx] = val

    unit = np.abs(s @ s.conj().T - np.eye(n)).max()
    if unit > tol:
        raise NonUnitaryS(f"double S unitarity residual {unit:g}")
    labels = [f"({ci},{ri})" for ci, ri, _ in sectors]
    qdims = np.array([q for _, _, q in sectors], dtype=float)
    return ModularData(labels=labels, s=s, kappa=kappa, qdims=qdims)
