"""Finite permutation groups and the superselection data of their group
algebra: conjugacy classes, central class sums, integer fusion of class sums,
the character table obtained by simultaneously diagonalizing the commuting
fusion matrices, and the unitary character matrix with its diagonalization
relations.

Conventions fixed across the package:

* permutations act on {0, ..., degree-1}; ``compose(p, q)`` applies q first;
* group elements are enumerated breadth-first from the generators, identity
  at index 0;
* conjugacy classes are ordered by their minimal element index (class 0 is
  always {e});
* character rows are ordered trivial first, then by dimension, then
  lexicographically on the rounded character values keyed by phase.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateSpectrum,
    DimensionSumMismatch,
    InvalidPermutation,
    NonIntegralFusion,
    NonUnitaryS,
    OrderCapExceeded,
    RepresentativeInconsistency,
)

DEFAULT_ORDER_CAP = 100_000


# ---------------------------------------------------------------------------
# permutations and group enumeration


def check_permutation(images, degree: int) -> tuple[int, ...]:
    imgs = tuple(int(i) for i in images)
    if len(imgs) != degree or sorted(imgs) != list(range(degree)):
        raise InvalidPermutation(f"not a bijection on 0..{degree - 1}: {images}")
    return imgs


def compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    """(p∘q)(x) = p(q(x)); q acts first."""
    return tuple(p[i] for i in q)


def invert(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, pi in enumerate(p):
        out[pi] = i
    return tuple(out)


@dataclass
class FiniteGroupData:
    """An enumerated finite permutation group.

    ``elements[0]`` is the identity; ``index_of`` maps an image tuple back to
    its element index.  The multiplication table is built lazily since it is
    quadratic in the order.
    """

    degree: int
    generators: list[tuple[int, ...]]
    elements: list[tuple[int, ...]]
    index_of: dict[tuple[int, ...], int] = field(repr=False)

    def __post_init__(self):
        self._mult = None
        self._inv = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def mult(self, i: int, j: int) -> int:
        return self.index_of[compose(self.elements[i], self.elements[j])]

    def inv(self, i: int) -> int:
        return self.index_of[invert(self.elements[i])]

    @property
    def mult_table(self) -> np.ndarray:
        if self._mult is None:
            n = self.order
            table = np.empty((n, n), dtype=np.int32)
            for i in range(n):
                for j in range(n):
                    table[i, j] = self.mult(i, j)
            self._mult = table
        return self._mult

    @property
    def inverse_table(self) -> np.ndarray:
        if self._inv is None:
            self._inv = np.array([self.inv(i) for i in range(self.order)], dtype=np.int32)
        return self._inv

    def is_abelian(self) -> bool:
        gens = [self.index_of[g] for g in self.generators]
        return all(self.mult(a, b) == self.mult(b, a) for a in gens for b in gens)


def enumerate_group(degree: int, generators, order_cap: int = DEFAULT_ORDER_CAP) -> FiniteGroupData:
    """Breadth-first closure of the generators, identity at index 0.

    The element ordering is deterministic: the queue is processed in
    discovery order and generators are applied in their given order (right
    multiplication).
    """
    gens = [check_permutation(g, degree) for g in generators]
    identity = tuple(range(degree))
    elements = [identity]
    index_of = {identity: 0}
    frontier = [identity]
    while frontier:
        new_frontier = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in index_of:
                    index_of[y] = len(elements)
                    elements.append(y)
                    new_frontier.append(y)
                    if len(elements) > order_cap:
                        raise OrderCapExceeded(f"closure exceeded cap {order_cap}")
        frontier = new_frontier
    return FiniteGroupData(degree=degree, generators=gens, elements=elements, index_of=index_of)


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass
class ConjugacyData:
    class_of: np.ndarray  # element index -> class index
    reps: list[int]       # one representative element index per class
    sizes: list[int]
    class_count: int

    def members(self, c: int) -> np.ndarray:
        return np.nonzero(self.class_of == c)[0]


def conjugacy_classes(group: FiniteGroupData) -> ConjugacyData:
    """Orbits of the conjugation action, ordered by minimal element index.

    The identity sits at element index 0, so class 0 is always {e}.
    """
    n = group.order
    class_of = np.full(n, -1, dtype=np.int32)
    reps: list[int] = []
    sizes: list[int] = []
    inv = group.inverse_table
    for x in range(n):
        if class_of[x] >= 0:
            continue
        c = len(reps)
        orbit = {x}
        for h in range(n):
            orbit.add(group.mult(group.mult(h, x), int(inv[h])))
        for y in orbit:
            class_of[y] = c
        reps.append(x)
        sizes.append(len(orbit))
    assert sum(sizes) == n
    return ConjugacyData(class_of=class_of, reps=reps, sizes=sizes, class_count=len(reps))


# ---------------------------------------------------------------------------
# class-sum fusion


@dataclass
class ClassFusionTensor:
    n: np.ndarray  # N[i, j, l], nonnegative integers

    def matrix(self, j: int) -> np.ndarray:
        """(N_j)_i^l = N[i, j, l] as an integer matrix."""
        return self.n[:, j, :]


def class_fusion(group: FiniteGroupData, conj: ConjugacyData) -> ClassFusionTensor:
    """N_ij^l = #{(a,b) in K_i x K_j : ab = g_l} for a fixed g_l in K_l.

    Computed from one representative per class and cross-checked against a
    second representative; the count is representative-independent because
    class sums are central.
    """
    r = conj.class_count
    n = np.zeros((r, r, r), dtype=np.int64)
    inv = group.inverse_table
    class_of = conj.class_of
    for l, g_l in enumerate(conj.reps):
        for a in range(group.order):
            b = group.mult(int(inv[a]), g_l)
            n[class_of[a], class_of[b], l] += 1
    # second-representative consistency check
    for l in range(r):
        members = conj.members(l)
        if len(members) < 2:
            continue
        alt = int(members[-1])
        check = np.zeros((r, r), dtype=np.int64)
        for a in range(group.order):
            b = group.mult(int(inv[a]), alt)
            check[class_of[a], class_of[b]] += 1
        if not np.array_equal(check, n[:, :, l]):
            raise RepresentativeInconsistency(f"class {l}: counts differ between representatives")
    return ClassFusionTensor(n=n)


# ---------------------------------------------------------------------------
# character table via simultaneous diagonalization of the N_j


@dataclass
class CharacterTable:
    chi: np.ndarray             # chi[l, j] = character of irrep l on class j
    dims: list[int]
    central_values: np.ndarray  # Q[l, i] = |K_i| chi[l, i] / d_l
    s_matrix: np.ndarray        # S[l, j] = sqrt(|K_j|/|G|) chi[l, j]
    class_sizes: list[int]
    order: int


def _phase_key(z: complex, ndigits: int = 7):
    if abs(z) < 1e-8:
        return (-1.0, 0.0)
    arg = float(np.angle(z)) % (2.0 * np.pi)
    arg = round(arg, ndigits) % round(2.0 * np.pi, ndigits)
    return (arg, round(abs(z), ndigits))


def character_table(
    group: FiniteGroupData,
    conj: ConjugacyData,
    fusion: ClassFusionTensor,
    tol: float = 1e-9,
    max_retries: int = 8,
) -> CharacterTable:
    """Burnside-style extraction of the characters.

    The commuting integer matrices (N_j)_i^l share the eigenvector family
    q^k with entries Q_i^k = |K_i| chi_k(g_i)/d_k; a random real combination
    splits the joint spectrum with probability one.  Dimensions follow from
    sum_i |K_i| |chi_k(g_i)|^2 = |G|.
    """
    r = conj.class_count
    sizes = np.array(conj.sizes, dtype=float)
    order = group.order
    mats = [fusion.matrix(j).astype(float) for j in range(r)]

    vecs = None
    for attempt in range(max_retries):
        rng = np.random.default_rng(20240 + attempt)
        coeffs = rng.standard_normal(r)
        m = sum(c * mat for c, mat in zip(coeffs, mats))
        eigvals, eigvecs = np.linalg.eig(m)
        gaps = np.abs(eigvals[:, None] - eigvals[None, :])
        np.fill_diagonal(gaps, np.inf)
        if gaps.min() > 1e-7:
            vecs = eigvecs
            break
    if vecs is None:
        raise DegenerateSpectrum(f"no splitting combination found in {max_retries} tries")

    # each eigenvector is proportional to q^k; Q_0^k = 1 fixes the scale
    rows = []
    for k in range(r):
        v = vecs[:, k]
        if abs(v[0]) < 1e-12:
            raise DegenerateSpectrum("eigenvector with vanishing identity-class component")
        q = v / v[0]
        d_sq = order / np.sum(np.abs(q) ** 2 / sizes)
        d = float(np.sqrt(d_sq))
        d_int = int(round(d))
        if d_int < 1 or abs(d - d_int) > 1e-6:
            raise NonIntegralFusion(f"non-integral irrep dimension {d}")
        chi_row = d_int * q / sizes
        rows.append((d_int, chi_row, q))

    # canonical row order: trivial first, then dimension, then phase-lex
    def row_key(row):
        d, chi_row, _ = row
        trivial = bool(np.allclose(chi_row, 1.0, atol=1e-8))
        return (not trivial, d, tuple(_phase_key(z) for z in chi_row))

    rows.sort(key=row_key)

    dims = [d for d, _, _ in rows]
    chi = np.array([chi_row for _, chi_row, _ in rows])
    central = np.array([q for _, _, q in rows])
    if sum(d * d for d in dims) != order:
        raise DimensionSumMismatch(f"sum d^2 = {sum(d * d for d in dims)} != |G| = {order}")

    s = np.sqrt(sizes / order)[None, :] * chi
    unitarity = np.linalg.norm(s @ s.conj().T - np.eye(r), ord=np.inf)
    if unitarity > tol:
        raise NonUnitaryS(f"character matrix unitarity residual {unitarity:g}")
    return CharacterTable(
        chi=chi,
        dims=dims,
        central_values=central,
        s_matrix=s,
        class_sizes=list(conj.sizes),
        order=order,
    )


# ---------------------------------------------------------------------------
# representation fusion and the S relations


@dataclass
class RepFusionTensor:
    ntilde: np.ndarray  # Ntilde[k, l, m]


def rep_fusion(table: CharacterTable, tol: float = 1e-8) -> RepFusionTensor:
    """Decompose pointwise character products in the character basis.

    Ntilde_kl^m = (1/|G|) sum_j |K_j| chi_k(g_j) chi_l(g_j) conj(chi_m(g_j)).
    """
    sizes = np.array(table.class_sizes, dtype=float)
    chi = table.chi
    weighted = chi * sizes[None, :] / table.order
    raw = np.einsum("kj,lj,mj->klm", chi, weighted, chi.conj())
    rounded = np.round(raw.real)
    if np.abs(raw - rounded).max() > tol or rounded.min() < -0.5:
        raise NonIntegralFusion(f"representation fusion residual {np.abs(raw - rounded).max():g}")
    return RepFusionTensor(ntilde=rounded.astype(np.int64))


def regular_rep_multiplicities(table: CharacterTable) -> list[int]:
    """Multiplicity of each irrep in the regular representation (= its dimension)."""
    if sum(d * d for d in table.dims) != table.order:
        raise DimensionSumMismatch("sum of squared dimensions differs from |G|")
    return list(table.dims)


def verify_s_relations(
    table: CharacterTable,
    fusion: ClassFusionTensor,
    repf: RepFusionTensor,
) -> dict:
    """Residuals of the two diagonalization relations satisfied by S.

    Charge side:      Q_i^k Q_j^k = sum_c N_ij^c Q_c^k.
    Representation side:  (S_kj/S_0j)(S_lj/S_0j) = sum_m Ntilde_kl^m S_mj/S_0j.
    """
    q = table.central_values  # Q[k, i]
    n = fusion.n.astype(complex)
    lhs = np.einsum("ki,kj->kij", q, q)
    rhs = np.einsum("ijc,kc->kij", n, q)
    charge_residual = float(np.abs(lhs - rhs).max())

    s = table.s_matrix
    ratios = s / s[0][None, :]
    lhs2 = np.einsum("kj,lj->klj", ratios, ratios)
    rhs2 = np.einsum("klm,mj->klj", repf.ntilde.astype(complex), ratios)
    rep_residual = float(np.abs(lhs2 - rhs2).max())
    return {
        "charge_relation_residual": charge_residual,
        "rep_relation_residual": rep_residual,
        "max_residual": max(charge_residual, rep_residual),
    }


def character_orthogonality_residual(table: CharacterTable) -> float:
    sizes = np.array(table.class_sizes, dtype=float)
    gram = (table.chi * sizes[None, :]) @ table.chi.conj().T / table.order
    return float(np.abs(gram - np.eye(len(table.dims))).max())


def group_report(degree: int, generators, order_cap: int = DEFAULT_ORDER_CAP) -> dict:
    """Full pipeline used by the CLI: enumerate, fuse, diagonalize, verify."""
    g = enumerate_group(degree, generators, order_cap=order_cap)
    conj = conjugacy_classes(g)
    fusion = class_fusion(g, conj)
    table = character_table(g, conj, fusion)
    repf = rep_fusion(table)
    relations = verify_s_relations(table, fusion, repf)
    commute = float(
        max(
            (np.abs(fusion.matrix(a) @ fusion.matrix(b) - fusion.matrix(b) @ fusion.matrix(a)).max()
             for a in range(conj.class_count) for b in range(conj.class_count)),
            default=0,
        )
    )
    return {
        "order": g.order,
        "class_sizes": conj.sizes,
        "class_representatives": [list(g.elements[r]) for r in conj.reps],
        "dims": table.dims,
        "chi": table.chi,
        "s_matrix": table.s_matrix,
        "central_values": table.central_values,
        "fusion_commutator_max": commute,
        "orthogonality_residual": character_orthogonality_residual(table),
        "s_unitarity_residual": float(
            np.abs(table.s_matrix @ table.s_matrix.conj().T - np.eye(conj.class_count)).max()
        ),
        "relation_residuals": relations,
    }
