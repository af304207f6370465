"""Jones indices of inclusions of finite-dimensional semisimple algebras.

Two routes are implemented: the projector route (GNS representation of the
big algebra, e_B = orthogonal projection onto B.Omega, index = 1/tau(e_B))
and the incidence-matrix formula (sum of squared entries).  The projector
route runs in exact rational arithmetic; on unital inclusions into a full
matrix factor the two routes agree exactly.

The trace tau on the relative commutant B' weights each minimal projection
of a commutant block by the block dimension (the trace of the regular
representation of B'); this reproduces tau(e_B) = 1/4 for the baby inclusion
C.1 in Mat_2 and makes the projector route match the incidence formula on
factor targets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import NonProjector, ShapeMismatch, SizeCap


@dataclass(frozen=True)
class MultiMatrixAlgebra:
    """Finite-dimensional semisimple algebra  ⊕_i Mat(n_i) ⊗ 1_{m_i}."""

    blocks: tuple[tuple[int, int], ...]

    def __init__(self, blocks):
        norm = tuple((int(n), int(m)) for n, m in (b if len(b) == 2 else (b, 1) for b in blocks))
        if any(n < 1 or m < 1 for n, m in norm):
            raise ValueError("block sizes and multiplicities must be >= 1")
        object.__setattr__(self, "blocks", norm)

    @property
    def sizes(self) -> list[int]:
        return [n for n, _ in self.blocks]

    @classmethod
    def factor(cls, n: int) -> "MultiMatrixAlgebra":
        return cls(((n, 1),))


@dataclass
class InclusionSpec:
    small: MultiMatrixAlgebra
    big: MultiMatrixAlgebra
    incidence: np.ndarray  # rows = big blocks, cols = small blocks

    def __post_init__(self):
        lam = np.asarray(self.incidence, dtype=np.int64)
        if lam.ndim != 2 or (lam < 0).any():
            raise ShapeMismatch("incidence must be a nonnegative integer matrix")
        if lam.shape != (len(self.big.blocks), len(self.small.blocks)):
            raise ShapeMismatch("incidence shape does not match the block counts")
        small_sizes = np.array(self.small.sizes)
        for a, (n_a, _) in enumerate(self.big.blocks):
            if int(lam[a] @ small_sizes) != n_a:
                raise ShapeMismatch(
                    f"not unital: big block {a} has size {n_a}, embedding fills "
                    f"{int(lam[a] @ small_sizes)}"
                )
        self.incidence = lam


@dataclass
class IncidenceIndex:
    index: int
    opnorm_sq: float


def jones_index_incidence(incidence) -> IncidenceIndex:
    """Sum of squared incidence entries, with ||Lambda||_op^2 reported
    separately (the source conflates the two; they differ already for
    [[1,1],[1,0]])."""
    lam = np.asarray(incidence, dtype=np.int64)
    if lam.ndim != 2 or (lam < 0).any():
        raise ShapeMismatch("incidence must be a nonnegative integer matrix")
    index = int((lam * lam).sum())
    opnorm = float(np.linalg.norm(lam.astype(float), ord=2))
    return IncidenceIndex(index=index, opnorm_sq=opnorm * opnorm)


def bratteli_compose(lam1, lam2) -> np.ndarray:
    """Path counting through the intermediate level of a Bratteli diagram."""
    a = np.asarray(lam1, dtype=np.int64)
    b = np.asarray(lam2, dtype=np.int64)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeMismatch(f"cannot compose {a.shape} with {b.shape}")
    return a @ b


# ---------------------------------------------------------------------------
# GNS realization of Mat_n with the normalized trace


def _vec_index(i: int, j: int, n: int) -> int:
    # column stacking: (xi_11, xi_21, ..., xi_12, ...) as in the C^4 model
    return i + j * n


@dataclass
class GnsRealization:
    n: int
    dimension: int
    conj_matrix: np.ndarray = field(repr=False)  # real; J(v) = conj_matrix @ conj(v)

    def vec(self, a: np.ndarray) -> np.ndarray:
        return np.asarray(a).reshape(self.dimension, order="F")

    def unvec(self, v: np.ndarray) -> np.ndarray:
        return np.asarray(v).reshape((self.n, self.n), order="F")

    def left_action(self, a: np.ndarray) -> np.ndarray:
        return np.kron(np.eye(self.n, dtype=complex), np.asarray(a, dtype=complex))

    def right_action(self, a: np.ndarray) -> np.ndarray:
        return np.kron(np.asarray(a, dtype=complex).T, np.eye(self.n, dtype=complex))

    def j(self, v: np.ndarray) -> np.ndarray:
        return self.conj_matrix @ np.conj(v)

    def inner(self, x: np.ndarray, y: np.ndarray) -> complex:
        """(x, y) = (1/n) Tr x* y on matrices."""
        return complex(np.trace(np.asarray(x).conj().T @ np.asarray(y)) / self.n)


def gns_realize(n: int) -> GnsRealization:
    """Mat_n acting on itself, inner product from the normalized trace.

    The C^{n^2} coordinates stack columns, so at n = 2 the conjugation
    J: xi -> xi* is complex conjugation composed with the permutation that
    has 1-entries at (1,1), (2,3), (3,2), (4,4) in 1-based indexing.
    """
    if not 1 <= n <= 12:
        raise SizeCap(f"gns_realize supports 1 <= n <= 12, got {n}")
    dim = n * n
    r = np.zeros((dim, dim))
    for i in range(n):
        for j in range(n):
            r[_vec_index(j, i, n), _vec_index(i, j, n)] = 1.0
    return GnsRealization(n=n, dimension=dim, conj_matrix=r)


# ---------------------------------------------------------------------------
# exact projector route


def _frac_zeros(rows: int, cols: int):
    return [[Fraction(0)] * cols for _ in range(rows)]


class ConcreteInclusion:
    """B embedded block-diagonally in A = ⊕_a Mat(N_a), realized on the GNS
    space of A (one copy of each Mat(N_a) with the trace inner product).

    Exact integer/rational data throughout: the embedded matrix units have
    0/1 entries and pairwise disjoint supports.
    """

    def __init__(self, spec: InclusionSpec):
        self.spec = spec
        self.big_sizes = spec.big.sizes
        self.small_sizes = spec.small.sizes
        self.lam = spec.incidence
        self.offsets = np.concatenate([[0], np.cumsum([n * n for n in self.big_sizes])])
        self.dimension = int(self.offsets[-1])
        # layout inside big block a: small blocks in order, each repeated
        # Lambda[a, b] times along the diagonal
        self._slots: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for a, n_a in enumerate(self.big_sizes):
            pos = 0
            for b, n_b in enumerate(self.small_sizes):
                for copy in range(int(self.lam[a, b])):
                    self._slots.setdefault((a, b), []).append((a, pos))
                    pos += n_b
            assert pos == n_a

    def unit_positions(self, b: int, i: int, j: int) -> list[int]:
        """Nonzero coordinates of vec(embedded E^{(b)}_{ij}) in the GNS space."""
        out = []
        for (_, _b), slots in self._slots.items():
            if _b != b:
                continue
            for (block, base) in slots:
                n_a = self.big_sizes[block]
                out.append(int(self.offsets[block]) + _vec_index(base + i, base + j, n_a))
        return out

    def copies(self, b: int) -> int:
        return int(self.lam[:, b].sum())

    def multiplicity(self, b: int) -> int:
        """Multiplicity of small block b in the GNS space: sum_a Lambda_ab N_a."""
        return int(sum(self.lam[a, b] * self.big_sizes[a] for a in range(len(self.big_sizes))))

    def e_b_matrix(self) -> list[list[Fraction]]:
        """Orthogonal projection onto B.Omega as an exact rational matrix."""
        dim = self.dimension
        e = _frac_zeros(dim, dim)
        for b, n_b in enumerate(self.small_sizes):
            c = Fraction(1, self.copies(b))
            for i in range(n_b):
                for j in range(n_b):
                    pos = self.unit_positions(b, i, j)
                    for p in pos:
                        for q in pos:
                            e[p][q] += c
        return e

    def embedded_unit_matrix(self, b: int, i: int, j: int) -> list[list[Fraction]]:
        dim = self.dimension
        m = _frac_zeros(dim, dim)
        n_b = self.small_sizes[b]
        # left action of the embedded unit: block-diagonal kron(I, unit)
        for (a, _b), slots in self._slots.items():
            if _b != b:
                continue
            n_a = self.big_sizes[a]
            base_off = int(self.offsets[a])
            for (_, base) in slots:
                for col in range(n_a):
                    r = base_off + _vec_index(base + i, col, n_a)
                    c = base_off + _vec_index(base + j, col, n_a)
                    m[r][c] += 1
        return m


def _frac_matmul(x, y):
    rows, inner, cols = len(x), len(y), len(y[0])
    out = _frac_zeros(rows, cols)
    for r in range(rows):
        xr = x[r]
        outr = out[r]
        for k in range(inner):
            v = xr[k]
            if v:
                yk = y[k]
                for c in range(cols):
                    if yk[c]:
                        outr[c] += v * yk[c]
    return out


def jones_index_projector(spec: InclusionSpec, verify: bool = True) -> Fraction:
    """Index via the Jones projection: build e_B exactly, evaluate the
    block-size-weighted normalized trace on B', return its inverse."""
    inc = ConcreteInclusion(spec)
    e = inc.e_b_matrix()
    if verify:
        e2 = _frac_matmul(e, e)
        if e2 != e:
            raise NonProjector("e_B is not idempotent")
        if any(e[p][q] != e[q][p] for p in range(inc.dimension) for q in range(inc.dimension)):
            raise NonProjector("e_B is not symmetric")  # real rational entries
        for b, n_b in enumerate(inc.small_sizes):
            for (i, j) in [(0, 0), (0, n_b - 1), (n_b - 1, 0)]:
                u = inc.embedded_unit_matrix(b, i, j)
                if _frac_matmul(e, u) != _frac_matmul(u, e):
                    raise NonProjector("e_B does not commute with B")

    mults = [inc.multiplicity(b) for b in range(len(inc.small_sizes))]
    norm = sum(m * m for m in mults)
    tau = Fraction(0)
    for b, n_b in enumerate(inc.small_sizes):
        # Tr_H(z_b e_B) with z_b the embedded central projection of block b
        z = inc.embedded_unit_matrix(b, 0, 0)
        for i in range(1, n_b):
            zi = inc.embedded_unit_matrix(b, i, i)
            for p in range(inc.dimension):
                for q in range(inc.dimension):
                    z[p][q] += zi[p][q]
        tr = sum(
            z[p][q] * e[q][p]
            for p in range(inc.dimension)
            for q in range(inc.dimension)
            if z[p][q]
        )
        tau += Fraction(mults[b], norm) * Fraction(tr) / n_b
    if tau == 0:
        raise NonProjector("vanishing trace of e_B")
    return 1 / tau


def inclusion_report(spec: InclusionSpec) -> dict:
    inc_index = jones_index_incidence(spec.incidence)
    proj = jones_index_projector(spec)
    return {
        "index_incidence": inc_index.index,
        "opnorm_sq": inc_index.opnorm_sq,
        "index_projector": float(proj),
        "index_projector_exact": [proj.numerator, proj.denominator],
    }


def baby_inclusion() -> InclusionSpec:
    """C . 1_2 inside Mat_2 (the four-dimensional GNS model)."""
    return InclusionSpec(
        small=MultiMatrixAlgebra.factor(1),
        big=MultiMatrixAlgebra.factor(2),
        incidence=[[2]],
    )


def mat2_in_mat4() -> InclusionSpec:
    return InclusionSpec(
        small=MultiMatrixAlgebra.factor(2),
        big=MultiMatrixAlgebra.factor(4),
        incidence=[[2]],
    )
