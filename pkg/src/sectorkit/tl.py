"""Temperley-Lieb diagram algebra with its Markov trace, the Wenzl
recursion, the positivity scan that quantizes two-channel statistics
parameters, Markov traces of braid words, and a generic matrix relation
verifier (Artin, Hecke, mixed braid/permutation, Birman-Wenzl).

Diagrams on n strands are perfect noncrossing matchings of 2n boundary
points: bottom positions are points 0..n-1, top positions are points
n..2n-1 (top position i is point n+i).  Multiplication stacks a on top of b
and counts the closed loops formed at the interface; each loop contributes
one factor of the loop parameter delta.  The normalized projectors are
E_i = U_i / delta, so E_i E_{i+-1} E_i = E_i / delta^2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CutoffReached, IndexOutOfRange, ShapeMismatch, StrandMismatch

# ---------------------------------------------------------------------------
# diagrams


def _canonical(pairs) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(tuple(sorted(p)) for p in pairs))


def is_noncrossing(pairs, n: int) -> bool:
    """Planarity in the disk order: bottom 0..n-1 left to right, then top
    right to left (top position i sits at circular slot 2n-1-i)."""
    def slot(p):
        return p if p < n else 2 * n - 1 - (p - n)

    spans = [tuple(sorted((slot(a), slot(b)))) for a, b in pairs]
    for i, (a1, b1) in enumerate(spans):
        for (a2, b2) in spans[i + 1:]:
            if a1 < a2 < b1 < b2 or a2 < a1 < b2 < b1:
                return False
    return True


class TLDiagram:
    """Immutable planar pairing; hashable so TLElement can dict on it."""

    __slots__ = ("pairs", "n", "_partner", "_hash")

    def __init__(self, pairs, n: int, check: bool = True):
        self.pairs = _canonical(pairs)
        self.n = n
        if check:
            points = sorted(p for pair in self.pairs for p in pair)
            if points != list(range(2 * n)):
                raise ValueError("pairs must form a perfect matching on 2n points")
            if not is_noncrossing(self.pairs, n):
                raise ValueError(f"crossing pairing {self.pairs}")
        partner = [0] * (2 * n)
        for a, b in self.pairs:
            partner[a] = b
            partner[b] = a
        self._partner = tuple(partner)
        self._hash = hash((n, self.pairs))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return isinstance(other, TLDiagram) and self.n == other.n and self.pairs == other.pairs

    def __repr__(self):
        return f"TLDiagram({self.pairs})"

    @property
    def partner(self):
        return self._partner

    def dagger(self) -> "TLDiagram":
        n = self.n
        flip = lambda p: p + n if p < n else p - n
        return TLDiagram([(flip(a), flip(b)) for a, b in self.pairs], n, check=False)

    def shifted(self, offset: int = 1) -> "TLDiagram":
        """Embed into n+offset strands with `offset` new identity strands on
        the left (the endomorphism shift)."""
        n, m = self.n, self.n + offset
        remap = lambda p: p + offset if p < n else p + 2 * offset
        pairs = [(remap(a), remap(b)) for a, b in self.pairs]
        pairs += [(k, m + k) for k in range(offset)]
        return TLDiagram(pairs, m, check=False)


def identity_diagram(n: int) -> TLDiagram:
    return TLDiagram([(i, n + i) for i in range(n)], n, check=False)


def cupcap_diagram(i: int, n: int) -> TLDiagram:
    """U_i: cup joining bottom i-1, i and cap joining top i-1, i (1-based i)."""
    if not 1 <= i <= n - 1:
        raise IndexOutOfRange(f"generator index {i} needs 1 <= i <= {n - 1}")
    pairs = [(i - 1, i), (n + i - 1, n + i)]
    pairs += [(k, n + k) for k in range(n) if k not in (i - 1, i)]
    return TLDiagram(pairs, n, check=False)


_compose_cache: dict[tuple[TLDiagram, TLDiagram], tuple[TLDiagram, int]] = {}


def compose_diagrams(a: TLDiagram, b: TLDiagram) -> tuple[TLDiagram, int]:
    """Stack a on top of b (b acts first); returns (result, closed loops).

    Composite-graph nodes: 0..n-1 result bottom (b's bottom), n..2n-1 result
    top (a's top), 2n..3n-1 interface slots (b's top glued to a's bottom).
    Boundary nodes have degree 1, interface nodes degree 2; components are
    boundary-to-boundary paths plus interface-only cycles (the loops).
    """
    if a.n != b.n:
        raise StrandMismatch("strand counts differ")
    key = (a, b)
    hit = _compose_cache.get(key)
    if hit is not None:
        return hit
    n = a.n
    to_node_b = lambda p: p if p < n else 2 * n + (p - n)
    to_node_a = lambda p: 2 * n + p if p < n else n + (p - n)
    adj: list[list[int]] = [[] for _ in range(3 * n)]
    for s, t in b.pairs:
        u, v = to_node_b(s), to_node_b(t)
        adj[u].append(v)
        adj[v].append(u)
    for s, t in a.pairs:
        u, v = to_node_a(s), to_node_a(t)
        adj[u].append(v)
        adj[v].append(u)

    result_pairs = []
    visited = [False] * (3 * n)
    for start in range(2 * n):  # boundary-to-boundary paths
        if visited[start]:
            continue
        visited[start] = True
        prev, cur = start, adj[start][0]
        while cur >= 2 * n:
            visited[cur] = True
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
        visited[cur] = True
        result_pairs.append((min(start, cur), max(start, cur)))

    loops = 0
    for start in range(2 * n, 3 * n):  # interface-only cycles
        if visited[start]:
            continue
        loops += 1
        visited[start] = True
        prev, cur = start, adj[start][0]
        while cur != start:
            visited[cur] = True
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt

    result = TLDiagram(sorted(set(result_pairs)), n, check=False)
    out = (result, loops)
    _compose_cache[key] = out
    return out


def _closure_loops(d: TLDiagram) -> int:
    """Number of loops after joining top i to bottom i."""
    n = d.n
    partner = d.partner
    seen = [False] * (2 * n)
    loops = 0
    for start in range(2 * n):
        if seen[start]:
            continue
        loops += 1
        p = start
        while not seen[p]:
            seen[p] = True
            q = partner[p]
            seen[q] = True
            p = q + n if q < n else q - n  # closure edge
    return loops


# ---------------------------------------------------------------------------
# elements of the diagram algebra


@dataclass
class TLElement:
    n: int
    delta: float
    terms: dict[TLDiagram, complex] = field(default_factory=dict)

    @classmethod
    def from_diagram(cls, d: TLDiagram, delta: float, coeff: complex = 1.0) -> "TLElement":
        return cls(n=d.n, delta=delta, terms={d: complex(coeff)})

    def copy(self) -> "TLElement":
        return TLElement(self.n, self.delta, dict(self.terms))

    def __add__(self, other: "TLElement") -> "TLElement":
        self._check(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms.get(d, 0.0) + c
        return TLElement(self.n, self.delta, terms)

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + other.scaled(-1.0)

    def scaled(self, c: complex) -> "TLElement":
        return TLElement(self.n, self.delta, {d: v * c for d, v in self.terms.items()})

    def __mul__(self, other: "TLElement") -> "TLElement":
        self._check(other)
        terms: dict[TLDiagram, complex] = {}
        for da, ca in self.terms.items():
            for db, cb in other.terms.items():
                d, loops = compose_diagrams(da, db)
                coeff = ca * cb * self.delta**loops
                terms[d] = terms.get(d, 0.0) + coeff
        return TLElement(self.n, self.delta, terms)

    def dagger(self) -> "TLElement":
        return TLElement(
            self.n, self.delta, {d.dagger(): c.conjugate() for d, c in self.terms.items()}
        )

    def shifted(self, offset: int = 1) -> "TLElement":
        return TLElement(
            self.n + offset, self.delta,
            {d.shifted(offset): c for d, c in self.terms.items()},
        )

    def chop(self, tol: float = 1e-13) -> "TLElement":
        return TLElement(self.n, self.delta, {d: c for d, c in self.terms.items() if abs(c) > tol})

    def norm_inf(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def _check(self, other: "TLElement"):
        if self.n != other.n or self.delta != other.delta:
            raise StrandMismatch("elements live on different strand counts or deltas")


def tl_identity(n: int, delta: float) -> TLElement:
    return TLElement.from_diagram(identity_diagram(n), delta)


def tl_projector(i: int, n: int, delta: float) -> TLElement:
    """E_i = U_i / delta, an idempotent."""
    return TLElement.from_diagram(cupcap_diagram(i, n), delta, 1.0 / delta)


def tl_multiply(a: TLElement, b: TLElement) -> TLElement:
    return a * b


def markov_trace(x: TLElement) -> complex:
    """tr(D) = delta^(#loops of the closure - n); tr(1) = 1 and tr is tracial."""
    total = 0.0 + 0.0j
    for d, c in x.terms.items():
        total += c * x.delta ** (_closure_loops(d) - x.n)
    return complex(total)


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def all_diagrams(n: int, _cache={}) -> list[TLDiagram]:
    """All planar pairings on 2n points in the disk order (Catalan many)."""
    if n in _cache:
        return _cache[n]
    slots = 2 * n

    def rec(points):
        if not points:
            yield []
            return
        first = points[0]
        for k in range(1, len(points), 2):
            inside = points[1:k]
            outside = points[k + 1:]
            for left in rec(inside):
                for right in rec(outside):
                    yield [(first, points[k])] + left + right

    def slot_to_point(s):
        return s if s < n else n + (2 * n - 1 - s)

    out = []
    for pairing in rec(list(range(slots))):
        pairs = [(slot_to_point(a), slot_to_point(b)) for a, b in pairing]
        out.append(TLDiagram(pairs, n, check=False))
    assert len(out) == catalan(n)
    _cache[n] = out
    return out


# ---------------------------------------------------------------------------
# Hecke parameters and the statistics quantization


@dataclass
class HeckeParams:
    """Two-channel data at deformation angle alpha.

    q >= 4 integer or math.inf; alpha = +-pi/q; t = exp(2 i alpha); the
    eigenvalue ratio is lambda_1/lambda_2 = -t; tau = t/(1+t)^2 = 1/delta^2
    with delta = 2 cos(alpha).
    """

    q: float
    sign: int = +1

    def __post_init__(self):
        if self.q != math.inf:
            if int(self.q) != self.q or self.q < 4:
                raise ValueError("q must be an integer >= 4 or math.inf")
            self.q = int(self.q)
        if self.sign not in (+1, -1):
            raise ValueError("sign must be +-1")

    @property
    def alpha(self) -> float:
        return 0.0 if self.q == math.inf else self.sign * math.pi / self.q

    @property
    def t(self) -> complex:
        return cmath.exp(2j * self.alpha)

    @property
    def eigenvalue_ratio(self) -> complex:
        return -self.t

    @property
    def delta(self) -> float:
        return 2.0 * math.cos(self.alpha)

    @property
    def tau(self) -> float:
        return 1.0 / self.delta**2


def wenzl_coefficient(n: int, alpha: float) -> float:
    """2 cos(alpha) sin(n alpha) / sin((n+1) alpha); its alpha -> 0 limit is
    2n/(n+1)."""
    if alpha == 0.0:
        return 2.0 * n / (n + 1.0)
    den = math.sin((n + 1) * alpha)
    if abs(den) < 1e-12:
        raise ZeroDivisionError(f"degenerate Wenzl step at n = {n}")
    return 2.0 * math.cos(alpha) * math.sin(n * alpha) / den


def jones_wenzl(n: int, params: HeckeParams) -> TLElement:
    """The n-strand projector from the recursion

        E^(m+1) = shift(E^(m)) - c_m shift(E^(m)) E_1 shift(E^(m)),
        c_m = 2 cos(alpha) sin(m alpha)/sin((m+1) alpha).

    Raises CutoffReached at the degenerate level (sin(m alpha) -> 0 in the
    denominator, i.e. m = q), carrying the plain shift of the last good
    projector as the degenerate value.
    """
    if n < 1:
        raise IndexOutOfRange("need at least one strand")
    delta = params.delta
    alpha = params.alpha
    p = tl_identity(1, delta)
    for m in range(1, n):
        shifted = p.shifted(1)
        try:
            c = wenzl_coefficient(m, alpha)
        except ZeroDivisionError:
            raise CutoffReached(
                f"Wenzl recursion degenerate at level {m + 1} (q = {params.q})",
                element=shifted,
            ) from None
        e1 = tl_projector(1, m + 1, delta)
        p = (shifted - (shifted * e1 * shifted).scaled(c)).chop()
    return p


def jones_wenzl_trace_oracle(n: int, delta: float) -> float:
    """Markov trace of the n-strand projector via the Chebyshev recursion
    on unnormalized closures: T_1 = delta, T_2 = delta^2 - 1,
    T_{m+1} = delta T_m - T_{m-1}; tr = T_n / delta^n."""
    t_prev, t_cur = 1.0, delta  # T_0 = 1, T_1 = delta
    for _ in range(n - 1):
        t_prev, t_cur = t_cur, delta * t_cur - t_prev
    return t_cur / delta**n


def gram_matrix(n: int, delta: float) -> np.ndarray:
    """G_{D D'} = markov_trace(D† D') over the diagram basis."""
    diagrams = all_diagrams(n)
    size = len(diagrams)
    g = np.empty((size, size), dtype=complex)
    for i, di in enumerate(diagrams):
        di_dag = TLElement.from_diagram(di.dagger(), delta)
        for j, dj in enumerate(diagrams):
            g[i, j] = markov_trace(di_dag * TLElement.from_diagram(dj, delta))
    return g


# ---------------------------------------------------------------------------
# positivity scan


def _family_survives(factors: np.ndarray, eta: float, zero_tol: float = 1e-9) -> bool:
    """Iterate c_m = 1 - f_m eta; the partial products phi(E^(m)) must stay
    nonnegative.  A factor inside [-zero_tol, zero_tol] is a zero hit: the
    projector tower truncates and everything after is exactly zero.  A
    factor below -zero_tol flips the sign of a nonvanishing product, which
    is the positivity violation."""
    c = 1.0 - factors * eta
    for value in c:
        if abs(value) <= zero_tol:
            return True
        if value < 0.0:
            return False
    return True


def _scan_factors(alpha: float, n_max: int) -> np.ndarray:
    ms = np.arange(1, n_max)
    if alpha == 0.0:
        return 2.0 * ms / (ms + 1.0)
    den = np.sin((ms + 1) * alpha)
    num = 2.0 * np.cos(alpha) * np.sin(ms * alpha)
    big = np.abs(den) < 1e-12
    factors = num / np.where(big, 1.0, den)
    factors[big] = np.where(num[big] >= 0, 1e30, -1e30)
    return factors


def _first_index(mask: np.ndarray) -> np.ndarray:
    """Row index of the first True per column, len(mask) where none."""
    hit = mask.any(axis=0)
    return np.where(hit, mask.argmax(axis=0), mask.shape[0])


def positivity_scan(alpha_grid, eta_grid, n_max: int = 100, zero_tol: float = 1e-9) -> list[dict]:
    """Admissible (alpha, eta_1) pairs for the two-channel positivity
    iteration, both channels checked (eta_2 = 1 - eta_1).

    A channel survives when its factor sequence 1 - f_m eta hits an exact
    zero (the projector tower truncates) before any sign-definite negative
    factor, or stays positive through the horizon.  eta in {0, 1} is
    excluded: a vanishing channel weight forces one spectral projector to
    vanish, contradicting the two-eigenvalue assumption.
    """
    if n_max > 200:
        raise ValueError("n_max capped at 200")
    alphas = np.asarray(alpha_grid, dtype=float)
    etas = np.asarray(eta_grid, dtype=float)
    keep = (etas > 1e-15) & (etas < 1.0 - 1e-15)
    etas = etas[keep]
    survivors = []
    for alpha in alphas:
        factors = _scan_factors(float(alpha), n_max)
        ok = None
        for channel in (etas, 1.0 - etas):
            c = 1.0 - factors[:, None] * channel[None, :]
            first_zero = _first_index(np.abs(c) <= zero_tol)
            first_neg = _first_index(c < -zero_tol)
            good = first_zero <= first_neg
            ok = good if ok is None else (ok & good)
        for eta in etas[ok]:
            survivors.append({"alpha": float(alpha), "eta1": float(eta),
                              "survived_n": int(n_max)})
    return survivors


def closed_form_eta(k: int, alpha: float) -> float:
    """sin((k+1) alpha) / (2 cos(alpha) sin(k alpha)); alpha -> 0 limit is
    (k+1)/(2k)."""
    if alpha == 0.0:
        return (k + 1.0) / (2.0 * k)
    return math.sin((k + 1) * alpha) / (2.0 * math.cos(alpha) * math.sin(k * alpha))


# ---------------------------------------------------------------------------
# statistics parameters


@dataclass
class StatisticsSolution:
    q: float
    d: int
    eta1: float
    eta2: float
    lambda_modulus: float
    lambda_phase_rel: complex
    statistical_dimension: float
    lambda_rho: complex

    def __post_init__(self):
        assert abs(self.eta1 + self.eta2 - 1.0) < 1e-12
        assert -1e-12 <= self.eta1 <= 1 + 1e-12 and -1e-12 <= self.eta2 <= 1 + 1e-12


def statistics_solution(q, d: int, sign: int = +1) -> StatisticsSolution:
    if q == math.inf:
        eta1 = (d + 1.0) / (2.0 * d)
        modulus = 1.0 / d
        phase = 1.0 + 0.0j
        lam = -(2.0 * eta1 - 1.0)  # alpha = 0: lambda = -(t+1)eta1 + 1 with t = 1
        return StatisticsSolution(
            q=q, d=d, eta1=eta1, eta2=1.0 - eta1, lambda_modulus=modulus,
            lambda_phase_rel=phase, statistical_dimension=float(d), lambda_rho=complex(lam),
        )
    if not (2 <= d <= q - 2):
        raise ValueError(f"need 2 <= d <= q - 2, got d = {d}, q = {q}")
    alpha = sign * math.pi / q
    eta1 = closed_form_eta(d, alpha)
    eta2 = closed_form_eta(q - d, alpha)
    modulus = math.sin(math.pi / q) / math.sin(d * math.pi / q)
    phase = cmath.exp(sign * 1j * math.pi * (d + 1) / q)
    t = cmath.exp(2j * alpha)
    lam = -((t + 1.0) * eta1 - 1.0)  # gauge lambda_2 = 1
    return StatisticsSolution(
        q=q, d=d, eta1=eta1, eta2=eta2, lambda_modulus=modulus,
        lambda_phase_rel=phase, statistical_dimension=1.0 / modulus, lambda_rho=lam,
    )


def enumerate_statistics(q_max: int, include_infinite: bool = True) -> list[StatisticsSolution]:
    if q_max < 4:
        raise ValueError("q_max must be >= 4")
    out = []
    for q in range(4, q_max + 1):
        for d in range(2, q - 1):
            out.append(statistics_solution(q, d))
    if include_infinite:
        for d in range(2, q_max - 1):
            out.append(statistics_solution(math.inf, d))
    return out


# ---------------------------------------------------------------------------
# braid words and Markov traces


def braid_generator(i: int, n: int, params: HeckeParams, inverse: bool = False) -> TLElement:
    """g_i = lambda_1 (1 - E_i) + lambda_2 E_i in the gauge lambda_2 = 1,
    lambda_1 = -t."""
    lam1 = -params.t
    lam2 = 1.0 + 0.0j
    if inverse:
        lam1, lam2 = 1.0 / lam1, 1.0 / lam2
    e = tl_projector(i, n, params.delta)
    one = tl_identity(n, params.delta)
    return one.scaled(lam1) + e.scaled(lam2 - lam1)


def hecke_generator(i: int, n: int, params: HeckeParams) -> TLElement:
    """The renormalized unitary -lambda_2^{-1} g_i with eigenvalues {t, -1};
    satisfies g^2 = (t-1) g + t."""
    return braid_generator(i, n, params).scaled(-1.0)


def braid_word_element(word, params: HeckeParams, n_strands: int | None = None) -> TLElement:
    if n_strands is None:
        n_strands = max((abs(int(w)) for w in word), default=1) + 1
    x = tl_identity(n_strands, params.delta)
    for w in word:
        w = int(w)
        if w == 0 or abs(w) > n_strands - 1:
            raise IndexOutOfRange(f"generator {w} out of range for {n_strands} strands")
        x = x * braid_generator(abs(w), n_strands, params, inverse=w < 0)
    return x


def braid_markov_trace(word, params: HeckeParams, n_strands: int | None = None) -> complex:
    return markov_trace(braid_word_element(word, params, n_strands))


def markov_parameter(params: HeckeParams) -> complex:
    """lambda_rho = tr(g_i) = -t^2/(1+t) in the gauge lambda_2 = 1."""
    t = params.t
    return -t * t / (1.0 + t)


# ---------------------------------------------------------------------------
# generic relation verifier


def _opnorm(m: np.ndarray) -> float:
    return float(np.linalg.norm(m, ord=2))


def _artin_residuals(gens: list[np.ndarray]) -> list[float]:
    res = []
    for i in range(len(gens) - 1):
        a, b = gens[i], gens[i + 1]
        res.append(_opnorm(a @ b @ a - b @ a @ b))
    for i in range(len(gens)):
        for j in range(i + 2, len(gens)):
            res.append(_opnorm(gens[i] @ gens[j] - gens[j] @ gens[i]))
    return res


def relation_check(
    generators,
    relation_set: str,
    t: complex | None = None,
    t_generators=None,
    mus: tuple[complex, complex, complex] | None = None,
) -> dict:
    """Max residual ||LHS - RHS|| over all instances of the requested
    relation family.

    relation_set: 'artin' | 'hecke' (needs t) | 'mixed_Ginf' (needs
    t_generators, the permutation-type generators) | 'birman_wenzl'
    (needs mus = three eigenvalues).
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    dim = gens[0].shape[0]
    for g in gens:
        if g.shape != (dim, dim):
            raise ShapeMismatch("generators must be square matrices of equal size")
    eye = np.eye(dim)
    residuals = _artin_residuals(gens)

    if relation_set == "artin":
        pass
    elif relation_set == "hecke":
        if t is None:
            raise ValueError("hecke check needs the parameter t")
        for g in gens:
            residuals.append(_opnorm(g @ g - (t - 1.0) * g - t * eye))
    elif relation_set == "mixed_Ginf":
        if t_generators is None:
            raise ValueError("mixed_Ginf check needs the permutation generators")
        ts = [np.asarray(x, dtype=complex) for x in t_generators]
        if len(ts) != len(gens):
            raise ShapeMismatch("need as many t generators as braid generators")
        for x in ts:
            if x.shape != (dim, dim):
                raise ShapeMismatch("t generators must match the braid generator size")
        residuals += _artin_residuals(ts)
        for x in ts:
            residuals.append(_opnorm(x @ x - eye))  # transpositions square to 1
        for i, b in enumerate(gens):
            for j, x in enumerate(ts):
                if abs(i - j) >= 2:
                    residuals.append(_opnorm(b @ x - x @ b))
        for i in range(len(gens)):
            for j in (i - 1, i + 1):
                if not 0 <= j < len(gens):
                    continue
                bi, bj = gens[i], gens[j]
                ti, tj = ts[i], ts[j]
                residuals.append(_opnorm(bi @ tj @ ti - tj @ ti @ bj))
                residuals.append(_opnorm(bi @ bj @ ti - tj @ bi @ bj))
    elif relation_set == "birman_wenzl":
        if mus is None or len(mus) != 3:
            raise ValueError("birman_wenzl check needs the three eigenvalues")
        m1, m2, m3 = (complex(m) for m in mus)
        es = []
        for g in gens:
            g_inv = np.linalg.inv(g)
            residuals.append(
                _opnorm((g - m1 * eye) @ (g - m2 * eye) @ (g - m3 * eye))
            )
            e = (m3 / ((m3 - m1) * (m3 - m2))) * (g - (m1 + m2) * eye + m1 * m2 * g_inv)
            es.append(e)
            residuals.append(_opnorm(e @ g - m3 * e))
            residuals.append(_opnorm(g @ e - m3 * e))
        for i in range(len(gens)):
            for j in range(i + 2, len(gens)):
                residuals.append(_opnorm(es[i] @ es[j] - es[j] @ es[i]))
    else:
        raise ValueError(f"unknown relation set {relation_set!r}")
    return {"relation_set": relation_set, "max_residual": max(residuals, default=0.0),
            "checked": len(residuals)}


def tl_regular_representation(x: TLElement) -> np.ndarray:
    """Matrix of left multiplication by x on the diagram basis of TL_n."""
    basis = all_diagrams(x.n)
    index = {d: k for k, d in enumerate(basis)}
    m = np.zeros((len(basis), len(basis)), dtype=complex)
    for j, d in enumerate(basis):
        col = x * TLElement.from_diagram(d, x.delta)
        for dd, c in col.terms.items():
            m[index[dd], j] += c
    return m
