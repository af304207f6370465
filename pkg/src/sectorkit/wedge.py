"""Wedge-localized one-particle structure and Zamolodchikov-Faddeev
operators for the d = 1+1 massive scalar on a rapidity grid.

One-particle conventions.  Waves live on a symmetric theta grid with
trapezoid weights; the boost flow acts by (delta(t) phi)(theta) =
phi(theta + 2 pi t); the wedge conjugation j is plain complex conjugation
in rapidity space (the t-x reflection composed with the antiunitarity);
s = j delta^{1/2} needs analytic continuation by i pi, which is done
through the attached test function (direct complex-rapidity integration)
or through a closed-form wave model.  Real test functions supported in the
right wedge x > |t| give waves with s phi = phi.

Truncated Fock conventions.  Basis states are weakly increasing tuples of
grid indices for a*(theta_1)...a*(theta_n) Omega written in decreasing
rapidity order; the delta term of the ZF relations is discretized as
Kronecker/weight.  Z*(theta) inserts a rapidity into the ordered tuple and
multiplies by S(theta - theta_k) for every entry it passes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    FockCapExceeded,
    InterpolationOutOfRange,
    PoleInStrip,
    SupportViolation,
)


# ---------------------------------------------------------------------------
# grid and waves


@dataclass
class RapidityGrid:
    theta_max: float = 6.0
    points: int = 481
    mass: float = 1.0

    def __post_init__(self):
        if self.points < 3 or self.theta_max <= 0 or self.mass <= 0:
            raise ValueError("need a symmetric grid with positive mass")
        self.thetas = np.linspace(-self.theta_max, self.theta_max, self.points)
        h = self.thetas[1] - self.thetas[0]
        w = np.full(self.points, h)
        w[0] = w[-1] = h / 2.0
        self.weights = w

    @property
    def theta_min(self) -> float:
        return -self.theta_max

    def momentum(self, theta):
        """(p0, p1) = m (cosh theta, sinh theta); accepts complex theta."""
        return self.mass * np.cosh(theta), self.mass * np.sinh(theta)


@dataclass
class OneParticleWave:
    grid: RapidityGrid
    values: np.ndarray
    eval_fn: object = field(default=None, repr=False)  # callable theta -> value

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != (self.grid.points,):
            raise ValueError("values must match the grid")

    def norm_sq(self) -> float:
        return float(np.sum(self.grid.weights * np.abs(self.values) ** 2))

    def inner(self, other: "OneParticleWave") -> complex:
        return complex(np.sum(self.grid.weights * np.conj(self.values) * other.values))


def symplectic_pairing(psi: OneParticleWave, phi: OneParticleWave) -> float:
    """Im(psi, phi); vanishes when psi lies in the symplectic complement."""
    return float(psi.inner(phi).imag)


def gaussian_wave(grid: RapidityGrid, center: float, width: float,
                  momentum: float = 0.0) -> OneParticleWave:
    """An entire wave with a closed-form continuation, for operator tests."""
    def evaluate(theta):
        return np.exp(-((theta - center) ** 2) / (2.0 * width**2) + 1j * momentum * theta)

    return OneParticleWave(grid=grid, values=evaluate(grid.thetas), eval_fn=evaluate)


# ---------------------------------------------------------------------------
# wedge test functions


@dataclass
class WedgeBump:
    """Smooth compactly supported bump f(x, t) = amp * exp(1 - 1/(1 - r^2/R^2))
    on the disk of radius R around (x0, t0)."""

    x0: float
    t0: float = 0.0
    radius: float = 0.3
    amplitude: float = 1.0

    def __call__(self, x, t):
        r_sq = ((x - self.x0) ** 2 + (t - self.t0) ** 2) / self.radius**2
        inside = r_sq < 1.0
        out = np.zeros_like(np.asarray(x, dtype=float))
        with np.errstate(divide="ignore", over="ignore"):
            val = np.exp(1.0 - 1.0 / np.where(inside, 1.0 - r_sq, 1.0))
        return self.amplitude * np.where(inside, val, out)

    def in_right_wedge(self) -> bool:
        # every point of the closed disk must satisfy x > |t|
        return self.x0 - abs(self.t0) > self.radius * math.sqrt(2.0)

    def reflected(self) -> "WedgeBump":
        """The r-image f(-x, -t), supported in the left wedge."""
        return WedgeBump(x0=-self.x0, t0=-self.t0, radius=self.radius,
                         amplitude=self.amplitude)


def _bump_quadrature(bump: WedgeBump, resolution: int):
    """Midpoint nodes and weights covering the bump's disk."""
    xs = np.linspace(bump.x0 - bump.radius, bump.x0 + bump.radius, resolution + 1)
    ts = np.linspace(bump.t0 - bump.radius, bump.t0 + bump.radius, resolution + 1)
    xm = 0.5 * (xs[:-1] + xs[1:])
    tm = 0.5 * (ts[:-1] + ts[1:])
    dx = xs[1] - xs[0]
    dt = ts[1] - ts[0]
    xg, tg = np.meshgrid(xm, tm, indexing="ij")
    fv = bump(xg, tg)
    mask = fv != 0.0
    return xg[mask], tg[mask], fv[mask] * dx * dt


def bump_transform(bump: WedgeBump, grid: RapidityGrid, thetas=None,
                   resolution: int = 96) -> np.ndarray:
    """f_hat(theta) = integral f(x,t) exp(i (p0 t - p1 x)) dx dt, valid for
    complex theta (the integrand is entire)."""
    if thetas is None:
        thetas = grid.thetas
    xs, ts, fw = _bump_quadrature(bump, resolution)
    thetas = np.asarray(thetas)
    p0, p1 = grid.momentum(thetas)
    phase = np.exp(1j * (np.outer(p0, ts) - np.outer(p1, xs)))
    return phase @ fw


def wedge_wave(bump: WedgeBump, grid: RapidityGrid, resolution: int = 96,
               require_wedge: bool = True) -> OneParticleWave:
    """On-shell restriction of a right-wedge test function."""
    if require_wedge and not bump.in_right_wedge():
        raise SupportViolation(
            f"bump at ({bump.x0}, {bump.t0}) radius {bump.radius} leaves x > |t|"
        )

    def evaluate(theta):
        return bump_transform(bump, grid, thetas=np.atleast_1d(theta),
                              resolution=resolution)

    values = bump_transform(bump, grid, resolution=resolution)
    return OneParticleWave(grid=grid, values=values, eval_fn=evaluate)


# ---------------------------------------------------------------------------
# pre-modular operators


def premodular_apply(op: str, wave: OneParticleWave, t: complex = None) -> OneParticleWave:
    """Apply j, delta(t), or s.

    delta(t) at real t shifts along the grid; complex t (unbounded powers of
    delta) and s = j delta^{1/2} require an analytic backing (wedge waves and
    gaussian_wave carry one).
    """
    grid = wave.grid
    if op == "j":
        fn = wave.eval_fn
        new_fn = (lambda z: np.conj(fn(np.conj(z)))) if fn is not None else None
        return OneParticleWave(grid=grid, values=np.conj(wave.values), eval_fn=new_fn)
    if op == "delta":
        if t is None:
            raise ValueError("delta needs the flow parameter t")
        t = complex(t)
        shift = 2.0 * math.pi * t.real
        if t.imag == 0.0:
            if wave.eval_fn is not None:
                fn = wave.eval_fn
                shifted_fn = lambda z: fn(z + shift)
                return OneParticleWave(grid=grid, values=np.asarray(shifted_fn(grid.thetas)),
                                       eval_fn=shifted_fn)
            target = grid.thetas + shift
            lo, hi = grid.theta_min, grid.theta_max
            outside = (target < lo) | (target > hi)
            boundary_mag = max(abs(wave.values[0]), abs(wave.values[-1]))
            if outside.any() and boundary_mag > 1e-10:
                raise InterpolationOutOfRange(
                    "shifted support leaves the grid; use an analytic wave"
                )
            re = np.interp(target, grid.thetas, wave.values.real, left=0.0, right=0.0)
            im = np.interp(target, grid.thetas, wave.values.imag, left=0.0, right=0.0)
            return OneParticleWave(grid=grid, values=re + 1j * im)
        if wave.eval_fn is None:
            raise InterpolationOutOfRange(
                "imaginary boost parameters need an analytic wave backing"
            )
        fn = wave.eval_fn
        zshift = 2.0 * math.pi * t
        shifted_fn = lambda z: fn(z + zshift)
        return OneParticleWave(grid=grid, values=np.asarray(shifted_fn(grid.thetas + 0j)),
                               eval_fn=shifted_fn)
    if op == "s":
        half = premodular_apply("delta", wave, t=-0.5j)
        return premodular_apply("j", half)
    raise ValueError(f"unknown pre-modular operator {op!r}")


def s_invariance_residual(bump: WedgeBump, grid: RapidityGrid,
                          resolution: int = 96) -> float:
    """Relative residual of s phi = phi for a wedge wave.

    phi is computed at the given quadrature resolution; the continued side
    conj(f_hat(theta + i pi)) at double resolution, so the comparison probes
    independent quadratures.
    """
    phi = bump_transform(bump, grid, resolution=resolution)
    continued = bump_transform(bump, grid, thetas=grid.thetas + 1j * math.pi,
                               resolution=2 * resolution + 1)
    num = np.max(np.abs(np.conj(continued) - phi))
    den = np.max(np.abs(phi))
    return float(num / den)


# ---------------------------------------------------------------------------
# factorizing S-matrix models


@dataclass
class SMatrixModel:
    kind: str
    b: float = 0.0
    crossing_slope: float = 0.0  # negative-control deformation exp(slope * theta)

    def __post_init__(self):
        if self.kind not in {"free", "ising", "sinh_gordon", "bound_state"}:
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.kind in {"sinh_gordon", "bound_state"} and not 0.0 < self.b < 1.0:
            raise PoleInStrip("sinh-Gordon-type parameter must satisfy 0 < b < 1")

    @property
    def pole_free(self) -> bool:
        return self.kind != "bound_state"

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=complex)
        if self.kind == "free":
            s = np.ones_like(theta)
        elif self.kind == "ising":
            s = -np.ones_like(theta)
        elif self.kind == "sinh_gordon":
            c = 1j * math.sin(math.pi * self.b)
            s = (np.sinh(theta) - c) / (np.sinh(theta) + c)
        else:  # bound_state: the inverse function, pole at i pi b in the strip
            c = 1j * math.sin(math.pi * self.b)
            s = (np.sinh(theta) + c) / (np.sinh(theta) - c)
        if self.crossing_slope:
            s = s * np.exp(self.crossing_slope * theta)
        return s if s.shape else complex(s)


def free_model() -> SMatrixModel:
    return SMatrixModel(kind="free")


def ising_model() -> SMatrixModel:
    return SMatrixModel(kind="ising")


def sinh_gordon_model(b: float = 0.4) -> SMatrixModel:
    return SMatrixModel(kind="sinh_gordon", b=b)


def crossing_broken_model(b: float = 0.4, slope: float = 0.1) -> SMatrixModel:
    return SMatrixModel(kind="sinh_gordon", b=b, crossing_slope=slope)


def crossing_check(model: SMatrixModel, grid: RapidityGrid) -> float:
    """max over the real grid of |S(theta) - S(i pi - theta)|."""
    if not model.pole_free:
        raise PoleInStrip("crossing check requires a pole-free model")
    thetas = grid.thetas
    direct = model(thetas)
    crossed = model(1j * math.pi - thetas)
    return float(np.max(np.abs(direct - crossed)))


def unitarity_residuals(model: SMatrixModel, grid: RapidityGrid) -> dict:
    thetas = grid.thetas
    s = model(thetas)
    return {
        "modulus": float(np.max(np.abs(np.abs(s) - 1.0))),
        "hermitian_analyticity": float(np.max(np.abs(np.conj(s) - model(-thetas)))),
    }


# ---------------------------------------------------------------------------
# truncated ZF Fock space


@dataclass
class TruncatedFockState:
    grid: RapidityGrid
    n_max: int = 4
    amplitudes: dict[tuple[int, ...], complex] = field(default_factory=dict)

    @classmethod
    def vacuum(cls, grid: RapidityGrid, n_max: int = 4) -> "TruncatedFockState":
        return cls(grid=grid, n_max=n_max, amplitudes={(): 1.0 + 0.0j})

    def copy(self) -> "TruncatedFockState":
        return TruncatedFockState(self.grid, self.n_max, dict(self.amplitudes))

    def chop(self, tol: float = 0.0) -> "TruncatedFockState":
        self.amplitudes = {k: v for k, v in self.amplitudes.items() if abs(v) > tol}
        return self

    def add(self, other: "TruncatedFockState", scale: complex = 1.0) -> "TruncatedFockState":
        out = dict(self.amplitudes)
        for k, v in other.amplitudes.items():
            out[k] = out.get(k, 0.0) + scale * v
        return TruncatedFockState(self.grid, self.n_max, out)

    def scaled(self, c: complex) -> "TruncatedFockState":
        return TruncatedFockState(self.grid, self.n_max,
                                  {k: c * v for k, v in self.amplitudes.items()})

    def basis_norm_sq(self, tup: tuple[int, ...]) -> float:
        """||a*(theta_i1)...a*(theta_in) Omega||^2 = prod_j count_j! / w_j^count_j."""
        out = 1.0
        w = self.grid.weights
        run = 1
        for pos, idx in enumerate(tup):
            run = run + 1 if pos and tup[pos - 1] == idx else 1
            out *= run / w[idx]
        return out

    def inner(self, other: "TruncatedFockState") -> complex:
        total = 0.0 + 0.0j
        small, big = self.amplitudes, other.amplitudes
        if len(big) < len(small):
            small, big = big, small
            for k, v in small.items():
                if k in big:
                    total += np.conj(big[k]) * v * self.basis_norm_sq(k)
            return complex(total)
        for k, v in small.items():
            if k in big:
                total += np.conj(v) * big[k] * self.basis_norm_sq(k)
        return complex(total)

    def norm(self) -> float:
        return math.sqrt(max(self.inner(self).real, 0.0))

    def particle_counts(self) -> set[int]:
        return {len(k) for k in self.amplitudes}


def zf_create(theta_index: int, state: TruncatedFockState,
              model: SMatrixModel) -> TruncatedFockState:
    """Z*(theta) insertion: slot the rapidity into the decreasing-ordered
    a*-string, multiplying by S(theta - theta_k) for every larger rapidity
    passed on the way in.  Tuples are stored ascending, so the passed
    entries are those above the insertion point."""
    thetas = state.grid.thetas
    out: dict[tuple[int, ...], complex] = {}
    theta_new = thetas[theta_index]
    for tup, amp in state.amplitudes.items():
        if len(tup) + 1 > state.n_max:
            raise FockCapExceeded(f"particle cap {state.n_max} exceeded")
        pos = 0
        while pos < len(tup) and tup[pos] <= theta_index:
            pos += 1
        factor = amp
        for k in tup[pos:]:
            factor *= model(theta_new - thetas[k])
        new_tup = tup[:pos] + (theta_index,) + tup[pos:]
        out[new_tup] = out.get(new_tup, 0.0) + factor
    return TruncatedFockState(state.grid, state.n_max, out)


def zf_annihilate(theta_index: int, state: TruncatedFockState,
                  model: SMatrixModel) -> TruncatedFockState:
    """Adjoint of zf_create with respect to the weighted inner product:
    Z(theta_j)|tup> = (count_j / w_j) conj(prod_{k > j in tup'} S(theta_j -
    theta_k)) |tup'> with tup' = tup minus one occurrence of j."""
    thetas = state.grid.thetas
    w = state.grid.weights
    out: dict[tuple[int, ...], complex] = {}
    for tup, amp in state.amplitudes.items():
        if theta_index not in tup:
            continue
        # remove the last occurrence (matching the insert-after-equals
        # convention of zf_create, whose adjoint this is)
        pos = len(tup) - 1 - tup[::-1].index(theta_index)
        count = tup.count(theta_index)
        rest = tup[:pos] + tup[pos + 1:]
        factor = amp * count / w[theta_index]
        for k in rest[pos:]:
            factor *= np.conj(model(thetas[theta_index] - thetas[k]))
        out[rest] = out.get(rest, 0.0) + factor
    return TruncatedFockState(state.grid, state.n_max, out)


def zf_create_smeared(f_values: np.ndarray, state: TruncatedFockState,
                      model: SMatrixModel) -> TruncatedFockState:
    """integral dtheta f(theta) Z*(theta), discretized with the grid weights."""
    out = TruncatedFockState(state.grid, state.n_max, {})
    w = state.grid.weights
    for j, fj in enumerate(f_values):
        if fj == 0.0:
            continue
        out = out.add(zf_create(j, state, model), scale=w[j] * fj)
    return out.chop()


def number_operator(state: TruncatedFockState) -> TruncatedFockState:
    return TruncatedFockState(state.grid, state.n_max,
                              {k: len(k) * v for k, v in state.amplitudes.items()})


def zf_relations_check(model: SMatrixModel, grid: RapidityGrid,
                       index_pairs=None, n_max: int = 3) -> dict:
    """Apply both sides of the exchange relations to a family of low
    particle-number states and report the worst residual.

    Z*(t) Z*(t') = S(t - t') Z*(t') Z*(t)
    Z(t) Z*(t')  = S(t' - t) Z*(t') Z(t) + delta_{t t'} / w_t
    """
    if index_pairs is None:
        k = grid.points
        index_pairs = [(k // 5, 3 * k // 5), (k // 2, k // 2), (k // 7, 6 * k // 7)]
    thetas = grid.thetas
    # seeds of <= 3 particles; the internal cap leaves room for both Z*'s
    seeds = [TruncatedFockState.vacuum(grid, n_max=n_max + 2)]
    one = zf_create(grid.points // 3, seeds[0], model)
    two = zf_create(2 * grid.points // 3, one, model)
    three = zf_create(grid.points // 9, two, model)
    seeds += [one, two, three][: max(1, n_max)]
    worst = 0.0
    for (i, j) in index_pairs:
        s_ij = model(thetas[i] - thetas[j])
        s_ji = model(thetas[j] - thetas[i])
        for seed in seeds:
            occupied = any(i in tup or j in tup for tup in seed.amplitudes)
            if i != j:
                # exchange relation; coincident rapidities are excluded from
                # the two-particle relations (L^2 bookkeeping only)
                lhs = zf_create(i, zf_create(j, seed, model), model)
                rhs = zf_create(j, zf_create(i, seed, model), model).scaled(s_ij)
                scale = max(lhs.norm(), rhs.norm(), 1.0)
                worst = max(worst, lhs.add(rhs, -1.0).norm() / scale)
            elif occupied:
                continue
            lhs2 = zf_annihilate(i, zf_create(j, seed, model), model)
            rhs2 = zf_create(j, zf_annihilate(i, seed, model), model).scaled(s_ji)
            if i == j:
                rhs2 = rhs2.add(seed, 1.0 / grid.weights[i])
            diff = lhs2.add(rhs2, -1.0)
            scale = max(lhs2.norm(), rhs2.norm(), 1.0)
            worst = max(worst, diff.norm() / scale)
    return {"max_residual": worst, "pairs": list(index_pairs)}


# ---------------------------------------------------------------------------
# wedge KMS four-point check


def kms_fourpoint_check(model: SMatrixModel, f1: WedgeBump, f2: WedgeBump,
                        f1p: WedgeBump, f2p: WedgeBump, grid: RapidityGrid,
                        resolution: int = 72) -> dict:
    """Relative difference between the four-point function as written,

        <Omega, F(f1') F(f2') F(f2) F(f1) Omega>,

    and the KMS-cycled order with the moved leg's rapidity integrals run
    along the contour theta - i pi.  On the shifted contour the real test
    functions obey f_hat(theta - i pi) = conj f_hat(theta), so the cycled
    side needs only real-grid data plus S at arguments shifted by i pi; the
    delta-contraction terms agree identically and the kernel terms match
    exactly when S(theta) = S(i pi - theta).
    """
    if not model.pole_free:
        raise PoleInStrip("the pole-free KMS identity needs no bound states")
    w = grid.weights
    a = bump_transform(f1, grid, resolution=resolution)     # f_hat_1
    b = bump_transform(f2, grid, resolution=resolution)
    ap = bump_transform(f1p, grid, resolution=resolution)
    bp = bump_transform(f2p, grid, resolution=resolution)

    def pair(x, y):
        return complex(np.sum(w * x * y))

    theta = grid.thetas
    diff = theta[:, None] - theta[None, :]  # diff[j, k] = theta_j - theta_k
    s_real = model(-diff)                   # S(theta_k - theta_j) at [j, k]
    s_shifted = model(diff + 1j * math.pi)  # S(i pi - (theta_k - theta_j))

    # LHS = (int b' conj a')(int conj b a) + (int conj b' b)(int conj a' a)
    #       + sum w_j w_k [conj b'_j a_j][conj a'_k b_k] S(theta_k - theta_j)
    kernel_weights = np.outer(w * np.conj(bp) * a, w * np.conj(ap) * b)
    term1 = pair(bp, np.conj(ap)) * pair(np.conj(b), a)
    term2 = pair(np.conj(bp), b) * pair(np.conj(ap), a)
    lhs = term1 + term2 + complex(np.sum(kernel_weights * s_real))

    # cycled side: the moved leg's contour shift leaves the delta-delta
    # terms unchanged and moves the kernel argument by i pi
    rhs = term2 + term1 + complex(np.sum(kernel_weights * s_shifted))

    scale = max(abs(lhs), abs(rhs), 1e-300)
    return {
        "lhs": lhs,
        "rhs": rhs,
        "residual": abs(lhs - rhs) / scale,
    }


# ---------------------------------------------------------------------------
# scattering operator and modular conjugation on the truncated space


def scattering_star_phase(tup: tuple[int, ...], grid: RapidityGrid,
                          model: SMatrixModel) -> complex:
    """Eigenvalue of S* on an ordered basis state: prod_{i > j} S(theta_i -
    theta_j) over decreasing-order positions, i.e. S(theta_lo - theta_hi)
    over ascending pairs of the stored tuple."""
    thetas = grid.thetas
    phase = 1.0 + 0.0j
    for u in range(len(tup)):
        for v in range(u + 1, len(tup)):
            phase *= model(thetas[tup[u]] - thetas[tup[v]])
    return phase


def apply_scattering(state: TruncatedFockState, model: SMatrixModel,
                     adjoint: bool = False) -> TruncatedFockState:
    out = {}
    for tup, amp in state.amplitudes.items():
        ph = scattering_star_phase(tup, state.grid, model)
        out[tup] = amp * (ph if adjoint else np.conj(ph))
    return TruncatedFockState(state.grid, state.n_max, out)


def apply_free_conjugation(state: TruncatedFockState) -> TruncatedFockState:
    """J_0: componentwise conjugation in the a*-basis."""
    return TruncatedFockState(state.grid, state.n_max,
                              {k: np.conj(v) for k, v in state.amplitudes.items()})


def apply_modular_conjugation(state: TruncatedFockState,
                              model: SMatrixModel) -> TruncatedFockState:
    """J = S J_0."""
    return apply_scattering(apply_free_conjugation(state), model)


def scattering_conjugation_check(model: SMatrixModel, grid: RapidityGrid,
                                 tuples=None, n_max: int = 4) -> dict:
    """J built from the Fock scattering operator is an antiunitary involution."""
    if tuples is None:
        k = grid.points
        tuples = [(), (k // 2,), (k // 4, 3 * k // 4), (k // 5, k // 2, 4 * k // 5)]
    rng = np.random.default_rng(11)
    states = [
        TruncatedFockState(grid, n_max, {tuple(sorted(tup)): 1.0 + 0.0j})
        for tup in tuples
    ]
    states.append(
        TruncatedFockState(
            grid, n_max,
            {tuple(sorted(tup)): complex(*rng.standard_normal(2)) for tup in tuples},
        )
    )
    worst_inv = 0.0
    worst_norm = 0.0
    for state in states:
        jj = apply_modular_conjugation(apply_modular_conjugation(state, model), model)
        worst_inv = max(worst_inv, jj.add(state, -1.0).norm() / max(state.norm(), 1e-300))
        j_state = apply_modular_conjugation(state, model)
        worst_norm = max(worst_norm,
                         abs(j_state.norm() - state.norm()) / max(state.norm(), 1e-300))
    return {"involution_residual": worst_inv, "isometry_residual": worst_norm}
