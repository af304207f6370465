"""Modular data validation: Verlinde fusion from a unitary S matrix,
modular-group relations, sector nondegeneracy, and the central-charge phase.

The S matrix is input data here (from the quantum double module, from the
built-in datasets, or from user JSON); constructing it from charge
transporters is out of scope.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateData,
    NonIntegralFusion,
    ShapeMismatch,
    SingularVacuumRow,
)


@dataclass
class ModularData:
    labels: list[str]
    s: np.ndarray             # unitary S matrix, row/column 0 = vacuum
    kappa: np.ndarray         # unit-modulus twist phases kappa_rho
    qdims: np.ndarray = field(default=None)
    conj: np.ndarray = field(default=None)  # conjugation permutation matrix C

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=complex)
        self.kappa = np.asarray(self.kappa, dtype=complex)
        n = len(self.labels)
        if self.s.shape != (n, n) or self.kappa.shape != (n,):
            raise ShapeMismatch("labels, S, kappa sizes disagree")
        if np.abs(np.abs(self.kappa) - 1.0).max() > 1e-9:
            raise DegenerateData("kappa phases must have unit modulus")
        if self.qdims is None:
            if abs(self.s[0, 0]) < 1e-12:
                raise SingularVacuumRow("S_00 = 0")
            self.qdims = (self.s[0] / self.s[0, 0]).real.copy()
        else:
            self.qdims = np.asarray(self.qdims, dtype=float)
        if self.qdims.min() <= 0:
            raise DegenerateData("quantum dimensions must be strictly positive")
        if self.conj is None:
            c = np.round((self.s @ self.s).real)
            self.conj = c.astype(np.int64)

    @property
    def size(self) -> int:
        return len(self.labels)


@dataclass
class FusionOutput:
    n: np.ndarray  # N[rho, sigma, mu]


def verlinde_fusion(md: ModularData, tol: float = 1e-8) -> FusionOutput:
    """N_{rho sigma}^mu = sum_j S_rho_j S_sigma_j conj(S_mu_j) / S_0j."""
    s = md.s
    unit = np.abs(s @ s.conj().T - np.eye(md.size)).max()
    if unit > tol:
        raise NonIntegralFusion(f"S not unitary to {tol:g} (residual {unit:g})")
    if np.abs(s[0]).min() < 1e-12:
        raise SingularVacuumRow("vacuum row of S has a zero entry")
    raw = np.einsum("rj,sj,mj,j->rsm", s, s, s.conj(), 1.0 / s[0])
    rounded = np.round(raw.real)
    if np.abs(raw - rounded).max() > tol:
        raise NonIntegralFusion(f"fusion residual {np.abs(raw - rounded).max():g}")
    if rounded.min() < -0.5:
        raise NonIntegralFusion("negative fusion multiplicity")
    return FusionOutput(n=rounded.astype(np.int64))


def _gauss_sum(md: ModularData) -> complex:
    return complex(np.sum(md.kappa * md.qdims**2))


def modular_t_matrix(md: ModularData) -> np.ndarray:
    """T = kappa^{-1} diag(kappa_rho); the cube-root branch of the overall
    phase is chosen nearest to arg(sum kappa d^2)/3."""
    p = _gauss_sum(md)
    if abs(p) < 1e-12:
        raise DegenerateData("vanishing kappa-weighted Gauss sum")
    kappa_global = np.exp(1j * np.angle(p) / 3.0)
    return np.diag(md.kappa) / kappa_global


def check_modular_relations(md: ModularData) -> dict:
    """Residuals of SS† = 1 = TT†, TSTST = S, S² = C, TC = CT."""
    s = md.s
    n = md.size
    t = modular_t_matrix(md)
    c = md.conj.astype(complex)
    eye = np.eye(n)
    res = {
        "s_unitarity": float(np.abs(s @ s.conj().T - eye).max()),
        "t_unitarity": float(np.abs(t @ t.conj().T - eye).max()),
        "tstst": float(np.abs(t @ s @ t @ s @ t - s).max()),
        "s_squared_c": float(np.abs(s @ s - c).max()),
        "tc_commute": float(np.abs(t @ c - c @ t).max()),
    }
    res["max_residual"] = max(res.values())
    return res


def nondegeneracy_check(md: ModularData, tol: float = 1e-9) -> dict:
    """|sum kappa_rho d_rho^2|^2 = sum d_rho^2 characterizes nondegenerate sectors."""
    lhs = abs(_gauss_sum(md)) ** 2
    rhs = float(np.sum(md.qdims**2))
    return {
        "lhs": lhs,
        "rhs": rhs,
        "nondegenerate": bool(abs(lhs - rhs) <= tol * max(1.0, rhs)),
    }


def central_charge_mod8(md: ModularData, tol: float = 1e-9) -> float:
    """c mod 8 from the phase of the kappa-weighted Gauss sum."""
    check = nondegeneracy_check(md, tol=tol)
    if not check["nondegenerate"]:
        raise DegenerateData("degenerate sectors: central charge phase undefined")
    p = _gauss_sum(md)
    c = (4.0 / np.pi) * np.angle(p)
    return float(c % 8.0)


def fusion_algebra_axioms(fusion: FusionOutput, conj: np.ndarray) -> dict:
    """Associativity, vacuum unit, commutativity, and conjugation pairing."""
    n = fusion.n
    r = n.shape[0]
    unit_res = int(np.abs(n[0] - np.eye(r, dtype=np.int64)).max())
    comm_res = int(np.abs(n - n.transpose(1, 0, 2)).max())
    lhs = np.einsum("rse,etm->rstm", n, n)
    rhs = np.einsum("stf,rfm->rstm", n, n)
    assoc_res = int(np.abs(lhs - rhs).max())
    pairing = n[:, :, 0]
    conj_res = int(np.abs(pairing - np.asarray(conj)).max())
    report = {
        "unit_residual": unit_res,
        "commutativity_residual": comm_res,
        "associativity_residual": assoc_res,
        "conjugation_residual": conj_res,
    }
    report["max_residual"] = max(report.values())
    return report


# ---------------------------------------------------------------------------
# built-in datasets


def toric_code_data() -> ModularData:
    s = 0.5 * np.array(
        [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]], dtype=complex
    )
    kappa = np.array([1, 1, 1, -1], dtype=complex)
    return ModularData(labels=["1", "e", "m", "em"], s=s, kappa=kappa)


def fibonacci_data() -> ModularData:
    phi = 2.0 * np.cos(np.pi / 5.0)
    s = np.array([[1.0, phi], [phi, -1.0]], dtype=complex) / np.sqrt(2.0 + phi)
    kappa = np.array([1.0, np.exp(4j * np.pi / 5.0)])
    return ModularData(labels=["1", "tau"], s=s, kappa=kappa)


def semion_data() -> ModularData:
    s = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
    kappa = np.array([1.0, 1j])
    return ModularData(labels=["1", "s"], s=s, kappa=kappa)


def modular_report(md: ModularData) -> dict:
    fusion = verlinde_fusion(md)
    axioms = fusion_algebra_axioms(fusion, md.conj)
    relations = check_modular_relations(md)
    nondeg = nondegeneracy_check(md)
    return {
        "labels": md.labels,
        "qdims": md.qdims,
        "fusion": fusion.n,
        "relation_residuals": relations,
        "fusion_axiom_residuals": axioms,
        "nondegeneracy": nondeg,
        "central_charge_mod8": central_charge_mod8(md) if nondeg["nondegenerate"] else None,
    }
