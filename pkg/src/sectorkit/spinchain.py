"""Finite-size shadow of the infinite spin chain superselection mechanism:
Pauli monomials acting on basis sequences with fixed tails, averaged
magnetization commutators, and the structural vanishing of matrix elements
between different tail classes.

Tail classes are symbolic (one constant per side), so the superselection
statement <s'|A|s> = 0 for [s] != [s'] is exact rather than asymptotic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SupportOutsideWindow, WindowMismatch

_PAULI = {
    1: np.array([[0, 1], [1, 0]], dtype=complex),
    2: np.array([[0, -1j], [1j, 0]], dtype=complex),
    3: np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliMonomial:
    """Product of single-site Pauli matrices, canonically ordered by site."""

    factors: tuple[tuple[int, int], ...]  # (site, pauli index)

    def __init__(self, factors):
        items = sorted((int(x), int(k)) for x, k in dict(factors).items())
        if any(k not in (1, 2, 3) for _, k in items):
            raise ValueError("pauli indices must be 1, 2, or 3")
        object.__setattr__(self, "factors", tuple(items))

    @property
    def support(self) -> list[int]:
        return [x for x, _ in self.factors]

    @classmethod
    def identity(cls) -> "PauliMonomial":
        return cls({})


@dataclass
class TailState:
    """Basis sequence s: Z -> {+-1} with explicit bits on [-window, window]
    and constant tails beyond."""

    window: int
    bits: dict[int, int] = field(default_factory=dict)
    left_tail: int = +1
    right_tail: int = +1

    def __post_init__(self):
        if self.left_tail not in (1, -1) or self.right_tail not in (1, -1):
            raise ValueError("tails must be +-1")
        full = {}
        for x in range(-self.window, self.window + 1):
            v = self.bits.get(x, self.left_tail if x < 0 else self.right_tail)
            if v not in (1, -1):
                raise ValueError("bits must be +-1")
            full[x] = v
        bad = set(self.bits) - set(full)
        if bad:
            raise ValueError(f"bits outside the window: {sorted(bad)}")
        self.bits = full

    @classmethod
    def uniform(cls, window: int, value: int) -> "TailState":
        return cls(window=window, bits={}, left_tail=value, right_tail=value)

    def value(self, x: int) -> int:
        if x < -self.window:
            return self.left_tail
        if x > self.window:
            return self.right_tail
        return self.bits[x]

    def flipped(self, x: int) -> "TailState":
        bits = dict(self.bits)
        bits[x] = -bits[x]
        return TailState(window=self.window, bits=bits,
                         left_tail=self.left_tail, right_tail=self.right_tail)

    def same_tails(self, other: "TailState") -> bool:
        return self.left_tail == other.left_tail and self.right_tail == other.right_tail


def apply_pauli(mono: PauliMonomial, state: TailState) -> tuple[complex, TailState]:
    """sigma_3(x)|s> = s(x)|s>, sigma_1(x) flips the bit, sigma_2(x) =
    i s(x) times the flip; factors act on disjoint sites, so the canonical
    order is also the action order."""
    out = state
    scalar = 1.0 + 0.0j
    for x, k in mono.factors:
        if abs(x) > state.window:
            raise SupportOutsideWindow(f"site {x} outside window [-{state.window}, {state.window}]")
        s_x = out.value(x)
        if k == 3:
            scalar *= s_x
        elif k == 1:
            out = out.flipped(x)
        else:  # sigma_2
            scalar *= 1j * s_x
            out = out.flipped(x)
    return scalar, out


def magnetization_commutator_norm(mono: PauliMonomial, n: int) -> float:
    """Exact operator norm of [M_n, A] for M_n the averaged magnetization
    (1/(2n+1)) sum_{|x| <= n} sigma_3(x).

    Sites outside supp A commute with A and drop out, so the commutator is
    computed on the 2^{|supp A|}-dimensional tensor factor.
    """
    support = mono.support
    if any(abs(x) > n for x in support):
        raise SupportOutsideWindow("monomial support must lie inside [-n, n]")
    if not support:
        return 0.0
    k = len(support)
    dim = 2**k
    a = np.eye(1, dtype=complex)
    for _, pauli in mono.factors:
        a = np.kron(a, _PAULI[pauli])
    m = np.zeros((dim, dim), dtype=complex)
    for pos in range(k):
        term = np.eye(1, dtype=complex)
        for q in range(k):
            term = np.kron(term, _PAULI[3] if q == pos else np.eye(2))
        m += term
    comm = m @ a - a @ m
    # i[M, A] is hermitian, so the norm is the largest |eigenvalue|
    eigs = np.linalg.eigvalsh(1j * comm)
    return float(np.max(np.abs(eigs))) / (2 * n + 1)


def sector_overlap(bra: TailState, mono: PauliMonomial, ket: TailState) -> complex:
    """<bra| A |ket>; exactly zero (the integer 0) whenever the tail classes
    differ, no matter the monomial."""
    if bra.window != ket.window:
        raise WindowMismatch("bra and ket windows differ")
    if mono.support and max(abs(x) for x in mono.support) > ket.window:
        raise SupportOutsideWindow("monomial support outside the shared window")
    if not bra.same_tails(ket):
        return 0
    scalar, moved = apply_pauli(mono, ket)
    if moved.bits == bra.bits:
        return complex(scalar)
    return 0
