"""Eigenvalues and eigenvectors of the quartic-potential Hamiltonian.

Solving is a thin pipeline: optimal sigma -> position-space matrix -> dense
symmetric eigendecomposition (LAPACK via scipy).  For exactly symmetric
potentials (c1 = c3 = 0) the matrix decouples into even/odd oscillator-index
blocks which are diagonalized separately; the merged eigenvectors then carry
exact parity, which keeps near-degenerate tunneling doublets from coming out
as arbitrary left/right mixtures.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh, eigvalsh

from .basis import BasisSpec, assemble_position, optimal_sigma
from .potential import QuarticPotential

__all__ = [
    "Spectrum",
    "SolverError",
    "ConvergenceFailure",
    "BasisTooSmall",
    "solve",
    "solve_energies",
    "quasi_degenerate_pairs",
]

RESIDUAL_TOL = 1e-10
DEGENERACY_REL_TOL = 1e-6


class SolverError(Exception):
    """Base class for diagonalization failures."""


class ConvergenceFailure(SolverError):
    """Eigeniteration failed or residuals exceed the certification bound."""


class BasisTooSmall(SolverError):
    """Requested state index too close to the top of the variational basis."""


@dataclass(frozen=True)
class Spectrum:
    """Ascending eigenvalues with orthonormal coefficient vectors.

    `coefficients[:, n]` expands state n in the sigma-scaled oscillator
    basis (position representation; real).  Only the lowest ~n_basis/3
    states are certified converged; higher ones are variationally corrupted.
    """

    potential: QuarticPotential
    basis: BasisSpec
    energies: np.ndarray
    coefficients: np.ndarray
    n_verified: int = field(default=0)

    def __post_init__(self) -> None:
        self.energies.setflags(write=False)
        self.coefficients.setflags(write=False)

    def energy(self, n: int) -> float:
        return float(self.energies[n])

    def vector(self, n: int) -> np.ndarray:
        return self.coefficients[:, n]

    def converged(self, n: int) -> bool:
        return n <= self.basis.n_basis // 3

    @property
    def n_basis(self) -> int:
        return self.basis.n_basis


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0.0] = 1.0
    return vectors * signs


_PARITY_TIE_TOL = 1e-12


def _eigh_parity_blocks(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Diagonalize even and odd oscillator-index blocks separately.

    Valid whenever the +/-1 and +/-3 bands vanish identically.  Doublets
    whose splitting is below solver resolution come out in noise order, so
    within each tied run the eigenvectors are relabeled even-parity first
    (the true ordering of tunneling doublets); energies stay as sorted.
    """
    n = h.shape[0]
    energies = np.empty(n)
    vectors = np.zeros((n, n))
    parities = np.empty(n, dtype=int)
    pieces = []
    for parity in (0, 1):
        idx = np.arange(parity, n, 2)
        w, v = eigh(h[np.ix_(idx, idx)])
        pieces.append((idx, w, v))
    all_w = np.concatenate([w for _, w, _ in pieces])
    owners = np.concatenate(
        [np.full(w.size, k) for k, (_, w, _) in enumerate(pieces)]
    )
    inner = np.concatenate([np.arange(w.size) for _, w, _ in pieces])
    order = np.argsort(all_w, kind="stable")
    for out_col, j in enumerate(order):
        idx, w, v = pieces[owners[j]]
        energies[out_col] = w[inner[j]]
        vectors[idx, out_col] = v[:, inner[j]]
        parities[out_col] = owners[j]
    # even-before-odd inside runs of numerically equal energies
    start = 0
    while start < n:
        stop = start + 1
        while (
            stop < n
            and energies[stop] - energies[stop - 1]
            <= _PARITY_TIE_TOL * (1.0 + abs(energies[stop - 1]))
        ):
            stop += 1
        if stop - start > 1:
            cols = np.arange(start, stop)
            resorted = cols[np.argsort(parities[cols], kind="stable")]
            vectors[:, cols] = vectors[:, resorted]
            parities[cols] = parities[resorted]
        start = stop
    return energies, vectors


def solve(
    pot: QuarticPotential,
    n_basis: int = 100,
    n_states: int = 8,
    sigma: float | None = None,
) -> Spectrum:
    """Diagonalize the potential in its trace-optimal oscillator basis.

    The first `n_states` states are residual-checked; requesting a state
    index at or beyond n_basis/2 raises BasisTooSmall.  `sigma` overrides
    the trace-optimal basis scale (robustness experiments only).
    """
    if n_states < 1 or n_states > n_basis:
        raise ValueError("n_states must be in [1, n_basis]")
    if n_states - 1 >= n_basis / 2:
        raise BasisTooSmall(
            f"state {n_states - 1} requested with only {n_basis} basis functions"
        )
    if sigma is None:
        sigma = optimal_sigma(pot, n_basis)
    basis = BasisSpec(n_basis=n_basis, sigma=sigma)
    h = assemble_position(pot, basis).matrix
    try:
        if pot.c1 == 0.0 and pot.c3 == 0.0:
            energies, vectors = _eigh_parity_blocks(h)
        else:
            energies, vectors = eigh(h)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK hiccup
        raise ConvergenceFailure(str(exc)) from exc
    vectors = _fix_signs(vectors)
    residual = h @ vectors[:, :n_states] - vectors[:, :n_states] * energies[:n_states]
    res_norms = np.linalg.norm(residual, axis=0)
    bounds = RESIDUAL_TOL * np.maximum(1.0, np.abs(energies[:n_states]))
    if np.any(res_norms > bounds):
        worst = int(np.argmax(res_norms / bounds))
        raise ConvergenceFailure(
            f"residual {res_norms[worst]:.3e} for state {worst} exceeds "
            f"{bounds[worst]:.3e}"
        )
    return Spectrum(pot, basis, energies, vectors, n_verified=n_states)


def solve_energies(pot: QuarticPotential, n_basis: int = 100) -> np.ndarray:
    """Eigenvalues only (no vectors); fast path for parameter sweeps."""
    sigma = optimal_sigma(pot, n_basis)
    basis = BasisSpec(n_basis=n_basis, sigma=sigma)
    h = assemble_position(pot, basis).matrix
    return eigvalsh(h)


def quasi_degenerate_pairs(
    spec: Spectrum,
    rel_tol: float = DEGENERACY_REL_TOL,
    n_max: int | None = None,
) -> list[tuple[int, int, float]]:
    """Adjacent near-degenerate pairs (n, n+1, gap), greedy from the bottom.

    A pair qualifies when |E_{n+1} - E_n| <= rel_tol * (1 + |E_n|); accepted
    pairs do not overlap.
    """
    if rel_tol <= 0.0:
        raise ValueError("rel_tol must be positive")
    top = spec.n_verified if n_max is None else min(n_max + 1, len(spec.energies))
    pairs: list[tuple[int, int, float]] = []
    n = 0
    while n + 1 < top:
        gap = float(spec.energies[n + 1] - spec.energies[n])
        if gap <= rel_tol * (1.0 + abs(float(spec.energies[n]))):
            pairs.append((n, n + 1, gap))
            n += 2
        else:
            n += 1
    return pairs
