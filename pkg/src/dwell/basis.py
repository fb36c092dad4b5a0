"""Scaled oscillator basis and Hamiltonian matrices for quartic potentials.

Basis convention: phi_l(x; sigma) = (2 sigma/pi)^(1/4) (2^l l!)^(-1/2)
H_l(sqrt(2 sigma) x) exp(-sigma x^2), so <0|x^2|0> = 1/(4 sigma).  With
x = (a + a^dag)/(2 sqrt(sigma)) and -d^2/dx^2 = sigma(2 N + 1) - sigma(a^2 +
a^dag^2), every matrix element of H = -d^2/dx^2 + V(x) is a finite ladder
product.  Operators are built on a space padded by the polynomial degree and
truncated back, which makes the retained N x N block equal to the exact
infinite-dimensional matrix elements (paths out of the block never return
within four steps).

The basis scale sigma is fixed by minimizing the trace of the position-space
matrix over sigma, which reduces to one cubic equation:

    8 S1 sigma^3 - 2 c2 S1 sigma - 3 c4 S2 = 0,

with S1 = sum(2l+1) = N^2 and S2 = sum(2l^2+2l+1).  Odd powers of x have no
diagonal elements, so c3 and c1 drop out and the cubic is exact for every
quartic polynomial.  For c4 > 0 it has exactly one positive root.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .polyroots import cubic_real_roots
from .potential import QuarticPotential

__all__ = [
    "BasisSpec",
    "Representation",
    "HamiltonianMatrix",
    "optimal_sigma",
    "assemble_position",
    "assemble_momentum",
    "lowering_operator",
    "position_matrix",
    "position_squared_matrix",
    "momentum_squared_matrix",
]

_PAD = 4  # quartic term couples l to l +/- 4


@dataclass(frozen=True)
class BasisSpec:
    """Oscillator basis size and scale parameter."""

    n_basis: int
    sigma: float

    def __post_init__(self) -> None:
        if self.n_basis < 4:
            raise ValueError("n_basis must be at least 4 (quartic bandwidth)")
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")


class Representation(enum.Enum):
    POSITION = "position"
    MOMENTUM = "momentum"


@dataclass(frozen=True)
class HamiltonianMatrix:
    """Dense banded Hamiltonian in the oscillator basis (bandwidth 4)."""

    matrix: np.ndarray
    basis: BasisSpec
    representation: Representation

    def __post_init__(self) -> None:
        self.matrix.setflags(write=False)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


def lowering_operator(n: int) -> np.ndarray:
    """Matrix of a on the first n oscillator states: a|m> = sqrt(m)|m-1>."""
    a = np.zeros((n, n))
    idx = np.arange(n - 1)
    a[idx, idx + 1] = np.sqrt(idx + 1.0)
    return a


def _trace_sums(n_basis: int) -> tuple[float, float]:
    n = float(n_basis)
    s1 = n * n
    s2 = n * (n - 1.0) * (2.0 * n - 1.0) / 3.0 + n * (n - 1.0) + n
    return s1, s2


def optimal_sigma(pot: QuarticPotential, n_basis: int) -> float:
    """Positive root of the trace-stationarity cubic for this basis size."""
    if n_basis < 1:
        raise ValueError("n_basis must be positive")
    s1, s2 = _trace_sums(n_basis)
    roots = cubic_real_roots(8.0 * s1, 0.0, -2.0 * pot.c2 * s1, -3.0 * pot.c4 * s2)
    positive = roots[roots > 0.0]
    if positive.size == 0:
        raise ValueError("trace cubic has no positive root (requires c4 > 0)")
    return float(positive[-1])


def _padded_position_hamiltonian(pot: QuarticPotential, n: int, sigma: float) -> np.ndarray:
    m = n + _PAD
    a = lowering_operator(m)
    ad = a.T
    x = (a + ad) / (2.0 * math.sqrt(sigma))
    x2 = x @ x
    kinetic = sigma * np.diag(2.0 * np.arange(m) + 1.0) - sigma * (a @ a + ad @ ad)
    h = kinetic + pot.c4 * (x2 @ x2) + pot.c3 * (x2 @ x) + pot.c2 * x2
    h += pot.c1 * x + pot.c0 * np.eye(m)
    return h[:n, :n]


def assemble_position(pot: QuarticPotential, basis: BasisSpec) -> HamiltonianMatrix:
    """Real symmetric Hamiltonian matrix h_lm = <l|H|m> in position space."""
    h = _padded_position_hamiltonian(pot, basis.n_basis, basis.sigma)
    h = 0.5 * (h + h.T)  # symmetrize away last-bit product asymmetry
    return HamiltonianMatrix(h, basis, Representation.POSITION)


def assemble_momentum(pot: QuarticPotential, basis: BasisSpec) -> HamiltonianMatrix:
    """Complex Hermitian matrix of the momentum-space Hamiltonian.

    Under psi_tilde(p) = (2 pi)^(-1/2) integral psi(x) exp(-i p x) dx the
    operator is p^2 + V(i d/dp), expanded in phi_l(p; sigma_t) with the dual
    scale sigma_t = 1/(4 sigma).  Equal to D h D^dag with D = diag((-i)^l),
    hence isospectral to the position representation.
    """
    n = basis.n_basis
    sigma_t = 1.0 / (4.0 * basis.sigma)
    m = n + _PAD
    b = lowering_operator(m)
    bd = b.T
    p = (b + bd) / (2.0 * math.sqrt(sigma_t))
    d1 = math.sqrt(sigma_t) * (b - bd)  # d/dp
    d2 = d1 @ d1
    # x maps to i d/dp, so c_k x^k maps to c_k (i d/dp)^k
    g = (p @ p + pot.c4 * (d2 @ d2) - pot.c2 * d2 + pot.c0 * np.eye(m)).astype(complex)
    g += (-1j * pot.c3) * (d2 @ d1)
    g += (1j * pot.c1) * d1
    g = g[:n, :n]
    g = 0.5 * (g + g.conj().T)
    return HamiltonianMatrix(g, basis, Representation.MOMENTUM)


def position_matrix(basis: BasisSpec) -> np.ndarray:
    """Exact <l|x|m> (tridiagonal)."""
    a = lowering_operator(basis.n_basis)
    return (a + a.T) / (2.0 * math.sqrt(basis.sigma))


def position_squared_matrix(basis: BasisSpec) -> np.ndarray:
    """Exact <l|x^2|m> (pentadiagonal, padded product)."""
    a = lowering_operator(basis.n_basis + 2)
    x = (a + a.T) / (2.0 * math.sqrt(basis.sigma))
    return (x @ x)[: basis.n_basis, : basis.n_basis]


def momentum_squared_matrix(basis: BasisSpec) -> np.ndarray:
    """Exact <l|p^2|m> = <l|-d^2/dx^2|m> (pentadiagonal)."""
    n = basis.n_basis
    a = lowering_operator(n + 2)
    ad = a.T
    p2 = basis.sigma * np.diag(2.0 * np.arange(n + 2) + 1.0)
    p2 -= basis.sigma * (a @ a + ad @ ad)
    return p2[:n, :n]
