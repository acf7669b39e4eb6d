"""Dense operator algebra for the three-qubit chiral atom.

The Hilbert space is the ordered tensor product E1 x E2 x M of three
two-level systems, so every operator is a dense 8x8 complex matrix.
Basis index convention: idx = 4*e1 + 2*e2 + m, with 1 = excited.
"""

from enum import Enum

import numpy as np

DIM = 8

I2 = np.eye(2, dtype=complex)
LOWER = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)  # |g><e|
RAISE = LOWER.conj().T
NUMBER = RAISE @ LOWER


class Site(Enum):
    EMITTER1 = 0
    EMITTER2 = 1
    MEMORY = 2


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two dense complex matrices."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def embed(site: Site, local: np.ndarray) -> np.ndarray:
    """Lift a 2x2 operator on one site to the full 8-dim space."""
    local = np.asarray(local, dtype=complex)
    if local.shape != (2, 2):
        raise ValueError(f"site operator must be 2x2, got {local.shape}")
    factors = [I2, I2, I2]
    factors[site.value] = local
    return kron(kron(factors[0], factors[1]), factors[2])


# The three lowering operators, embedded once at import time.
SIGMA_1 = embed(Site.EMITTER1, LOWER)
SIGMA_2 = embed(Site.EMITTER2, LOWER)
SIGMA_M = embed(Site.MEMORY, LOWER)
N_1 = embed(Site.EMITTER1, NUMBER)
N_2 = embed(Site.EMITTER2, NUMBER)
N_M = embed(Site.MEMORY, NUMBER)

GROUND = np.zeros((DIM, DIM), dtype=complex)
GROUND[0, 0] = 1.0


def expect(op: np.ndarray, rho: np.ndarray) -> complex:
    """Expectation value Tr(op @ rho)."""
    op = np.asarray(op)
    rho = np.asarray(rho)
    if op.shape != rho.shape:
        raise ValueError(f"dimension mismatch: {op.shape} vs {rho.shape}")
    return complex(np.trace(op @ rho))


def hermiticity_defect(a: np.ndarray) -> float:
    """Largest element-wise deviation from A = A^dagger."""
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(a: np.ndarray, tol: float = 1e-12) -> bool:
    return hermiticity_defect(a) <= tol


def basis_index(e1: int, e2: int, m: int) -> int:
    """Index of the product basis state |e1 e2 m> (1 = excited)."""
    return 4 * e1 + 2 * e2 + m
