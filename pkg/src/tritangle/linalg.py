"""Dense complex linear algebra for small multi-qubit operators.

All vectors and matrices are numpy ``complex128`` arrays.  Composite indices
follow the convention that subsystem 0 is the most significant factor, so a
three-qubit basis ket |ijk> sits at index 4i + 2j + k.  Everything here is a
pure function; nothing mutates its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITICITY_TOL = 1e-10
PSD_FLOOR = -1e-10

SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])


def require_finite(a: np.ndarray, name: str = "array") -> np.ndarray:
    """Reject NaN/Inf entries; returns the array unchanged."""
    a = np.asarray(a)
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains non-finite entries")
    return a


def kron(first: np.ndarray, *rest: np.ndarray) -> np.ndarray:
    """Kronecker product of one or more operands of the same kind.

    Operands must all be vectors or all be matrices; the left factor is the
    most significant in the composite index.
    """
    out = np.asarray(first, dtype=complex)
    for factor in rest:
        factor = np.asarray(factor, dtype=complex)
        if factor.ndim != out.ndim:
            raise ValueError("kron operands must all be vectors or all matrices")
        out = np.kron(out, factor)
    return out


def partial_trace(rho: np.ndarray, dims: list[int], keep) -> np.ndarray:
    """Trace out all subsystems not listed in ``keep``.

    ``dims`` gives the dimension of each subsystem in order; kept subsystems
    retain their original relative order.  The trace is preserved.
    """
    rho = np.asarray(rho, dtype=complex)
    dims = [int(d) for d in dims]
    n = len(dims)
    side = math.prod(dims)
    if rho.shape != (side, side):
        raise ValueError(
            f"operator of shape {rho.shape} does not match subsystem dims {dims}"
            f" (expected {side}x{side})"
        )
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= n for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {n} subsystems")

    t = rho.reshape(dims + dims)
    removed = 0
    for i in range(n - 1, -1, -1):
        if i in keep:
            continue
        m = n - removed  # current number of row axes
        t = np.trace(t, axis1=i, axis2=i + m)
        removed += 1
    d_keep = math.prod(dims[k] for k in keep) if keep else 1
    return t.reshape(d_keep, d_keep)


def hermiticity_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T)))


@dataclass(frozen=True)
class HermitianSpectrum:
    """Full eigensystem of a Hermitian matrix, eigenvalues descending."""

    eigenvalues: np.ndarray  # real, sorted descending
    eigenvectors: np.ndarray  # columns, orthonormal, matching order

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def herm_eig(h: np.ndarray) -> HermitianSpectrum:
    """Eigendecomposition of a Hermitian matrix; rejects non-Hermitian input."""
    h = np.asarray(h, dtype=complex)
    require_finite(h, "matrix")
    res = hermiticity_residual(h)
    if res >= HERMITICITY_TOL:
        raise ValueError(f"matrix is not Hermitian (residual {res:.3e})")
    w, v = np.linalg.eigh(h)
    order = np.argsort(w)[::-1]
    return HermitianSpectrum(eigenvalues=w[order], eigenvectors=v[:, order])


def psd_sqrt(rho: np.ndarray) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in [-1e-10, 0) are treated as floating-point drift and
    clamped to zero; anything below that rejects the input as non-PSD.
    """
    spec = herm_eig(rho)
    w = spec.eigenvalues
    if w[-1] < PSD_FLOOR:
        raise ValueError(f"matrix is not PSD (min eigenvalue {w[-1]:.3e})")
    root = np.sqrt(np.clip(w, 0.0, None))
    v = spec.eigenvectors
    out = (v * root) @ v.conj().T
    return (out + out.conj().T) / 2
