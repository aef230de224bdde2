"""Dense complex linear algebra for small operators (d <= ~16, superoperators up to 256x256).

Matrices are plain ``numpy`` complex arrays. Products and traces use numpy;
the Hermitian eigensolver (cyclic complex Jacobi) and the characteristic
polynomial (Faddeev-LeVerrier) are implemented here.
"""

from __future__ import annotations

import numpy as np

from .config import TOL_HERMITIAN

JACOBI_REL_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def _square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def mat_mul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return a @ b


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(_square(a)))


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt pairing Tr(A^dagger B)."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def max_abs(a) -> float:
    """Largest entry magnitude; the distance used by every identity check."""
    a = np.asarray(a)
    return float(np.abs(a).max()) if a.size else 0.0


def max_abs_dist(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return max_abs(a - b)


def hermiticity_defect(a) -> float:
    a = _square(a)
    return max_abs(a - a.conj().T)


def hermitian_eigen(h, tol_hermitian: float = TOL_HERMITIAN):
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(values, vectors)`` with real eigenvalues in ascending order and
    the matching orthonormal eigenvectors as columns.

    Raises ValueError if ``h`` is not Hermitian within ``tol_hermitian``
    (relative to max(1, max|h|)).
    """
    a = _square(h).copy()
    n = a.shape[0]
    asym = hermiticity_defect(a)
    if asym > tol_hermitian * max(1.0, max_abs(a)):
        raise ValueError(f"matrix is not Hermitian: max |H - H^dagger| = {asym:.3e}")
    a = (a + a.conj().T) / 2
    v = np.eye(n, dtype=complex)

    target = JACOBI_REL_TOL * np.linalg.norm(a)
    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.linalg.norm(a[~np.eye(n, dtype=bool)])
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300 or mag <= 1e-18 * target:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                if tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # phase-diagonal step (makes a[p, q] real) followed by a real rotation
                rot = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return values[order], v[:, order]


def eigvalsh(h) -> np.ndarray:
    return hermitian_eigen(h)[0]


def char_poly(m) -> np.ndarray:
    """Monic characteristic polynomial det(zI - M), coefficients in descending degree.

    Faddeev-LeVerrier recursion: M_k = A M_{k-1} + c_{n-k+1} I and
    c_{n-k} = -Tr(A M_k) / k, starting from M_0 = 0, c_n = 1.
    """
    a = _square(m)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=complex)
    coeffs[0] = 1.0
    mk = np.zeros_like(a)
    eye = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        mk = a @ mk + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(a @ mk) / k
    return coeffs


def operator_norm(m) -> float:
    """Largest singular value, sqrt of the top eigenvalue of M^dagger M."""
    a = as_matrix(m)
    gram = a.conj().T @ a
    top = hermitian_eigen(gram)[0][-1]
    return float(np.sqrt(max(top, 0.0)))


def is_unitary_defect(u) -> float:
    u = _square(u)
    return max_abs(u.conj().T @ u - np.eye(u.shape[0]))
