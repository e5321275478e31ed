"""Dense eigendecomposition of the normalized Laplacian and harmonic eigenfunctions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .operators import apply_laplacian, sym_laplacian_matrix

ZERO_TOL = 1e-9


class EigenSolverError(RuntimeError):
    def __init__(self, msg: str, residual: float):
        super().__init__(f"{msg} (achieved residual {residual:.3e})")
        self.residual = residual


def jacobi_eigh(m: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi rotations. Returns unsorted eigenvalues and eigenvectors as columns."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(np.abs(a).max(), 1.0)
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.triu(a, 1) ** 2))
        if off <= tol * scale:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0 else 1.0
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    off = float(np.sqrt(np.sum(np.triu(a, 1) ** 2)))
    raise EigenSolverError(f"Jacobi did not converge in {max_sweeps} sweeps", off)


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    for i in range(v.shape[0]):
        if abs(v[i]) > 1e-12:
            return v if v[i] > 0 else -v
    return v


def symmetric_eigen(m: np.ndarray, tol: float = 1e-10, method: str = "lapack") -> tuple[np.ndarray, np.ndarray]:
    """Full eigendecomposition of a dense symmetric matrix.

    Eigenvalues come back ascending with eigenvectors as columns. Within a
    cluster of (numerically) equal eigenvalues the vectors are ordered by
    their rounded entries, and every vector has its first nonzero entry
    positive, so identical input always yields identical output.

    Raises :class:`EigenSolverError` if any residual ``‖Mv − λv‖∞`` exceeds
    ``tol·max(‖M‖∞, 1)``.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise ValueError("expected a non-empty square matrix")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix is not exactly symmetric")
    if method == "lapack":
        try:
            vals, vecs = np.linalg.eigh(m)
        except np.linalg.LinAlgError as exc:
            raise EigenSolverError(f"LAPACK eigh failed: {exc}", float("nan")) from exc
    elif method == "jacobi":
        vals, vecs = jacobi_eigh(m)
    else:
        raise ValueError(f"unknown method {method!r}")

    vecs = np.column_stack([_canonical_sign(vecs[:, i]) for i in range(vecs.shape[1])])
    # eigenvalues equal to ~1e-9 form one cluster; inside it order by the vector
    keys = []
    for i in range(len(vals)):
        keys.append((round(float(vals[i]), 9) + 0.0, tuple(np.round(vecs[:, i], 9) + 0.0), i))
    order = [k[2] for k in sorted(keys)]
    vals, vecs = vals[order], vecs[:, order]

    norm = max(float(np.abs(m).sum(axis=1).max()), 1.0)
    resid = float(np.abs(m @ vecs - vecs * vals).max())
    if resid > tol * norm:
        raise EigenSolverError("eigen residual above tolerance", resid)
    return vals, vecs


@dataclass(frozen=True)
class EigenPair:
    """λ with its unit 𝓛-eigenvector ``phi`` and harmonic eigenfunction ``f = phi/√d``."""

    lam: float
    phi: np.ndarray
    f: np.ndarray
    trivial: bool = False


@dataclass(frozen=True)
class Spectrum:
    pairs: tuple[EigenPair, ...]
    zero_tol: float = ZERO_TOL

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([p.lam for p in self.pairs])

    @property
    def nontrivial(self) -> tuple[EigenPair, ...]:
        return tuple(p for p in self.pairs if not p.trivial)

    @property
    def lambda1(self) -> float:
        """Smallest nontrivial eigenvalue."""
        return self.nontrivial[0].lam


def harmonic_eigenpairs(g: Graph, tol: float = 1e-10, zero_tol: float = ZERO_TOL, method: str = "lapack") -> Spectrum:
    vals, vecs = symmetric_eigen(sym_laplacian_matrix(g), tol=tol, method=method)
    s = 1.0 / np.sqrt(g.degrees)
    pairs = []
    for i, lam in enumerate(vals):
        phi = vecs[:, i].copy()
        f = phi * s
        phi.setflags(write=False)
        f.setflags(write=False)
        pairs.append(EigenPair(float(lam), phi, f, trivial=bool(lam <= zero_tol)))
    return Spectrum(tuple(pairs), zero_tol)


def eigen_residual(g: Graph, p: EigenPair) -> float:
    """max_x |(−Δf)(x) − λ f(x)|."""
    return float(np.abs(-apply_laplacian(g, p.f) - p.lam * p.f).max())
