"""Dense spectral oracle: every prediction is checked against it.

The eigensolver is numpy's symmetric routine; the decomposition is accepted
only if its own self-consistency defects (orthonormality and reconstruction)
are recorded, so a broken decomposition cannot silently validate anything.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import caps
from .errors import CapExceededError
from .transfer import SectorMatrix

__all__ = [
    "SpectrumResult",
    "dense_spectrum",
    "check_eigenpair",
    "match_eigenvalue",
]


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    eigenvalues: np.ndarray          # ascending
    orthonormality_defect: float     # max |Q^T Q - I|
    reconstruction_defect: float     # ||Q D Q^T - A||_F / max(1, ||A||_F)


def dense_spectrum(m: SectorMatrix, dim_cap=None) -> SpectrumResult:
    """Full real spectrum of a symmetric sector block."""
    cap = caps.spectrum_cap(dim_cap)
    if m.dim > cap:
        raise CapExceededError(f"dimension {m.dim} exceeds spectrum cap {cap}")
    A = m.entries
    asym = float(np.max(np.abs(A - A.T)))
    if asym > 1e-12:
        raise ValueError(f"matrix asymmetry {asym:g} exceeds 1e-12")
    vals, vecs = np.linalg.eigh(A)
    ortho = float(np.max(np.abs(vecs.T @ vecs - np.eye(m.dim))))
    recon = (vecs * vals) @ vecs.T
    rec = float(np.linalg.norm(recon - A) / max(1.0, np.linalg.norm(A)))
    return SpectrumResult(vals, ortho, rec)


def check_eigenpair(m: SectorMatrix, vector, lam) -> float:
    """Relative residual ||A v - lam v|| / ||v||."""
    v = np.asarray(vector)
    if v.shape != (m.dim,):
        raise ValueError(f"vector shape {v.shape} does not match dimension {m.dim}")
    norm = float(np.linalg.norm(v))
    if norm == 0.0:
        raise ValueError("zero vector")
    return float(np.linalg.norm(m.entries @ v - lam * v) / norm)


def match_eigenvalue(lam, spec: SpectrumResult, tol: float) -> list[int]:
    """Indices of all spectrum members within tol * max(1, |lam|), nearest first.

    Degenerate levels come back as a cluster; an empty list means no match.
    """
    gaps = np.abs(spec.eigenvalues - lam)
    bound = tol * max(1.0, abs(lam))
    hits = np.nonzero(gaps <= bound)[0].tolist()
    return sorted(hits, key=lambda i: gaps[i])
