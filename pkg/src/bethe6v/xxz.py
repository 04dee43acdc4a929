"""Periodic XXZ chain: sector blocks, the closed-form energy, commutation.

Site i of the chain contributes +delta/2 to the diagonal when the arrows at
i and i+1 agree and -delta/2 when they differ, plus an exchange hop of
weight 1 between states that differ by swapping those two arrows.  The
block is accumulated site by site; the aggregate diagonal formula
(delta/2)(N - 2 * boundary count) is kept for tests only.
"""

from __future__ import annotations

import numpy as np

from . import caps
from .basis import enumerate_sector
from .errors import CapExceededError, SectorMismatchError
from .functions import MomentumSet
from .transfer import SectorMatrix

__all__ = [
    "build_hamiltonian_block",
    "energy_prediction",
    "commutator_norm",
]


def build_hamiltonian_block(N: int, n: int, delta: float,
                            dim_cap=None) -> SectorMatrix:
    """Sector block of the spin-chain Hamiltonian (exchange conserves n)."""
    if N < 2:
        raise ValueError("chain needs N >= 2")
    sector = enumerate_sector(N, n)
    dim = sector.dim
    cap = caps.dim_cap(dim_cap)
    if dim > cap:
        raise CapExceededError(f"sector dimension {dim} exceeds dense cap {cap}")
    entries = np.zeros((dim, dim))
    half_delta = 0.5 * float(delta)
    for row, state in enumerate(sector.states):
        occupied = frozenset(state.positions)
        diagonal = 0.0
        for i in range(1, N + 1):
            j = i % N + 1
            if (i in occupied) == (j in occupied):
                diagonal += half_delta
            else:
                diagonal -= half_delta
                swapped = tuple(sorted(occupied.symmetric_difference((i, j))))
                entries[row, sector.index_of(swapped)] += 1.0
        entries[row, row] += diagonal
    return SectorMatrix(N, n, dim, entries, sector, "hamiltonian", delta=float(delta))


def energy_prediction(m: MomentumSet, ring_size: int, delta: float) -> float:
    """Closed-form energy N*delta/2 - 2 sum_k (delta - cos p_k).

    Continuous through p = 0, so no branch split is needed here.
    """
    p = m.as_array()
    return float(ring_size * delta / 2.0 - 2.0 * np.sum(delta - np.cos(p)))


def commutator_norm(v: SectorMatrix, h: SectorMatrix) -> float:
    """Max absolute entry of VH - HV for two blocks of the same sector."""
    if (v.N, v.n) != (h.N, h.n):
        raise SectorMismatchError(
            f"blocks live in different sectors: ({v.N},{v.n}) vs ({h.N},{h.n})"
        )
    comm = v.entries @ h.entries - h.entries @ v.entries
    return float(np.max(np.abs(comm)))
