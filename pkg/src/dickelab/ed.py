"""Exact-diagonalization engine: sector solves, ground-state scans,
parity-block solves and Fock-truncation control.

As the coupling grows, the ground state climbs a staircase of excitation
sectors: the optimal sector P* increments by one at a sequence of
critical couplings.  A scan records, per coupling, the Goldstone gap
E^{P*+1}_0 - E^{P*}_0, the Higgs gap E^{P*}_1 - E^{P*}_0 and the optical
gap E^{P*+1}_1 - E^{P*}_0.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from . import eigen
from .model import FullBasis, ModelParams, SectorBasis, build_full_hamiltonian, build_sector_hamiltonian, parity_blocks
from .theory import saddle_point

__all__ = [
    "SectorSpectrum",
    "FullSpectrum",
    "GroundScanPoint",
    "GroundSolve",
    "solve_sector",
    "solve_ground",
    "ground_state_scan",
    "solve_full",
    "auto_nmax",
    "DEFAULT_EIGEN_TOL",
    "NMAX_CAP",
]

DEFAULT_EIGEN_TOL = 1e-8
NMAX_CAP = 4096
_P_MAX_RETRIES = 6


@dataclass(frozen=True)
class SectorSpectrum:
    """Full spectrum of one excitation sector.

    ``amplitudes[s, l]`` is the coefficient of basis state s in the l-th
    eigenstate (energies ascending), normalized per column.
    ``max_residual`` and ``ortho_defect`` certify the decomposition.
    """

    basis: SectorBasis
    energies: np.ndarray
    amplitudes: np.ndarray
    max_residual: float
    ortho_defect: float

    @property
    def p(self) -> int:
        return self.basis.p


@dataclass(frozen=True)
class FullSpectrum:
    """Spectrum of one parity block of the truncated full basis.

    ``indices`` are the FullBasis flat indices spanned by this block;
    ``amplitudes[i, l]`` refers to ``indices[i]``.
    """

    parity: int
    basis: FullBasis
    indices: np.ndarray
    energies: np.ndarray
    amplitudes: np.ndarray
    max_residual: float
    ortho_defect: float


@dataclass(frozen=True)
class GroundScanPoint:
    """Per-coupling staircase record.

    ``e_higgs`` is None in the vacuum sector (dimension 1), not zero.
    """

    g: float
    p_star: int
    ground_energy: float
    e_goldstone: float
    e_higgs: float | None
    e_optical: float


@dataclass(frozen=True)
class GroundSolve:
    """A scan point together with the spectra of sectors P* and P*+1."""

    point: GroundScanPoint
    spectrum: SectorSpectrum
    spectrum_next: SectorSpectrum


def solve_sector(params: ModelParams, p: int, tol: float = DEFAULT_EIGEN_TOL) -> SectorSpectrum:
    """Certified spectrum of the excitation sector P (g' = 0)."""
    h = build_sector_hamiltonian(params, p)
    dec = eigen.eigh(h, tol=tol)
    return SectorSpectrum(
        basis=SectorBasis(p=p, n_atoms=params.n_atoms),
        energies=dec.eigenvalues,
        amplitudes=dec.eigenvectors,
        max_residual=dec.max_residual,
        ortho_defect=dec.ortho_defect,
    )


def default_p_max(params: ModelParams, g_max: float) -> int:
    """Sector range covering the staircase up to coupling g_max.

    The ground sector tracks the condensate occupation lambda_+^2, so
    four times the photon part plus slack covers every jump.
    """
    sp = saddle_point(replace(params, g=g_max))
    return math.ceil(4 * sp.lambda_a**2) + params.n_atoms + 4


def solve_ground(
    params: ModelParams, p_max: int | None = None, tol: float = DEFAULT_EIGEN_TOL
) -> GroundSolve:
    """Locate the ground sector P* and solve it and its neighbor.

    Diagonalizes sectors P = 0..p_max, picks the sector with the lowest
    ground energy (ties within 1e-12 go to the smaller P), and retries
    with a larger range until P* <= p_max - 2.

    Raises
    ------
    RuntimeError
        If the sector range is still exhausted after retries.
    """
    p_max_eff = default_p_max(params, params.g) if p_max is None else p_max
    for _ in range(_P_MAX_RETRIES):
        spectra = [solve_sector(params, p, tol=tol) for p in range(p_max_eff + 1)]
        e0 = np.array([s.energies[0] for s in spectra])
        e_min = e0.min()
        p_star = int(np.nonzero(e0 <= e_min + 1e-12)[0][0])
        if p_star <= p_max_eff - 2:
            spec = spectra[p_star]
            spec_next = spectra[p_star + 1]
            point = GroundScanPoint(
                g=params.g,
                p_star=p_star,
                ground_energy=float(spec.energies[0]),
                e_goldstone=float(spec_next.energies[0] - spec.energies[0]),
                e_higgs=(
                    float(spec.energies[1] - spec.energies[0])
                    if spec.basis.dim >= 2
                    else None
                ),
                e_optical=float(spec_next.energies[1] - spec.energies[0]),
            )
            return GroundSolve(point=point, spectrum=spec, spectrum_next=spec_next)
        p_max_eff = 2 * p_max_eff + 4
    raise RuntimeError(
        f"ground sector search exhausted p_max = {p_max_eff} after {_P_MAX_RETRIES} retries"
    )


def ground_state_scan(
    params_template: ModelParams,
    g_values,
    p_max: int | None = None,
    tol: float = DEFAULT_EIGEN_TOL,
) -> list[GroundScanPoint]:
    """Staircase scan over an ascending list of couplings.

    Results are in input order; each point is independent of the others.
    """
    g_values = np.asarray(g_values, dtype=float)
    if g_values.ndim != 1 or g_values.size == 0:
        raise ValueError("g_values must be a non-empty 1-d sequence")
    if np.any(np.diff(g_values) < 0):
        raise ValueError("g_values must be ascending")
    if p_max is None:
        p_max = default_p_max(params_template, float(g_values[-1]))
    return [
        solve_ground(replace(params_template, g=float(g)), p_max=p_max, tol=tol).point
        for g in g_values
    ]


def solve_full(
    params: ModelParams, n_max: int, parity: int, tol: float = DEFAULT_EIGEN_TOL
) -> FullSpectrum:
    """Certified spectrum of one parity block of the truncated model."""
    if parity not in (1, -1):
        raise ValueError(f"parity must be +1 or -1, got {parity}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    basis = FullBasis(n_atoms=params.n_atoms, n_max=n_max)
    h = build_full_hamiltonian(params, n_max)
    even, odd = parity_blocks(params.n_atoms, n_max)
    idx = even if parity == 1 else odd
    dec = eigen.eigh(h[np.ix_(idx, idx)], tol=tol)
    return FullSpectrum(
        parity=parity,
        basis=basis,
        indices=idx,
        energies=dec.eigenvalues,
        amplitudes=dec.eigenvectors,
        max_residual=dec.max_residual,
        ortho_defect=dec.ortho_defect,
    )


def auto_nmax(
    params: ModelParams,
    parity: int,
    tol: float = 1e-8,
    floor: int = 8,
    step: int = 10,
) -> int:
    """Smallest Fock truncation with converged low-lying energies.

    Doubles n_max from ``floor`` until the lowest three energies of the
    requested parity block move by less than ``tol`` when n_max grows by
    ``step``, then bisects down to the smallest such n_max.

    Raises
    ------
    RuntimeError
        If no converged truncation exists below ``NMAX_CAP``.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    lowest_cache: dict[int, np.ndarray] = {}

    def lowest(n: int) -> np.ndarray:
        if n not in lowest_cache:
            lowest_cache[n] = solve_full(params, n, parity).energies[:3]
        return lowest_cache[n]

    def converged(n: int) -> bool:
        a, b = lowest(n), lowest(n + step)
        k = min(a.size, b.size)
        return bool(np.abs(a[:k] - b[:k]).max() < tol)

    if converged(floor):
        return floor
    lo = floor
    hi = 2 * floor
    while not converged(hi):
        lo = hi
        hi *= 2
        if hi > NMAX_CAP:
            raise RuntimeError(f"auto_nmax exceeded the cap of {NMAX_CAP}")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if converged(mid):
            hi = mid
        else:
            lo = mid
    return hi
