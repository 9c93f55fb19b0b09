"""Brute-force cross-check against the unreduced 2^N qubit register.

The production Hamiltonians act on the totally symmetric spin sector
only.  This module rebuilds the model from individual Pauli operators on
the full 2^N register, projects onto the symmetric (Dicke-state)
subspace, and exposes a spectrum comparison.  Exponential in N: intended
for N <= 3 and small photon truncations only.
"""

import math
from dataclasses import dataclass

import numpy as np

from .model import ModelParams, build_full_hamiltonian

__all__ = ["OracleReport", "symmetric_projector", "brute_force_hamiltonian", "oracle_check"]

_SIGMA_PLUS = np.array([[0.0, 0.0], [1.0, 0.0]])  # raises |down> -> |up>
_SIGMA_Z = np.diag([-1.0, 1.0])  # |down>, |up> ordering


@dataclass(frozen=True)
class OracleReport:
    params: ModelParams
    n_max: int
    max_spectrum_deviation: float


def _site_operator(op: np.ndarray, site: int, n_atoms: int) -> np.ndarray:
    mats = [np.eye(2)] * n_atoms
    mats[site] = op
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def _collective_spin(n_atoms: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(J_z, J_plus, J_minus) on the 2^N register, J_z = sum sigma_z/2."""
    dim = 2**n_atoms
    jz = np.zeros((dim, dim))
    jp = np.zeros((dim, dim))
    for i in range(n_atoms):
        jz += _site_operator(_SIGMA_Z, i, n_atoms) / 2
        jp += _site_operator(_SIGMA_PLUS, i, n_atoms)
    return jz, jp, jp.T


def symmetric_projector(n_atoms: int) -> np.ndarray:
    """(N+1) x 2^N isometry onto the Dicke states |j = N/2, s - N/2>.

    Row s is the normalized equal superposition of all register states
    with s atoms excited, matching the SectorBasis/FullBasis spin order.
    """
    dim = 2**n_atoms
    proj = np.zeros((n_atoms + 1, dim))
    for config in range(dim):
        s = bin(config).count("1")
        proj[s, config] = 1.0
    for s in range(n_atoms + 1):
        proj[s] /= math.sqrt(math.comb(n_atoms, s))
    return proj


def brute_force_hamiltonian(params: ModelParams, n_max: int) -> np.ndarray:
    """Model Hamiltonian built from Pauli operators, then projected.

    Returns the symmetric-subspace restriction in FullBasis index order,
    directly comparable with ``build_full_hamiltonian``.
    """
    n = params.n_atoms
    fock = n_max + 1
    a = np.diag(np.sqrt(np.arange(1, fock)), 1)
    num = a.T @ a
    jz, jp, jm = _collective_spin(n)
    eye_f = np.eye(fock)
    eye_s = np.eye(2**n)
    root_n = math.sqrt(n)
    h = (
        params.omega_a * np.kron(num, eye_s)
        + params.omega_b * np.kron(eye_f, jz)
        + (params.g / root_n) * (np.kron(a.T, jm) + np.kron(a, jp))
        + (params.g_prime / root_n) * (np.kron(a.T, jp) + np.kron(a, jm))
        + (params.lambda_z / params.j) * np.kron(num, jz)
        + (params.u / params.j) * np.kron(eye_f, jz @ jz)
    )
    proj = np.kron(eye_f, symmetric_projector(n))
    return proj @ h @ proj.T


def oracle_check(params: ModelParams, n_max: int) -> OracleReport:
    """Compare production and brute-force spectra on the symmetric sector.

    Raises
    ------
    ValueError
        Outside the supported desk-scale window N <= 3, n_max <= 6.
    """
    if params.n_atoms > 3:
        raise ValueError(f"the brute-force oracle supports n_atoms <= 3, got {params.n_atoms}")
    if n_max > 6:
        raise ValueError(f"the brute-force oracle supports n_max <= 6, got {n_max}")
    h_fast = build_full_hamiltonian(params, n_max)
    h_brute = brute_force_hamiltonian(params, n_max)
    dev = float(np.abs(np.linalg.eigvalsh(h_fast) - np.linalg.eigvalsh(h_brute)).max())
    return OracleReport(params=params, n_max=n_max, max_spectrum_deviation=dev)
