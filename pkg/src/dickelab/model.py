"""Model parameters, basis conventions and Hamiltonian assembly.

N two-level atoms couple to a single cavity mode,

    H = omega_a a'a + omega_b J_z + (g/sqrt(N)) (a' J- + a J+)
        + (g'/sqrt(N)) (a' J+ + a J-)
        + (lambda_z/j) J_z a'a + (u/j) J_z^2,

with collective spin operators J_z = sum_i sigma_z^i / 2, J+- = sum_i
sigma_+-^i and j = N/2.  Only the totally symmetric spin sector (total
spin j) is kept, so the atomic state is labelled by s = 0..N with
J_z eigenvalue m = s - N/2.

With g' = 0 the total excitation number P = a'a + (J_z + j) is conserved
and the Hamiltonian splits into sectors of dimension min(P, N) + 1.
With g' > 0 only the parity (-1)^(n+s) survives, so the truncated
photon+spin space splits into two parity blocks.

All matrices are real symmetric: off-diagonal elements are taken
non-negative (a global gauge choice that leaves spectra and squared
amplitudes unchanged).
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "ModelParams",
    "SectorBasis",
    "FullBasis",
    "sector_dimension",
    "build_sector_hamiltonian",
    "build_full_hamiltonian",
    "parity_blocks",
    "photon_annihilation",
    "total_excitation_operator",
]


@dataclass(frozen=True)
class ModelParams:
    """Physical couplings of a run; the single source of truth.

    Parameters
    ----------
    omega_a : float
        Cavity photon frequency, > 0.
    omega_b : float
        Atomic level splitting, > 0.
    g : float
        Collective rotating-wave coupling, >= 0.
    g_prime : float
        Collective counter-rotating coupling, >= 0.
    lambda_z : float
        Photon-qubit potential-scattering strength (can be negative).
    u : float
        Qubit-qubit interaction strength (can be negative).
    n_atoms : int
        Number of qubits N >= 1; fixes j = N/2.
    """

    omega_a: float = 1.0
    omega_b: float = 1.0
    g: float = 0.0
    g_prime: float = 0.0
    lambda_z: float = 0.0
    u: float = 0.0
    n_atoms: int = 1

    def __post_init__(self):
        if not self.omega_a > 0:
            raise ValueError(f"omega_a must be positive, got {self.omega_a}")
        if not self.omega_b > 0:
            raise ValueError(f"omega_b must be positive, got {self.omega_b}")
        if self.g < 0:
            raise ValueError(f"g must be non-negative, got {self.g}")
        if self.g_prime < 0:
            raise ValueError(f"g_prime must be non-negative, got {self.g_prime}")
        if not isinstance(self.n_atoms, (int, np.integer)) or self.n_atoms < 1:
            raise ValueError(f"n_atoms must be an integer >= 1, got {self.n_atoms}")
        for name in ("omega_a", "omega_b", "g", "g_prime", "lambda_z", "u"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def j(self) -> float:
        """Total collective spin j = N/2."""
        return self.n_atoms / 2


@dataclass(frozen=True)
class SectorBasis:
    """Basis of one conserved-excitation sector (g' = 0 only).

    State ``s`` in 0..dim-1 is the spin state |j, s - N/2> paired with
    the photon Fock state |P - s>.
    """

    p: int
    n_atoms: int

    def __post_init__(self):
        if self.p < 0:
            raise ValueError(f"sector label P must be >= 0, got {self.p}")
        if self.n_atoms < 1:
            raise ValueError(f"n_atoms must be >= 1, got {self.n_atoms}")

    @property
    def dim(self) -> int:
        return min(self.p, self.n_atoms) + 1

    def photons(self, s):
        """Photon occupation of basis state s."""
        return self.p - s

    def spin_z(self, s):
        """J_z eigenvalue m = s - N/2 of basis state s."""
        return s - self.n_atoms / 2


@dataclass(frozen=True)
class FullBasis:
    """Truncated photon x symmetric-spin product basis.

    State (n, s) with n = 0..n_max photons and s = 0..N atomic
    excitations sits at flat index ``n * (N + 1) + s``.  Its parity is
    (-1)^(n+s); the two parity values partition the basis.
    """

    n_atoms: int
    n_max: int

    def __post_init__(self):
        if self.n_max < 0:
            raise ValueError(f"n_max must be >= 0, got {self.n_max}")
        if self.n_atoms < 1:
            raise ValueError(f"n_atoms must be >= 1, got {self.n_atoms}")

    @property
    def dim(self) -> int:
        return (self.n_max + 1) * (self.n_atoms + 1)

    def index(self, n: int, s: int) -> int:
        return n * (self.n_atoms + 1) + s

    def state(self, index: int) -> tuple[int, int]:
        """Return (n, s) of a flat index."""
        return divmod(index, self.n_atoms + 1)

    def parities(self) -> np.ndarray:
        """Parity (+1 or -1) of every basis state, in index order."""
        n, s = np.divmod(np.arange(self.dim), self.n_atoms + 1)
        return np.where((n + s) % 2 == 0, 1, -1)


def sector_dimension(n_atoms: int, p: int) -> int:
    """Dimension min(P, N) + 1 of the excitation sector P."""
    if n_atoms < 1:
        raise ValueError(f"n_atoms must be >= 1, got {n_atoms}")
    if p < 0:
        raise ValueError(f"sector label P must be >= 0, got {p}")
    return min(p, n_atoms) + 1


def build_sector_hamiltonian(params: ModelParams, p: int) -> np.ndarray:
    """Assemble the Hamiltonian block of the excitation sector P.

    Requires g' = 0; the counter-rotating term breaks the U(1) symmetry
    that defines the sectors.  Matrix elements follow a|n> = sqrt(n)|n-1>
    and J+|j,m> = sqrt((j-m)(j+m+1))|j,m+1> with m = s - N/2:

        H[s, s]   = omega_a (P-s) + omega_b m
                    + lambda_z m (P-s)/j + u m^2/j
        H[s, s+1] = (g/sqrt(N)) sqrt((s+1)(N-s)) sqrt(P-s)

    Returns
    -------
    numpy.ndarray
        Dense symmetric matrix over ``SectorBasis(p, params.n_atoms)``.
    """
    if params.g_prime != 0:
        raise ValueError("excitation sectors exist only for g_prime = 0")
    basis = SectorBasis(p=p, n_atoms=params.n_atoms)
    N = params.n_atoms
    j = params.j
    s = np.arange(basis.dim)
    m = s - N / 2
    diag = (
        params.omega_a * (p - s)
        + params.omega_b * m
        + params.lambda_z * m * (p - s) / j
        + params.u * m**2 / j
    )
    h = np.diag(diag)
    if basis.dim > 1:
        sl = s[:-1]
        off = (params.g / np.sqrt(N)) * np.sqrt((sl + 1) * (N - sl)) * np.sqrt(p - sl)
        rows = np.arange(basis.dim - 1)
        h[rows, rows + 1] = off
        h[rows + 1, rows] = off
    return h


def build_full_hamiltonian(params: ModelParams, n_max: int) -> np.ndarray:
    """Assemble the Hamiltonian on the truncated full basis.

    Rows and columns follow ``FullBasis(params.n_atoms, n_max)`` index
    order.  The rotating term couples (n, s) <-> (n+1, s-1) with
    (g/sqrt(N)) sqrt(n+1) sqrt(s(N-s+1)); the counter-rotating term
    couples (n, s) <-> (n+1, s+1) with (g'/sqrt(N)) sqrt(n+1)
    sqrt((s+1)(N-s)).  Couplings that would leave the truncation are
    dropped, so with g' = 0 the matrix commutes exactly with n + s.
    """
    basis = FullBasis(n_atoms=params.n_atoms, n_max=n_max)
    N = params.n_atoms
    j = params.j
    n, s = np.divmod(np.arange(basis.dim), N + 1)
    m = s - N / 2
    h = np.zeros((basis.dim, basis.dim))
    h[np.arange(basis.dim), np.arange(basis.dim)] = (
        params.omega_a * n
        + params.omega_b * m
        + params.lambda_z * m * n / j
        + params.u * m**2 / j
    )
    # rotating: (n, s) -> (n+1, s-1)
    src = np.where((n + 1 <= n_max) & (s >= 1))[0]
    if src.size and params.g != 0:
        dst = src + (N + 1) - 1
        val = (params.g / np.sqrt(N)) * np.sqrt(n[src] + 1) * np.sqrt(s[src] * (N - s[src] + 1))
        h[src, dst] += val
        h[dst, src] += val
    # counter-rotating: (n, s) -> (n+1, s+1)
    src = np.where((n + 1 <= n_max) & (s + 1 <= N))[0]
    if src.size and params.g_prime != 0:
        dst = src + (N + 1) + 1
        val = (params.g_prime / np.sqrt(N)) * np.sqrt(n[src] + 1) * np.sqrt((s[src] + 1) * (N - s[src]))
        h[src, dst] += val
        h[dst, src] += val
    return h


def parity_blocks(n_atoms: int, n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Partition FullBasis indices into (even, odd) parity index arrays."""
    basis = FullBasis(n_atoms=n_atoms, n_max=n_max)
    par = basis.parities()
    return np.where(par == 1)[0], np.where(par == -1)[0]


def photon_annihilation(basis: FullBasis) -> np.ndarray:
    """Photon annihilation operator a on the truncated full basis."""
    a = np.zeros((basis.dim, basis.dim))
    n, s = np.divmod(np.arange(basis.dim), basis.n_atoms + 1)
    src = np.where(n >= 1)[0]
    a[src - (basis.n_atoms + 1), src] = np.sqrt(n[src])
    return a


def total_excitation_operator(basis: FullBasis) -> np.ndarray:
    """Diagonal operator n + s counting total excitations."""
    n, s = np.divmod(np.arange(basis.dim), basis.n_atoms + 1)
    return np.diag((n + s).astype(float))
