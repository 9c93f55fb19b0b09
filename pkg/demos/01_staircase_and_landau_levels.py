"""Ground-state staircase and Landau-level structure of the energy levels.

Sweeping the coupling at resonance, the number of excitations P* in the
ground state climbs by one at a sequence of critical couplings.  Deep in
the superradiant phase the levels organize into Landau-level-like towers:
a large intra-sector (Higgs) scale and a tiny inter-sector (Goldstone)
scale that shrinks as 1/N.
"""

import numpy as np

import dickelab as dl

params = dl.ModelParams(omega_a=1.0, omega_b=1.0, g=1.0, n_atoms=5)

print("N = 5 qubits at resonance; critical coupling g_c =", dl.critical_coupling(params))

grid = np.linspace(0.5, 3.0, 400)
points = dl.ground_state_scan(params, grid)
stars = np.array([p.p_star for p in points])

print("\nStaircase: couplings where the ground sector increments")
for i in np.nonzero(np.diff(stars) > 0)[0]:
    print(f"  P* {stars[i]} -> {stars[i + 1]:2d}   between g = {grid[i]:.4f} and {grid[i + 1]:.4f}")

print("\nLevel structure at g = 3 g_c (energies above the ground state):")
g = 3.0
ground = dl.solve_ground(dl.ModelParams(omega_a=1, omega_b=1, g=g, n_atoms=5))
e0 = ground.point.ground_energy
for p in range(ground.point.p_star - 2, ground.point.p_star + 3):
    spec = dl.solve_sector(dl.ModelParams(omega_a=1, omega_b=1, g=g, n_atoms=5), p)
    levels = ", ".join(f"{e - e0:8.4f}" for e in spec.energies[:3])
    print(f"  sector P = {p:2d}:  {levels}")

theory = dl.effective_theory(dl.ModelParams(omega_a=1, omega_b=1, g=g, n_atoms=5))
print(f"\nHiggs scale E_H = {theory.e_higgs:.4f} vs Goldstone scale ~ D = {theory.d:.4f}")
print(f"scale separation E_H/D = {theory.e_higgs / theory.d:.0f} (grows with N)")
print("\nLandau-level formula (l + 1/2) E_H + (D/2)(m + l - alpha)^2 at l=0, m=0..2:")
for m in range(3):
    print(f"  m = {m}: {dl.landau_energy(theory, 0, m):.4f}")
