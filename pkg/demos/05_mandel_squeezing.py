"""Number squeezing of the cavity field across the superradiant phase.

The Mandel factor Q_M = -1 + Var(n)/<n> stays between -1 and -1/2 at
resonance: the ground state is always number squeezed, approaching a
photon Fock state (Q_M -> -1) at strong coupling.
"""

import numpy as np

import dickelab as dl

print(f"{'g/g_c':>6} {'P*':>4} {'<n> ED':>9} {'lambda_a^2':>11} {'Q_M ED':>9} {'Q_M analytic':>13}")
for ratio in np.linspace(1.5, 4.0, 11):
    params = dl.ModelParams(omega_a=1.0, omega_b=1.0, g=float(ratio), n_atoms=3)
    gs = dl.solve_ground(params)
    sp = dl.saddle_point(params)
    pr = dl.predictions(params)
    q = dl.mandel_q(gs.spectrum)
    print(f"{ratio:6.2f} {gs.point.p_star:4d} {dl.mean_photon_number(gs.spectrum):9.4f} "
          f"{sp.lambda_a**2:11.4f} {q:9.5f} {pr.mandel_q:13.5f}")
    assert -1 < q < -0.5

print("\nFock-state limit: Q_M -> -1 as the coupling grows")
for ratio in (5.0, 10.0, 20.0):
    params = dl.ModelParams(omega_a=1.0, omega_b=1.0, g=float(ratio), n_atoms=3)
    print(f"  g/g_c = {ratio:5.1f}: analytic Q_M = {dl.predictions(params).mandel_q:.5f}")
