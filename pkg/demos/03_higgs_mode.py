"""Higgs (amplitude) mode in the photon-number correlation function.

Inside one excitation sector the first excited state sits an energy E_H
above the ground state; the number-number correlation function exposes
it as a single sharp line whose weight obeys an exact variance sum rule.
"""

import numpy as np

import dickelab as dl
from dickelab.observables import number_correlation

print(f"{'g/g_c':>6} {'P*':>4} {'E_H ED':>10} {'E_H analytic':>13} {'C_H ED':>10} "
      f"{'C_H analytic':>13} {'Q_M ED':>9}")
for ratio in np.linspace(2.0, 3.0, 11):
    params = dl.ModelParams(omega_a=1.0, omega_b=1.0, g=float(ratio), n_atoms=3)
    gs = dl.solve_ground(params)
    pr = dl.predictions(params)
    lines = number_correlation(gs.spectrum).lines
    print(f"{ratio:6.2f} {gs.point.p_star:4d} {gs.point.e_higgs:10.5f} {pr.e_higgs:13.5f} "
          f"{lines[0].weight:10.5f} {pr.c_higgs:13.5f} {dl.mandel_q(gs.spectrum):9.5f}")

print("\nSum rule: total number-correlation weight equals Var(n):")
params = dl.ModelParams(omega_a=1.0, omega_b=1.0, g=2.5, n_atoms=3)
gs = dl.solve_ground(params)
cs = number_correlation(gs.spectrum)
var = dl.photon_number_variance(gs.spectrum)
print(f"  sum of weights = {cs.total_weight():.12f}, Var(n) = {var:.12f}, "
      f"defect = {abs(cs.total_weight() - var):.2e}")

print("\nImaginary-time decay of the number correlator (dominated by E_H):")
taus = [0.0, 0.2, 0.5, 1.0]
values = dl.evaluate_time_correlation(cs, taus)
for tau, value in zip(taus, values):
    print(f"  tau = {tau:4.1f}: C(tau) = {value:.6f}")
