#!/usr/bin/env python3
# Time-frequency shifts on Z_L: unitarity, the commutation phase, the
# short-time Fourier transform, and the periodized Gaussian window.

import numpy as np

from opsis import (
    dft,
    gaussian_window,
    shift_composition_phase,
    stft,
    tf_shift,
    tf_shift_adjoint,
    tf_shift_matrix,
)

L = 8
rng = np.random.default_rng(1)
f = rng.standard_normal(L) + 1j * rng.standard_normal(L)

# unitary shifts and their composition phase
z, zp = (3, 5), (2, 7)
print(f"||shift(z) f|| - ||f|| = {np.linalg.norm(tf_shift(z, f)) - np.linalg.norm(f):.2e}")
theta = shift_composition_phase(z, zp, L)
lhs = tf_shift(z, tf_shift(zp, f))
rhs = np.exp(2j * np.pi * theta / L) * tf_shift((z[0] + zp[0], z[1] + zp[1]), f)
print(f"shift({z}) shift({zp}) = e^(2 pi i {theta}/{L}) shift(z+z'), "
      f"dev = {np.abs(lhs - rhs).max():.2e}")

# the adjoint is the inverse, with an explicit phase
P = tf_shift_matrix(z, L)
print("adjoint vs conjugate transpose:",
      np.abs(P.conj().T @ f - tf_shift_adjoint(z, f)).max())

# Moyal: total STFT energy is L ||phi||^2 ||psi||^2
phi = rng.standard_normal(L) + 1j * rng.standard_normal(L)
psi = rng.standard_normal(L) + 1j * rng.standard_normal(L)
V = stft(phi, psi)
total = (np.abs(V) ** 2).sum()
print(f"\nMoyal: sum |V|^2 = {total:.6f}, "
      f"L ||phi||^2 ||psi||^2 = {L * np.linalg.norm(phi)**2 * np.linalg.norm(psi)**2:.6f}")

# the Gaussian window: unit norm, even, decaying to the antipode
g = gaussian_window(12)
print("\ngaussian_window(12), real part:")
print(np.round(g.real, 6))
print("norm =", np.linalg.norm(g))
print("DFT is again Gaussian-shaped:", np.round(np.abs(dft(g)), 6))

# on even L the even symmetry of g forces exact ambiguity zeros at
# frequency L/2 and odd time shift; on odd L the surface never vanishes
A = np.abs(stft(g, g))
print("min |V_g g| at L=12 (even):", A.min(), "at",
      tuple(int(i) for i in np.unravel_index(A.argmin(), A.shape)))
g9 = gaussian_window(9)
print("min |V_g g| at L=9 (odd): ", np.abs(stft(g9, g9)).min())
