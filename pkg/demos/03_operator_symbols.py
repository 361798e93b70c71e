#!/usr/bin/env python3
# Operators as L x L kernels and their phase-space faces: Kohn-Nirenberg and
# Weyl symbols, the spreading transform, Gabor multipliers, and the
# convolution of a function with an operator.

import numpy as np

from opsis import (
    build_lattice,
    fn_op_convolve,
    fourier_wigner,
    gabor_multiplier,
    hs_inner,
    identity,
    kn_operator,
    kn_symbol,
    op_translate,
    stft,
    tf_shift,
    weyl_operator,
    weyl_symbol,
)

rng = np.random.default_rng(2)
L = 8
S = rng.standard_normal((L, L)) + 1j * rng.standard_normal((L, L))
T = rng.standard_normal((L, L)) + 1j * rng.standard_normal((L, L))

# the Kohn-Nirenberg symbol is a unitary change of face
sig = kn_symbol(S)
print("KN round trip:", np.abs(kn_operator(sig) - S).max())
print("KN unitarity |<sig_S, sig_T> - <S, T>| =",
      abs(np.vdot(kn_symbol(T), sig) - hs_inner(S, T)))
print("KN symbol of the identity is constant", kn_symbol(identity(L))[0, 0].real,
      "= 1/sqrt(L) =", 1 / np.sqrt(L))

# operator translation becomes a plain cyclic shift of the symbol
z = (3, 6)
dev = np.abs(kn_symbol(op_translate(z, S)) - np.roll(sig, z, axis=(0, 1))).max()
print(f"covariance: symbol of translate({z}, S) is the symbol rolled by {z}, dev {dev:.2e}")

# Weyl symbol on an odd modulus
L5 = 5
S5 = rng.standard_normal((L5, L5)) + 1j * rng.standard_normal((L5, L5))
print("\nWeyl round trip (L=5):", np.abs(weyl_operator(weyl_symbol(S5)) - S5).max())

# spreading transform: tr[shift(-z) S], an orthogonal-basis readout
F = fourier_wigner(S)
print("\nspreading: F(0,0) - tr(S) =", abs(F[0, 0] - np.trace(S)))
print("energy: sum |F|^2 - L ||S||^2 =",
      abs((np.abs(F) ** 2).sum() - L * np.linalg.norm(S) ** 2))

# Gabor multiplier: mask on a lattice between analysis and synthesis windows
lat = build_lattice((2, 2), L)
phi = rng.standard_normal(L) + 1j * rng.standard_normal(L)
psi = rng.standard_normal(L) + 1j * rng.standard_normal(L)
mask = rng.standard_normal(lat.size)
G = gabor_multiplier(mask, lat, psi, phi)
eta = rng.standard_normal(L) + 1j * rng.standard_normal(L)
V = stft(eta, psi)
direct = sum(mask[j] * V[p] * tf_shift(p, phi) for j, p in enumerate(lat.points))
print("\nGabor multiplier kernel-sum vs analyze-reweight-synthesize:",
      np.abs(G @ eta - direct).max())

# convolving a phase-space function with an operator convolves the symbols
g = rng.standard_normal((L, L))
lhs = kn_symbol(fn_op_convolve(g, S))
rhs = np.fft.ifft2(np.fft.fft2(g) * np.fft.fft2(sig))
print("convolution lemma |sig_(g*S) - g * sig_S|_max =", np.abs(lhs - rhs).max())
