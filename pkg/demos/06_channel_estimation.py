#!/usr/bin/env python3
# The channel-estimation story: a time-varying channel acting on a lattice of
# modulated pulses is a matrix acting on the data, its diagonal entries are
# the channel's diagonal samples, and those samples identify any channel
# inside a shift-invariant operator space.

import numpy as np

from opsis import (
    GeneratorSystem,
    berezin,
    build_lattice,
    channel_matrix,
    diag_channel_samples,
    gaussian_window,
    hs_norm,
    reconstruct,
    reconstruction_kit,
    synthesize,
    tf_shift,
    window_scheme,
)

rng = np.random.default_rng(5)
L = 8
lat = build_lattice((2, 2), L)
g = gaussian_window(L)
gt = gaussian_window(L)

# the unknown channel lives in a two-generator shift-invariant space
def unit_kernel():
    K = rng.standard_normal((L, L)) + 1j * rng.standard_normal((L, L))
    return K / np.linalg.norm(K)

system = GeneratorSystem(lat, (unit_kernel(), unit_kernel()))
c_true = rng.standard_normal((2, lat.size)) + 1j * rng.standard_normal((2, lat.size))
H = synthesize(system, c_true)

# transmit data on shifted pulses, receive through the channel
data = rng.standard_normal(lat.size) + 1j * rng.standard_normal(lat.size)
x = sum(cj * tf_shift(mu, g) for cj, mu in zip(data, lat.points))
y = H @ x
received = np.array([np.vdot(tf_shift(lam, gt), y) for lam in lat.points])

A = channel_matrix(H, g, gt, lat)
print("received data equals channel matrix times sent data:",
      np.abs(A @ data - received).max())

# the diagonal of that matrix is exactly the operator's sample sequence
scheme = window_scheme([(g, gt)])
s = diag_channel_samples(H, scheme, lat)[0]
print("diagonal of the channel matrix vs samples:",
      np.abs(np.diagonal(A) - s).max())

# and the samples are the lattice restriction of the full lower symbol
B = berezin(H, g, gt)
print("samples = lower symbol restricted to the lattice:",
      max(abs(B[p] - s[j]) for j, p in enumerate(lat.points)))

# one Gaussian channel pair is too few for two generators (alpha_A = 0);
# two pairs identify H perfectly from its diagonal samples
pairs = [(g, gt), (tf_shift((1, 1), g), tf_shift((0, 3), gt))]
scheme2 = window_scheme(pairs)
kit = reconstruction_kit(system, scheme2)
print(f"\ntwo channel pairs: alpha_A = {kit.alpha:.6f}")
s2 = diag_channel_samples(H, scheme2, lat)
H_hat = reconstruct(s2, kit)
print("channel identified from diagonal samples, rel error:",
      hs_norm(H - H_hat) / hs_norm(H))
