"""Hilbert-Schmidt operators on Z_L as L x L kernel matrices.

An operator S acts as (S f)(t) = sum_s kernel[t, s] f(s); the trace inner
product <S, T> = tr(S T^*) coincides with the entrywise product of kernels.
Operator translation conjugates with a time-frequency shift,

    translate(z, S) = shift(z) S shift(z)^*,

an honest group action (the shift phases cancel).  The module provides the
two unitary symbol transforms (Kohn-Nirenberg for every L, Weyl for odd L),
the raw spreading transform tr[shift(-z) S], Gabor multipliers, and the
convolution of a phase-space function with an operator.

Normalizations are pinned by exact unitarity: with the L^{-1/2} prefactor
below, kn_symbol satisfies <sigma_S, sigma_T> = <S, T> identically, and the
symbol of the identity operator is the constant L^{-1/2}.
"""

from __future__ import annotations

import numpy as np

from .phase_space import Point
from .timefreq import UnsupportedModulusError, tf_shift_matrix


def _as_kernel(S) -> np.ndarray:
    S = np.asarray(S, dtype=complex)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ValueError(f"operator kernel must be square, got shape {S.shape}")
    return S


def identity(L: int) -> np.ndarray:
    return np.eye(L, dtype=complex)


def hs_inner(S, T) -> complex:
    """Trace inner product <S, T> = tr(S T^*) = sum kernel_S * conj(kernel_T)."""
    S = _as_kernel(S)
    T = _as_kernel(T)
    if S.shape != T.shape:
        raise ValueError(f"size mismatch: {S.shape} vs {T.shape}")
    return complex(np.vdot(T, S))


def hs_norm(S) -> float:
    return float(np.linalg.norm(_as_kernel(S)))


def rank_one(phi, psi) -> np.ndarray:
    """Rank-one operator e -> <e, psi> phi, with kernel phi(t) conj(psi(s))."""
    return np.outer(np.asarray(phi, dtype=complex), np.conj(np.asarray(psi, dtype=complex)))


def op_translate(z: Point, S) -> np.ndarray:
    """Conjugate S with the shift by z: kernel[t, u] -> e^{2 pi i w (t-u)/L} kernel[t-x, u-x]."""
    S = _as_kernel(S)
    L = S.shape[0]
    x, w = z[0] % L, z[1] % L
    ph = np.exp(2j * np.pi * w * np.arange(L) / L)
    return np.roll(S, (x, x), axis=(0, 1)) * np.outer(ph, ph.conj())


def kn_symbol(S) -> np.ndarray:
    """Kohn-Nirenberg symbol sigma[t, nu] = L^{-1/2} sum_s kernel[t, s] e^{-2 pi i nu (t-s)/L}.

    A unitary map from kernels to phase-space functions; translating the
    operator by z translates the symbol cyclically by z in both axes.
    """
    S = _as_kernel(S)
    L = S.shape[0]
    A = np.fft.ifft(S, axis=1) * L
    tn = np.outer(np.arange(L), np.arange(L))
    return A * np.exp(-2j * np.pi * tn / L) / np.sqrt(L)


def kn_operator(sigma) -> np.ndarray:
    """Inverse of :func:`kn_symbol`: kernel[t, s] = L^{-1/2} sum_nu sigma[t, nu] e^{2 pi i nu (t-s)/L}."""
    sigma = _as_kernel(sigma)
    L = sigma.shape[0]
    tn = np.outer(np.arange(L), np.arange(L))
    B = sigma * np.exp(2j * np.pi * tn / L)
    return np.fft.fft(B, axis=1) / np.sqrt(L)


def weyl_symbol(S) -> np.ndarray:
    """Weyl symbol on odd L: a[x, w] = L^{-1/2} sum_t kernel[x + t h, x - t h] e^{-2 pi i w t/L}.

    h = 2^{-1} mod L.  Unitary, with the same translation covariance as the
    Kohn-Nirenberg symbol.
    """
    S = _as_kernel(S)
    L = S.shape[0]
    if L % 2 == 0:
        raise UnsupportedModulusError(f"weyl_symbol needs odd modulus, got L={L}")
    h = pow(2, -1, L)
    x = np.arange(L)[:, None]
    t = np.arange(L)[None, :]
    D = S[(x + t * h) % L, (x - t * h) % L]
    return np.fft.fft(D, axis=1) / np.sqrt(L)


def weyl_operator(a) -> np.ndarray:
    """Inverse of :func:`weyl_symbol` (odd L)."""
    a = _as_kernel(a)
    L = a.shape[0]
    if L % 2 == 0:
        raise UnsupportedModulusError(f"weyl_operator needs odd modulus, got L={L}")
    h = pow(2, -1, L)
    E = np.fft.ifft(a, axis=1) * L
    u = np.arange(L)[:, None]
    v = np.arange(L)[None, :]
    return E[(h * (u + v)) % L, (u - v) % L] / np.sqrt(L)


def fourier_wigner(S) -> np.ndarray:
    """Raw spreading transform F[x, w] = tr[shift(-(x, w)) S].

    The half phase that sometimes decorates this transform is ill-defined
    for even L and cancels in every product F_n(z) conj(F_m(z)) used here,
    so the raw trace is stored.  Satisfies
    F(translate(lam, S))(z) = e^{2 pi i sigma(lam, z)/L} F(S)(z) and
    sum_z |F(z)|^2 = L ||S||^2.
    """
    S = _as_kernel(S)
    L = S.shape[0]
    F = np.empty((L, L), dtype=complex)
    for x in range(L):
        d = np.diagonal(np.roll(S, -x, axis=0))
        F[x] = np.fft.fft(d)
    return F


def gabor_multiplier(mask, lattice, psi, phi) -> np.ndarray:
    """Operator sum_lam mask(lam) translate(lam, phi (x) psi) for a mask on a lattice.

    Acting on eta this is sum_lam mask(lam) V_psi eta(lam) shift(lam) phi:
    analyze with window psi, reweight on the lattice, resynthesize with
    atom phi.
    """
    mask = np.asarray(mask, dtype=complex)
    if mask.shape != (lattice.size,):
        raise ValueError(f"mask shape {mask.shape} does not match lattice of size {lattice.size}")
    base = rank_one(phi, psi)
    out = np.zeros_like(base)
    for c, p in zip(mask, lattice.points):
        if c != 0:
            out += c * op_translate(p, base)
    return out


def fn_op_convolve(g, S) -> np.ndarray:
    """Convolution of a phase-space function with an operator: sum_z g[z] translate(z, S).

    On the symbol side this is plain cyclic convolution: the Kohn-Nirenberg
    symbol of the result equals g convolved with the symbol of S.
    """
    g = np.asarray(g, dtype=complex)
    S = _as_kernel(S)
    L = S.shape[0]
    if g.shape != (L, L):
        raise ValueError(f"phase-space function shape {g.shape} does not match L={L}")
    out = np.zeros_like(S)
    for x in range(L):
        for w in range(L):
            c = g[x, w]
            if c != 0:
                out += c * op_translate((x, w), S)
    return out


def shift_operator_matrix(z: Point, L: int) -> np.ndarray:
    """The shift by z as an explicit Hilbert-Schmidt kernel (alias of the shift matrix)."""
    return tf_shift_matrix(z, L)
