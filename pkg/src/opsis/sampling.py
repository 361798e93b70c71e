"""Diagonal-channel and average sampling of operators, the transfer-matrix
frame test, dual construction, and perfect reconstruction.

The sample of an operator T in channel m at lattice point lam is

    s[m](lam) = <translate(-lam, T) g_m, gt_m>,

which equals both <T shift(lam) g_m, shift(lam) gt_m> (a diagonal entry of
the channel matrix) and <T, translate(lam, gt_m (x) g_m)> (an average
sample against a rank-one averager).  For T synthesized from coefficients c
over a generator system, sampling is a lattice convolution,
s[m] = sum_n a[m, n] * c[n], with a[m, n] the samples of the generators
themselves.  Fiberwise, shat(xi) = Ahat(xi) chat(xi); a left inverse
Bhat(xi) of every fiber (the Moore-Penrose pseudoinverse by default, or any
member of the family Ahat+ + C (I - Ahat Ahat+)) turns into reconstruction
operators H_m, and

    T = sum_m sum_lam s[m](lam) translate(lam, H_m)

recovers every T in the span exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hs_ops import hs_inner, op_translate, rank_one
from .phase_space import (
    Lattice,
    coset_transversal,
    inv_symp_fourier,
    lattice_convolve,
    point_neg,
    symp_character_matrix,
)
from .si_space import GeneratorSystem, NotRieszError, riesz_check, synthesize
from .timefreq import tf_shift


class NotAFrameError(RuntimeError):
    """The transfer matrix has no positive lower frame bound."""


@dataclass(frozen=True, eq=False)
class SamplingScheme:
    """M sampling channels: window pairs (g_m, gt_m), or averager kernels Q_m.

    Window-pair schemes convert to averager schemes with Q_m = gt_m (x) g_m;
    both give the same samples.
    """

    windows: tuple[tuple[np.ndarray, np.ndarray], ...] | None = None
    averagers: tuple[np.ndarray, ...] | None = None

    def __post_init__(self):
        if (self.windows is None) == (self.averagers is None):
            raise ValueError("provide exactly one of windows or averagers")
        if self.windows is not None:
            pairs = tuple(
                (np.asarray(g, dtype=complex), np.asarray(gt, dtype=complex))
                for g, gt in self.windows
            )
            object.__setattr__(self, "windows", pairs)
        else:
            ops = tuple(np.asarray(Q, dtype=complex) for Q in self.averagers)
            object.__setattr__(self, "averagers", ops)

    @property
    def num_channels(self) -> int:
        return len(self.windows) if self.windows is not None else len(self.averagers)

    def average_operators(self) -> tuple[np.ndarray, ...]:
        if self.averagers is not None:
            return self.averagers
        return tuple(rank_one(gt, g) for g, gt in self.windows)


def window_scheme(pairs) -> SamplingScheme:
    return SamplingScheme(windows=tuple(pairs))


def average_scheme(ops) -> SamplingScheme:
    return SamplingScheme(averagers=tuple(ops))


def diag_channel_samples(T, scheme: SamplingScheme, lattice: Lattice) -> np.ndarray:
    """Samples s[m, j] = <translate(-lam_j, T) g_m, gt_m> for every channel.

    Needs a window-pair scheme; averager-only schemes sample through
    :func:`avg_samples`.
    """
    if scheme.windows is None:
        raise ValueError("scheme has no window pairs; use avg_samples")
    T = np.asarray(T, dtype=complex)
    L = lattice.modulus
    out = np.empty((scheme.num_channels, lattice.size), dtype=complex)
    for j, p in enumerate(lattice.points):
        Tt = op_translate(point_neg(p, L), T)
        for m, (g, gt) in enumerate(scheme.windows):
            out[m, j] = np.vdot(gt, Tt @ g)
    return out


def avg_samples(T, scheme: SamplingScheme, lattice: Lattice) -> np.ndarray:
    """Average samples s[m, j] = <T, translate(lam_j, Q_m)>."""
    T = np.asarray(T, dtype=complex)
    Qs = scheme.average_operators()
    out = np.empty((len(Qs), lattice.size), dtype=complex)
    for m, Q in enumerate(Qs):
        for j, p in enumerate(lattice.points):
            out[m, j] = hs_inner(T, op_translate(p, Q))
    return out


def berezin(T, g, gt) -> np.ndarray:
    """Lower-symbol table B[x, w] = <T shift((x, w)) g, shift((x, w)) gt> on all of Z_L^2.

    Restricted to a lattice this reproduces the diagonal channel samples.
    """
    T = np.asarray(T, dtype=complex)
    g = np.asarray(g, dtype=complex)
    gt = np.asarray(gt, dtype=complex)
    L = T.shape[0]
    B = np.empty((L, L), dtype=complex)
    rows = np.arange(L)[:, None]
    wrap = (rows + np.arange(L)[None, :]) % L
    for x in range(L):
        gx = np.roll(g, x)
        gtx = np.roll(gt, x)
        Mx = np.conj(gtx)[:, None] * T * gx[None, :]
        diag_sums = Mx[rows, wrap].sum(axis=0)
        B[x] = np.fft.ifft(diag_sums) * L
    return B


def channel_matrix(H, g, gt, lattice: Lattice) -> np.ndarray:
    """Input-output matrix of the channel H over shifted pulses.

    A[i, j] = <H shift(mu_j) g, shift(lam_i) gt> with rows lam_i and columns
    mu_j in the canonical lattice ordering: the received data is A @ c for
    transmitted coefficients c, and the diagonal equals the channel's
    diagonal samples for the pair (g, gt).
    """
    H = np.asarray(H, dtype=complex)
    U = np.stack([tf_shift(p, g) for p in lattice.points], axis=1)
    V = np.stack([tf_shift(p, gt) for p in lattice.points], axis=1)
    return V.conj().T @ (H @ U)


def cross_seq(system: GeneratorSystem, scheme: SamplingScheme) -> np.ndarray:
    """Generator sample sequences a[m, n, j], channel m against generator n.

    Window schemes use the diagonal-channel definition, averager schemes the
    trace pairing; for Q_m = gt_m (x) g_m the two coincide.
    """
    lat = system.lattice
    N = system.num_generators
    M = scheme.num_channels
    A = np.empty((M, N, lat.size), dtype=complex)
    if scheme.windows is not None:
        for n, S in enumerate(system.generators):
            A[:, n, :] = diag_channel_samples(S, scheme, lat)
    else:
        for n, S in enumerate(system.generators):
            A[:, n, :] = avg_samples(S, scheme, lat)
    return A


@dataclass(frozen=True, eq=False)
class TransferMatrix:
    """Fiberwise transform of the generator sample sequences.

    fibers[k] is the M x N matrix [symp_fourier(a[m, n])(xi_k)] at the k-th
    dual-transversal point; constant on annihilator cosets.
    """

    lattice: Lattice
    fibers: np.ndarray  # (K, M, N)

    @property
    def num_channels(self) -> int:
        return self.fibers.shape[1]

    @property
    def num_generators(self) -> int:
        return self.fibers.shape[2]


def transfer_matrix(A, lattice: Lattice) -> TransferMatrix:
    """Fiber matrices Ahat[k, m, n] = symp_fourier(a[m, n])(xi_k)."""
    A = np.asarray(A, dtype=complex)
    phi = symp_character_matrix(lattice)
    fibers = np.einsum("mnj,kj->kmn", A, phi)
    return TransferMatrix(lattice, fibers)


@dataclass(frozen=True)
class FrameBounds:
    """Extreme eigenvalues of Ahat(xi)^* Ahat(xi) over all fibers."""

    alpha: float
    beta: float
    diagnostic: str | None = None


def frame_bounds(tm: TransferMatrix) -> FrameBounds:
    """alpha = min over fibers of the smallest eigenvalue of Ahat^* Ahat, beta the max.

    Fewer channels than generators forces a zero lower bound; a zero alpha is
    a result, not an error.
    """
    sv = np.linalg.svd(tm.fibers, compute_uv=False)
    beta = float((sv[:, 0] ** 2).max())
    if tm.num_channels < tm.num_generators:
        return FrameBounds(0.0, beta, "rank deficient: M < N")
    alpha = float((sv[:, -1] ** 2).min())
    return FrameBounds(alpha, beta)


def dual_left_inverse(tm: TransferMatrix, C=None, rcond: float = 1e-10,
                      tol: float | None = None) -> np.ndarray:
    """Fiberwise left inverses Bhat[k] with Bhat[k] @ Ahat[k] = I_N.

    Default is the Moore-Penrose pseudoinverse (singular values below
    rcond * largest are treated as zero).  An optional C of shape (K, N, M)
    selects the family member Ahat+ + C (I_M - Ahat Ahat+).  Raises
    NotAFrameError when the lower frame bound is not positive.
    """
    fb = frame_bounds(tm)
    if tol is None:
        tol = 1e-10 * fb.beta
    if not fb.alpha > tol:
        detail = fb.diagnostic or f"alpha = {fb.alpha:.3e}"
        raise NotAFrameError(f"transfer matrix is not a frame ({detail})")
    K, M, N = tm.fibers.shape
    B = np.stack([np.linalg.pinv(F, rcond=rcond) for F in tm.fibers])
    if C is not None:
        C = np.asarray(C, dtype=complex)
        if C.shape != (K, N, M):
            raise ValueError(f"C must have shape {(K, N, M)}, got {C.shape}")
        eye = np.eye(M)
        B = B + np.stack([C[k] @ (eye - tm.fibers[k] @ B[k]) for k in range(K)])
    worst = max(
        float(np.abs(B[k] @ tm.fibers[k] - np.eye(N)).max()) for k in range(K)
    )
    if worst > 1e-10:
        raise NotAFrameError(f"left-inverse residual {worst:.3e} exceeds 1e-10")
    return B


@dataclass(frozen=True, eq=False)
class ReconstructionKit:
    """Everything needed to reconstruct from samples on one lattice.

    Carries the frame bounds, the dual fibers Bhat, the dual coefficient
    sequences b[n, m] (inverse transforms of the Bhat entries) and the
    reconstruction operators H_m synthesized from them.
    """

    system: GeneratorSystem
    scheme: SamplingScheme
    transfer: TransferMatrix
    alpha: float
    beta: float
    dual_fibers: np.ndarray  # (K, N, M)
    b: np.ndarray  # (N, M, K_lattice)
    recon_ops: tuple[np.ndarray, ...]


def reconstruction_kit(system: GeneratorSystem, scheme: SamplingScheme,
                       C=None, tol: float | None = None) -> ReconstructionKit:
    """Build dual sequences and reconstruction operators for a system and scheme.

    Gates on the Riesz property of the generators and on a positive lower
    frame bound of the transfer matrix, then sets
    b[n, m] = inv_symp_fourier(Bhat[:, n, m]) and H_m = synthesize(b[:, m]).
    """
    report = riesz_check(system)
    if not report.is_riesz:
        detail = report.diagnostic or f"lower fiber bound {report.lower:.3e}"
        raise NotRieszError(f"generator translates are not a Riesz sequence ({detail})")
    lat = system.lattice
    A = cross_seq(system, scheme)
    tm = transfer_matrix(A, lat)
    fb = frame_bounds(tm)
    B = dual_left_inverse(tm, C=C, tol=tol)
    N, M = system.num_generators, scheme.num_channels
    b = np.empty((N, M, lat.size), dtype=complex)
    for n in range(N):
        for m in range(M):
            b[n, m] = inv_symp_fourier(B[:, n, m], lat)
    recon_ops = tuple(synthesize(system, b[:, m, :]) for m in range(M))
    return ReconstructionKit(system, scheme, tm, fb.alpha, fb.beta, B, b, recon_ops)


def reconstruct(samples, kit: ReconstructionKit) -> np.ndarray:
    """Evaluate sum_m sum_lam samples[m](lam) translate(lam, H_m).

    Exact on the generator span.  Fed samples of an operator outside the
    span it returns the kit-induced consistent estimate, with no projection
    property claimed.
    """
    samples = np.asarray(samples, dtype=complex)
    lat = kit.system.lattice
    M = len(kit.recon_ops)
    if samples.shape != (M, lat.size):
        raise ValueError(f"sample array shape {samples.shape}, expected {(M, lat.size)}")
    L = lat.modulus
    out = np.zeros((L, L), dtype=complex)
    for m, H in enumerate(kit.recon_ops):
        for s, p in zip(samples[m], lat.points):
            if s != 0:
                out += s * op_translate(p, H)
    return out


def coefficient_frame_expansion(samples, kit: ReconstructionKit) -> np.ndarray:
    """Coefficient recovery c[n] = sum_m samples[m] * b[n, m] (lattice convolutions)."""
    samples = np.asarray(samples, dtype=complex)
    lat = kit.system.lattice
    N, M = kit.b.shape[0], kit.b.shape[1]
    out = np.zeros((N, lat.size), dtype=complex)
    for n in range(N):
        for m in range(M):
            out[n] += lattice_convolve(samples[m], kit.b[n, m], lat)
    return out


def sublattice_inflate(system: GeneratorSystem, sub: Lattice) -> GeneratorSystem:
    """Rewrite the system over a sub-lattice with one generator per coset.

    With coset representatives lam_1..lam_I of `sub` inside the system
    lattice, the new generators are translate(lam_i, S_n), ordered n-major,
    and the span is unchanged: re-indexed coefficients (see
    :func:`inflate_coefficients`) synthesize the same operator.
    """
    reps = coset_transversal(system.lattice, sub)
    gens = tuple(
        op_translate(rep, S) for S in system.generators for rep in reps
    )
    return GeneratorSystem(sub, gens)


def inflate_coefficients(system: GeneratorSystem, sub: Lattice, coefs) -> np.ndarray:
    """Re-index coefficients for an inflated system: c'[n, i](mu) = c[n](lam_i + mu)."""
    coefs = np.asarray(coefs, dtype=complex)
    lat = system.lattice
    reps = coset_transversal(lat, sub)
    N = system.num_generators
    out = np.empty((N * len(reps), sub.size), dtype=complex)
    for n in range(N):
        for i, rep in enumerate(reps):
            for j, mu in enumerate(sub.points):
                x = (rep[0] + mu[0]) % lat.modulus
                w = (rep[1] + mu[1]) % lat.modulus
                out[n * len(reps) + i, j] = coefs[n, lat.index[(x, w)]]
    return out


def interpolation_deviation(kit: ReconstructionKit) -> float:
    """Max |samples of H_m in channel n - delta_{m,n} delta_{lam,0}| over all m, n, lam.

    Zero (to rounding) exactly when the number of channels equals the number
    of generators and the fibers are invertible.
    """
    lat = kit.system.lattice
    M = len(kit.recon_ops)
    dev = 0.0
    for m, H in enumerate(kit.recon_ops):
        if kit.scheme.windows is not None:
            s = diag_channel_samples(H, kit.scheme, lat)
        else:
            s = avg_samples(H, kit.scheme, lat)
        target = np.zeros_like(s)
        target[m, lat.index[(0, 0)]] = 1.0
        dev = max(dev, float(np.abs(s - target).max()))
    return dev
