"""Lattice-shift-invariant operator subspaces: generator systems, synthesis,
Riesz-sequence verification by three routes, and coefficient recovery.

A generator system is a lattice together with operators S_1..S_N; the
subspace it spans consists of all sums

    sum_n sum_lam c_n(lam) translate(lam, S_n),

with one lattice sequence per generator.  Whether the translates form a
Riesz sequence is decided on the fibers of the dual transversal: the
correlation sequences r[n, n'](lam) = <S_n, translate(lam, S_n')> have
symplectic Fourier transforms Ghat(xi), an N x N Hermitian PSD matrix per
fiber, and the big Gram matrix of all translates is unitarily equivalent to
the direct sum of the Ghat(xi).  Two independent cross-checks are kept: the
dense Gram matrix itself, and the annihilator-periodized outer products of
the spreading transforms, which equal Ghat up to the single constant
|lattice| / L.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hs_ops import fourier_wigner, hs_inner, op_translate
from .phase_space import (
    Lattice,
    Point,
    annihilator,
    dual_transversal,
    inv_symp_fourier,
    point_add,
    symp_character_matrix,
    symp_fourier,
)


class NotRieszError(RuntimeError):
    """The generator translates do not form a Riesz sequence."""


@dataclass(frozen=True, eq=False)
class GeneratorSystem:
    """A lattice plus an ordered tuple of generator kernels."""

    lattice: Lattice
    generators: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("at least one generator is required")
        gens = tuple(np.asarray(S, dtype=complex) for S in self.generators)
        object.__setattr__(self, "generators", gens)
        L = self.lattice.modulus
        for S in gens:
            if S.shape != (L, L):
                raise ValueError(f"generator shape {S.shape} does not match L={L}")

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    def translate_stack(self) -> np.ndarray:
        """All translates as rows, shape (N * |lattice|, L^2), (n, lam) n-major."""
        L = self.lattice.modulus
        rows = [
            op_translate(p, S).reshape(L * L)
            for S in self.generators
            for p in self.lattice.points
        ]
        return np.array(rows)


@dataclass(frozen=True)
class RieszReport:
    """Outcome of a Riesz-sequence test: extreme fiber eigenvalues and verdict."""

    is_riesz: bool
    lower: float
    upper: float
    route: str
    diagnostic: str | None = None


def synthesize(system: GeneratorSystem, coefs) -> np.ndarray:
    """Sum coefs[n, j] * translate(lattice.points[j], S_n) over all n, j."""
    coefs = _as_coefs(system, coefs)
    L = system.lattice.modulus
    out = np.zeros((L, L), dtype=complex)
    for n, S in enumerate(system.generators):
        for c, p in zip(coefs[n], system.lattice.points):
            if c != 0:
                out += c * op_translate(p, S)
    return out


def _as_coefs(system: GeneratorSystem, coefs) -> np.ndarray:
    coefs = np.asarray(coefs, dtype=complex)
    want = (system.num_generators, system.lattice.size)
    if coefs.shape != want:
        raise ValueError(f"coefficient array shape {coefs.shape}, expected {want}")
    return coefs


def correlation_sequences(system: GeneratorSystem) -> np.ndarray:
    """r[n, n', j] = <S_n, translate(lattice.points[j], S_n')>."""
    N = system.num_generators
    K = system.lattice.size
    L = system.lattice.modulus
    gen_vec = np.array([S.reshape(L * L) for S in system.generators])
    trans_vec = np.empty((N, K, L * L), dtype=complex)
    for n, S in enumerate(system.generators):
        for j, p in enumerate(system.lattice.points):
            trans_vec[n, j] = op_translate(p, S).reshape(L * L)
    return np.einsum("na,mja->nmj", gen_vec, trans_vec.conj())


def gram_fibers(system: GeneratorSystem) -> np.ndarray:
    """Fiber matrices Ghat[k, n, n'] = sum_j r[n, n', j] * chi_{xi_k}(lam_j).

    One Hermitian PSD N x N matrix per dual-transversal point; their spectra,
    unioned over k, reproduce the spectrum of the dense Gram matrix.
    """
    r = correlation_sequences(system)
    phi = symp_character_matrix(system.lattice)
    return np.einsum("nmj,kj->knm", r, phi)


def brute_gram(system: GeneratorSystem):
    """Dense Gram matrix of all translates plus its extreme eigenvalues.

    Independent oracle for the fiber route; refuses above 4096 vectors.
    """
    N, K = system.num_generators, system.lattice.size
    if N * K > 4096:
        raise ValueError(f"brute_gram limited to 4096 vectors, got {N * K}")
    V = system.translate_stack()
    G = V @ V.conj().T
    eigs = np.linalg.eigvalsh(G)
    return G, float(eigs[0]), float(eigs[-1])


def gw_matrix(system: GeneratorSystem, xi: Point) -> np.ndarray:
    """Annihilator-periodized outer product of the spreading transforms at xi.

    G[n, n'] = sum over annihilator points of
    F_n(xi + a) conj(F_n'(xi + a)) with F_n the raw spreading transform of
    S_n.  Equals gram_fibers at the same fiber up to the constant
    |lattice| / L; constant on annihilator cosets by construction.
    """
    L = system.lattice.modulus
    ann = annihilator(system.lattice)
    F = np.array([fourier_wigner(S) for S in system.generators])
    pts = [point_add(xi, a, L) for a in ann.points]
    W = np.array([[F[n][p] for p in pts] for n in range(system.num_generators)])
    return W @ W.conj().T


def gw_fibers(system: GeneratorSystem) -> np.ndarray:
    """gw_matrix evaluated on the whole dual transversal, shape (K, N, N)."""
    L = system.lattice.modulus
    ann = annihilator(system.lattice)
    F = np.array([fourier_wigner(S) for S in system.generators])
    out = []
    for xi in dual_transversal(system.lattice):
        pts = [point_add(xi, a, L) for a in ann.points]
        W = np.array([[F[n][p] for p in pts] for n in range(system.num_generators)])
        out.append(W @ W.conj().T)
    return np.array(out)


def riesz_check(system: GeneratorSystem, tol: float | None = None, route: str = "fibers") -> RieszReport:
    """Decide the Riesz property from the extreme eigenvalues over all fibers.

    Default tolerance is 1e-10 times the upper bound.  route="gw" uses the
    periodized spreading transforms scaled by |lattice| / L instead of the
    correlation fibers; both agree to rounding.
    """
    L = system.lattice.modulus
    N, K = system.num_generators, system.lattice.size
    if route == "fibers":
        fibers = gram_fibers(system)
    elif route == "gw":
        fibers = gw_fibers(system) * (K / L)
    else:
        raise ValueError(f"unknown route {route!r}")
    eigs = np.linalg.eigvalsh(fibers)
    # fibers are PSD; tiny negative eigenvalues are rounding noise
    lower = max(float(eigs[:, 0].min()), 0.0)
    upper = float(eigs[:, -1].max())
    if tol is None:
        tol = 1e-10 * upper
    if N * K > L * L:
        return RieszReport(False, 0.0, upper, route,
                           f"dimension count: N*|lattice| = {N * K} exceeds L^2 = {L * L}")
    return RieszReport(bool(lower > tol), lower, upper, route)


def coefficients(system: GeneratorSystem, T, tol: float | None = None) -> np.ndarray:
    """Coefficients of the orthogonal projection of T onto the generator span.

    Analyzes T against every translate, then solves the Gram system fiber by
    fiber.  Round trip: synthesize(coefficients(T)) returns T whenever T lies
    in the span.  Raises NotRieszError when the system fails riesz_check.
    """
    report = riesz_check(system, tol=tol)
    if not report.is_riesz:
        detail = report.diagnostic or f"lower fiber bound {report.lower:.3e}"
        raise NotRieszError(f"generator translates are not a Riesz sequence ({detail})")
    T = np.asarray(T, dtype=complex)
    lat = system.lattice
    N, K = system.num_generators, lat.size
    q = np.empty((N, K), dtype=complex)
    for n, S in enumerate(system.generators):
        for j, p in enumerate(lat.points):
            q[n, j] = hs_inner(T, op_translate(p, S))
    qhat = np.array([symp_fourier(q[n], lat) for n in range(N)])
    fibers = gram_fibers(system)
    chat = np.empty((N, K), dtype=complex)
    for k in range(K):
        chat[:, k] = np.linalg.solve(fibers[k].T, qhat[:, k])
    return np.array([inv_symp_fourier(chat[n], lat) for n in range(N)])
