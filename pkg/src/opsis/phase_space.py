"""Finite phase space Z_L x Z_L: lattices, annihilators, dual transversals,
symplectic Fourier series and lattice convolution.

A phase-space point is a pair (x, w) of residues mod L: x is a cyclic time
shift, w a frequency shift.  All Fourier analysis on lattices runs through
the symplectic pairing

    sigma(z, z') = z.w * z'.x - z'.w * z.x   (mod L),

whose characters lam -> exp(2 pi i sigma(lam, xi) / L) identify the group
with its own dual.  For a lattice (subgroup) the annihilator collects the
points pairing trivially with every lattice element; one canonical
representative per annihilator coset then serves as the dual group of the
lattice, and there are exactly |lattice| of them.

Conventions relied on throughout the package:

* lattice elements and transversal points are enumerated in lexicographic
  (x-major) order, so derived arrays are byte-reproducible;
* the forward symplectic Fourier series carries no prefactor and the
  inverse carries 1/|lattice|, which keeps the convolution theorem
  prefactor-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

Point = tuple[int, int]


class LatticeError(ValueError):
    """Invalid lattice descriptor, out-of-range point, or mismatched operands."""


def _check_point(z, L: int) -> None:
    x, w = z
    if not (0 <= x < L and 0 <= w < L):
        raise LatticeError(f"point {tuple(z)!r} is not a residue pair mod {L}")


def symplectic_form(z: Point, zp: Point, L: int) -> int:
    """Standard symplectic form sigma(z, z') = z.w*z'.x - z'.w*z.x, reduced mod L."""
    _check_point(z, L)
    _check_point(zp, L)
    return (z[1] * zp[0] - zp[1] * z[0]) % L


def point_neg(z: Point, L: int) -> Point:
    return (-z[0]) % L, (-z[1]) % L


def point_add(z: Point, zp: Point, L: int) -> Point:
    return (z[0] + zp[0]) % L, (z[1] + zp[1]) % L


@dataclass(frozen=True)
class Lattice:
    """A subgroup of Z_L x Z_L with elements in lexicographic order.

    Construct through :func:`build_lattice`; direct construction assumes the
    point tuple is already a sorted subgroup.
    """

    modulus: int
    points: tuple[Point, ...]

    def __post_init__(self):
        L = self.modulus
        if L < 2:
            raise LatticeError(f"modulus must be >= 2, got {L}")
        if not self.points or self.points[0] != (0, 0):
            raise LatticeError("lattice must contain (0, 0) as its first element")
        if list(self.points) != sorted(set(self.points)):
            raise LatticeError("lattice points must be unique and lexicographically sorted")
        for p in self.points:
            _check_point(p, L)
        if (L * L) % len(self.points) != 0:
            raise LatticeError("subgroup order must divide L^2")

    def __repr__(self):
        return f"Lattice(modulus={self.modulus}, size={self.size})"

    @property
    def size(self) -> int:
        return len(self.points)

    @cached_property
    def index(self) -> dict[Point, int]:
        return {p: i for i, p in enumerate(self.points)}

    @cached_property
    def xs(self) -> np.ndarray:
        return np.array([p[0] for p in self.points])

    @cached_property
    def ws(self) -> np.ndarray:
        return np.array([p[1] for p in self.points])

    @cached_property
    def _grid_index(self) -> np.ndarray:
        # dense (L, L) -> element index, -1 off the lattice
        g = np.full((self.modulus, self.modulus), -1, dtype=np.int64)
        g[self.xs, self.ws] = np.arange(self.size)
        return g

    @cached_property
    def _sub_table(self) -> np.ndarray:
        # [i, j] -> index of points[i] - points[j]
        L = self.modulus
        dx = (self.xs[:, None] - self.xs[None, :]) % L
        dw = (self.ws[:, None] - self.ws[None, :]) % L
        table = self._grid_index[dx, dw]
        if (table < 0).any():
            raise LatticeError("point set is not closed under subtraction")
        return table

    def __contains__(self, p) -> bool:
        return tuple(p) in self.index


def build_lattice(descriptor, L: int) -> Lattice:
    """Build a lattice from a separable pair (a, b) or from a generator list.

    The separable pair means the subgroup aZ_L x bZ_L, which requires a | L
    and b | L; a generator list produces the subgroup it generates.
    """
    descriptor = tuple(descriptor)
    if len(descriptor) == 2 and all(isinstance(d, int) for d in descriptor):
        a, b = descriptor
        if a < 1 or b < 1 or L % a or L % b:
            raise LatticeError(f"separable descriptor ({a}, {b}) needs a | L and b | L with L={L}")
        pts = tuple((x, w) for x in range(0, L, a) for w in range(0, L, b))
        return Lattice(L, pts)
    gens = [(x % L, w % L) for x, w in descriptor]
    closure = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = point_add(p, g, L)
            if q not in closure:
                closure.add(q)
                frontier.append(q)
    return Lattice(L, tuple(sorted(closure)))


@lru_cache(maxsize=64)
def annihilator(lat: Lattice) -> Lattice:
    """All points pairing trivially with the lattice under the symplectic character.

    Exhaustive test over the L^2 candidates: mu is kept when
    sigma(mu, lam) = 0 mod L for every lattice element lam.
    """
    L = lat.modulus
    cand_x = np.repeat(np.arange(L), L)
    cand_w = np.tile(np.arange(L), L)
    pair = (np.outer(cand_w, lat.xs) - np.outer(cand_x, lat.ws)) % L
    keep = ~pair.any(axis=1)
    pts = tuple((int(x), int(w)) for x, w in zip(cand_x[keep], cand_w[keep]))
    return Lattice(L, pts)


@lru_cache(maxsize=64)
def dual_transversal(lat: Lattice) -> tuple[Point, ...]:
    """One canonical representative per annihilator coset, in lexicographic order.

    The representative of a coset is its lexicographically smallest member;
    there are exactly |lat| of them.
    """
    ann = annihilator(lat)
    L = lat.modulus
    seen = bytearray(L * L)
    reps = []
    for x in range(L):
        for w in range(L):
            if seen[x * L + w]:
                continue
            reps.append((x, w))
            for ax, aw in ann.points:
                seen[((x + ax) % L) * L + (w + aw) % L] = 1
    return tuple(reps)


def coset_transversal(lat: Lattice, sub: Lattice) -> tuple[Point, ...]:
    """Canonical representatives of the cosets of `sub` inside `lat`.

    Requires `sub` to be a subgroup of `lat` on the same modulus.  Each
    representative is the lexicographically smallest member of its coset.
    """
    if sub.modulus != lat.modulus:
        raise LatticeError("sub-lattice must share the modulus of the parent lattice")
    parent = set(lat.points)
    if not set(sub.points) <= parent:
        raise LatticeError("sub-lattice is not contained in the parent lattice")
    L = lat.modulus
    seen: set[Point] = set()
    reps = []
    for p in lat.points:
        if p in seen:
            continue
        reps.append(p)
        for q in sub.points:
            seen.add(point_add(p, q, L))
    return tuple(reps)


@lru_cache(maxsize=4)
def symp_character_matrix(lat: Lattice) -> np.ndarray:
    """Matrix Phi[k, j] = exp(2 pi i sigma(lam_j, xi_k) / L) over the dual transversal.

    Row k is the character attached to transversal point xi_k, column j runs
    over the lattice elements.  Forward transforms are `Phi @ seq`.
    """
    L = lat.modulus
    trans = dual_transversal(lat)
    tx = np.array([p[0] for p in trans])
    tw = np.array([p[1] for p in trans])
    s = (tx[:, None] * lat.ws[None, :] - tw[:, None] * lat.xs[None, :]) % L
    return np.exp(2j * np.pi * s / L)


def _as_seq(c, lat: Lattice) -> np.ndarray:
    c = np.asarray(c, dtype=complex)
    if c.shape != (lat.size,):
        raise LatticeError(f"sequence shape {c.shape} does not match lattice of size {lat.size}")
    return c


def symp_fourier(c, lat: Lattice) -> np.ndarray:
    """Symplectic Fourier series of a lattice sequence, on the dual transversal.

    F(xi) = sum_lam c(lam) exp(2 pi i sigma(lam, xi) / L); the value depends
    only on the annihilator coset of xi.  Output is aligned with
    :func:`dual_transversal`.
    """
    return symp_character_matrix(lat) @ _as_seq(c, lat)


def inv_symp_fourier(F, lat: Lattice) -> np.ndarray:
    """Inverse of :func:`symp_fourier`: c(lam) = (1/|lat|) sum_xi F(xi) e^{-2 pi i sigma(lam, xi)/L}."""
    F = np.asarray(F, dtype=complex)
    trans = dual_transversal(lat)
    if F.shape != (len(trans),):
        raise LatticeError(f"fiber data shape {F.shape} does not match transversal of size {len(trans)}")
    return symp_character_matrix(lat).conj().T @ F / lat.size


def lattice_convolve(c, d, lat: Lattice) -> np.ndarray:
    """Cyclic group convolution on the lattice: (c * d)(lam) = sum_mu c(mu) d(lam - mu)."""
    c = _as_seq(c, lat)
    d = _as_seq(d, lat)
    return d[lat._sub_table] @ c
