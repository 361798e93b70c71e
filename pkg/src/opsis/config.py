"""Experiment configuration: JSON schema validation, deterministic seeding,
and construction of lattices, generator systems and sampling schemes.

Randomness is driven by a portable, fully documented generator so that
fixtures reproduce across implementations and platforms:

* the core stream is SplitMix64: state advances by 0x9E3779B97F4A7C15 mod
  2^64, and each output is the state passed through the standard finalizer
  (z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
  z *= 0x94D049BB133111EB; z ^= z >> 31);
* uniforms in [0, 1) take the top 53 bits, u = (out >> 11) * 2^-53;
* complex standard normals come from one Box-Muller step per value,
  (sqrt(-2 ln u1) cos(2 pi u2) + i sqrt(-2 ln u1) sin(2 pi u2)) / sqrt(2),
  with u1 in (0, 1] from ((out >> 11) + 1) * 2^-53, so E|z|^2 = 1.

A master stream seeded with the config seed hands one 64-bit subseed to
every random item that does not carry its own "seed" key, walking the
config in a fixed order: generators first, then scheme entries, then the
coefficient stream, then the dual-perturbation stream.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .hs_ops import rank_one
from .phase_space import Lattice, LatticeError, build_lattice
from .sampling import SamplingScheme, average_scheme, window_scheme
from .si_space import GeneratorSystem
from .timefreq import gaussian_window

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class ConfigError(ValueError):
    """Invalid or inconsistent experiment configuration."""


def _item_seed(spec, master: "PortableRng", label):
    if "seed" not in spec:
        return master.next_u64()
    seed = spec["seed"]
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError(f"'{label}.seed' must be an integer")
    return seed


class PortableRng:
    """SplitMix64 stream with uniform and complex-normal draws (see module docs)."""

    def __init__(self, seed: int):
        self._state = int(seed) & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0 ** -53

    def complex_normal(self, shape) -> np.ndarray:
        n = int(np.prod(shape))
        out = np.empty(n, dtype=complex)
        for i in range(n):
            u1 = ((self.next_u64() >> 11) + 1) * 2.0 ** -53
            u2 = (self.next_u64() >> 11) * 2.0 ** -53
            r = math.sqrt(-2.0 * math.log(u1))
            out[i] = complex(r * math.cos(2 * math.pi * u2),
                             r * math.sin(2 * math.pi * u2)) / math.sqrt(2)
        return out.reshape(shape)


@dataclass
class ExperimentConfig:
    """Resolved experiment inputs plus raw options for the runners."""

    raw: dict
    L: int
    seed: int
    lattice: Lattice | None
    sublattice: Lattice | None
    generator_kernels: tuple[np.ndarray, ...] | None
    system: GeneratorSystem | None
    scheme: SamplingScheme | None
    coef_seed: int
    dual_seed: int
    options: dict = field(default_factory=dict)


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    return raw


def _require_int(raw, key, minimum=None):
    val = raw.get(key)
    if not isinstance(val, int) or isinstance(val, bool):
        raise ConfigError(f"'{key}' must be an integer, got {val!r}")
    if minimum is not None and val < minimum:
        raise ConfigError(f"'{key}' must be >= {minimum}, got {val}")
    return val


def _build_lattice(spec, L, label):
    if not isinstance(spec, dict):
        raise ConfigError(f"'{label}' must be an object")
    try:
        if "generators" in spec:
            pts = [tuple(int(v) for v in p) for p in spec["generators"]]
            return build_lattice(pts, L)
        a = _require_int(spec, "a", minimum=1)
        b = _require_int(spec, "b", minimum=1)
        return build_lattice((a, b), L)
    except (LatticeError, TypeError, KeyError) as exc:
        raise ConfigError(f"invalid '{label}': {exc}") from exc


def _complex_vector(values, L, label):
    try:
        vec = np.array([complex(re, im) for re, im in values])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"'{label}' must be a list of [re, im] pairs: {exc}") from exc
    if vec.shape != (L,):
        raise ConfigError(f"'{label}' must have length {L}, got {vec.shape}")
    return vec


def _window(spec, L, master: PortableRng, label):
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"'{label}' must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "gaussian":
        return gaussian_window(L)
    if kind == "delta":
        at = spec.get("at", 0)
        if not isinstance(at, int) or not 0 <= at < L:
            raise ConfigError(f"'{label}.at' must be an integer in [0, {L})")
        vec = np.zeros(L, dtype=complex)
        vec[at] = 1.0
        return vec
    if kind == "random":
        vec = PortableRng(_item_seed(spec, master, label)).complex_normal(L)
        return vec / np.linalg.norm(vec)
    if kind == "explicit":
        return _complex_vector(spec.get("values"), L, f"{label}.values")
    raise ConfigError(f"unknown window kind {kind!r} in '{label}'")


def _generator(spec, L, master: PortableRng, label):
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError(f"'{label}' must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "rank_one":
        left = _window(spec.get("left"), L, master, f"{label}.left")
        right = _window(spec.get("right"), L, master, f"{label}.right")
        return rank_one(left, right)
    if kind == "random":
        kern = PortableRng(_item_seed(spec, master, label)).complex_normal((L, L))
        return kern / np.linalg.norm(kern)
    if kind == "explicit_kernel":
        rows = spec.get("kernel")
        if not isinstance(rows, list) or len(rows) != L:
            raise ConfigError(f"'{label}.kernel' must be a list of {L} rows")
        return np.array([_complex_vector(row, L, f"{label}.kernel") for row in rows])
    raise ConfigError(f"unknown generator kind {kind!r} in '{label}'")


def parse_config(raw: dict, seed_override: int | None = None) -> ExperimentConfig:
    """Validate a raw config dict and build the experiment objects it describes.

    Lattice, system and scheme are optional at this stage; runners demand
    the pieces they actually need.
    """
    L = _require_int(raw, "L", minimum=2)
    seed = seed_override if seed_override is not None else raw.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError(f"'seed' must be an integer, got {seed!r}")
    master = PortableRng(seed)

    lattice = None
    if "lattice" in raw:
        lattice = _build_lattice(raw["lattice"], L, "lattice")

    kernels = None
    system = None
    if "generators" in raw:
        if lattice is None and "sweep" not in raw:
            raise ConfigError("'generators' given without a 'lattice'")
        specs = raw["generators"]
        if not isinstance(specs, list) or not specs:
            raise ConfigError("'generators' must be a non-empty list")
        kernels = tuple(
            _generator(s, L, master, f"generators[{i}]") for i, s in enumerate(specs)
        )
        if lattice is not None:
            system = GeneratorSystem(lattice, kernels)

    scheme = None
    if "scheme" in raw:
        spec = raw["scheme"]
        if not isinstance(spec, dict):
            raise ConfigError("'scheme' must be an object")
        if ("windows" in spec) == ("averagers" in spec):
            raise ConfigError("'scheme' needs exactly one of 'windows' or 'averagers'")
        if "windows" in spec:
            items = spec["windows"]
            if not isinstance(items, list) or not items:
                raise ConfigError("'scheme.windows' must be a non-empty list")
            pairs = []
            for i, item in enumerate(items):
                if not isinstance(item, dict):
                    raise ConfigError(f"'scheme.windows[{i}]' must be an object")
                g = _window(item.get("g"), L, master, f"scheme.windows[{i}].g")
                gt = _window(item.get("g_tilde"), L, master, f"scheme.windows[{i}].g_tilde")
                pairs.append((g, gt))
            scheme = window_scheme(pairs)
        else:
            items = spec["averagers"]
            if not isinstance(items, list) or not items:
                raise ConfigError("'scheme.averagers' must be a non-empty list")
            ops = [
                _generator(item, L, master, f"scheme.averagers[{i}]")
                for i, item in enumerate(items)
            ]
            scheme = average_scheme(ops)

    sublattice = None
    if "sublattice" in raw:
        sublattice = _build_lattice(raw["sublattice"], L, "sublattice")
        if lattice is not None:
            if not set(sublattice.points) <= set(lattice.points):
                raise ConfigError("'sublattice' is not contained in 'lattice'")

    coef_seed = master.next_u64()
    dual_seed = master.next_u64()

    options = {
        k: raw[k]
        for k in ("channel", "sweep", "tolerances", "dual_perturbation")
        if k in raw
    }
    return ExperimentConfig(
        raw=raw,
        L=L,
        seed=seed,
        lattice=lattice,
        sublattice=sublattice,
        generator_kernels=kernels,
        system=system,
        scheme=scheme,
        coef_seed=coef_seed,
        dual_seed=dual_seed,
        options=options,
    )
