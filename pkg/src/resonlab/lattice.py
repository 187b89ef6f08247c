"""Bit coding of a volume partitioned into elementary optical domains.

A volume V is divided into cubes of edge l_c (the resonance wavelength);
partial boundary cubes are discarded, so N = prod(floor(extent / l_c)).
Each domain is treated as homogeneous: its boundary condition is the
arithmetic mean of the (rho, T) field samples it contains, and it codes to
one classical bit - 1 when the averaged condition sits in the superradiant
region (rho > rho_c and T < T_c(rho)), else 0.  Normally the 0 states are
the overwhelming majority.

A pattern can be rewritten by a later boundary field.  With the latch mode
on, a coded 1 persists through subcritical fields unless the new field
carries the domain's perturbation flag (the coherent state sits below the
perturbative ground-state energy, so it does not spontaneously revert;
only a large enough perturbation rewrites it).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import SI, PhysicalConstants
from .errors import ValidationError
from .phase import Phase, QuasiParticleSpec, classify_phase, critical_density

__all__ = [
    "LatticeSpec", "BoundaryField", "LatticeState", "LatticeStats",
    "domain_count", "code_lattice", "rewrite", "stats",
]


@dataclass(frozen=True)
class LatticeSpec:
    """Volume extents, domain edge l_c, and the medium's quasi-particle."""

    extents: tuple[float, float, float]   # [m]
    l_c: float                            # [m]
    spec: QuasiParticleSpec

    def __post_init__(self):
        object.__setattr__(self, "extents", tuple(float(e) for e in self.extents))
        if len(self.extents) != 3:
            raise ValidationError("extents must be a 3-vector")
        if self.l_c <= 0.0:
            raise ValidationError("l_c must be positive")
        if any(e < self.l_c for e in self.extents):
            raise ValidationError("every extent must be at least l_c")


@dataclass(frozen=True)
class BoundaryField:
    """Sampled (rho, T) boundary condition on the volume at time t.

    Samples live at the centers of a regular grid spanning the extents.
    ``perturb`` optionally flags samples carrying a perturbation strong
    enough to rewrite a latched domain.
    """

    rho_field: np.ndarray    # [m^-3]
    T_field: np.ndarray      # [K]
    t: float = 0.0           # [s]
    perturb: np.ndarray | None = None

    def __post_init__(self):
        rho = np.asarray(self.rho_field, dtype=float)
        T = np.asarray(self.T_field, dtype=float)
        object.__setattr__(self, "rho_field", rho)
        object.__setattr__(self, "T_field", T)
        if rho.ndim != 3 or rho.shape != T.shape:
            raise ValidationError("rho_field and T_field must be equal 3-D grids")
        if np.any(rho < 0.0) or np.any(T < 0.0):
            raise ValidationError("field samples must be non-negative")
        if self.perturb is not None:
            mask = np.asarray(self.perturb, dtype=bool)
            if mask.shape != rho.shape:
                raise ValidationError("perturb mask must match the field grid")
            object.__setattr__(self, "perturb", mask)


@dataclass(frozen=True)
class LatticeState:
    """Coded bit pattern with per-write change history."""

    dims: tuple[int, int, int]
    bits: np.ndarray                       # bool, shape dims
    history: tuple[tuple[float, int], ...]  # (t, changed-bit count)

    def __post_init__(self):
        bits = np.asarray(self.bits, dtype=bool)
        if bits.shape != tuple(self.dims):
            raise ValidationError("bits shape must equal dims")
        bits = bits.copy()
        bits.setflags(write=False)
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        object.__setattr__(self, "history", tuple(self.history))


@dataclass(frozen=True)
class LatticeStats:
    ones_fraction: float
    zeros_fraction: float
    n_domains: int


def domain_count(spec: LatticeSpec) -> tuple[tuple[int, int, int], int]:
    """Domains per axis (floor division) and their total N ~ V / l_c^3."""
    dims = tuple(int(np.floor(e / spec.l_c)) for e in spec.extents)
    n = dims[0] * dims[1] * dims[2]
    return dims, n


def _domain_means(spec: LatticeSpec, field: BoundaryField):
    """Average samples inside each whole domain; returns (rho, T, flag) grids.

    Samples sit at grid-cell centers; a sample belongs to the domain
    floor(center / l_c) and is discarded when that index falls in a
    partial boundary domain.
    """
    dims, n = domain_count(spec)
    grid = field.rho_field.shape
    dom, keep = [], []
    for a in range(3):
        centers = (np.arange(grid[a]) + 0.5) * (spec.extents[a] / grid[a])
        idx = np.floor(centers / spec.l_c).astype(np.intp)
        dom.append(idx)
        keep.append(idx < dims[a])
    sub = np.ix_(keep[0], keep[1], keep[2])
    di = [d[k] for d, k in zip(dom, keep)]
    flat = ((di[0][:, None, None] * dims[1] + di[1][None, :, None]) * dims[2]
            + di[2][None, None, :])
    flat = np.broadcast_to(flat, field.rho_field[sub].shape).ravel()

    counts = np.bincount(flat, minlength=n)
    if np.any(counts == 0):
        raise ValidationError(
            "empty domain sampling: the field grid leaves at least one "
            "domain without samples"
        )
    rho_bar = np.bincount(flat, weights=field.rho_field[sub].ravel(),
                          minlength=n) / counts
    t_bar = np.bincount(flat, weights=field.T_field[sub].ravel(),
                        minlength=n) / counts
    if field.perturb is None:
        flag = np.zeros(dims, dtype=bool)
    else:
        hits = np.bincount(flat, weights=field.perturb[sub].ravel().astype(float),
                           minlength=n)
        flag = (hits > 0).reshape(dims)
    return rho_bar.reshape(dims), t_bar.reshape(dims), flag


def code_lattice(spec: LatticeSpec, field: BoundaryField,
                 consts: PhysicalConstants = SI) -> LatticeState:
    """Code each domain to one bit from its averaged (rho, T)."""
    dims, _ = domain_count(spec)
    rho_bar, t_bar, _ = _domain_means(spec, field)
    bits = np.zeros(dims, dtype=bool)
    for idx in np.ndindex(dims):
        point = classify_phase(float(rho_bar[idx]), float(t_bar[idx]),
                               spec.spec, consts)
        bits[idx] = point.phase is Phase.SUPERRADIANT
    return LatticeState(dims=dims, bits=bits, history=((field.t, 0),))


def rewrite(state: LatticeState, spec: LatticeSpec, new_field: BoundaryField,
            consts: PhysicalConstants = SI,
            latch: bool = False) -> tuple[LatticeState, int]:
    """Recode against a new boundary field; returns (state, flipped bits).

    Latch off: the result equals a fresh coding of ``new_field``.  Latch
    on: 1 -> 0 transitions additionally require the new field's per-domain
    perturbation flag (stable memory).
    """
    dims, _ = domain_count(spec)
    if state.dims != dims:
        raise ValidationError("lattice state does not match the spec's dims")
    fresh = code_lattice(spec, new_field, consts)
    bits = fresh.bits
    if latch:
        _, _, flag = _domain_means(spec, new_field)
        keep = state.bits & ~bits & ~flag
        bits = bits | keep
    flips = int(np.count_nonzero(bits ^ state.bits))
    history = state.history + ((new_field.t, flips),)
    return LatticeState(dims=dims, bits=bits, history=history), flips


def stats(state: LatticeState) -> LatticeStats:
    """Exact 0/1 counts over the coded bits."""
    n = state.bits.size
    ones = int(np.count_nonzero(state.bits))
    return LatticeStats(
        ones_fraction=ones / n,
        zeros_fraction=(n - ones) / n,
        n_domains=n,
    )
