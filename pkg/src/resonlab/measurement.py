"""Type-I and type-II selective measurement pipelines.

Both schemes act on a labeled :class:`~resonlab.density.DensityMatrix` and
share the same three-phase shape:

1. **non-selective step** - off-diagonal blocks between distinct outcome
   indices are damped (ideally to zero), turning a pure superposition into
   an exclusive mixture with Born weights;
2. **feedback / retrieval step** - a conditional relabeling of the pattern
   register ({F}_0 -> {F}_n for firing patterns, ground flag -> Psi_n for
   retrieval excitations), leaving the spectrum untouched;
3. **event reading** - seeded Born sampling of the diagonal, collapsing to
   a rank-1 projector.

The two schemes differ only in register structure and reading cost: a
type-I reading is physical and charges k_B * T to the energy ledger, a
type-II reading is unphysical and charges exactly zero.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .constants import SI, PhysicalConstants
from .density import DensityMatrix, scale_offdiagonal
from .errors import NumericalError, ValidationError

AMPLITUDE_TOL = 1e-12
#: Off-diagonal magnitude above which a state does not count as diagonal
#: for event reading (reading before decoherence is undefined).
DIAGONAL_TOL = 1e-10
#: Diagonal weight below which a basis label counts as unoccupied.
OCCUPANCY_TOL = 1e-15

BODY_TEMPERATURE = 310.0   # K, default ledger temperature for type I


class Scheme(str, enum.Enum):
    TYPE_I = "I"     # reader external to the measured system
    TYPE_II = "II"   # reader inseparable from the measured system


#: Index of the rewritable pattern register inside a basis label.
_PATTERN_SLOT = {Scheme.TYPE_I: 2, Scheme.TYPE_II: 3}


@dataclass
class EnergyLedger:
    """Per-run energy bookkeeping for event readings."""

    temperature: float = BODY_TEMPERATURE    # K
    entries: list[tuple[str, float]] = field(default_factory=list)

    def record(self, event_id: str, cost: float) -> None:
        self.entries.append((event_id, cost))

    def total(self) -> float:
        return math.fsum(cost for _, cost in self.entries)


@dataclass(frozen=True)
class MeasurementOutcome:
    index: int
    label: tuple[str, ...]
    probability: float
    collapsed: DensityMatrix


def init_scheme(amplitudes, scheme: Scheme,
                initial_pattern: str | None = None) -> DensityMatrix:
    """Pure-state density matrix of the scheme's register superposition.

    Type I lives over (stimulus_n, apparatus, firing pattern) with a common
    resting pattern; type II over entangled (boundary_n, memory_n,
    domain_n, excitation flag) triples with the ground flag.
    """
    c = np.asarray(amplitudes, dtype=complex)
    if c.ndim != 1 or c.size == 0:
        raise ValidationError("amplitudes must be a non-empty vector")
    if abs(float(np.sum(np.abs(c) ** 2)) - 1.0) > AMPLITUDE_TOL:
        raise ValidationError("amplitudes must be normalized within 1e-12")
    scheme = Scheme(scheme)
    n = c.size
    if scheme is Scheme.TYPE_I:
        pattern = "0" * n if initial_pattern is None else initial_pattern
        labels = tuple((f"O{i}", "A0", pattern) for i in range(n))
    else:
        flag = "g" if initial_pattern is None else initial_pattern
        labels = tuple((f"B{i}", f"M{i}", f"D{i}", flag) for i in range(n))
    return DensityMatrix(labels, np.outer(c, c.conj()))


def nonselective_step(rho: DensityMatrix,
                      damping=None) -> DensityMatrix:
    """Dephase between distinct outcome indices.

    ``damping`` is either ``None`` (ideal: factor 0 everywhere off the
    diagonal), a scalar, or a mapping ``(m, n) -> factor`` over index
    pairs; factors compose multiplicatively with prior applications.
    Objects with a ``factors`` array attribute (damping reports) are
    accepted in place of scalar factors.
    """
    n = rho.dim
    f = np.zeros((n, n))
    if damping is not None:
        if np.isscalar(damping):
            f[:] = float(damping)
        else:
            f[:] = 1.0
            seen = set()
            for (m, k), value in damping.items():
                f[m, k] = f[k, m] = _as_factor(value)
                seen.add(frozenset((m, k)))
            expected = {frozenset((m, k)) for m in range(n) for k in range(m + 1, n)}
            missing = expected - seen
            if missing:
                pair = sorted(tuple(next(iter(missing))))
                raise ValidationError(
                    f"damping mapping missing off-diagonal pair {tuple(pair)}"
                )
    np.fill_diagonal(f, 1.0)
    return scale_offdiagonal(rho, f)


def _as_factor(value) -> float:
    factors = getattr(value, "factors", None)
    if factors is not None:
        return float(np.prod(factors))
    return float(value)


def feedback_step(rho: DensityMatrix, mapping, scheme: Scheme) -> DensityMatrix:
    """Conditional relabeling of the pattern register, index n -> mapping[n].

    The entangling feedback writes the outcome-dependent pattern into the
    register while preserving trace and eigenvalues exactly (entries are
    untouched; only labels change).  The mapping must be injective on
    occupied labels, otherwise sectors would merge.
    """
    scheme = Scheme(scheme)
    slot = _PATTERN_SLOT[scheme]
    diag = rho.diagonal()
    targets = dict(enumerate(mapping)) if not isinstance(mapping, dict) else mapping
    occupied = {}
    for idx in range(rho.dim):
        if idx not in targets:
            continue
        if diag[idx] > OCCUPANCY_TOL:
            tgt = targets[idx]
            if tgt in occupied:
                raise ValidationError(
                    f"mapping is not injective on occupied labels: "
                    f"indices {occupied[tgt]} and {idx} both map to {tgt!r}"
                )
            occupied[tgt] = idx
    new_labels = []
    for idx, label in enumerate(rho.labels):
        if idx in targets:
            parts = list(label)
            parts[slot] = str(targets[idx])
            new_labels.append(tuple(parts))
        else:
            new_labels.append(label)
    return rho.with_labels(new_labels)


def _require_diagonal(rho: DensityMatrix) -> np.ndarray:
    off = rho.max_offdiagonal()
    if off > DIAGONAL_TOL:
        raise NumericalError(
            f"state is not diagonal (max off-diagonal {off:.3e} > 1e-10); "
            "event reading before decoherence is undefined"
        )
    weights = np.clip(rho.diagonal(), 0.0, None)
    return weights / weights.sum()


def event_read(rho: DensityMatrix, scheme: Scheme, seed: int,
               ledger: EnergyLedger,
               consts: PhysicalConstants = SI) -> MeasurementOutcome:
    """Seeded Born sampling of a diagonal state, with energy bookkeeping.

    Appends one ledger entry: k_B * T for type I (the reader is external,
    reading is a physical energy transfer), exactly 0 for type II (reader
    and measured system are inseparable; reading is unphysical).
    """
    scheme = Scheme(scheme)
    weights = _require_diagonal(rho)
    rng = np.random.default_rng(seed)
    n0 = int(rng.choice(rho.dim, p=weights))
    cost = consts.k_B * ledger.temperature if scheme is Scheme.TYPE_I else 0.0
    ledger.record(f"read-{len(ledger.entries)}", cost)
    collapsed = np.zeros_like(rho.mat)
    collapsed[n0, n0] = 1.0
    return MeasurementOutcome(
        index=n0,
        label=rho.labels[n0],
        probability=float(weights[n0]),
        collapsed=rho.with_matrix(collapsed),
    )


def born_stats(rho: DensityMatrix, n_samples: int, seed: int) -> np.ndarray:
    """Histogram of ``n_samples`` seeded Born draws; deterministic per seed."""
    if n_samples < 0:
        raise ValidationError("n_samples must be non-negative")
    weights = _require_diagonal(rho)
    rng = np.random.default_rng(seed)
    draws = rng.choice(rho.dim, size=n_samples, p=weights)
    return np.bincount(draws, minlength=rho.dim)
