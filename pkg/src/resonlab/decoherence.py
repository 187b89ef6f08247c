"""Sensory transduction and continuous-superselection dephasing.

A layered sensory organ is modeled as a linear filter: during the layer's
time window, cell j of layer i shifts its pointer coordinate (the averaged
cation mass concentration) by

    dQ_j = Lambda_i * E_j(outcome) * dt_i,          E_j(0) = 0,

and the count shift is dn_j = dQ_j * v_cell / m_cation.  Interference
between two stimulus eigenvalues is damped, per transducing cell, by the
characteristic function of the pointer-momentum distribution evaluated at
the second-order shift d2Q = Lambda * (E_j(m) - E_j(n)) * dt:

    box window:      |sin x| / |x|,   x = d2Q * dP0 / hbar
    gaussian window: exp(-x^2 / 2)

The decoherence criterion is the product of reciprocal factors over all
transducing cells ("progress"), compared against a configurable threshold
standing in for ">> 1".  Three argument forms are provided and exposed for
comparison rather than forced to agree (the published reduction from the
momentum form to the count form fixes constants only to order of
magnitude):

    momentum:       x = d2Q * dP0 / hbar
    concentration:  x = d2Q / dQ0
    count:          x = d2n / dn0      (identical to concentration)

Also here: Fick's-law diffusion estimates for cation influx timing and the
kinetic-energy quadrature of the cation fluid of a sensory organ.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .constants import SI, PhysicalConstants
from .density import DensityMatrix, scale_offdiagonal
from .errors import ValidationError

#: Diffusion constant of K+ in squid axoplasm [m^2/s].
DIFFUSION_K_AXOPLASM = 1.3e-9

#: Default concrete stand-in for the ">> 1" criterion threshold.
DEFAULT_THRESHOLD = 1e3

FORMS = ("momentum", "concentration", "count")


# ---------------------------------------------------------------------------
# Diffusion estimates
# ---------------------------------------------------------------------------

def diffusion_time(x: float, D: float = DIFFUSION_K_AXOPLASM) -> float:
    """Time to diffuse distance x in 3-D, t = x^2 / (6 D) [s]."""
    if D <= 0.0:
        raise ValidationError("diffusion constant must be positive")
    if x < 0.0:
        raise ValidationError("distance must be non-negative")
    return x * x / (6.0 * D)


def diffusion_distance(t: float, D: float = DIFFUSION_K_AXOPLASM) -> float:
    """Distance diffused in time t, x = sqrt(6 D t) [m]."""
    if D <= 0.0:
        raise ValidationError("diffusion constant must be positive")
    if t < 0.0:
        raise ValidationError("time must be non-negative")
    return math.sqrt(6.0 * D * t)


def influx_count(concentration: float, volume: float) -> float:
    """Particle count drawn from a reservoir slab, n = concentration * volume.

    Endolymph at ~1e23 m^-3 through a tip-link volume of ~1e-20 m^3 gives
    the hair-cell influx floor of ~1e3 ions.
    """
    if concentration < 0.0 or volume < 0.0:
        raise ValidationError("concentration and volume must be non-negative")
    return concentration * volume


# ---------------------------------------------------------------------------
# Layers, stimuli, transduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SensoryLayer:
    """One processing layer of a sensory organ (uniform cells)."""

    n_cells: int           # N^(i)
    lambda_gain: float     # Lambda^(i) [kg m^-3 J^-1 s^-1]
    dt_window: float       # delta t^(i) [s]
    dP0: float             # pointer-momentum uncertainty [SI]
    dQ0: float             # pointer-coordinate uncertainty [kg/m^3]
    cell_volume: float     # v_j [m^3], uniform within the layer
    cation_mass: float     # m^(i) [kg]

    def __post_init__(self):
        if self.n_cells < 1:
            raise ValidationError("n_cells must be a positive count")
        for name in ("lambda_gain", "dt_window", "dP0", "dQ0",
                     "cell_volume", "cation_mass"):
            if not getattr(self, name) > 0.0:
                raise ValidationError(f"layer field {name} must be positive")

    def dn0(self) -> float:
        """Count-form uncertainty dn0 = dQ0 * v / m."""
        return self.dQ0 * self.cell_volume / self.cation_mass

    def uncertainty_ratio(self, consts: PhysicalConstants = SI) -> float:
        """dP0 * dQ0 * v / hbar; ~1 under the order-of-magnitude closure."""
        return self.dP0 * self.dQ0 * self.cell_volume / consts.hbar


def make_layer(n_cells: int, lambda_gain: float, dt_window: float,
               cell_volume: float, cation_mass: float,
               dP0: float | None = None, dQ0: float | None = None,
               consts: PhysicalConstants = SI) -> SensoryLayer:
    """Build a layer, closing a missing uncertainty via dP0*dQ0 ~ hbar/v.

    When both uncertainties are given they are checked for consistency with
    that closure to order of magnitude only (within a factor of ~10).
    """
    if dP0 is None and dQ0 is None:
        raise ValidationError("at least one of dP0, dQ0 must be supplied")
    if dP0 is None:
        dP0 = consts.hbar / (dQ0 * cell_volume)
    elif dQ0 is None:
        dQ0 = consts.hbar / (dP0 * cell_volume)
    layer = SensoryLayer(n_cells, lambda_gain, dt_window, dP0, dQ0,
                         cell_volume, cation_mass)
    if layer.uncertainty_ratio(consts) < 0.05:
        raise ValidationError(
            "dP0 * dQ0 falls more than an order of magnitude below the "
            "uncertainty closure hbar / (2 cell_volume)"
        )
    return layer


@dataclass(frozen=True)
class Stimulus:
    """Discrete stimulus observable and its per-cell energy inputs.

    ``energies[outcome]`` is an (n_layers, n_cells) array of energy inputs
    [J]; outcomes absent from the mapping deposit zero energy everywhere
    (the null stimulus satisfies E_j(0) = 0 by construction).  ``active``
    optionally restricts which cells transduce each outcome; by default a
    cell is active wherever its energy input is non-zero.
    """

    outcomes: tuple
    energies: dict
    active: dict | None = None

    def __post_init__(self):
        object.__setattr__(self, "outcomes", tuple(self.outcomes))
        if len(set(self.outcomes)) != len(self.outcomes):
            raise ValidationError("stimulus outcomes must be distinct")
        energies = {k: np.atleast_2d(np.asarray(v, dtype=float))
                    for k, v in self.energies.items()}
        object.__setattr__(self, "energies", energies)
        for key in energies:
            if key not in self.outcomes:
                raise ValidationError(f"energy map for unknown outcome {key!r}")
        if self.active is not None:
            active = {k: np.atleast_2d(np.asarray(v, dtype=bool))
                      for k, v in self.active.items()}
            object.__setattr__(self, "active", active)
            for key in active:
                if key not in self.outcomes:
                    raise ValidationError(f"active map for unknown outcome {key!r}")

    def energy_row(self, outcome, layer_index: int, n_cells: int) -> np.ndarray:
        if outcome not in self.outcomes:
            raise ValidationError(f"unknown outcome label {outcome!r}")
        table = self.energies.get(outcome)
        if table is None:
            return np.zeros(n_cells)
        if layer_index >= table.shape[0]:
            return np.zeros(n_cells)
        row = table[layer_index]
        if row.shape != (n_cells,):
            raise ValidationError(
                f"energy row for outcome {outcome!r}, layer {layer_index} has "
                f"{row.shape[0]} entries, expected {n_cells}"
            )
        return row

    def active_row(self, outcome, layer_index: int, n_cells: int) -> np.ndarray:
        row = self.energy_row(outcome, layer_index, n_cells)
        if self.active is None or outcome not in self.active:
            return row != 0.0
        mask = self.active[outcome]
        if layer_index >= mask.shape[0]:
            return np.zeros(n_cells, dtype=bool)
        return mask[layer_index]


@dataclass(frozen=True)
class TransductionResult:
    delta_q: np.ndarray   # per-cell pointer shift [kg/m^3]
    delta_n: np.ndarray   # per-cell cation count shift


def transduce(layer: SensoryLayer, stim: Stimulus, outcome,
              layer_index: int = 0) -> TransductionResult:
    """Pointer shifts dQ = Lambda * E_j * dt on the active cells of a layer."""
    energy = stim.energy_row(outcome, layer_index, layer.n_cells)
    active = stim.active_row(outcome, layer_index, layer.n_cells)
    delta_q = np.where(active, layer.lambda_gain * energy * layer.dt_window, 0.0)
    delta_n = delta_q * layer.cell_volume / layer.cation_mass
    return TransductionResult(delta_q=delta_q, delta_n=delta_n)


# ---------------------------------------------------------------------------
# Damping factors and the decoherence criterion
# ---------------------------------------------------------------------------

class WindowShape(str, enum.Enum):
    BOX = "box"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class PointerWindow:
    """Shape (and optionally width) of the pointer-momentum distribution.

    ``width`` is the box half-width or the gaussian standard deviation; it
    may be omitted where a per-layer uncertainty supplies it (criterion
    evaluation), but is required by :func:`damping_factor`.
    """

    shape: WindowShape = WindowShape.BOX
    width: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "shape", WindowShape(self.shape))
        if self.width is not None and not self.width > 0.0:
            raise ValidationError("window width must be positive")


def _characteristic(xs: np.ndarray, shape: WindowShape) -> np.ndarray:
    """|characteristic function| of the window at dimensionless argument x."""
    xs = np.abs(np.asarray(xs, dtype=float))
    if shape is WindowShape.BOX:
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.where(xs == 0.0, 1.0, np.abs(np.sin(xs)) / xs)
        return out
    return np.exp(-0.5 * xs * xs)


def damping_factor(delta2q: float, window: PointerWindow,
                   consts: PhysicalConstants = SI) -> float:
    """Interference attenuation for one cell at second-order shift delta2q.

    Equals |integral of exp(i delta2q P / hbar) |phi(P)|^2 dP|: the sinc
    modulus for a box window of half-width ``window.width``, the gaussian
    characteristic function when the width is a standard deviation.
    """
    if window.width is None:
        raise ValidationError("damping_factor requires a window width")
    x = delta2q * window.width / consts.hbar
    return float(_characteristic(np.asarray([x]), window.shape)[0])


@dataclass(frozen=True)
class DampingReport:
    """Per-cell factors and criterion progress for one outcome pair."""

    xs: np.ndarray        # dimensionless arguments, transducing cells only
    factors: np.ndarray   # per-cell damping factors in [0, 1]
    progress: float       # product of reciprocal factors, >= 1 (may be inf)
    satisfied: bool
    threshold: float
    form: str

    def pair_factor(self) -> float:
        """Total off-diagonal attenuation, 1 / progress."""
        return float(np.prod(self.factors))


def decoherence_progress(layers, stim: Stimulus, outcome_m, outcome_n,
                         window: PointerWindow = PointerWindow(),
                         threshold: float = DEFAULT_THRESHOLD,
                         form: str = "momentum",
                         consts: PhysicalConstants = SI) -> DampingReport:
    """Degree of progress of the superselection dephasing for (m, n).

    Multiplies 1/factor over every transducing cell of every layer, with
    per-cell argument x in the selected form; the criterion is satisfied
    when the product exceeds ``threshold``.  A cell sitting exactly on a
    zero of the box characteristic function makes the progress infinite
    (reported as satisfied).
    """
    if outcome_m == outcome_n:
        raise ValidationError("outcomes must be distinct")
    if form not in FORMS:
        raise ValidationError(f"unknown criterion form {form!r}")
    xs_all, factors_all = [], []
    for i, layer in enumerate(layers):
        e_m = stim.energy_row(outcome_m, i, layer.n_cells)
        e_n = stim.energy_row(outcome_n, i, layer.n_cells)
        transducing = (stim.active_row(outcome_m, i, layer.n_cells)
                       | stim.active_row(outcome_n, i, layer.n_cells))
        d2q = layer.lambda_gain * (e_m - e_n) * layer.dt_window
        if form == "momentum":
            xs = d2q * layer.dP0 / consts.hbar
        elif form == "concentration":
            xs = d2q / layer.dQ0
        else:  # count: d2n / dn0
            d2n = d2q * layer.cell_volume / layer.cation_mass
            xs = d2n / layer.dn0()
        xs_all.append(xs[transducing])
        factors_all.append(_characteristic(xs[transducing], window.shape))
    xs = np.concatenate(xs_all) if xs_all else np.zeros(0)
    factors = np.concatenate(factors_all) if factors_all else np.zeros(0)
    if np.any(factors == 0.0):
        progress = math.inf
    else:
        with np.errstate(over="ignore"):
            progress = float(np.prod(1.0 / factors))
    return DampingReport(
        xs=xs, factors=factors, progress=progress,
        satisfied=bool(progress > threshold), threshold=float(threshold),
        form=form,
    )


def apply_superselection(rho: DensityMatrix, reports) -> DensityMatrix:
    """Dephase a density matrix with per-pair damping reports.

    ``reports`` maps index pairs (m, n) to :class:`DampingReport` instances
    or plain factors in [0, 1]; every off-diagonal pair must be covered.
    Diagonal entries are untouched, so the trace is preserved exactly.
    """
    n = rho.dim
    f = np.ones((n, n))
    covered = set()
    for (m, k), value in reports.items():
        if not (0 <= m < n and 0 <= k < n) or m == k:
            raise ValidationError(f"invalid off-diagonal pair ({m}, {k})")
        factor = value.pair_factor() if isinstance(value, DampingReport) else float(value)
        if not 0.0 <= factor <= 1.0:
            raise ValidationError(
                f"damping factor {factor!r} for pair ({m}, {k}) outside [0, 1]"
            )
        f[m, k] = f[k, m] = factor
        covered.add(frozenset((m, k)))
    missing = {frozenset((m, k)) for m in range(n) for k in range(m + 1, n)} - covered
    if missing:
        pair = tuple(sorted(next(iter(missing))))
        raise ValidationError(f"no damping report for off-diagonal pair {pair}")
    return scale_offdiagonal(rho, f)


# ---------------------------------------------------------------------------
# Kinetic energy of the cation fluid
# ---------------------------------------------------------------------------

def kinetic_energy(q_field: np.ndarray, p_field: np.ndarray,
                   spacing: float) -> float:
    """Midpoint quadrature of (1/2) grad(P) . (Q grad(P)) over the grid [J].

    Gradients are central differences (one-sided at the boundary); the two
    sampled fields must share one regular grid of the given spacing.
    """
    q = np.asarray(q_field, dtype=float)
    p = np.asarray(p_field, dtype=float)
    if q.shape != p.shape:
        raise ValidationError("q_field and p_field grids do not match")
    if spacing <= 0.0:
        raise ValidationError("grid spacing must be positive")
    grads = np.gradient(p, spacing) if p.ndim > 1 else [np.gradient(p, spacing)]
    grad_sq = sum(g * g for g in grads)
    return float(0.5 * np.sum(q * grad_sq) * spacing**p.ndim)
