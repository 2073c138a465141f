"""Four-stroke heat-engine protocols for qubit and qutrit working media.

A cycle is: unitary stroke (population-preserving, identity by default),
hot GAD contact on the hot spectrum, second unitary stroke, cold contact on
the cold spectrum. The cyclic qubit engine resets populations exactly to the
initial state (asymptotic cold contact); the non-cyclic variant applies a
finite-time amplitude-damping stroke instead and generally ends elsewhere.

Every quantity is produced trace-based from the actual stroke states; the
closed-form expressions below exist alongside so the two routes can be
cross-checked against each other.

Sign conventions: heats are energy changes of the working medium during the
contact (absorbed > 0), work is delivered work W = q_hot + q_cold, and the
redistribution cost delta_w of a non-cyclic run is the hot-gap energy needed
to restore the initial populations from the end-of-cycle state. The reported
non-cyclic work is the cyclic work minus delta_w: the engine pays for
re-preparing its working medium out of its own output. The cold-side heat
entry absorbs that cost so that work = q_hot + q_cold holds identically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .channels import ad_qubit, apply, gad_qubit, gad_qutrit
from .errors import (
    InfeasibleDampingError,
    NoHeatAbsorbedError,
    NonNormalizedError,
    OutOfRangeError,
)
from .states import ATOL, DensityMatrix, Hamiltonian, energy, hs_distance, make_diagonal_state


def _require_unit(name, value):
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise OutOfRangeError(f"{name} must lie in [0, 1], got {value}")
    return value


def _require_positive(name, value):
    value = float(value)
    if value <= 0.0:
        raise OutOfRangeError(f"{name} must be > 0, got {value}")
    return value


@dataclass(frozen=True)
class QubitEngineConfig:
    """Parameters of one qubit engine run.

    hot-stroke channel: gad_qubit(f, gamma); cold stroke: exact population
    reset (cyclic) or ad_qubit(k) (non-cyclic). u1/u2 optionally install
    population-preserving unitary strokes.
    """

    initial_pg: float
    f: float
    gamma: float
    k: float = 1.0
    hot_gap: float = 1.0
    cold_gap: float = 0.5
    u1: Optional[np.ndarray] = None
    u2: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "initial_pg", _require_unit("initial_pg", self.initial_pg))
        object.__setattr__(self, "f", _require_unit("f", self.f))
        object.__setattr__(self, "gamma", _require_unit("gamma", self.gamma))
        object.__setattr__(self, "k", _require_unit("k", self.k))
        object.__setattr__(self, "hot_gap", _require_positive("hot_gap", self.hot_gap))
        object.__setattr__(self, "cold_gap", _require_positive("cold_gap", self.cold_gap))

    @property
    def initial_pe(self) -> float:
        return 1.0 - self.initial_pg

    @property
    def hot_hamiltonian(self) -> Hamiltonian:
        return Hamiltonian((0.0, self.hot_gap))

    @property
    def cold_hamiltonian(self) -> Hamiltonian:
        return Hamiltonian((0.0, self.cold_gap))


@dataclass(frozen=True)
class QutritEngineConfig:
    """Parameters of one qutrit engine run.

    Hot stroke: gad_qutrit(f_prime, lambda1, lambda2) on hot_levels; cold
    stroke: gad_qutrit(1, k1, k2) on cold_levels (pure decay).
    """

    initial_p: tuple
    f_prime: float
    lambda1: float
    lambda2: float
    k1: float
    k2: float
    hot_levels: Hamiltonian
    cold_levels: Hamiltonian
    u1: Optional[np.ndarray] = None
    u2: Optional[np.ndarray] = None

    def __post_init__(self):
        pops = tuple(float(p) for p in self.initial_p)
        if len(pops) != 3:
            raise OutOfRangeError(f"initial_p needs 3 entries, got {len(pops)}")
        for p in pops:
            _require_unit("initial population", p)
        if abs(sum(pops) - 1.0) > ATOL:
            raise NonNormalizedError(f"initial populations sum to {sum(pops)}")
        object.__setattr__(self, "initial_p", pops)
        for name in ("f_prime", "lambda1", "lambda2", "k1", "k2"):
            object.__setattr__(self, name, _require_unit(name, getattr(self, name)))
        if self.lambda1 + self.lambda2 > 1.0 + ATOL:
            raise InfeasibleDampingError(
                f"lambda1 + lambda2 = {self.lambda1 + self.lambda2} exceeds 1"
            )
        if self.k1 + self.k2 > 1.0 + ATOL:
            raise InfeasibleDampingError(f"k1 + k2 = {self.k1 + self.k2} exceeds 1")
        for name in ("hot_levels", "cold_levels"):
            h = getattr(self, name)
            if not isinstance(h, Hamiltonian):
                h = Hamiltonian(tuple(h))
                object.__setattr__(self, name, h)
            if h.dim != 3:
                raise OutOfRangeError(f"{name} must have 3 levels")


@dataclass(frozen=True)
class CycleReport:
    """Per-run record: stroke states plus all energy bookkeeping.

    efficiency is NaN when no heat was absorbed (q_hot <= 0); the
    :func:`efficiency` helper raises NoHeatAbsorbedError in that case.
    """

    states: tuple
    q_hot: float
    q_cold: float
    work: float
    efficiency: float
    deviation: float
    redistribution_work: float
    cyclic: bool

    @property
    def heat_absorbed(self) -> bool:
        return self.q_hot > ATOL


class ReservoirBaseline(NamedTuple):
    p_cold: float
    p_hot: float
    work: float


class WorkThreshold(NamedTuple):
    ratio_bound: float
    is_positive: bool
    degenerate: bool


def reservoir_baseline(beta_c: float, beta_h: float, cold_gap: float, hot_gap: float) -> ReservoirBaseline:
    """Two-reservoir reference: occupations and per-cycle work.

    p_c = 1/(1 + exp(-beta_c * cold_gap)), p_h likewise on the hot side,
    W1 = (p_c - p_h)(cold_gap - hot_gap). beta = inf is accepted as the
    zero-temperature limit (occupation -> 1).
    """
    cold_gap = _require_positive("cold_gap", cold_gap)
    hot_gap = _require_positive("hot_gap", hot_gap)
    for name, beta in (("beta_c", beta_c), ("beta_h", beta_h)):
        if beta < 0.0:
            raise OutOfRangeError(f"{name} must be >= 0, got {beta}")
    p_cold = 1.0 / (1.0 + math.exp(-beta_c * cold_gap))
    p_hot = 1.0 / (1.0 + math.exp(-beta_h * hot_gap))
    return ReservoirBaseline(p_cold, p_hot, (p_cold - p_hot) * (cold_gap - hot_gap))


def hot_stroke_heat(cfg: QubitEngineConfig) -> float:
    """Closed-form heat absorbed in the hot GAD stroke.

    Q1 = [(1-f) * gamma * pg - f * gamma * pe] * hot_gap; equals the
    trace-based energy difference across the stroke.
    """
    return (
        (1.0 - cfg.f) * cfg.gamma * cfg.initial_pg - cfg.f * cfg.gamma * cfg.initial_pe
    ) * cfg.hot_gap


def cold_stroke_heat(cfg: QubitEngineConfig) -> float:
    """Closed-form heat of the cyclic cold stroke (population reset).

    Q2 = [(f-1) * gamma * pg + f * gamma * pe] * cold_gap; negative whenever
    the hot stroke absorbed, since the reset undoes the population shift on
    the smaller gap.
    """
    return (
        (cfg.f - 1.0) * cfg.gamma * cfg.initial_pg + cfg.f * cfg.gamma * cfg.initial_pe
    ) * cfg.cold_gap


def cycle_work(cfg: QubitEngineConfig) -> float:
    """Closed-form cyclic work: Q1 + Q2 collapsed onto the gap difference."""
    return (
        (1.0 - cfg.f) * cfg.gamma * cfg.initial_pg - cfg.f * cfg.gamma * cfg.initial_pe
    ) * (cfg.hot_gap - cfg.cold_gap)


def max_cycle_work(cfg: QubitEngineConfig) -> float:
    """Upper envelope pg * (hot_gap - cold_gap), reached as f -> 0, gamma -> 1."""
    return cfg.initial_pg * (cfg.hot_gap - cfg.cold_gap)


def positive_work_threshold(cfg: QubitEngineConfig) -> WorkThreshold:
    """Positivity condition W >= 0 iff (1-f)/f >= pe/pg.

    Degenerate inputs (f = 0 or pg = 0) make the ratio bound infinite or the
    condition vacuous; they are flagged, not raised. is_positive always
    reflects the sign of the work itself.
    """
    margin = (1.0 - cfg.f) * cfg.initial_pg - cfg.f * cfg.initial_pe
    degenerate = cfg.f == 0.0 or cfg.initial_pg == 0.0
    bound = math.inf if cfg.f == 0.0 else (1.0 - cfg.f) / cfg.f
    return WorkThreshold(bound, margin >= 0.0, degenerate)


def noncyclic_populations(cfg: QubitEngineConfig):
    """End-of-cycle populations after the finite-time AD cold stroke.

    Composition of gad_qubit(f, gamma) and ad_qubit(k):
        pg' = (k + f*gamma - k*f*gamma) * pe + (1 + (f-1)*(1-k)*gamma) * pg
        pe' = (1-k) * [(1 - f*gamma) * pe + (1-f)*gamma * pg]
    """
    f, g, k = cfg.f, cfg.gamma, cfg.k
    pg, pe = cfg.initial_pg, cfg.initial_pe
    pg2 = (k + f * g - k * f * g) * pe + (1.0 + (f - 1.0) * (1.0 - k) * g) * pg
    pe2 = (1.0 - k) * ((1.0 - f * g) * pe + (1.0 - f) * g * pg)
    return pg2, pe2


def noncyclic_deviation(cfg: QubitEngineConfig) -> float:
    """Hilbert-Schmidt distance of the end state from the initial state.

    sqrt(2) * |(1-f)(1-k)*gamma*pg - (f*gamma + k*(1 - f*gamma))*pe|; the
    absolute value keeps it a norm on both sides of the closure point.
    """
    f, g, k = cfg.f, cfg.gamma, cfg.k
    term = (1.0 - f) * (1.0 - k) * g * cfg.initial_pg - (
        f * g + k * (1.0 - f * g)
    ) * cfg.initial_pe
    return math.sqrt(2.0) * abs(term)


def redistribution_work(cfg: QubitEngineConfig) -> float:
    """Hot-gap cost of restoring the initial populations, (pg' - pg) * hot_gap."""
    f, g, k = cfg.f, cfg.gamma, cfg.k
    return (
        (f * g + k * (1.0 - f * g)) * cfg.initial_pe
        - (1.0 - f) * (1.0 - k) * g * cfg.initial_pg
    ) * cfg.hot_gap


def _unitary_stroke(state: DensityMatrix, u) -> DensityMatrix:
    if u is None:
        return state
    u = np.asarray(u, dtype=complex)
    if u.shape != state.matrix.shape:
        raise OutOfRangeError(f"stroke operator shape {u.shape} does not match the state")
    if np.max(np.abs(u @ u.conj().T - np.eye(state.dim))) > ATOL:
        raise OutOfRangeError("stroke operator is not unitary")
    out = DensityMatrix(u @ state.matrix @ u.conj().T)
    if np.max(np.abs(out.populations - state.populations)) > ATOL:
        raise OutOfRangeError("stroke unitary must preserve populations")
    return out


def _efficiency_or_nan(work: float, q_hot: float) -> float:
    # q_hot below the algebra tolerance is rounding noise, not absorbed heat;
    # a ratio against it would be meaningless
    return work / q_hot if q_hot > ATOL else math.nan


def run_cyclic_qubit(cfg: QubitEngineConfig) -> CycleReport:
    """Execute one ideal cycle: the cold contact resets populations exactly.

    The returned report satisfies work = q_hot + q_cold bitwise, deviation
    = 0, and efficiency = 1 - cold_gap/hot_gap whenever q_hot > 0.
    """
    h_hot = cfg.hot_hamiltonian
    h_cold = cfg.cold_hamiltonian
    rho0 = make_diagonal_state([cfg.initial_pg, cfg.initial_pe])
    rho1 = _unitary_stroke(rho0, cfg.u1)
    rho2 = apply(gad_qubit(cfg.f, cfg.gamma, check=False), rho1)
    rho3 = _unitary_stroke(rho2, cfg.u2)
    rho4 = make_diagonal_state([cfg.initial_pg, cfg.initial_pe])
    q_hot = energy(rho2, h_hot) - energy(rho1, h_hot)
    q_cold = energy(rho4, h_cold) - energy(rho3, h_cold)
    work = q_hot + q_cold
    return CycleReport(
        states=(rho0, rho1, rho2, rho3, rho4),
        q_hot=q_hot,
        q_cold=q_cold,
        work=work,
        efficiency=_efficiency_or_nan(work, q_hot),
        deviation=hs_distance(rho0, rho4),
        redistribution_work=0.0,
        cyclic=True,
    )


def run_noncyclic_qubit(cfg: QubitEngineConfig) -> CycleReport:
    """Execute one finite-time cycle closed by ad_qubit(k).

    The end state generally differs from the initial one; the report's
    deviation measures that gap and redistribution_work is the hot-gap cost
    of closing it. Delivered work is the cyclic work minus that cost (see
    module docstring), so cyclic_work - work = redistribution_work exactly.
    """
    h_hot = cfg.hot_hamiltonian
    h_cold = cfg.cold_hamiltonian
    rho0 = make_diagonal_state([cfg.initial_pg, cfg.initial_pe])
    rho1 = _unitary_stroke(rho0, cfg.u1)
    rho2 = apply(gad_qubit(cfg.f, cfg.gamma, check=False), rho1)
    rho3 = _unitary_stroke(rho2, cfg.u2)
    rho4 = apply(ad_qubit(cfg.k, check=False), rho3)
    q_hot = energy(rho2, h_hot) - energy(rho1, h_hot)
    reset_cold = energy(rho0, h_cold) - energy(rho3, h_cold)
    delta_w = energy(rho0, h_hot) - energy(rho4, h_hot)
    q_cold = reset_cold - delta_w
    work = q_hot + q_cold
    return CycleReport(
        states=(rho0, rho1, rho2, rho3, rho4),
        q_hot=q_hot,
        q_cold=q_cold,
        work=work,
        efficiency=_efficiency_or_nan(work, q_hot),
        deviation=hs_distance(rho0, rho4),
        redistribution_work=delta_w,
        cyclic=False,
    )


def qutrit_hot_heat(cfg: QutritEngineConfig) -> float:
    """Closed-form qutrit hot-stroke heat.

    (1-f') * p0 * [d10*lambda1 + d20*lambda2]
        - f' * [d10*lambda1*p1 + d20*lambda2*p2]
    with d10, d20 the hot gaps from the ground level. The decay term enters
    with a minus sign, exactly as in the qubit expression.
    """
    d10 = cfg.hot_levels.gap(0, 1)
    d20 = cfg.hot_levels.gap(0, 2)
    p0, p1, p2 = cfg.initial_p
    fp = cfg.f_prime
    return (1.0 - fp) * p0 * (d10 * cfg.lambda1 + d20 * cfg.lambda2) - fp * (
        d10 * cfg.lambda1 * p1 + d20 * cfg.lambda2 * p2
    )


def run_qutrit(cfg: QutritEngineConfig) -> CycleReport:
    """Execute one qutrit cycle; both contacts are finite-time GAD strokes.

    q_cold is computed trace-based only (the closed form is not well defined
    for it; see variants.qutrit_cold_heat_literal for the comparison form).
    The final state generally differs from the initial state, so the run is
    reported as non-cyclic with the corresponding deviation.
    """
    h_hot = cfg.hot_levels
    h_cold = cfg.cold_levels
    tau0 = make_diagonal_state(cfg.initial_p)
    tau1 = _unitary_stroke(tau0, cfg.u1)
    tau2 = apply(gad_qutrit(cfg.f_prime, cfg.lambda1, cfg.lambda2, check=False), tau1)
    tau3 = _unitary_stroke(tau2, cfg.u2)
    tau4 = apply(gad_qutrit(1.0, cfg.k1, cfg.k2, check=False), tau3)
    q_hot = energy(tau2, h_hot) - energy(tau1, h_hot)
    q_cold = energy(tau4, h_cold) - energy(tau3, h_cold)
    work = q_hot + q_cold
    return CycleReport(
        states=(tau0, tau1, tau2, tau3, tau4),
        q_hot=q_hot,
        q_cold=q_cold,
        work=work,
        efficiency=_efficiency_or_nan(work, q_hot),
        deviation=hs_distance(tau0, tau4),
        redistribution_work=energy(tau0, h_hot) - energy(tau4, h_hot),
        cyclic=False,
    )


def efficiency(report: CycleReport) -> float:
    """W / q_hot; raises NoHeatAbsorbedError when q_hot is not positive.

    Heat below the 1e-12 algebra tolerance counts as not absorbed: at that
    scale the trace-based q_hot is indistinguishable from rounding noise.
    """
    if report.q_hot <= ATOL:
        raise NoHeatAbsorbedError(f"q_hot = {report.q_hot} <= 0, efficiency undefined")
    return report.work / report.q_hot


#: Flat-record schema shared with the CSV writer.
QUBIT_RECORD_FIELDS = (
    "pg", "pe", "f", "gamma", "k", "dh", "dc",
    "q_hot", "q_cold", "work", "efficiency", "deviation", "delta_w", "cyclic",
)

QUTRIT_RECORD_FIELDS = (
    "p0", "p1", "p2", "fprime", "lam1", "lam2", "k1", "k2",
    "dh10", "dh20", "dc10", "dc20",
    "q_hot", "q_cold", "work", "efficiency", "deviation", "delta_w", "cyclic",
)


def qubit_record(cfg: QubitEngineConfig, report: CycleReport) -> dict:
    return {
        "pg": cfg.initial_pg,
        "pe": cfg.initial_pe,
        "f": cfg.f,
        "gamma": cfg.gamma,
        "k": cfg.k,
        "dh": cfg.hot_gap,
        "dc": cfg.cold_gap,
        "q_hot": report.q_hot,
        "q_cold": report.q_cold,
        "work": report.work,
        "efficiency": report.efficiency,
        "deviation": report.deviation,
        "delta_w": report.redistribution_work,
        "cyclic": report.cyclic,
    }


def qutrit_record(cfg: QutritEngineConfig, report: CycleReport) -> dict:
    return {
        "p0": cfg.initial_p[0],
        "p1": cfg.initial_p[1],
        "p2": cfg.initial_p[2],
        "fprime": cfg.f_prime,
        "lam1": cfg.lambda1,
        "lam2": cfg.lambda2,
        "k1": cfg.k1,
        "k2": cfg.k2,
        "dh10": cfg.hot_levels.gap(0, 1),
        "dh20": cfg.hot_levels.gap(0, 2),
        "dc10": cfg.cold_levels.gap(0, 1),
        "dc20": cfg.cold_levels.gap(0, 2),
        "q_hot": report.q_hot,
        "q_cold": report.q_cold,
        "work": report.work,
        "efficiency": report.efficiency,
        "deviation": report.deviation,
        "delta_w": report.redistribution_work,
        "cyclic": report.cyclic,
    }
