"""Kraus-operator channels: qubit GAD/AD and the three-level GAD family.

Each constructor returns an immutable :class:`KrausSet` whose operators sum
to the identity under sum(A_k^dag A_k), verified at construction unless the
caller opts out (``check=False``) inside hot sweeps. ``apply`` realizes the
CPTP map rho -> sum_k A_k rho A_k^dag.

Basis convention: index 0 is the ground level. The emission weight f (f' for
qutrits) multiplies the decay operators; 1 - f multiplies the excitation
operators pumping population out of the ground level.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    GadEngineError,
    InfeasibleDampingError,
    NoUniqueFixedPointError,
    OutOfRangeError,
)
from .states import ATOL, DensityMatrix, hs_distance


def _require_unit(name: str, value: float) -> float:
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise OutOfRangeError(f"{name} must lie in [0, 1], got {value}")
    return value


@dataclass(frozen=True, eq=False)
class KrausSet:
    """Ordered Kraus operators of one channel instance plus its parameters."""

    dim: int
    operators: tuple
    params: dict

    def completeness_defect(self) -> float:
        """Max-abs residual of sum(A^dag A) - I; zero for a CPTP channel."""
        acc = np.zeros((self.dim, self.dim), dtype=complex)
        for op in self.operators:
            acc += op.conj().T @ op
        return float(np.max(np.abs(acc - np.eye(self.dim))))

    def max_singular_value(self) -> float:
        return max(float(np.linalg.norm(op, 2)) for op in self.operators)


def _freeze(ops) -> tuple:
    frozen = []
    for op in ops:
        m = np.asarray(op, dtype=complex)
        m.setflags(write=False)
        frozen.append(m)
    return tuple(frozen)


def _build(dim: int, ops, params: dict, check: bool) -> KrausSet:
    kset = KrausSet(dim=dim, operators=_freeze(ops), params=params)
    if check:
        defect = kset.completeness_defect()
        if defect > ATOL:
            raise GadEngineError(f"Kraus completeness violated, residual {defect:.3e}")
        smax = kset.max_singular_value()
        if smax > 1.0 + ATOL:
            raise GadEngineError(f"Kraus operator has singular value {smax} > 1")
    return kset


def gad_qubit(f: float, gamma: float, *, check: bool = True) -> KrausSet:
    """Qubit generalized amplitude damping with emission weight f.

    Operators:
        A0 = sqrt(f)   * diag(1, sqrt(1-gamma))
        A1 = sqrt(f)   * sqrt(gamma) |0><1|      (decay)
        A2 = sqrt(1-f) * diag(sqrt(1-gamma), 1)
        A3 = sqrt(1-f) * sqrt(gamma) |1><0|      (excitation)
    """
    f = _require_unit("f", f)
    gamma = _require_unit("gamma", gamma)
    sf = math.sqrt(f)
    sg = math.sqrt(1.0 - f)
    c = math.sqrt(1.0 - gamma)
    s = math.sqrt(gamma)
    a0 = sf * np.array([[1.0, 0.0], [0.0, c]], dtype=complex)
    a1 = sf * np.array([[0.0, s], [0.0, 0.0]], dtype=complex)
    a2 = sg * np.array([[c, 0.0], [0.0, 1.0]], dtype=complex)
    a3 = sg * np.array([[0.0, 0.0], [s, 0.0]], dtype=complex)
    params = {"kind": "gad_qubit", "f": f, "gamma": gamma}
    return _build(2, (a0, a1, a2, a3), params, check)


def ad_qubit(k: float, *, check: bool = True) -> KrausSet:
    """Amplitude damping with decay probability k; equals gad_qubit(1, k)."""
    k = _require_unit("k", k)
    kset = gad_qubit(1.0, k, check=check)
    return KrausSet(dim=2, operators=kset.operators, params={"kind": "ad_qubit", "k": k})


def gad_qutrit(f_prime: float, lambda1: float, lambda2: float, *, check: bool = True) -> KrausSet:
    """Three-level generalized amplitude damping.

    lambda1 and lambda2 are the |1> -> |0> and |2> -> |0> transition
    probabilities; their sum may not exceed 1 (F3 carries
    sqrt(1 - lambda1 - lambda2) on the ground level). The excitation group
    F3..F5 carries the prefactor sqrt(1 - f'), mirroring the qubit pattern,
    which is the unique weighting under which sum(F^dag F) = I.
    """
    f_prime = _require_unit("f_prime", f_prime)
    lambda1 = _require_unit("lambda1", lambda1)
    lambda2 = _require_unit("lambda2", lambda2)
    residual = 1.0 - lambda1 - lambda2
    if residual < -ATOL:
        raise InfeasibleDampingError(
            f"lambda1 + lambda2 = {lambda1 + lambda2} exceeds 1; no valid channel"
        )
    sf = math.sqrt(f_prime)
    sg = math.sqrt(1.0 - f_prime)
    s1 = math.sqrt(lambda1)
    s2 = math.sqrt(lambda2)
    ground = math.sqrt(max(residual, 0.0))
    f0 = sf * np.diag([1.0, math.sqrt(1.0 - lambda1), math.sqrt(1.0 - lambda2)]).astype(complex)
    f1 = np.zeros((3, 3), dtype=complex)
    f1[0, 1] = sf * s1
    f2 = np.zeros((3, 3), dtype=complex)
    f2[0, 2] = sf * s2
    f3 = sg * np.diag([ground, 1.0, 1.0]).astype(complex)
    f4 = np.zeros((3, 3), dtype=complex)
    f4[1, 0] = sg * s1
    f5 = np.zeros((3, 3), dtype=complex)
    f5[2, 0] = sg * s2
    params = {"kind": "gad_qutrit", "f_prime": f_prime, "lambda1": lambda1, "lambda2": lambda2}
    return _build(3, (f0, f1, f2, f3, f4, f5), params, check)


def apply(channel: KrausSet, state: DensityMatrix) -> DensityMatrix:
    """CPTP map: returns sum_k A_k rho A_k^dag as a new state."""
    if channel.dim != state.dim:
        raise DimensionMismatchError(f"channel dim {channel.dim} != state dim {state.dim}")
    out = np.zeros_like(state.matrix)
    for op in channel.operators:
        out = out + op @ state.matrix @ op.conj().T
    return DensityMatrix(out)


@dataclass(frozen=True)
class DampingSchedule:
    """Exponential contact schedule: damping = 1 - exp(-rate * time)."""

    rate: float
    time: float

    def __post_init__(self):
        if self.rate < 0.0:
            raise OutOfRangeError(f"rate must be >= 0, got {self.rate}")
        if self.time < 0.0:
            raise OutOfRangeError(f"time must be >= 0, got {self.time}")

    @property
    def damping(self) -> float:
        return -math.expm1(-self.rate * self.time)


def damping_from_schedule(schedule: DampingSchedule) -> float:
    """Cumulative transition probability after the scheduled contact."""
    return schedule.damping


def gad_qubit_populations(pg: float, pe: float, f: float, gamma: float):
    """Diagonal of the evolved qubit state in closed form.

    Identical to the diagonal of apply(gad_qubit(f, gamma), diag(pg, pe)):
        pg' = f*gamma*pe + (1 + (f-1)*gamma) * pg
        pe' = (1 - f*gamma)*pe - (f-1)*gamma * pg
    """
    pg2 = f * gamma * pe + (1.0 + (f - 1.0) * gamma) * pg
    pe2 = (1.0 - f * gamma) * pe - (f - 1.0) * gamma * pg
    return pg2, pe2


def gad_qutrit_populations(p0, p1, p2, f_prime, lambda1, lambda2):
    """Diagonal of the evolved qutrit state in closed form."""
    q0 = (1.0 - (1.0 - f_prime) * (lambda1 + lambda2)) * p0 + f_prime * (
        lambda1 * p1 + lambda2 * p2
    )
    q1 = (1.0 - f_prime * lambda1) * p1 + (1.0 - f_prime) * lambda1 * p0
    q2 = (1.0 - f_prime * lambda2) * p2 + (1.0 - f_prime) * lambda2 * p0
    return q0, q1, q2


def fixed_point(channel: KrausSet, *, tol: float = 1e-13, max_iter: int = 10**6) -> DensityMatrix:
    """Unique stationary state, found by iterating ``apply`` to convergence.

    Requires a strictly contractive channel: gamma > 0 (qubit), k > 0 (AD),
    or both lambdas > 0 with f' > 0 (qutrit; at f' = 0 every state with an
    empty ground level is stationary). Raises NoUniqueFixedPointError
    otherwise.
    """
    p = channel.params
    kind = p.get("kind")
    if kind == "gad_qubit" and p["gamma"] == 0.0:
        raise NoUniqueFixedPointError("gamma = 0 is the identity channel")
    if kind == "ad_qubit" and p["k"] == 0.0:
        raise NoUniqueFixedPointError("k = 0 is the identity channel")
    if kind == "gad_qutrit":
        if p["lambda1"] == 0.0 or p["lambda2"] == 0.0:
            raise NoUniqueFixedPointError("a vanishing lambda leaves a level decoupled")
        if p["f_prime"] == 0.0:
            raise NoUniqueFixedPointError(
                "f' = 0 admits a family of stationary states on the excited levels"
            )
    state = DensityMatrix(np.eye(channel.dim, dtype=complex) / channel.dim)
    for _ in range(max_iter):
        nxt = apply(channel, state)
        if hs_distance(nxt, state) < tol:
            return nxt
        state = nxt
    raise GadEngineError(f"fixed-point iteration did not converge in {max_iter} steps")
