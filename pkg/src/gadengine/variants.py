"""Uncorrected closed-form variants kept for the --paper-literal mode.

Each function here reproduces a formula variant that disagrees with the
channel algebra the rest of the package is built on. They exist so that
``gadengine validate --paper-literal`` can demonstrate the defect each one
carries; nothing else imports them.
"""

from __future__ import annotations

import math

import numpy as np

from .channels import KrausSet, _build, _require_unit
from .engine import QubitEngineConfig, QutritEngineConfig
from .errors import InfeasibleDampingError
from .states import ATOL


def gad_qutrit_uncorrected(f_prime: float, lambda1: float, lambda2: float) -> KrausSet:
    """Qutrit GAD with sqrt(f') on the F3 excitation-group diagonal.

    With this prefactor sum(F^dag F) = I fails for every f' != 1/2, so the
    set is not trace preserving. Construction skips the completeness check
    on purpose; compare against channels.gad_qutrit.
    """
    f_prime = _require_unit("f_prime", f_prime)
    lambda1 = _require_unit("lambda1", lambda1)
    lambda2 = _require_unit("lambda2", lambda2)
    residual = 1.0 - lambda1 - lambda2
    if residual < -ATOL:
        raise InfeasibleDampingError(f"lambda1 + lambda2 = {lambda1 + lambda2} exceeds 1")
    sf = math.sqrt(f_prime)
    sg = math.sqrt(1.0 - f_prime)
    f0 = sf * np.diag([1.0, math.sqrt(1.0 - lambda1), math.sqrt(1.0 - lambda2)]).astype(complex)
    f1 = np.zeros((3, 3), dtype=complex)
    f1[0, 1] = sf * math.sqrt(lambda1)
    f2 = np.zeros((3, 3), dtype=complex)
    f2[0, 2] = sf * math.sqrt(lambda2)
    f3 = sf * np.diag([math.sqrt(max(residual, 0.0)), 1.0, 1.0]).astype(complex)
    f4 = np.zeros((3, 3), dtype=complex)
    f4[1, 0] = sg * math.sqrt(lambda1)
    f5 = np.zeros((3, 3), dtype=complex)
    f5[2, 0] = sg * math.sqrt(lambda2)
    params = {
        "kind": "gad_qutrit_uncorrected",
        "f_prime": f_prime,
        "lambda1": lambda1,
        "lambda2": lambda2,
    }
    return _build(3, (f0, f1, f2, f3, f4, f5), params, check=False)


def noncyclic_pe_uncorrected(cfg: QubitEngineConfig) -> float:
    """End-of-cycle excited population with the sign-flipped pg term.

    (1-k) * [(1 - f*gamma)*pe + (f-1)*gamma*pg]: together with the matching
    pg' expression the populations no longer sum to one, so this variant
    cannot come from any trace-preserving channel composition.
    """
    f, g, k = cfg.f, cfg.gamma, cfg.k
    return (1.0 - k) * ((1.0 - f * g) * cfg.initial_pe + (f - 1.0) * g * cfg.initial_pg)


def qutrit_cold_heat_literal(cfg: QutritEngineConfig) -> float:
    """Cold-stroke heat with the mixed-index gap convention left as is.

    (1-f')*p0*[dc01*lam1*k1 + dc12*lam2*k2]
        + k1*p1*(1 - f'*lam1)*dc01 + k2*p2*(1 - f'*lam2)*dc02
    with d_ij = levels[i] - levels[j]. The index pattern is not internally
    consistent (dc12 next to dc01, then dc02), so this generally disagrees
    with the trace-based cold heat of engine.run_qutrit.
    """
    levels = cfg.cold_levels.levels
    dc01 = levels[0] - levels[1]
    dc12 = levels[1] - levels[2]
    dc02 = levels[0] - levels[2]
    p0, p1, p2 = cfg.initial_p
    fp = cfg.f_prime
    return (
        (1.0 - fp) * p0 * (dc01 * cfg.lambda1 * cfg.k1 + dc12 * cfg.lambda2 * cfg.k2)
        + cfg.k1 * p1 * (1.0 - fp * cfg.lambda1) * dc01
        + cfg.k2 * p2 * (1.0 - fp * cfg.lambda2) * dc02
    )
