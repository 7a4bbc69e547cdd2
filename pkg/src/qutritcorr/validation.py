"""Cross-module consistency suite behind the `validate` CLI command."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import (CHANNEL_FAMILIES, dephasing_kraus, depolarizing_kraus, evolve,
                       trit_flip_kraus, trit_flip_kraus_unnormalized,
                       trit_phase_flip_kraus, validate_kraus)
from .linalg import ValidationError, make_bell_state, random_density_matrix
from .measures import RAW_CONVENTION, gd_lower_bound, isotropic_family
from .oracle import (analytic_gd_isotropic, analytic_negativity_dephasing,
                     analytic_negativity_depolarizing, gd_exact)
from .measures import negativity

COMPLETENESS_TOL = 1e-12
STATE_TOL = 1e-10
CLOSED_FORM_TOL = 1e-10
BOUND_TOL = 1e-4
TIGHTNESS_TOL = 1e-5

GAMMA_GRID = np.linspace(0.0, 1.0, 11)
# 4 asymmetric rate pairs x 5 times = the 20-point closed-form grid
RATE_PAIRS = ((0.2, 0.2), (0.5, 0.5), (1.0, 0.3), (1.7, 0.9))
TIME_POINTS = (0.0, 0.5, 1.0, 2.0, 5.0)
ISOTROPIC_PS = (0.2, 0.5, 0.8)


@dataclass(frozen=True)
class CheckResult:
    name: str
    tolerance: float
    max_deviation: float
    passed: bool


def run_validation(seed: int = 0, restarts: int = 32, oracle_states: int = 12,
                   unnormalized_trit_flip: bool = False) -> list[CheckResult]:
    checks: list[CheckResult] = []

    builders = {
        "dephasing": dephasing_kraus,
        "trit-flip": trit_flip_kraus_unnormalized if unnormalized_trit_flip else trit_flip_kraus,
        "trit-phase-flip": trit_phase_flip_kraus,
        "depolarizing": depolarizing_kraus,
    }
    for family, builder in builders.items():
        dev = max(validate_kraus(builder(g)).max_deviation for g in GAMMA_GRID)
        label = family + (" (unnormalized weights)"
                          if family == "trit-flip" and unnormalized_trit_flip else "")
        checks.append(CheckResult(f"kraus completeness: {label}", COMPLETENESS_TOL,
                                  dev, dev <= COMPLETENESS_TOL))

    rng = np.random.default_rng(seed)
    families = list(CHANNEL_FAMILIES)
    worst = 0.0
    ok = True
    for _ in range(200):
        rho = random_density_matrix(3, 3, rng=rng)
        fa, fb = (str(f) for f in rng.choice(families, size=2))
        qa, qb = rng.uniform(0.0, 2.0, size=2)
        t = rng.uniform(0.0, 5.0)
        try:
            evolve(rho, fa, fb, qa, qb, t)
        except ValidationError as exc:
            ok = False
            worst = max(worst, max(exc.violations.values(), default=np.inf))
    checks.append(CheckResult("evolved states valid", STATE_TOL, worst, ok))

    bell = make_bell_state(3)
    for family, closed_form in (("dephasing", analytic_negativity_dephasing),
                                ("depolarizing", analytic_negativity_depolarizing)):
        dev = max(
            abs(negativity(evolve(bell, family, family, qa, qb, t)) - closed_form(qa, qb, t))
            for qa, qb in RATE_PAIRS for t in TIME_POINTS
        )
        checks.append(CheckResult(f"negativity closed form: {family}", CLOSED_FORM_TOL,
                                  dev, dev <= CLOSED_FORM_TOL))

    state_rng = np.random.default_rng([seed, 1])
    gap = 0.0
    for _ in range(oracle_states):
        rho = random_density_matrix(3, 3, rng=state_rng)
        bound = gd_lower_bound(rho, RAW_CONVENTION)
        exact = gd_exact(rho, restarts=restarts, seed=seed).value
        gap = max(gap, bound - exact)
    checks.append(CheckResult("gd bound below oracle", BOUND_TOL, max(0.0, gap),
                              gap <= BOUND_TOL))

    tight = max(
        abs(gd_lower_bound(isotropic_family(p), RAW_CONVENTION)
            - gd_exact(isotropic_family(p), restarts=restarts, seed=seed).value)
        for p in ISOTROPIC_PS
    )
    sanity = max(
        abs(gd_lower_bound(isotropic_family(p), RAW_CONVENTION) - analytic_gd_isotropic(p, RAW_CONVENTION))
        for p in ISOTROPIC_PS
    )
    checks.append(CheckResult("gd bound tight on isotropic states", TIGHTNESS_TOL,
                              max(tight, sanity), max(tight, sanity) <= TIGHTNESS_TOL))
    return checks
