"""Time and decay-rate sweeps of the correlation measures, bundled presets,
and the robustness comparison report."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._version import __version__
from .channels import CHANNEL_FAMILIES, evolve
from .linalg import make_bell_state
from .measures import GdConvention, PAPER_CONVENTION, gd_lower_bound, negativity
from .oracle import gd_exact


class ConfigError(ValueError):
    """Invalid experiment configuration; names the offending field."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass(frozen=True)
class SweepRange:
    """Inclusive linspace over [start, stop] with steps points."""

    start: float
    stop: float
    steps: int

    def __post_init__(self):
        if self.steps < 2:
            raise ConfigError("steps", f"a range needs at least 2 steps, got {self.steps}")
        if self.start > self.stop:
            raise ConfigError("range", f"range start {self.start} exceeds stop {self.stop}")
        if self.start < 0.0:
            raise ConfigError("range", f"range start must be non-negative, got {self.start}")

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)

    def __str__(self) -> str:
        return f"{self.start:g}:{self.stop:g}:{self.steps}"


SWEEP_MODES = ("time", "rate_time", "rate_grid")


@dataclass(frozen=True)
class ExperimentConfig:
    family_a: str
    family_b: str
    q_a: float | SweepRange
    q_b: float | SweepRange
    t: float | SweepRange
    sweep_mode: str
    gd_convention: GdConvention = PAPER_CONVENTION
    oracle_enabled: bool = False
    oracle_restarts: int = 32
    seed: int = 0

    def __post_init__(self):
        for name, fam in (("family_a", self.family_a), ("family_b", self.family_b)):
            if fam not in CHANNEL_FAMILIES:
                raise ConfigError(name, f"unknown channel family {fam!r}")
        if self.sweep_mode not in SWEEP_MODES:
            raise ConfigError("sweep_mode", f"must be one of {SWEEP_MODES}, got {self.sweep_mode!r}")
        qa_range = isinstance(self.q_a, SweepRange)
        qb_range = isinstance(self.q_b, SweepRange)
        t_range = isinstance(self.t, SweepRange)
        if self.sweep_mode == "time":
            if not t_range:
                raise ConfigError("t", "a time sweep needs a t range")
            if qa_range:
                raise ConfigError("q_a", "a time sweep needs a fixed q_a")
            if qb_range:
                raise ConfigError("q_b", "a time sweep needs a fixed q_b")
        elif self.sweep_mode == "rate_time":
            if qa_range == qb_range:
                raise ConfigError("q_a", "a rate_time sweep needs exactly one of q_a, q_b "
                                         "to be a range")
        else:  # rate_grid
            if not (qa_range and qb_range):
                raise ConfigError("q_a", "a rate_grid sweep needs ranges for both q_a and q_b")
            if t_range:
                raise ConfigError("t", "a rate_grid sweep needs a fixed t")
        if self.oracle_restarts < 1:
            raise ConfigError("oracle_restarts", f"need at least 1, got {self.oracle_restarts}")
        for name, value in (("q_a", self.q_a), ("q_b", self.q_b), ("t", self.t)):
            if not isinstance(value, SweepRange) and value < 0.0:
                raise ConfigError(name, f"must be non-negative, got {value}")


def infer_sweep_mode(q_a: float | SweepRange, q_b: float | SweepRange,
                     t: float | SweepRange) -> str:
    """Pick the sweep mode implied by which axes are ranges."""
    qa_range = isinstance(q_a, SweepRange)
    qb_range = isinstance(q_b, SweepRange)
    t_range = isinstance(t, SweepRange)
    if qa_range and qb_range:
        if t_range:
            raise ConfigError("t", "cannot sweep q_a, q_b and t at once; fix t")
        return "rate_grid"
    if qa_range or qb_range:
        return "rate_time"
    if t_range:
        return "time"
    raise ConfigError("t", "nothing to sweep; give a range for t or for a rate")


@dataclass(frozen=True)
class SweepDataset:
    """Equal-length measure columns plus provenance metadata."""

    columns: dict[str, np.ndarray]
    meta: dict[str, object]

    def __len__(self) -> int:
        return len(next(iter(self.columns.values())))


def _axis_repr(axis: float | SweepRange) -> str:
    return str(axis) if isinstance(axis, SweepRange) else format(float(axis), "g")


_ROW_ORDER = {
    "time": "by t",
    "rate_time": "swept rate outer, t inner",
    "rate_grid": "q1 outer, q2 inner",
}


def config_meta(cfg: ExperimentConfig) -> dict[str, object]:
    return {
        "family_a": cfg.family_a,
        "family_b": cfg.family_b,
        "q_a": _axis_repr(cfg.q_a),
        "q_b": _axis_repr(cfg.q_b),
        "t": _axis_repr(cfg.t),
        "sweep_mode": cfg.sweep_mode,
        "row_order": _ROW_ORDER[cfg.sweep_mode],
        "gd_convention": cfg.gd_convention.prefactor_mode,
        "gd_clamped": cfg.gd_convention.clamp_nonnegative,
        "oracle_enabled": cfg.oracle_enabled,
        "oracle_restarts": cfg.oracle_restarts,
        "seed": cfg.seed,
        "initial_state": "qutrit-bell",
        "trit_flip_weights": "trace-preserving (gamma/3 per shift)",
        "depolarizing_operators": "shift-clock unitary basis",
        "version": __version__,
    }


def _sweep_points(cfg: ExperimentConfig):
    if cfg.sweep_mode == "time":
        for t in cfg.t.grid():
            yield float(cfg.q_a), float(cfg.q_b), float(t)
    elif cfg.sweep_mode == "rate_time":
        t_values = cfg.t.grid() if isinstance(cfg.t, SweepRange) else [float(cfg.t)]
        if isinstance(cfg.q_a, SweepRange):
            for qa in cfg.q_a.grid():
                for t in t_values:
                    yield float(qa), float(cfg.q_b), float(t)
        else:
            for qb in cfg.q_b.grid():
                for t in t_values:
                    yield float(cfg.q_a), float(qb), float(t)
    else:
        for qa in cfg.q_a.grid():
            for qb in cfg.q_b.grid():
                yield float(qa), float(qb), float(cfg.t)


def _run_sweep(cfg: ExperimentConfig) -> SweepDataset:
    bell = make_bell_state(3)
    rows = []
    for qa, qb, t in _sweep_points(cfg):
        rho = evolve(bell, cfg.family_a, cfg.family_b, qa, qb, t)
        row = [t, qa, qb, negativity(rho), gd_lower_bound(rho, cfg.gd_convention)]
        if cfg.oracle_enabled:
            row.append(gd_exact(rho, restarts=cfg.oracle_restarts, seed=cfg.seed).value)
        rows.append(row)
    data = np.asarray(rows, dtype=float)
    names = ["t", "q1", "q2", "negativity", "gd_lower"]
    if cfg.oracle_enabled:
        names.append("gd_exact")
    columns = {name: data[:, i].copy() for i, name in enumerate(names)}
    return SweepDataset(columns=columns, meta=config_meta(cfg))


def time_sweep(cfg: ExperimentConfig) -> SweepDataset:
    """Evolve the Bell state across a time grid (optionally crossed with one
    swept rate) and record the measures row by row."""
    if cfg.sweep_mode not in ("time", "rate_time"):
        raise ConfigError("sweep_mode", f"time_sweep handles 'time' and 'rate_time', "
                                        f"got {cfg.sweep_mode!r}")
    return _run_sweep(cfg)


def rate_grid(cfg: ExperimentConfig) -> SweepDataset:
    """Measures over a (q_a, q_b) grid at fixed time."""
    if cfg.sweep_mode != "rate_grid":
        raise ConfigError("sweep_mode", f"rate_grid handles 'rate_grid', got {cfg.sweep_mode!r}")
    return _run_sweep(cfg)


# Presets pair every family with itself and every distinct pair once.
PRESET_CHANNELS = {
    "fig1": ("dephasing", "dephasing"),
    "fig2": ("trit-flip", "trit-flip"),
    "fig3": ("trit-phase-flip", "trit-phase-flip"),
    "fig4": ("depolarizing", "depolarizing"),
    "fig5": ("dephasing", "trit-flip"),
    "fig6": ("dephasing", "trit-phase-flip"),
    "fig7": ("dephasing", "depolarizing"),
    "fig8": ("trit-flip", "trit-phase-flip"),
    "fig9": ("trit-flip", "depolarizing"),
    "fig10": ("trit-phase-flip", "depolarizing"),
}

PRESET_NAMES = tuple(PRESET_CHANNELS)

# 200 time steps resolve the entanglement-vanishing kink near t = ln 4 at
# the default rates; 50-point rate axes keep a full preset under a minute.
DEFAULT_TIME_RANGE = SweepRange(0.0, 5.0, 200)
DEFAULT_RATE_RANGE = SweepRange(0.0, 2.0, 50)
PRESET_FIXED_RATE = 0.5
PRESET_FIXED_TIME = 1.0


def preset_configs(name: str, gd_convention: GdConvention = PAPER_CONVENTION,
                   seed: int = 0) -> dict[str, ExperimentConfig]:
    try:
        family_a, family_b = PRESET_CHANNELS[name]
    except KeyError:
        raise ConfigError("preset", f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}") \
            from None
    common = dict(family_a=family_a, family_b=family_b,
                  gd_convention=gd_convention, seed=seed)
    return {
        "time": ExperimentConfig(q_a=DEFAULT_RATE_RANGE, q_b=PRESET_FIXED_RATE,
                                 t=DEFAULT_TIME_RANGE, sweep_mode="rate_time", **common),
        "grid": ExperimentConfig(q_a=DEFAULT_RATE_RANGE, q_b=DEFAULT_RATE_RANGE,
                                 t=PRESET_FIXED_TIME, sweep_mode="rate_grid", **common),
    }


def run_preset(name: str, gd_convention: GdConvention = PAPER_CONVENTION,
               seed: int = 0) -> dict[str, SweepDataset]:
    """Run both datasets of a preset: the (q1, t) surface and the rate grid."""
    configs = preset_configs(name, gd_convention=gd_convention, seed=seed)
    out = {}
    for key, cfg in configs.items():
        ds = time_sweep(cfg) if key == "time" else rate_grid(cfg)
        meta = {"preset": name, **ds.meta}
        if name == "fig1":
            meta["label_note"] = ("also appears under the label 'phase-flip'; "
                                  "the channel pair here is dephasing/dephasing")
        out[key] = SweepDataset(columns=ds.columns, meta=meta)
    return out


ROBUSTNESS_DEFINITION = (
    "curves are normalized by their value at the first time point; at each "
    "later point the measure with the larger normalized value counts as more "
    "robust"
)


@dataclass(frozen=True)
class RobustnessReport:
    """Pointwise comparison of the measures' decay relative to their
    initial values."""

    times: np.ndarray
    initial: dict[str, float]
    normalized: dict[str, np.ndarray | None]
    winner: tuple[str, ...]
    crossovers: tuple[float, ...]
    definition: str
    meta: dict[str, object]

    def to_dict(self) -> dict[str, object]:
        return {
            "definition": self.definition,
            "times": [float(t) for t in self.times],
            "initial": {k: float(v) for k, v in self.initial.items()},
            "normalized": {k: None if v is None else [float(x) for x in v]
                           for k, v in self.normalized.items()},
            "winner": list(self.winner),
            "crossovers": list(self.crossovers),
            "meta": dict(self.meta),
        }


def robustness_report(cfg: ExperimentConfig, tie_tol: float = 1e-12) -> RobustnessReport:
    """Compare how negativity and the discord bound decay along a time sweep.

    A measure that starts at zero cannot be normalized; its curve is None and
    every winner entry becomes "undefined".
    """
    if cfg.sweep_mode != "time":
        raise ConfigError("sweep_mode", "the robustness comparison needs a plain time sweep")
    ds = time_sweep(cfg)
    times = ds.columns["t"]
    curves = {"negativity": ds.columns["negativity"], "gd": ds.columns["gd_lower"]}
    initial = {name: float(col[0]) for name, col in curves.items()}
    normalized: dict[str, np.ndarray | None] = {
        name: (col / initial[name] if initial[name] > 0.0 else None)
        for name, col in curves.items()
    }
    if any(v is None for v in normalized.values()):
        winner = tuple("undefined" for _ in times)
        crossovers: tuple[float, ...] = ()
    else:
        diff = normalized["negativity"] - normalized["gd"]
        winner = tuple(
            "tie" if abs(d) <= tie_tol else ("negativity" if d > 0 else "gd")
            for d in diff
        )
        crossings = []
        sign = np.where(np.abs(diff) <= tie_tol, 0, np.sign(diff))
        last_sign, last_idx = 0, 0
        for i, s in enumerate(sign):
            if s == 0:
                continue
            if last_sign != 0 and s != last_sign:
                # linear interpolation between the bracketing nonzero points
                t0, t1 = times[last_idx], times[i]
                d0, d1 = diff[last_idx], diff[i]
                crossings.append(float(t0 - d0 * (t1 - t0) / (d1 - d0)))
            last_sign, last_idx = s, i
        crossovers = tuple(crossings)
    meta = config_meta(cfg)
    return RobustnessReport(times=times, initial=initial, normalized=normalized,
                            winner=winner, crossovers=crossovers,
                            definition=ROBUSTNESS_DEFINITION, meta=meta)
