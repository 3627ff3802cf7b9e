"""
Parameter sweeps, figure presets and CSV serialization.

Sweeps evaluate the closed-form amplitudes on a linear grid of one variable.
Evaluation may be split over worker threads (capped by ``SPFC_THREADS``) but
rows are always assembled in grid order, so output is deterministic.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import IO, Mapping, Union

import numpy as np

from .design import FeasibilityMap, feasibility_map
from .errors import ParameterError, SPFCError
from .params import SystemParams
from .sagnac import interferometer_output, single_direction_output
from .scattering import POLE_THRESHOLD, AmplitudePair, closed_form, probability

__all__ = [
    "VARIABLES",
    "OUTPUTS",
    "SweepSpec",
    "SweepResult",
    "MapRequest",
    "FidelityComparison",
    "FIGURES",
    "run_sweep",
    "figure_preset",
    "render_figure",
    "emit_csv",
    "read_csv",
    "thread_limit",
]

VARIABLES = ("delta_a", "delta1", "delta2", "omega1", "omega2", "gamma")
OUTPUTS = ("amplitudes", "metrics", "sagnac")

_COLUMNS = {
    "amplitudes": ("re_t1", "im_t1", "re_t2", "im_t2"),
    "metrics": ("p_elastic", "p_inelastic", "survival", "fidelity_f"),
    "sagnac": ("p_interferometer", "p_single_direction"),
}

DEFAULT_RANGE = (-20.0, 20.0)
DEFAULT_POINTS = 2001
_CHUNK = 4096


def thread_limit() -> int:
    """Worker-thread cap from ``SPFC_THREADS`` (default 1)."""
    raw = os.environ.get("SPFC_THREADS")
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise ParameterError(f"SPFC_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise ParameterError(f"SPFC_THREADS must be a positive integer, got {raw!r}")
    return n


@dataclass(frozen=True)
class SweepSpec:
    """One-variable sweep over ``linspace(start, stop, points)``.

    ``delta_a`` is the fixed input detuning when the swept variable is not
    ``delta_a`` itself. ``gamma`` sweeps all three intrinsic loss rates.
    """

    variable: str = "delta_a"
    start: float = DEFAULT_RANGE[0]
    stop: float = DEFAULT_RANGE[1]
    points: int = DEFAULT_POINTS
    base: SystemParams = field(default_factory=SystemParams)
    delta_a: float = 0.0
    outputs: tuple = ("amplitudes", "metrics")

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ParameterError(
                f"variable must be one of {', '.join(VARIABLES)}, got {self.variable!r}")
        for name in ("start", "stop", "delta_a"):
            v = getattr(self, name)
            if not isinstance(v, (int, float)) or not math.isfinite(v):
                raise ParameterError(f"{name} must be a finite number")
        if not self.start < self.stop:
            raise ParameterError("start must be less than stop")
        if not isinstance(self.points, int) or isinstance(self.points, bool) or self.points < 2:
            raise ParameterError("points must be an integer >= 2")
        if not isinstance(self.base, SystemParams):
            raise ParameterError("base must be a SystemParams record")
        outputs = tuple(self.outputs)
        bad = [o for o in outputs if o not in OUTPUTS]
        if bad or not outputs:
            raise ParameterError(f"outputs must be drawn from {', '.join(OUTPUTS)}")
        object.__setattr__(self, "outputs", outputs)
        # endpoints carry the extreme values, so validating them covers the grid
        if self.variable != "delta_a":
            self.params_at(self.start)
            self.params_at(self.stop)

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)

    def params_at(self, value: float) -> SystemParams:
        if self.variable == "delta_a":
            return self.base
        if self.variable == "gamma":
            return self.base.with_dissipation(value)
        return replace(self.base, **{self.variable: value})

    def columns(self) -> tuple:
        cols = [self.variable]
        for out in OUTPUTS:
            if out in self.outputs:
                cols.extend(_COLUMNS[out])
        return tuple(cols)

    def to_dict(self) -> dict:
        return {"variable": self.variable, "start": self.start, "stop": self.stop,
                "points": self.points, "base": self.base.to_dict(),
                "delta_a": self.delta_a, "outputs": list(self.outputs)}

    @classmethod
    def from_dict(cls, data: Mapping) -> "SweepSpec":
        known = {"variable", "start", "stop", "points", "base", "delta_a", "outputs"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ParameterError(f"unknown field(s) for SweepSpec: {', '.join(unknown)}")
        kwargs = dict(data)
        if "base" in kwargs:
            kwargs["base"] = SystemParams.from_dict(kwargs["base"])
        if "outputs" in kwargs:
            kwargs["outputs"] = tuple(kwargs["outputs"])
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text: str) -> "SweepSpec":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class SweepResult:
    """Sweep table: ``data[:, 0]`` is the swept value, remaining columns per ``columns``.

    Undefined ``fidelity_f`` entries are ``nan``.
    """

    spec: SweepSpec
    columns: tuple
    data: np.ndarray

    def __len__(self) -> int:
        return self.data.shape[0]

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]


def _kernel_inputs(spec: SweepSpec, values: np.ndarray) -> dict:
    b = spec.base
    args = dict(gamma1=b.gamma1, gamma2=b.gamma2, omega1=b.omega1, omega2=b.omega2,
                delta1=b.delta1, delta2=b.delta2, gamma_a=b.gamma_a,
                gamma_f=b.gamma_f, gamma_d=b.gamma_d, delta_a=spec.delta_a)
    if spec.variable == "gamma":
        args.update(gamma_a=values, gamma_f=values, gamma_d=values)
    else:
        args[spec.variable] = values
    return args


def _evaluate(spec: SweepSpec, values: np.ndarray) -> np.ndarray:
    t1, t2 = closed_form(**_kernel_inputs(spec, values))
    t1 = np.broadcast_to(t1, values.shape)
    t2 = np.broadcast_to(t2, values.shape)
    p1 = probability(t1)
    p2 = probability(t2)
    survival = p1 + p2
    cols = [values]
    if "amplitudes" in spec.outputs:
        cols += [t1.real, t1.imag, t2.real, t2.imag]
    if "metrics" in spec.outputs:
        with np.errstate(divide="ignore", invalid="ignore"):
            fid = np.where(survival < POLE_THRESHOLD, np.nan, p2 / survival)
        cols += [p1, p2, survival, fid]
    if "sagnac" in spec.outputs:
        pairs = [AmplitudePair(complex(a), complex(b)) for a, b in zip(t1, t2)]
        cols += [np.array([interferometer_output(p).conversion_probability for p in pairs]),
                 np.array([single_direction_output(p).conversion_probability for p in pairs])]
    return np.column_stack(cols)


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate the closed-form amplitudes on every grid point of ``spec``."""
    values = spec.grid()
    chunks = [values[i:i + _CHUNK] for i in range(0, values.size, _CHUNK)]
    workers = min(thread_limit(), len(chunks))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(lambda c: _evaluate(spec, c), chunks))
    else:
        blocks = [_evaluate(spec, c) for c in chunks]
    return SweepResult(spec, spec.columns(), np.vstack(blocks))


# ---------------------------------------------------------------- presets

@dataclass(frozen=True)
class MapRequest:
    """Feasibility-map request: a 2-D grid, or a slice when ``delta1`` has one value."""

    delta1: tuple
    delta2: tuple
    gamma1: float
    gamma2: float
    delta_a: float

    def run(self) -> FeasibilityMap:
        return feasibility_map(np.linspace(*self.delta1), np.linspace(*self.delta2),
                               self.gamma1, self.gamma2, self.delta_a)


@dataclass(frozen=True)
class FidelityComparison:
    """Conditional conversion probability for several labeled sweeps on one grid."""

    labels: tuple
    specs: tuple


_SQRT2 = math.sqrt(2.0)
_GAMMA_LOSS = 0.1

_FIG2 = {
    "fig2a": SystemParams(gamma1=2.0, omega1=5 * _SQRT2, omega2=5.0),
    "fig2b": SystemParams(gamma1=2.0, omega1=2 * _SQRT2, omega2=2.0),
    "fig2c": SystemParams(gamma1=2.0, omega1=0.5 * _SQRT2, omega2=0.5),
    "fig2d": SystemParams(gamma1=1.0, omega1=2.0, omega2=2.0),
}

_FIG4 = {
    "fig4a": SystemParams(gamma1=2.0, omega1=_SQRT2 / 5, omega2=1 / 5),
    "fig4b": SystemParams(gamma1=2.0, omega1=5 * _SQRT2, omega2=5.0),
    "fig4c": SystemParams(gamma1=2.0, omega1=math.sqrt(91) / 3,
                          omega2=math.sqrt(140) / 3, delta1=-4.0, delta2=-4.0),
}

_MAP_RANGE = (-10.0, 10.0)
_MAP_POINTS = 201
_SLICE_POINTS = 1001

_FIG3 = {
    "fig3a": MapRequest((*_MAP_RANGE, _MAP_POINTS), (*_MAP_RANGE, _MAP_POINTS), 2.0, 1.0, 3.0),
    "fig3b": MapRequest((*_MAP_RANGE, _MAP_POINTS), (*_MAP_RANGE, _MAP_POINTS), 2.0, 1.0, 3.0),
    "fig3c": MapRequest((-3.0, -3.0, 1), (*_MAP_RANGE, _SLICE_POINTS), 2.0, 1.0, 3.0),
    "fig3d": MapRequest((5.0, 5.0, 1), (*_MAP_RANGE, _SLICE_POINTS), 2.0, 1.0, 3.0),
}

FIGURES = tuple(sorted([*_FIG2, *_FIG3, *_FIG4, "fig4d"]))


def _input_sweep(params: SystemParams) -> SweepSpec:
    return SweepSpec("delta_a", *DEFAULT_RANGE, DEFAULT_POINTS, params)


def figure_preset(name: str):
    """Parameters and grid for one figure panel.

    Returns a :class:`SweepSpec` (input-detuning scans), a :class:`MapRequest`
    (drive-detuning feasibility maps and slices) or, for ``fig4d``, a
    :class:`FidelityComparison` of the three lossy configurations.
    """
    if name in _FIG2:
        return _input_sweep(_FIG2[name])
    if name in _FIG4:
        return _input_sweep(_FIG4[name].with_dissipation(_GAMMA_LOSS))
    if name in _FIG3:
        return _FIG3[name]
    if name == "fig4d":
        labels = ("fig4a", "fig4b", "fig4c")
        return FidelityComparison(labels, tuple(figure_preset(n) for n in labels))
    raise ParameterError(f"unknown figure {name!r}; choose from {', '.join(FIGURES)}")


# ---------------------------------------------------------------- CSV

def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, str):
        return value
    v = float(value)
    if math.isnan(v):
        return ""
    return format(v, ".17g")


def _map_table(fmap: FeasibilityMap):
    header = ("delta1", "delta2", "omega1_sq", "omega2_sq", "omega1", "omega2",
              "feasible", "diagnostic")
    rows = []
    for i, d1 in enumerate(fmap.delta1):
        for j, d2 in enumerate(fmap.delta2):
            o1, o2 = fmap.omega1_sq[i, j], fmap.omega2_sq[i, j]
            ok = bool(fmap.feasible[i, j])
            rows.append((d1, d2, o1, o2,
                         math.sqrt(o1) if ok else math.nan,
                         math.sqrt(o2) if ok else math.nan,
                         ok, fmap.diagnostics[i, j]))
    return header, rows


def _fidelity_table(comp: FidelityComparison):
    results = [run_sweep(replace(s, outputs=("metrics",))) for s in comp.specs]
    grid = results[0].column(results[0].columns[0])
    header = (comp.specs[0].variable, *(f"fidelity_f_{lbl}" for lbl in comp.labels))
    cols = [grid] + [r.column("fidelity_f") for r in results]
    return header, list(zip(*cols))


def _table(result):
    if isinstance(result, SweepResult):
        return result.columns, [tuple(r) for r in result.data]
    if isinstance(result, FeasibilityMap):
        return _map_table(result)
    if isinstance(result, FidelityComparison):
        return _fidelity_table(result)
    raise TypeError(f"cannot serialize {type(result).__name__}")


def render_figure(name: str):
    """Evaluate a preset into a serializable result."""
    preset = figure_preset(name)
    if isinstance(preset, SweepSpec):
        return run_sweep(preset)
    if isinstance(preset, MapRequest):
        return preset.run()
    return preset


def emit_csv(result, destination: Union[str, Path, IO[str], None] = None) -> bytes:
    """Write ``result`` as UTF-8 CSV and return the encoded bytes.

    ``destination`` may be a path, a text stream, or ``None`` (bytes only).
    Floats carry 17 significant digits; undefined values are empty fields.
    """
    header, rows = _table(result)
    if not rows:
        raise ParameterError("nothing to serialize: result is empty")
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(v) for v in row) + "\n")
    text = buf.getvalue()
    if isinstance(destination, (str, Path)):
        try:
            Path(destination).write_text(text, encoding="utf-8", newline="")
        except OSError as exc:
            raise SPFCError(f"cannot write CSV to {destination}: {exc}") from exc
    elif destination is not None:
        destination.write(text)
    return text.encode("utf-8")


def read_csv(source: Union[str, Path, IO[str]]) -> tuple[list, list]:
    """Parse a CSV written by :func:`emit_csv` into ``(header, rows)`` of strings."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as fh:
            lines = list(csv.reader(fh))
    else:
        lines = list(csv.reader(source))
    return lines[0], lines[1:]
