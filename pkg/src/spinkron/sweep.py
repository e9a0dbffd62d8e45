"""Magnetic-field sweeps: spec parsing, per-field diagonalization, events, CSV.

Levels are tracked by ascending sort, not by eigenvector continuity. At a
true crossing the sorted curves therefore swap character, and the gap between
sort-adjacent levels has a kink (``|d(B)|`` for a smooth signed difference
``d``). Event detection uses that shape to tell crossings from avoided
crossings; see ``detect_events``.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
from numpy.typing import NDArray

from spinkron.hamiltonian_builder import (
    BreitRabiParams,
    TensorParams,
    build_breit_rabi,
    build_tensor,
)
from spinkron.matrix_core import ComplexMatrix
from spinkron.spectral import ConvergenceError, eigen_hermitian

MODELS = ("breit_rabi", "general_tensor")
DEFAULT_CROSSING_TOL = 1e-9
# Gap changes below this (relative to the spectral scale) are treated as flat.
NOISE_FLOOR = 1e-10


class SpecError(ValueError):
    """Schema violation in a sweep document; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path


class SweepError(ArithmeticError):
    """Numerical failure at one grid point."""

    def __init__(self, B: float, cause: Exception):
        super().__init__(f"at B={B!r}: {cause}")
        self.B = B
        self.cause = cause


@dataclass(frozen=True)
class FieldGrid:
    start: float
    stop: float
    step: float

    def __post_init__(self):
        for name in ("start", "stop", "step"):
            if not math.isfinite(getattr(self, name)):
                raise SpecError(f"field.{name}", "must be finite")
        if self.step <= 0:
            raise SpecError("field.step", f"must be > 0, got {self.step!r}")
        if not self.stop > self.start:
            raise SpecError("field.stop", f"must be greater than field.start ({self.start!r})")
        if len(self) < 2:
            raise SpecError("field", "grid must contain at least 2 points")

    def __len__(self) -> int:
        # tolerate rounding in (stop - start) / step, e.g. 10 / 0.01
        return int(math.floor((self.stop - self.start) / self.step * (1 + 1e-12) + 1e-9)) + 1

    def values(self) -> NDArray[np.float64]:
        return self.start + self.step * np.arange(len(self), dtype=np.float64)


@dataclass(frozen=True)
class SweepSpec:
    """Validated sweep request. ``params`` carries the model with a zero field."""

    model: str
    params: BreitRabiParams | TensorParams
    grid: FieldGrid
    output: str
    two_j_i: int
    two_j_s: int = 1
    field_dir: tuple[float, float, float] | None = None
    crossing_tol: float = DEFAULT_CROSSING_TOL

    def hamiltonian(self, B: float) -> ComplexMatrix:
        if self.model == "breit_rabi":
            return build_breit_rabi(self.params.with_field(B))
        return build_tensor(self.two_j_i, self.two_j_s, self.params.with_field(B * np.asarray(self.field_dir)))

    @property
    def dim(self) -> int:
        return (self.two_j_i + 1) * (self.two_j_s + 1)


@dataclass(frozen=True)
class CrossingEvent:
    kind: str  # "crossing" or "avoided"
    level_pair: tuple[int, int]
    field_at_extremum: float
    gap_at_extremum: float


@dataclass
class SweepResult:
    field_values: NDArray[np.float64]
    levels: NDArray[np.float64]
    events: list[CrossingEvent] = field(default_factory=list)

    def __post_init__(self):
        self.field_values = np.asarray(self.field_values, dtype=np.float64)
        self.levels = np.asarray(self.levels, dtype=np.float64)
        if self.levels.ndim != 2 or self.levels.shape[0] != self.field_values.shape[0]:
            raise ValueError("levels must be a (n_fields, n_levels) array aligned with field_values")
        if np.any(np.diff(self.field_values) <= 0):
            raise ValueError("field_values must be strictly increasing")

    @property
    def n_levels(self) -> int:
        return self.levels.shape[1]


# ---------------------------------------------------------------------------
# Spec document

_TOP_KEYS = {"model", "two_j_i", "two_j_s", "a_hf", "a_e", "b_n", "tensor", "field", "output", "crossing_tol"}
_BR_KEYS = ("a_hf", "a_e", "b_n")
_FIELD_KEYS = {"start", "stop", "step"}
_TENSOR_KEYS = {"g", "g_n", "a", "beta_e", "beta_n", "field_dir"}


def _reject_constant(name: str):
    raise SpecError("", f"non-finite number {name} is not allowed")


def _real(obj: dict, key: str, path: str) -> float:
    if key not in obj:
        raise SpecError(path, "missing required key")
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise SpecError(path, f"expected a real number, got {type(v).__name__}")
    v = float(v)
    if not math.isfinite(v):
        raise SpecError(path, "must be finite")
    return v


def _int(obj: dict, key: str, path: str, default: int | None = None) -> int:
    if key not in obj:
        if default is None:
            raise SpecError(path, "missing required key")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise SpecError(path, f"expected an integer, got {v!r}")
    if v < 0:
        raise SpecError(path, "must be non-negative")
    return v


def _matrix3(obj: dict, key: str, path: str) -> NDArray[np.float64]:
    if key not in obj:
        raise SpecError(path, "missing required key")
    rows = obj[key]
    if not isinstance(rows, list) or len(rows) != 3:
        raise SpecError(path, "expected a 3x3 array of reals")
    out = np.empty((3, 3))
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 3:
            raise SpecError(f"{path}[{i}]", "expected 3 reals")
        for j in range(3):
            out[i, j] = _real({"v": row[j]}, "v", f"{path}[{i}][{j}]")
    return out


def _vector3(obj: dict, key: str, path: str) -> NDArray[np.float64]:
    if key not in obj:
        raise SpecError(path, "missing required key")
    v = obj[key]
    if not isinstance(v, list) or len(v) != 3:
        raise SpecError(path, "expected 3 reals")
    return np.array([_real({"v": x}, "v", f"{path}[{i}]") for i, x in enumerate(v)])


def _check_keys(obj: Any, allowed: set[str], path: str) -> None:
    if not isinstance(obj, dict):
        raise SpecError(path, "expected a JSON object")
    unknown = sorted(set(obj) - allowed)
    if unknown:
        where = f"{path}.{unknown[0]}" if path else unknown[0]
        raise SpecError(where, "unknown key")


def parse_spec(text: str | bytes) -> SweepSpec:
    """Parse and validate a sweep document (a single JSON object).

    Raises:
        SpecError: with a dotted path to the offending field.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SpecError("", f"invalid JSON: {exc}") from None

    _check_keys(doc, _TOP_KEYS, "")
    model = doc.get("model")
    if model is None:
        raise SpecError("model", "missing required key")
    if model not in MODELS:
        raise SpecError("model", f"must be one of {', '.join(MODELS)}, got {model!r}")

    two_j_i = _int(doc, "two_j_i", "two_j_i")
    two_j_s = _int(doc, "two_j_s", "two_j_s", default=1)

    if "field" not in doc:
        raise SpecError("field", "missing required key")
    fdoc = doc["field"]
    _check_keys(fdoc, _FIELD_KEYS, "field")
    grid = FieldGrid(
        _real(fdoc, "start", "field.start"),
        _real(fdoc, "stop", "field.stop"),
        _real(fdoc, "step", "field.step"),
    )

    output = doc.get("output")
    if output is None:
        raise SpecError("output", "missing required key")
    if not isinstance(output, str) or not output:
        raise SpecError("output", "expected a non-empty string")

    crossing_tol = DEFAULT_CROSSING_TOL
    if "crossing_tol" in doc:
        crossing_tol = _real(doc, "crossing_tol", "crossing_tol")
        if crossing_tol < 0:
            raise SpecError("crossing_tol", "must be non-negative")

    if model == "breit_rabi":
        if "tensor" in doc:
            raise SpecError("tensor", "not allowed for model breit_rabi")
        params = BreitRabiParams(
            two_j_I=two_j_i,
            A=_real(doc, "a_hf", "a_hf"),
            B=0.0,
            a=_real(doc, "a_e", "a_e"),
            b=_real(doc, "b_n", "b_n"),
            two_j_S=two_j_s,
        )
        return SweepSpec(model, params, grid, output, two_j_i, two_j_s, None, crossing_tol)

    for key in _BR_KEYS:
        if key in doc:
            raise SpecError(key, "not allowed for model general_tensor")
    if "tensor" not in doc:
        raise SpecError("tensor", "missing required key")
    tdoc = doc["tensor"]
    _check_keys(tdoc, _TENSOR_KEYS, "tensor")
    direction = _vector3(tdoc, "field_dir", "tensor.field_dir")
    norm = float(np.linalg.norm(direction))
    if norm == 0.0:
        raise SpecError("tensor.field_dir", "must be a non-zero vector")
    direction = direction / norm
    params = TensorParams(
        beta_e=_real(tdoc, "beta_e", "tensor.beta_e"),
        beta_n=_real(tdoc, "beta_n", "tensor.beta_n"),
        g=_matrix3(tdoc, "g", "tensor.g"),
        g_n=_matrix3(tdoc, "g_n", "tensor.g_n"),
        A_tensor=_matrix3(tdoc, "a", "tensor.a"),
        B_vec=np.zeros(3),
    )
    return SweepSpec(
        model, params, grid, output, two_j_i, two_j_s, tuple(float(x) for x in direction), crossing_tol
    )


def load_spec(path: str | Path) -> SweepSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError("", f"cannot read spec file {path}: {exc.strerror}") from None
    return parse_spec(text)


# ---------------------------------------------------------------------------
# Sweep


def _levels_at(spec: SweepSpec, B: float) -> NDArray[np.float64]:
    try:
        return np.array(eigen_hermitian(spec.hamiltonian(float(B))).eigenvalues)
    except ConvergenceError as exc:
        raise SweepError(float(B), exc) from exc


def spectral_scale(levels: NDArray[np.float64]) -> float:
    """Largest level magnitude over the sweep, or 1 for an all-zero spectrum."""
    m = float(np.max(np.abs(levels))) if levels.size else 0.0
    return m if m > 0.0 else 1.0


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Diagonalize ``H(B)`` at every grid point and detect events.

    With ``workers > 1`` grid points are evaluated on a thread pool; results
    are merged in grid order, so the output is identical to a serial run.
    """
    fields = spec.grid.values()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda B: _levels_at(spec, B), fields))
    else:
        rows = [_levels_at(spec, B) for B in fields]
    result = SweepResult(fields, np.vstack(rows))
    tol = spec.crossing_tol * spectral_scale(result.levels)
    result.events = detect_events(result, tol)
    return result


# ---------------------------------------------------------------------------
# Event detection


def _parabola(x, y):
    """Coefficients ``(c2, c1, c0)`` of the parabola through three points, in ``u = x - x[1]``."""
    u0, u2 = x[0] - x[1], x[2] - x[1]
    y0, y1, y2 = y
    d01 = (y1 - y0) / (-u0)
    d12 = (y2 - y1) / u2
    c2 = (d12 - d01) / (u2 - u0)
    # Newton form on nodes (0, u2, u0): y1 + d12*u + c2*u*(u - u2)
    c1 = d12 - c2 * u2
    return c2, c1, y1


def _eval(coef, u):
    c2, c1, c0 = coef
    return (c2 * u + c1) * u + c0


def _smooth_fit(x, g):
    """Vertex of the parabola through the squared gaps: ``(u_vertex, coef)``."""
    coef = _parabola(x, g * g)
    c2, c1, _ = coef
    if c2 > 0.0:
        u = -c1 / (2.0 * c2)
        u = min(max(u, x[0] - x[1]), x[2] - x[1])
    else:
        u = 0.0
    return u, coef


def _kinked_fit(x, g, u_hint):
    """Root of the parabola through the sign-restored gap, or ``None``.

    Under the crossing hypothesis the signed level difference is positive
    left of the crossing and negative right of it. The sign of the middle
    sample follows from which side the smooth vertex ``u_hint`` lies on.
    """
    mid = g[1] if u_hint >= 0.0 else -g[1]
    coef = _parabola(x, np.array([g[0], mid, -g[2]]))
    c2, c1, c0 = coef
    lo, hi = x[0] - x[1], x[2] - x[1]
    if abs(c2) * (hi - lo) <= 1e-14 * max(abs(c1), 1e-300):
        roots = [-c0 / c1] if c1 != 0.0 else []
    else:
        disc = c1 * c1 - 4.0 * c2 * c0
        if disc < 0.0:
            return None, coef
        sq = math.sqrt(disc)
        # numerically stable pair
        qq = -0.5 * (c1 + math.copysign(sq, c1))
        roots = [qq / c2]
        if qq != 0.0:
            roots.append(c0 / qq)
    inside = [r for r in roots if lo <= r <= hi]
    if not inside:
        return None, coef
    return min(inside, key=abs), coef


def _is_isolated_min(g, k, noise) -> bool:
    left = g[k - 1] - g[k]
    right = g[k + 1] - g[k]
    if left <= noise or right < -noise:
        return False
    if right > noise:
        return True
    # two-point flat bottom counts once; longer flat runs are not isolated
    return k + 2 < len(g) and g[k + 2] - g[k + 1] > noise


def _refine(B, g, k, crossing_tol):
    x = B[k - 1 : k + 2]
    y = g[k - 1 : k + 2]
    u_s, smooth = _smooth_fit(x, y)
    u_k, kinked = _kinked_fit(x, y, u_s)

    use_kinked = False
    if u_k is not None:
        err_s = err_k = 0.0
        checked = False
        for j, sign in ((k - 2, 1.0), (k + 2, -1.0)):
            if 0 <= j < len(g):
                u = B[j] - B[k]
                err_s += abs(math.sqrt(max(_eval(smooth, u), 0.0)) - g[j])
                err_k += abs(_eval(kinked, u) - sign * g[j])
                checked = True
        use_kinked = checked and err_k <= err_s

    if use_kinked:
        return "crossing", float(B[k] + u_k), 0.0
    gap = math.sqrt(max(_eval(smooth, u_s), 0.0))
    kind = "crossing" if gap <= crossing_tol else "avoided"
    return kind, float(B[k] + u_s), gap


def detect_events(r: SweepResult, crossing_tol: float) -> list[CrossingEvent]:
    """Find crossings and avoided crossings between sort-adjacent levels.

    For each pair ``(i, i+1)`` the gap ``g(B) = E[i+1] - E[i]`` is scanned for
    isolated interior local minima. Each minimum is refined with parabolas
    through its three bracketing grid points under two models:

    * smooth (avoided crossing): parabola through ``g**2``, whose vertex gives
      the location and the minimum gap;
    * kinked (true crossing): parabola through the gap with its sign restored
      on the far side of the minimum, whose root gives the crossing field.

    The model that better predicts the next grid point outward on each side
    wins. A kinked fit reports gap 0. A smooth fit is a crossing when its gap
    is at most ``crossing_tol``, otherwise an avoided crossing.

    Gaps that are flat (identically degenerate) over an interval produce no
    events, and a grid with fewer than 3 points has no interior to search.
    Events are sorted by field, then by level pair.
    """
    B = r.field_values
    if len(B) < 3:
        return []
    levels = r.levels
    noise = NOISE_FLOOR * spectral_scale(levels)
    events = []
    for i in range(levels.shape[1] - 1):
        g = np.maximum(levels[:, i + 1] - levels[:, i], 0.0)
        for k in range(1, len(B) - 1):
            if not _is_isolated_min(g, k, noise):
                continue
            kind, where, gap = _refine(B, g, k, crossing_tol)
            events.append(CrossingEvent(kind, (i, i + 1), where, gap))
    events.sort(key=lambda e: (e.field_at_extremum, e.level_pair))
    return events


# ---------------------------------------------------------------------------
# Output


def format_number(x: float) -> str:
    """Positional decimal with 12 significant digits, trailing zeros trimmed."""
    x = float(x)
    if x == 0.0:
        return "0"
    return np.format_float_positional(x, precision=12, unique=False, fractional=False, trim="-")


def events_path(path: str | Path) -> Path:
    return Path(path).with_suffix(".events.csv")


def write_csv(r: SweepResult, path: str | Path) -> tuple[Path, Path]:
    """Write levels to ``path`` and events to the sibling ``<stem>.events.csv``.

    Level columns are ``B,E1,...,En``; event rows use 1-based level indices
    so they match those column names.
    """
    path = Path(path)
    epath = events_path(path)
    try:
        with path.open("w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["B"] + [f"E{i + 1}" for i in range(r.n_levels)])
            for B, row in zip(r.field_values, r.levels):
                w.writerow([format_number(B)] + [format_number(e) for e in row])
        with epath.open("w", encoding="utf-8", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["kind", "level_i", "level_j", "B", "gap"])
            for ev in r.events:
                i, j = ev.level_pair
                w.writerow(
                    [ev.kind, i + 1, j + 1, format_number(ev.field_at_extremum), format_number(ev.gap_at_extremum)]
                )
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write sweep output: {exc.strerror}", str(exc.filename)) from exc
    return path, epath


def format_matrix(H: ComplexMatrix) -> str:
    """One row per line, 12 significant digits; complex entries as ``re+imj``."""
    data = H.data
    real_only = not np.any(data.imag)
    lines = []
    for row in data:
        if real_only:
            cells = [format_number(z.real) for z in row]
        else:
            cells = []
            for z in row:
                im = format_number(abs(z.imag))
                sign = "-" if z.imag < 0 else "+"
                cells.append(f"{format_number(z.real)}{sign}{im}j")
        lines.append(" ".join(cells))
    return "\n".join(lines)
