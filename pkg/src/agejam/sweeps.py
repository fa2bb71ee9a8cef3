"""Parameter sweeps and artifact emission.

A sweep walks a grid of values for one (or several, tied) scenario fields,
evaluates each point with the analytic pipeline and/or the simulator, and
emits rows with stable column names.  Figure recipes bundle the standard
evaluation sweeps: jamming power vs decoy/transmit probability (fig4a,
fig4b), peak age vs decoy/transmit probability (fig5a, fig5b) and peak age
vs transmit power with an SNR-sensitive energy detector (fig6).

Simulation points at the same grid value share one seed across series, so
paired series (decoy vs no-decoy) run on common random numbers.
"""

from __future__ import annotations

import copy
import json
from dataclasses import dataclass, field

import numpy as np

from .aoi import closed_loop_paoi
from .scenario import Scenario, ScenarioError, scenario_from_dict
from .simulate import run
from .svg import render_lines

__all__ = [
    "SweepSpec",
    "ResultRow",
    "SweepError",
    "run_sweep",
    "emit",
    "rows_to_csv",
    "parse_csv",
    "RECIPES",
    "recipe",
    "load_sweep_spec",
    "CSV_COLUMNS",
]

CSV_COLUMNS = (
    "swept_value",
    "engine",
    "p_busy",
    "p_j",
    "p_loss",
    "paoi",
    "paoi_ci",
    "jammer_avg_power",
    "series",
)

ENGINES = ("analytic", "simulation", "both")


class SweepError(RuntimeError):
    pass


@dataclass(frozen=True)
class ResultRow:
    swept_value: float
    engine: str
    p_busy: float
    p_j: float
    p_loss: float
    paoi: float | None
    paoi_ci: float | None
    jammer_avg_power: float
    series: str = "main"


@dataclass(frozen=True)
class SweepSpec:
    """One sweep: parameter path(s), grid, series variants and engines."""

    param: tuple[str, ...]
    grid: tuple[float, ...]
    base: dict = field(default_factory=dict)
    series: tuple[tuple[str, dict], ...] = (("main", {}),)
    engines: str = "analytic"
    y_field: str = "paoi"
    n_slots: int | None = None
    seed: int | None = None
    replications: int = 1
    name: str = "sweep"

    def __post_init__(self):
        if not self.grid:
            raise ValueError("sweep grid must be non-empty")
        if len(self.grid) > 1 and not (
            all(b > a for a, b in zip(self.grid, self.grid[1:]))
            or all(b < a for a, b in zip(self.grid, self.grid[1:]))
        ):
            raise ValueError("sweep grid must be strictly monotone")
        if self.engines not in ENGINES:
            raise ValueError(f"engines must be one of {ENGINES}, got {self.engines!r}")
        if self.y_field not in CSV_COLUMNS:
            raise ValueError(f"y_field must be one of {CSV_COLUMNS}, got {self.y_field!r}")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if not self.param:
            raise ValueError("sweep needs at least one parameter path")


def _set_path(doc: dict, path: str, value) -> None:
    parts = path.split(".")
    cur = doc
    for p in parts[:-1]:
        cur = cur.setdefault(p, {})
        if not isinstance(cur, dict):
            raise SweepError(f"parameter path {path!r} collides with a scalar field")
    cur[parts[-1]] = value


def _scenario_at(spec: SweepSpec, overrides: dict, value: float) -> Scenario:
    doc = copy.deepcopy(spec.base)
    for path in spec.param:
        _set_path(doc, path, value)
    for path, v in overrides.items():
        _set_path(doc, path, v)
    return scenario_from_dict(doc)


def _point_seed(base_seed: int, grid_idx: int, rep: int) -> int:
    # one seed per grid point shared by all series: common random numbers
    ss = np.random.SeedSequence([base_seed, grid_idx, rep])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def run_sweep(spec: SweepSpec) -> list[ResultRow]:
    """Evaluate every (series x grid value x engine) combination."""
    rows: list[ResultRow] = []
    for series_name, overrides in spec.series:
        for gi, value in enumerate(spec.grid):
            try:
                scenario = _scenario_at(spec, overrides, value)
                if spec.engines in ("analytic", "both"):
                    a = closed_loop_paoi(scenario)
                    rows.append(
                        ResultRow(
                            swept_value=value,
                            engine="analytic",
                            p_busy=a.p_busy,
                            p_j=a.p_j,
                            p_loss=a.p_loss,
                            paoi=a.paoi,
                            paoi_ci=None,
                            jammer_avg_power=a.p_j * a.p_busy,
                            series=series_name,
                        )
                    )
                if spec.engines in ("simulation", "both"):
                    base_seed = spec.seed if spec.seed is not None else scenario.seed
                    reps = []
                    for rep in range(spec.replications):
                        reps.append(
                            run(
                                scenario,
                                n_slots=spec.n_slots,
                                seed=_point_seed(base_seed, gi, rep),
                            )
                        )
                    rows.append(_aggregate(value, series_name, reps))
            except (ScenarioError, ValueError, ArithmeticError) as exc:
                raise SweepError(
                    f"sweep {spec.name!r} failed at {'/'.join(spec.param)} = {value} "
                    f"(series {series_name!r}): {exc}"
                ) from exc
    return rows


def _aggregate(value: float, series: str, reps) -> ResultRow:
    paois = [s.mean_paoi for s in reps if s.mean_paoi is not None]
    cis = [s.paoi_ci99 for s in reps if s.paoi_ci99 is not None]
    n = len(reps)
    act_rate = sum(s.activation_rate for s in reps) / n
    return ResultRow(
        swept_value=value,
        engine="simulation",
        p_busy=act_rate,
        p_j=(
            sum(s.jammer_avg_power / s.activation_rate for s in reps if s.activation_rate)
            / max(1, sum(1 for s in reps if s.activation_rate))
        ),
        p_loss=sum(s.loss_rate for s in reps) / n,
        paoi=sum(paois) / len(paois) if paois else None,
        paoi_ci=(
            (sum(c * c for c in cis) ** 0.5 / len(cis)) if cis and len(cis) == n else None
        ),
        jammer_avg_power=sum(s.jammer_avg_power for s in reps) / n,
        series=series,
    )


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    return f"{v:.9g}"


def rows_to_csv(rows: list[ResultRow]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for r in rows:
        lines.append(",".join(_fmt(getattr(r, c)) for c in CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[ResultRow]:
    """Re-read an emitted CSV; inverse of rows_to_csv at 9 significant digits."""
    lines = [ln for ln in text.strip().split("\n") if ln]
    header = tuple(lines[0].split(","))
    if header != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {header}")
    out = []
    for ln in lines[1:]:
        vals = ln.split(",")
        rec = dict(zip(CSV_COLUMNS, vals))
        out.append(
            ResultRow(
                swept_value=float(rec["swept_value"]),
                engine=rec["engine"],
                p_busy=float(rec["p_busy"]),
                p_j=float(rec["p_j"]),
                p_loss=float(rec["p_loss"]),
                paoi=float(rec["paoi"]) if rec["paoi"] else None,
                paoi_ci=float(rec["paoi_ci"]) if rec["paoi_ci"] else None,
                jammer_avg_power=float(rec["jammer_avg_power"]),
                series=rec["series"],
            )
        )
    return out


def emit(rows: list[ResultRow], path, fmt: str = "csv", *, spec: SweepSpec | None = None) -> None:
    """Write the sweep table as CSV or as an SVG line plot."""
    if not rows:
        raise ValueError("refusing to emit an empty table")
    if fmt == "csv":
        payload = rows_to_csv(rows)
    elif fmt == "svg-lines" or fmt == "svg":
        y_field = spec.y_field if spec is not None else "paoi"
        series = {}
        for r in rows:
            y = getattr(r, y_field)
            if y is None:
                continue
            series.setdefault(f"{r.series}/{r.engine}", []).append((r.swept_value, y))
        payload = render_lines(
            series,
            x_label="/".join(spec.param) if spec is not None else "swept_value",
            y_label=y_field,
            title=spec.name if spec is not None else "sweep",
        )
    else:
        raise ValueError(f"unknown format {fmt!r} (csv or svg)")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
    except OSError as exc:
        raise SweepError(f"cannot write {path}: {exc}") from exc


# --- bundled figure recipes -------------------------------------------------

def _grid(start: float, stop: float, step: float) -> tuple[float, ...]:
    n = int(round((stop - start) / step)) + 1
    return tuple(round(start + i * step, 10) for i in range(n))


def recipe(name: str, engines: str = "analytic", n_slots: int | None = None,
           seed: int | None = None, detector_table: str | None = None) -> SweepSpec:
    """Instantiate a bundled figure recipe by name."""
    if name not in RECIPES:
        raise KeyError(f"unknown recipe {name!r} (available: {sorted(RECIPES)})")
    spec = RECIPES[name](engines=engines, n_slots=n_slots, seed=seed)
    if detector_table is not None:
        base = copy.deepcopy(spec.base)
        _set_path(base, "detector.kind", "table")
        _set_path(base, "detector.path", detector_table)
        _set_path(base, "detector.n_samples", 16)
        for drop in ("p_m_t", "p_m_d", "p_f_t", "p_f_d", "target_false_alarm"):
            base.get("detector", {}).pop(drop, None)
        spec = SweepSpec(**{**spec.__dict__, "base": base})
    return spec


def _fig4a(engines="analytic", n_slots=None, seed=None) -> SweepSpec:
    return SweepSpec(
        name="fig4a",
        param=("traffic.q",),
        grid=_grid(0.1, 0.9, 0.1),
        base={},
        series=(("decoy", {}), ("no_decoy", {"traffic.q": 0.0})),
        engines=engines,
        y_field="p_j",
        n_slots=n_slots,
        seed=seed,
    )


def _fig4b(engines="analytic", n_slots=None, seed=None) -> SweepSpec:
    return SweepSpec(
        name="fig4b",
        param=("traffic.q_t", "traffic.lambda"),
        grid=_grid(0.1, 0.9, 0.1),
        base={},
        series=(("decoy", {"traffic.q": 1.0}), ("no_decoy", {"traffic.q": 0.0})),
        engines=engines,
        y_field="p_j",
        n_slots=n_slots,
        seed=seed,
    )


def _aoi_series(extra: dict | None = None):
    extra = extra or {}
    out = []
    for model_name, model in (("m1", "md1"), ("m2", "jit")):
        for tag, decoy in (("decoy", None), ("no_decoy", 0.0)):
            ov = {"traffic.model": model, **extra}
            if decoy is not None:
                ov["traffic.q"] = decoy
            out.append((f"{model_name}_{tag}", ov))
    return tuple(out)


def _fig5a(engines="analytic", n_slots=None, seed=None) -> SweepSpec:
    return SweepSpec(
        name="fig5a",
        param=("traffic.q",),
        grid=_grid(0.1, 0.9, 0.1),
        base={},
        series=_aoi_series(),
        engines=engines,
        y_field="paoi",
        n_slots=n_slots,
        seed=seed,
    )


def _fig5b(engines="analytic", n_slots=None, seed=None) -> SweepSpec:
    series = []
    for model_name, model in (("m1", "md1"), ("m2", "jit")):
        for tag, q in (("decoy", 1.0), ("no_decoy", 0.0)):
            series.append((f"{model_name}_{tag}", {"traffic.model": model, "traffic.q": q}))
    return SweepSpec(
        name="fig5b",
        param=("traffic.q_t", "traffic.lambda"),
        grid=_grid(0.1, 0.9, 0.1),
        base={},
        series=tuple(series),
        engines=engines,
        y_field="paoi",
        n_slots=n_slots,
        seed=seed,
    )


def _fig6(engines="analytic", n_slots=None, seed=None) -> SweepSpec:
    series = []
    for model_name, model in (("m1", "md1"), ("m2", "jit")):
        for tag, q in (("decoy", 1.0), ("no_decoy", 0.0)):
            series.append((f"{model_name}_{tag}", {"traffic.model": model, "traffic.q": q}))
    return SweepSpec(
        name="fig6",
        param=("power.p_t_db", "power.p_d_db", "power.p_t_max_db"),
        grid=_grid(25.0, 40.0, 1.0),
        base={"detector": {"kind": "energy", "n_samples": 16, "target_false_alarm": 0.05}},
        series=tuple(series),
        engines=engines,
        y_field="paoi",
        n_slots=n_slots,
        seed=seed,
    )


RECIPES = {
    "fig4a": _fig4a,
    "fig4b": _fig4b,
    "fig5a": _fig5a,
    "fig5b": _fig5b,
    "fig6": _fig6,
}


def load_sweep_spec(path) -> SweepSpec:
    """Read a sweep specification file (fail-closed schema)."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("sweep spec must be a JSON object")
    doc = dict(doc)
    known = {
        "param", "grid", "base", "series", "engines", "y_field",
        "n_slots", "seed", "replications", "name",
    }
    unknown = doc.keys() - known
    if unknown:
        raise ValueError(f"unknown field(s) in sweep spec: {sorted(unknown)}")
    param = doc.get("param")
    if isinstance(param, str):
        param = (param,)
    elif isinstance(param, list):
        param = tuple(str(p) for p in param)
    else:
        raise ValueError("sweep spec needs a 'param' path (string or list of strings)")
    series_doc = doc.get("series", {"main": {}})
    if isinstance(series_doc, dict):
        series = tuple((str(k), dict(v)) for k, v in series_doc.items())
    else:
        series = tuple((str(k), dict(v)) for k, v in series_doc)
    return SweepSpec(
        param=param,
        grid=tuple(float(v) for v in doc.get("grid", ())),
        base=dict(doc.get("base", {})),
        series=series,
        engines=str(doc.get("engines", "analytic")),
        y_field=str(doc.get("y_field", "paoi")),
        n_slots=doc.get("n_slots"),
        seed=doc.get("seed"),
        replications=int(doc.get("replications", 1)),
        name=str(doc.get("name", "sweep")),
    )
