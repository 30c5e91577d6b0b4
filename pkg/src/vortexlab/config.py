"""Run configuration: plain-text ``key = value`` parsing and defaults.

The format is line oriented: ``#`` starts a comment, keys carry dotted
section prefixes (``shear.f1 = 1.2``), and unknown keys are rejected with
their line number.  An empty document parses to the stock configuration:
the 200 x 100 channel, RK4 at dt = 1e-4, fourth-order Jacobian, and a
solitary-profile initial state of speed 1 deposited at (0, 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .grid import Grid2D, make_grid
from .timestep import IntegratorConfig
from .wyf import Model, ShearFlow
from .entropy import CESpec


class ConfigError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


@dataclass(frozen=True)
class InitSpec:
    """Initial-state recipe: gaussian bump, one deposited profile, or two."""

    kind: str = "zk"  # "gaussian" | "zk" | "two_zk"
    amplitude: float = 3.0
    c_values: tuple[float, ...] = (1.0,)
    centers: tuple[tuple[float, float], ...] = ((0.0, 1.0),)

    def validate(self):
        if self.kind not in ("gaussian", "zk", "two_zk"):
            raise ConfigError(f"unknown init kind {self.kind!r}")
        need = 2 if self.kind == "two_zk" else 1
        if len(self.centers) != need:
            raise ConfigError(f"init kind {self.kind!r} needs {need} center(s), "
                              f"got {len(self.centers)}")
        if self.kind != "gaussian" and len(self.c_values) != need:
            raise ConfigError(f"init kind {self.kind!r} needs {need} wave speed(s), "
                              f"got {len(self.c_values)}")
        if any(c <= 0 for c in self.c_values):
            raise ConfigError("wave speeds must be positive")


@dataclass(frozen=True)
class RunConfig:
    grid: Grid2D = field(default_factory=lambda: make_grid(200, 100, 20.0, 10.0))
    integrator: IntegratorConfig = field(default_factory=IntegratorConfig)
    shear: ShearFlow = field(default_factory=ShearFlow)
    model: Model = field(default_factory=Model)
    init: InitSpec = field(default_factory=InitSpec)
    ce: CESpec = field(default_factory=CESpec)
    output_dir: str = "out"
    run_label: str = "run"


_BOOL = {"true": True, "yes": True, "1": True, "false": False, "no": False, "0": False}


def _parse_bool(raw: str, line: int) -> bool:
    try:
        return _BOOL[raw.strip().lower()]
    except KeyError:
        raise ConfigError(f"expected a boolean, got {raw!r}", line) from None


def _parse_float(raw: str, line: int) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"expected a number, got {raw!r}", line) from None


def _parse_int(raw: str, line: int) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"expected an integer, got {raw!r}", line) from None


def _parse_floats(raw: str, line: int) -> tuple[float, ...]:
    return tuple(_parse_float(part, line) for part in raw.split(",") if part.strip())


def _parse_centers(raw: str, line: int) -> tuple[tuple[float, float], ...]:
    centers = []
    for pair in raw.split(";"):
        if not pair.strip():
            continue
        xy = _parse_floats(pair, line)
        if len(xy) != 2:
            raise ConfigError(f"center must be 'x,y', got {pair.strip()!r}", line)
        centers.append((xy[0], xy[1]))
    return tuple(centers)


def parse_config(text: str) -> RunConfig:
    """Parse a config document, applying defaults for anything unset."""
    values: dict[str, tuple[str, int]] = {}
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = rawline.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected 'key = value', got {rawline.strip()!r}", lineno)
        key, _, val = line.partition("=")
        key = key.strip().lower()
        val = val.strip()
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno)
        values[key] = (val, lineno)

    def take(key, parser, default):
        if key not in values:
            return default
        raw, lineno = values.pop(key)
        return parser(raw, lineno)

    def take_str(key, default, allowed=None):
        if key not in values:
            return default
        raw, lineno = values.pop(key)
        raw = raw.strip()
        if allowed and raw not in allowed:
            raise ConfigError(f"{key} must be one of {sorted(allowed)}, got {raw!r}", lineno)
        return raw

    nx = take("grid.nx", _parse_int, 200)
    ny = take("grid.ny", _parse_int, 100)
    lx = take("grid.lx", _parse_float, 20.0)
    ly = take("grid.ly", _parse_float, 10.0)
    try:
        grid = make_grid(nx, ny, lx, ly)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    def take_ranged(key, parser, default, ok, what):
        if key not in values:
            return default
        raw, lineno = values.pop(key)
        val = parser(raw, lineno)
        if not ok(val):
            raise ConfigError(f"{key} must be {what}, got {raw}", lineno)
        return val

    scheme = take_str("integrator.scheme", "rk4", {"rk4", "leapfrog"})
    dt = take_ranged("integrator.dt", _parse_float, 1.0e-4, lambda v: v > 0, "positive")
    t_end = take_ranged("integrator.t_end", _parse_float, 50.0,
                        lambda v: v >= 0, "non-negative")
    snap_every = take_ranged("integrator.snapshot_every", _parse_int, 10_000,
                             lambda v: v >= 1, ">= 1")
    series_every = take_ranged("integrator.series_every", _parse_int, 100,
                               lambda v: v >= 1, ">= 1")
    integrator = IntegratorConfig(scheme, dt, t_end, snap_every, series_every)

    shear = ShearFlow(take("shear.f0", _parse_float, 0.0),
                      take("shear.f1", _parse_float, 0.0))

    kind = take_str("model.kind", "wyf", {"wyf", "zk_limit"})
    include_jac = take("model.include_jacobian", _parse_bool, kind == "wyf")
    jac_order = take("model.jacobian_order", _parse_int, 4)
    try:
        model = Model(kind, include_jac, jac_order)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None

    init = InitSpec(
        kind=take_str("init.kind", "zk", {"gaussian", "zk", "two_zk"}),
        amplitude=take("init.amplitude", _parse_float, 3.0),
        c_values=take("init.c", _parse_floats, (1.0,)),
        centers=take("init.centers", _parse_centers, ((0.0, 1.0),)),
    )
    init.validate()

    slice_rule = take_str("ce.slice_rule", "through_peak", {"through_peak", "fixed_y"})
    fixed_y = take("ce.fixed_y", _parse_float, 0.0)
    exclude_mean = take("ce.exclude_mean", _parse_bool, True)
    try:
        ce = CESpec(slice_rule, fixed_y, exclude_mean)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if slice_rule == "fixed_y" and not -ly <= fixed_y <= ly:
        raise ConfigError("ce.fixed_y outside the domain")

    output_dir = take_str("output_dir", "out")
    run_label = take_str("run_label", "run")

    if values:
        key, (_, lineno) = next(iter(values.items()))
        raise ConfigError(f"unknown key {key!r}", lineno)

    return RunConfig(grid, integrator, shear, model, init, ce, output_dir, run_label)


def serialize_config(cfg: RunConfig) -> str:
    """Emit config text that parses back to an equal RunConfig."""
    lines = [
        f"grid.nx = {cfg.grid.nx}",
        f"grid.ny = {cfg.grid.ny}",
        f"grid.lx = {cfg.grid.lx!r}",
        f"grid.ly = {cfg.grid.ly!r}",
        f"integrator.scheme = {cfg.integrator.scheme}",
        f"integrator.dt = {cfg.integrator.dt!r}",
        f"integrator.t_end = {cfg.integrator.t_end!r}",
        f"integrator.snapshot_every = {cfg.integrator.snapshot_every}",
        f"integrator.series_every = {cfg.integrator.series_every}",
        f"shear.f0 = {cfg.shear.f0!r}",
        f"shear.f1 = {cfg.shear.f1!r}",
        f"model.kind = {cfg.model.kind}",
        f"model.include_jacobian = {str(cfg.model.include_jacobian).lower()}",
        f"model.jacobian_order = {cfg.model.jacobian_order}",
        f"init.kind = {cfg.init.kind}",
        f"init.amplitude = {cfg.init.amplitude!r}",
        "init.c = " + ",".join(repr(c) for c in cfg.init.c_values),
        "init.centers = " + "; ".join(f"{x!r},{y!r}" for x, y in cfg.init.centers),
        f"ce.slice_rule = {cfg.ce.slice_rule}",
        f"ce.fixed_y = {cfg.ce.fixed_y!r}",
        f"ce.exclude_mean = {str(cfg.ce.exclude_mean).lower()}",
        f"output_dir = {cfg.output_dir}",
        f"run_label = {cfg.run_label}",
    ]
    return "\n".join(lines) + "\n"


def build_initial_field(cfg: RunConfig, profiles: dict[float, object] | None = None):
    """Realize the configured initial state on the configured grid.

    ``profiles`` maps wave speed to an already-solved RadialProfile so sweeps
    can reuse one solve; missing entries are solved on demand.
    """
    from .grid import sample_gaussian
    from .zk import deposit_radial, solve_radial

    init = cfg.init
    if init.kind == "gaussian":
        (x0, y0), = init.centers
        return sample_gaussian(cfg.grid, init.amplitude, x0, y0)

    profiles = dict(profiles or {})
    fields = []
    for c, (x0, y0) in zip(init.c_values, init.centers):
        if c not in profiles:
            profiles[c] = solve_radial(c)
        fields.append(deposit_radial(cfg.grid, profiles[c], x0, y0))
    out = fields[0]
    for extra in fields[1:]:
        out.interior[:] += extra.interior
    from .grid import apply_boundary
    return apply_boundary(out)


def with_updates(cfg: RunConfig, **kwargs) -> RunConfig:
    """dataclasses.replace that reads a little nicer at call sites."""
    return replace(cfg, **kwargs)
