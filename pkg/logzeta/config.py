"""Configuration management for the logzeta command-line tool."""

from __future__ import annotations

import os
from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path
from typing import Any, TypeVar

import numpy as np
from dotenv import load_dotenv

from .arithmetic import DEFAULT_TABLE_CEILING
from .errors import CapacityError, DomainError, PoleError
from .types import BoundParameters, PrecisionConfig, Subcommand

N = TypeVar("N", int, float)

DEFAULT_CUTOFF = 1_000_000
DEFAULT_IDENTITY_POINTS = (0.7, 0.9, 2.0)


@dataclass(frozen=True)
class RunConfig:
    """Run configuration assembled from .env, environment and CLI arguments."""

    subcommand: Subcommand

    # Experiment
    n: int
    a: complex | None
    a_list: tuple[complex, ...]
    big_n: int
    nmax: int | None
    grid: tuple[float, ...] | None
    t: float

    # Numerics
    bounds: BoundParameters
    precision: PrecisionConfig
    max_table: int
    workers: int

    # Output and logging
    out_path: Path | None = None
    verbose: bool = False

    @property
    def cutoffs(self) -> tuple[int, ...]:
        """Cutoffs N the subcommand evaluates at: the grid, or the single --N."""
        if self.subcommand == "scan-a" or self.grid is None:
            return (self.big_n,)
        return tuple(int(x) for x in self.grid)

    @property
    def table_limit(self) -> int:
        """Size of the von Mangoldt table the subcommand needs (0 for none)."""
        if self.subcommand == "mangoldt":
            return self.nmax or 0
        if self.subcommand in ("approx", "scan-a", "li"):
            return self.big_n
        if self.subcommand in ("scan-n", "eta", "oscillation"):
            return max(self.cutoffs, default=1)
        return 0


def _env(name: str, default: N, cast: Callable[[str], N]) -> N:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return cast(raw)
    except ValueError as e:
        raise DomainError(
            f"environment variable {name}={raw!r} is not a valid {cast.__name__}"
        ) from e


def _pick(cli_value: N | None, env_name: str, default: N, cast: Callable[[str], N]) -> N:
    """CLI flag, else environment variable, else built-in default."""
    if cli_value is not None:
        return cli_value
    return _env(env_name, default, cast)


def parse_grid(text: str, logarithmic: bool = False, integer: bool = False) -> tuple[float, ...]:
    """Expand 'start:stop:points' into grid values.

    Logarithmic grids are geometric. Integer grids are rounded and
    de-duplicated so they stay strictly increasing.

    Raises:
        DomainError: If the descriptor is malformed
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise DomainError(f"grid must look like start:stop:points, got {text!r}")
    try:
        start, stop, points = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise DomainError(f"grid must look like start:stop:points, got {text!r}") from e
    if points < 0:
        raise DomainError(f"grid point count must be >= 0, got {points}")
    if points > 1 and stop <= start:
        raise DomainError(f"grid stop must exceed start, got {start}:{stop}")
    if logarithmic and (start <= 0 or stop <= 0):
        raise DomainError(f"logarithmic grid needs positive bounds, got {start}:{stop}")

    values = np.geomspace(start, stop, points) if logarithmic else np.linspace(start, stop, points)
    if integer:
        return tuple(float(v) for v in sorted(set(np.rint(values).astype(np.int64).tolist())))
    return tuple(float(v) for v in values)


def _parse_point_list(text: str) -> tuple[complex, ...]:
    try:
        points = tuple(complex(item.replace(" ", "")) for item in text.split(",") if item.strip())
    except ValueError as e:
        raise DomainError(f"--a-list must be comma-separated numbers, got {text!r}") from e
    if not points:
        raise DomainError(f"--a-list names no points, got {text!r}")
    return points


def _check_strip_or_convergent(a: complex) -> None:
    if a == 1:
        raise PoleError("a = 1 is a pole")
    if a.real <= 0.5:
        raise DomainError(f"a must satisfy Re a > 1/2, got a = {a}")
    if a.real == 1.0:
        raise DomainError(f"Re a = 1 belongs to neither regime, got a = {a}")


def _validate(config: RunConfig) -> None:
    """Fail fast on anything the selected subcommand would reject later."""
    command = config.subcommand
    if config.n < 1:
        raise DomainError(f"--n must be >= 1, got {config.n}")
    if config.workers < 1:
        raise DomainError(f"--workers must be >= 1, got {config.workers}")

    if command in ("approx", "scan-n", "li"):
        if config.a is None:
            raise DomainError(f"{command} needs --a")
        _check_strip_or_convergent(config.a)
    if command == "scan-a":
        if config.grid is None:
            raise DomainError("scan-a needs --grid")
        for a in config.grid:
            _check_strip_or_convergent(complex(a))
    if command == "scan-n" and config.grid is None:
        raise DomainError("scan-n needs --grid or --grid-log")
    if command == "mangoldt" and config.nmax is None:
        raise DomainError("mangoldt needs --nmax")
    if command == "identities":
        for a in config.a_list:
            _check_strip_or_convergent(a)
    if command == "oscillation" and config.t == 0:
        raise DomainError("--t must be nonzero")

    if command != "mangoldt" and any(c < 1 for c in config.cutoffs):
        raise DomainError(f"cutoffs must be >= 1, got {config.cutoffs}")
    if command in ("approx", "scan-n", "eta") and config.n >= 2 and 1 in config.cutoffs:
        # ln(N)**(n-1) vanishes at N = 1, leaving no bound to compare against
        raise DomainError(f"cutoff N = 1 needs --n 1, got --n {config.n}")
    if config.table_limit > config.max_table:
        raise CapacityError(
            f"table limit {config.table_limit} exceeds the memory ceiling {config.max_table} "
            f"(raise LOGZETA_MAX_TABLE to allow it)"
        )


def load_config(args: Any) -> RunConfig:
    """Load configuration from .env file, environment and CLI arguments.

    Raises:
        DomainError: If any value is malformed or outside the subcommand's domain
    """
    load_dotenv()

    command: Subcommand = args.command
    a = complex(args.a, args.a_im or 0.0) if args.a is not None else None
    a_list = _parse_point_list(args.a_list) if args.a_list is not None else None

    # scan-a grids live in a; every other grid lists cutoffs
    grid_text = args.grid_log or args.grid
    integer_grid = command != "scan-a"
    grid = parse_grid(grid_text, bool(args.grid_log), integer_grid) if grid_text else None

    bounds = BoundParameters(
        delta=_pick(args.delta, "LOGZETA_DELTA", 0.0, float),
        delta0=_pick(args.delta0, "LOGZETA_DELTA0", 1e-3, float),
        constant_c=_pick(args.C, "LOGZETA_CONSTANT_C", 1.0, float),
    )
    precision = PrecisionConfig(
        em_cutoff=_pick(args.em_cutoff, "LOGZETA_EM_CUTOFF", 20, int),
        bernoulli_order=_pick(args.bernoulli_order, "LOGZETA_BERNOULLI_ORDER", 10, int),
        cauchy_points=_pick(args.cauchy_points, "LOGZETA_CAUCHY_POINTS", 64, int),
        cauchy_radius=_pick(args.cauchy_radius, "LOGZETA_CAUCHY_RADIUS", 0.25, float),
        quad_rel_tol=_pick(args.quad_rel_tol, "LOGZETA_QUAD_REL_TOL", 1e-10, float),
    )

    config = RunConfig(
        subcommand=command,
        n=args.n,
        a=a,
        a_list=a_list or tuple(complex(x) for x in DEFAULT_IDENTITY_POINTS),
        big_n=args.N if args.N is not None else DEFAULT_CUTOFF,
        nmax=args.nmax,
        grid=grid,
        t=args.t,
        bounds=bounds,
        precision=precision,
        max_table=_env("LOGZETA_MAX_TABLE", DEFAULT_TABLE_CEILING, int),
        workers=_pick(args.workers, "LOGZETA_WORKERS", 1, int),
        out_path=Path(args.out) if args.out else None,
        verbose=args.verbose,
    )
    _validate(config)
    return config
