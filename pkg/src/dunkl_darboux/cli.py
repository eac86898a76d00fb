"""Command-line front end: verification, spectra, densities, chains, figures.

Subcommands
-----------
verify    residual suite for a scenario, with a pass/fail report
spectrum  bound-state energy table for a quantization rule
density   modified probability density on a grid, plus its norm
darboux   run a transformation chain and emit U-hat, V-hat, Phi-hat, Psi-hat
figure    emit the data series behind the documented figures 1-7

All numeric output is deterministic for a given configuration: floats
are formatted with 12 significant digits, CSV uses LF line endings, and
JSON keys are sorted.  A JSON configuration file (--config) mirrors the
RunConfig field names; explicit command-line flags override it.  The
environment variable DUNKL_DARBOUX_TOL overrides the default
verification tolerance.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .darboux import (DarbouxChain, intertwining_residual, transform,
                      transformed_potential, transformed_solution)
from .errors import DunklDarbouxError
from .model import (DunklParams, modified_norm, probability_density,
                    sampled_parity_defect)
from .numerics import derivative
from .pointmap import energy_relation_residual, exp_map, induced_potential
from .scenarios import (ScenarioGaussianMass, ScenarioHarmonicEnergy,
                        ScenarioHarmonicEnergyPdm, bound_state_energy,
                        confluent_chain, gaussian_solution_function,
                        harmonic_initial_solution_function,
                        mapped_initial_solution, pdm_equivalence_nu,
                        pipeline_hatpsi, pipeline_vhat, printed_bound_state,
                        standard_chain_order1, standard_chain_u12,
                        standard_vhat, SCENARIO_NAMES)

DEFAULT_TOL = 1e-6
TOL_ENV_VAR = "DUNKL_DARBOUX_TOL"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFICATION = 2


# ---------------------------------------------------------------------------
# Configuration
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    """Flat view of the configuration groups a command runs from."""

    scenario: Optional[str] = None
    nu: Optional[float] = None
    delta: Optional[int] = None
    energy: Optional[float] = None
    n: Optional[int] = None
    rule: Optional[str] = None
    grid_lo: Optional[float] = None
    grid_hi: Optional[float] = None
    grid_count: Optional[int] = None
    chain_kind: Optional[str] = None
    chain_order: Optional[int] = None
    chain_eps: Optional[List[float]] = None
    output_format: Optional[str] = None
    output_path: Optional[str] = None


class UsageError(Exception):
    """Configuration or argument problem; maps to exit code 1."""


def _load_config_file(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise UsageError("config file must contain a JSON object")
    cfg = RunConfig()
    cfg.scenario = raw.get("scenario")
    params = raw.get("params", {})
    cfg.nu = params.get("nu")
    cfg.delta = params.get("delta")
    cfg.energy = params.get("E")
    cfg.n = params.get("n")
    cfg.rule = params.get("rule")
    grid = raw.get("grid", {})
    cfg.grid_lo = grid.get("lo")
    cfg.grid_hi = grid.get("hi")
    cfg.grid_count = grid.get("count")
    chain = raw.get("chain", {})
    cfg.chain_kind = chain.get("kind")
    cfg.chain_order = chain.get("order")
    cfg.chain_eps = chain.get("eps")
    output = raw.get("output", {})
    cfg.output_format = output.get("format")
    cfg.output_path = output.get("path")
    return cfg


def _merge(config: RunConfig, args: argparse.Namespace) -> RunConfig:
    """Overlay explicitly given command-line values on the config file."""
    pairs = (
        ("scenario", "scenario"), ("nu", "nu"), ("delta", "delta"),
        ("energy", "energy"), ("n", "n"), ("rule", "rule"),
        ("grid_lo", "grid_lo"), ("grid_hi", "grid_hi"),
        ("grid_count", "grid_count"), ("chain_kind", "kind"),
        ("chain_order", "order"), ("output_format", "format"),
        ("output_path", "out"),
    )
    for cfg_name, arg_name in pairs:
        val = getattr(args, arg_name, None)
        if val is not None:
            setattr(config, cfg_name, val)
    return config


def _require(config: RunConfig, *names: str) -> None:
    for name in names:
        if getattr(config, name) is None:
            raise UsageError(f"missing required setting '{name}' "
                             f"(flag or config file)")


def _grid(config: RunConfig, lo: float, hi: float, count: int) -> np.ndarray:
    lo = config.grid_lo if config.grid_lo is not None else lo
    hi = config.grid_hi if config.grid_hi is not None else hi
    count = config.grid_count if config.grid_count is not None else count
    if not (lo < hi):
        raise UsageError("grid: lo must be less than hi")
    if count < 2:
        raise UsageError("grid: count must be at least 2")
    return np.linspace(lo, hi, count)


def _tolerance() -> float:
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise UsageError(f"{TOL_ENV_VAR} must be a number, got {raw!r}") from exc
    if tol <= 0:
        raise UsageError(f"{TOL_ENV_VAR} must be positive")
    return tol


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------

def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _write_csv(path: Optional[str], header: Sequence[str],
               rows: Sequence[Sequence[float]]) -> None:
    out = sys.stdout if path is None else open(path, "w", encoding="utf-8",
                                               newline="")
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])
    finally:
        if path is not None:
            out.close()


def _write_json(path: Optional[str], payload) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit_table(config: RunConfig, header: Sequence[str],
                rows: Sequence[Sequence[float]]) -> None:
    fmt = config.output_format or "csv"
    if fmt == "csv":
        _write_csv(config.output_path, header, rows)
    elif fmt == "json":
        payload = {"columns": list(header),
                   "rows": [[_fmt(v) for v in row] for row in rows]}
        _write_json(config.output_path, payload)
    else:
        raise UsageError(f"unknown output format {fmt!r}")


# ---------------------------------------------------------------------------
# Verification report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CheckRecord:
    name: str
    max_residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance


@dataclass
class VerificationReport:
    checks: List[CheckRecord] = field(default_factory=list)

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, max_residual: float, tolerance: float) -> None:
        self.checks.append(CheckRecord(name, max_residual, tolerance))

    def as_dict(self) -> dict:
        return {
            "overall_pass": self.overall_pass,
            "checks": [
                {"name": c.name, "max_residual": _fmt(c.max_residual),
                 "tolerance": _fmt(c.tolerance), "pass": c.passed}
                for c in self.checks
            ],
        }

    def print_text(self) -> None:
        for c in self.checks:
            status = "PASS" if c.passed else "FAIL"
            print(f"{status}  {c.name}: max residual {_fmt(c.max_residual)} "
                  f"(tolerance {_fmt(c.tolerance)})")
        print("overall:", "PASS" if self.overall_pass else "FAIL")


def _relative_dunkl_residual(system, psi, E: float, grid: np.ndarray) -> float:
    from .model import dunkl_residual
    return max(abs(dunkl_residual(system, psi, E, float(x), relative=True))
               for x in grid)


def _verify_gaussian(config: RunConfig, tol: float) -> VerificationReport:
    params = DunklParams(nu=config.nu, delta=config.delta, mu=1)
    n = config.n if config.n is not None else 0
    rule = config.rule or "ene0"
    E = config.energy if config.energy is not None \
        else bound_state_energy(n, params, rule)
    scenario = ScenarioGaussianMass()
    system = scenario.system(params)
    psi = gaussian_solution_function(params, E)
    grid = _grid(config, 0.1, 4.0, 400)
    report = VerificationReport()
    report.add("dunkl_residual", _relative_dunkl_residual(system, psi, E, grid), tol)
    report.add("parity_defect", sampled_parity_defect(psi, grid), tol)
    norm = modified_norm(system, psi, E)
    norm_ok = 0.0 if (norm.value > 0 and math.isfinite(norm.value)) else 1.0
    report.add("norm_positive_finite", norm_ok, 0.5)
    worst = max(abs(energy_relation_residual(scenario.coord(), scenario.mass(),
                                             scenario.potential(), params, E,
                                             float(y)))
                for y in np.linspace(0.25, 4.0, 25))
    report.add("norm_preservation_relation", worst, tol)
    return report


def _verify_harmonic(config: RunConfig, tol: float) -> VerificationReport:
    params = DunklParams(nu=config.nu, delta=config.delta, mu=1)
    n = config.n if config.n is not None else 0
    rule = config.rule or "ene1"
    E = config.energy if config.energy is not None \
        else bound_state_energy(n, params, rule)
    scenario = ScenarioHarmonicEnergy()
    system = scenario.system(params)
    psi = harmonic_initial_solution_function(params, E)
    grid = _grid(config, 0.1, 4.0, 400)
    report = VerificationReport()
    report.add("dunkl_residual", _relative_dunkl_residual(system, psi, E, grid), tol)
    report.add("parity_defect", sampled_parity_defect(psi, grid), tol)
    phi = mapped_initial_solution(params, E)
    mapped_grid = np.linspace(-2.0, 1.0, 100)
    form = scenario.form(params)
    worst = 0.0
    for y in mapped_grid:
        second = derivative(phi.f1, float(y), 1)
        res = second + (phi.eps - form.u_e(E, float(y))) * phi.f(float(y))
        scale = abs(second) + abs((phi.eps - form.u_e(E, float(y))) * phi.f(float(y)))
        worst = max(worst, abs(res) / max(scale, 1e-30))
    report.add("mapped_equation_residual", worst, max(tol, 1e-6))
    worst = max(abs(energy_relation_residual(scenario.coord(), scenario.mass(),
                                             scenario.potential(), params, E,
                                             float(y)))
                for y in mapped_grid)
    report.add("norm_preservation_relation", worst, tol)
    return report


def _verify_pdm(config: RunConfig, tol: float) -> VerificationReport:
    """Equivalence of the PDM route with the constant-mass route.

    The flags carry the constant-mass parameters (nu-bar, delta-bar);
    the PDM deformation parameter is the redefined one with the same
    reflection sign.
    """
    nu_bar, delta_bar = config.nu, config.delta
    delta = delta_bar
    nu = pdm_equivalence_nu(nu_bar, delta_bar, delta)
    E = config.energy if config.energy is not None else bound_state_energy(
        config.n if config.n is not None else 0,
        DunklParams(nu=nu_bar, delta=delta_bar, mu=1), config.rule or "ene1")
    harm = ScenarioHarmonicEnergy()
    pdm = ScenarioHarmonicEnergyPdm()
    coord = exp_map()
    report = VerificationReport()
    worst = 0.0
    for y in np.linspace(-2.0, 1.0, 100):
        u_harm = induced_potential(coord, harm.mass(), harm.potential(),
                                   DunklParams(nu=nu_bar, delta=delta_bar, mu=1),
                                   E, float(y))
        u_pdm = induced_potential(coord, pdm.mass(), pdm.potential(),
                                  DunklParams(nu=nu, delta=delta, mu=1),
                                  E, float(y))
        worst = max(worst, abs(u_harm - u_pdm) / max(1.0, abs(u_harm)))
    report.add("induced_potential_match", worst, tol)
    # The redefined nu is fixed by matching the mapped constant term:
    # 3 delta nu - nu^2 (PDM) against delta_bar nu_bar - nu_bar^2.
    const_bar = delta_bar * nu_bar - nu_bar**2
    defect = abs((3.0 * delta * nu - nu**2) - const_bar) / max(1.0, abs(const_bar))
    report.add("constant_term_identity", defect, max(tol, 1e-10))
    return report


def cmd_verify(config: RunConfig) -> int:
    _require(config, "scenario", "nu", "delta")
    tol = _tolerance()
    if config.scenario == "gaussian-mass":
        report = _verify_gaussian(config, tol)
    elif config.scenario == "harmonic-energy":
        report = _verify_harmonic(config, tol)
    elif config.scenario == "harmonic-energy-pdm":
        report = _verify_pdm(config, tol)
    else:
        raise UsageError(f"unknown scenario {config.scenario!r}; "
                         f"known: {sorted(SCENARIO_NAMES)}")
    if config.output_format == "json":
        _write_json(config.output_path, report.as_dict())
    else:
        report.print_text()
    return EXIT_OK if report.overall_pass else EXIT_VERIFICATION


# ---------------------------------------------------------------------------
# Spectrum, density, darboux
# ---------------------------------------------------------------------------

def cmd_spectrum(config: RunConfig, n_max: int) -> int:
    _require(config, "nu", "delta", "rule")
    if n_max < 0:
        raise UsageError("spectrum: --n-max must be nonnegative")
    params = DunklParams(nu=config.nu, delta=config.delta, mu=1)
    rows = [[float(n), bound_state_energy(n, params, config.rule)]
            for n in range(n_max + 1)]
    _emit_table(config, ["n", "E"], rows)
    return EXIT_OK


def cmd_density(config: RunConfig) -> int:
    _require(config, "scenario", "nu", "delta")
    params = DunklParams(nu=config.nu, delta=config.delta, mu=1)
    n = config.n if config.n is not None else 0
    if config.scenario == "gaussian-mass":
        rule = config.rule or "ene0"
        scenario = ScenarioGaussianMass()
        E = config.energy if config.energy is not None \
            else bound_state_energy(n, params, rule)
        psi = gaussian_solution_function(params, E)
    elif config.scenario == "harmonic-energy":
        rule = config.rule or "ene1"
        scenario = ScenarioHarmonicEnergy()
        E = config.energy if config.energy is not None \
            else bound_state_energy(n, params, rule)
        psi = harmonic_initial_solution_function(params, E)
    else:
        raise UsageError(f"density: unsupported scenario {config.scenario!r}")
    system = scenario.system(params)
    grid = _grid(config, 0.1, 4.0, 400)
    rows = [[float(x), probability_density(system, psi, E, float(x))]
            for x in grid]
    norm = modified_norm(system, psi, E)
    if (config.output_format or "csv") == "json":
        payload = {"columns": ["x", "density"],
                   "rows": [[_fmt(v) for v in row] for row in rows],
                   "norm": _fmt(norm.value),
                   "norm_est_error": _fmt(norm.est_abs_error)}
        _write_json(config.output_path, payload)
    else:
        _write_csv(config.output_path, ["x", "density"], rows)
        print(f"norm = {_fmt(norm.value)} "
              f"(estimated error {_fmt(norm.est_abs_error)})", file=sys.stderr)
    return EXIT_OK


def _build_chain(config: RunConfig, E: float) -> DarbouxChain:
    kind = config.chain_kind or "standard"
    order = config.chain_order if config.chain_order is not None else 2
    if kind == "standard":
        if order == 2:
            return standard_chain_u12(E, validate=False)
        if order == 1:
            return standard_chain_order1(E, validate=False)
        raise UsageError("standard chains are constructible at orders 1 and 2")
    if kind == "confluent":
        if order != 2:
            raise UsageError("confluent chains are constructible at order 2")
        eps1 = config.chain_eps[0] if config.chain_eps else -2.0
        return confluent_chain(E, eps1=eps1)
    raise UsageError(f"unknown chain kind {kind!r}")


def cmd_darboux(config: RunConfig) -> int:
    nu = config.nu if config.nu is not None else 2.5
    delta = config.delta if config.delta is not None else -1
    params = DunklParams(nu=nu, delta=delta, mu=1)
    n = config.n if config.n is not None else 0
    E = config.energy if config.energy is not None \
        else bound_state_energy(n, params, config.rule or "ene1")
    chain = _build_chain(config, E)
    phi = mapped_initial_solution(params, E)
    grid = _grid(config, -2.0, 1.0, 200)
    rows = []
    for y in grid:
        y = float(y)
        x = math.exp(y)
        u_hat = transformed_potential(chain, y)
        phi_hat = transformed_solution(chain, phi, y)
        v_hat = pipeline_vhat(E, chain, x)
        psi_hat = x ** (0.5 - params.nu) * phi_hat
        rows.append([y, x, u_hat, v_hat, phi_hat, psi_hat])
    _emit_table(config, ["y", "x", "u_hat", "v_hat", "phi_hat", "psi_hat"], rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Figures
# ---------------------------------------------------------------------------
#
# Figure data series, numbered to match the documented figures:
#   1  the three even polynomial-Gaussian bound states (n = 0, 1, 2)
#   2  normalized modified densities of the three odd bound states
#   3  initial energy-scaled harmonic potential and the standard-chain
#      transformed potentials at the first three bound energies
#      (delta = -1, nu = 5/2)
#   4  normalized transformed densities, standard chain, delta = -1,
#      nu = 5/2
#   5  transformed bound states, standard chain, delta = -1, nu = 5/2
#   6  transformed bound states, standard chain, delta = +1, nu = 7/2
#   7  initial potential and confluent-chain transformed potentials
#      (delta = -1, nu = 5/2)

FIGURE_NUMBERS = (1, 2, 3, 4, 5, 6, 7)


def _figure_states(delta: int) -> list:
    return [printed_bound_state(n, delta) for n in (0, 1, 2)]


def _figure_1(config: RunConfig):
    grid = _grid(config, -3.0, 3.0, 400)
    states = _figure_states(1)
    rows = [[float(x)] + [s.f(float(x)) for s in states] for x in grid]
    return ["x", "psi0", "psi1", "psi2"], rows


def _figure_2(config: RunConfig):
    grid = _grid(config, -3.0, 3.0, 400)
    params = DunklParams(nu=0.5, delta=-1, mu=1)
    system = ScenarioGaussianMass().system(params)
    states = _figure_states(-1)
    energies = [bound_state_energy(n, params, "ene0") for n in (0, 1, 2)]
    norms = [modified_norm(system, s, E).value
             for s, E in zip(states, energies)]
    rows = []
    for x in grid:
        x = float(x)
        row = [x]
        if x == 0.0:
            row += [0.0, 0.0, 0.0]
        else:
            row += [probability_density(system, s, E, x) / nrm
                    for s, E, nrm in zip(states, energies, norms)]
        rows.append(row)
    return ["x", "p0", "p1", "p2"], rows


def _transform_settings(config: RunConfig, default_nu: float,
                        default_delta: int):
    nu = config.nu if config.nu is not None else default_nu
    delta = config.delta if config.delta is not None else default_delta
    params = DunklParams(nu=nu, delta=delta, mu=1)
    energies = [bound_state_energy(n, params, "ene1") for n in (0, 1, 2)]
    return params, energies


def _figure_3(config: RunConfig):
    params, energies = _transform_settings(config, 2.5, -1)
    grid = _grid(config, 0.2, 3.0, 300)
    chains = [standard_chain_u12(E, validate=False) for E in energies]
    rows = []
    for x in grid:
        x = float(x)
        # The initial potential is energy-scaled; the ground energy
        # fixes the displayed curve.
        row = [x, x * x / energies[0]]
        row += [pipeline_vhat(E, c, x) for E, c in zip(energies, chains)]
        rows.append(row)
    return ["x", "v_initial", "v_hat_0", "v_hat_1", "v_hat_2"], rows


def _transformed_state_rows(config: RunConfig, params: DunklParams,
                            energies: Sequence[float]):
    grid = _grid(config, 0.2, 3.0, 300)
    chains = [standard_chain_u12(E, validate=False) for E in energies]
    rows = []
    for x in grid:
        x = float(x)
        rows.append([x] + [pipeline_hatpsi(params, E, c, x)
                           for E, c in zip(energies, chains)])
    return grid, chains, rows


def _figure_45(config: RunConfig, density: bool):
    params, energies = _transform_settings(config, 2.5, -1)
    grid, chains, state_rows = _transformed_state_rows(config, params, energies)
    if not density:
        return ["x", "psi_hat_0", "psi_hat_1", "psi_hat_2"], state_rows
    # Densities are normalized on the emitted grid (trapezoid rule over
    # the symmetric extension), which is the display contract.
    from .numerics import parameter_derivative
    xs = np.array([row[0] for row in state_rows])
    columns = []
    for j, (E, chain) in enumerate(zip(energies, chains)):
        dvdE = {}
        raw = []
        for row in state_rows:
            x = row[0]
            dv = parameter_derivative(lambda e, xx: standard_vhat(e, xx), E, x,
                                      h_eps=1e-4 * max(1.0, abs(E)))
            raw.append(row[1 + j] ** 2 * x ** (2.0 * params.nu) * (1.0 - dv))
        raw = np.array(raw)
        weight = 2.0 * np.trapezoid(raw, xs)
        columns.append(raw / weight)
    rows = [[float(x)] + [float(col[i]) for col in columns]
            for i, x in enumerate(xs)]
    return ["x", "p_hat_0", "p_hat_1", "p_hat_2"], rows


def _figure_6(config: RunConfig):
    params, energies = _transform_settings(config, 3.5, 1)
    _, _, rows = _transformed_state_rows(config, params, energies)
    return ["x", "psi_hat_0", "psi_hat_1", "psi_hat_2"], rows


def _figure_7(config: RunConfig):
    params, energies = _transform_settings(config, 2.5, -1)
    grid = _grid(config, 0.2, 3.0, 300)
    chains = [confluent_chain(E) for E in energies]
    rows = []
    for x in grid:
        x = float(x)
        row = [x, x * x / energies[0]]
        row += [pipeline_vhat(E, c, x) for E, c in zip(energies, chains)]
        rows.append(row)
    return ["x", "v_initial", "v_hat_0", "v_hat_1", "v_hat_2"], rows


def cmd_figure(config: RunConfig, number: int) -> int:
    builders = {
        1: lambda: _figure_1(config),
        2: lambda: _figure_2(config),
        3: lambda: _figure_3(config),
        4: lambda: _figure_45(config, density=True),
        5: lambda: _figure_45(config, density=False),
        6: lambda: _figure_6(config),
        7: lambda: _figure_7(config),
    }
    if number not in builders:
        raise UsageError(f"figure number must be one of {FIGURE_NUMBERS}")
    header, rows = builders[number]()
    for row in rows:
        for v in row:
            if not math.isfinite(v):
                raise DunklDarbouxError(
                    f"figure {number}: non-finite value in emitted series")
    _emit_table(config, header, rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument parsing and dispatch
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON configuration file")
    parser.add_argument("--nu", type=float)
    parser.add_argument("--delta", type=int, choices=(-1, 1))
    parser.add_argument("--energy", type=float, help="explicit energy E")
    parser.add_argument("--n", type=int, help="quantum number")
    parser.add_argument("--rule", choices=("ene0", "ene1"))
    parser.add_argument("--grid-lo", type=float, dest="grid_lo")
    parser.add_argument("--grid-hi", type=float, dest="grid_hi")
    parser.add_argument("--grid-count", type=int, dest="grid_count")
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--out", help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dunkl-darboux",
                     description="Solvable reflection-deformed Schrodinger "
                                 "systems: verification and data export.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the residual suite for a scenario")
    p.add_argument("--scenario", choices=SCENARIO_NAMES)
    _add_common(p)

    p = sub.add_parser("spectrum", help="bound-state energy table")
    p.add_argument("--n-max", type=int, default=4, dest="n_max")
    _add_common(p)

    p = sub.add_parser("density", help="modified probability density + norm")
    p.add_argument("--scenario", choices=SCENARIO_NAMES)
    _add_common(p)

    p = sub.add_parser("darboux", help="run a transformation chain")
    p.add_argument("--kind", choices=("standard", "confluent"))
    p.add_argument("--order", type=int)
    _add_common(p)

    p = sub.add_parser("figure", help="emit data series for a figure")
    p.add_argument("number", type=int)
    _add_common(p)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _load_config_file(args.config) if getattr(args, "config", None) \
            else RunConfig()
        config = _merge(config, args)
        if args.command == "verify":
            return cmd_verify(config)
        if args.command == "spectrum":
            return cmd_spectrum(config, args.n_max)
        if args.command == "density":
            return cmd_density(config)
        if args.command == "darboux":
            return cmd_darboux(config)
        if args.command == "figure":
            return cmd_figure(config, args.number)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DunklDarbouxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> int:
    return run()


if __name__ == "__main__":
    sys.exit(main())
