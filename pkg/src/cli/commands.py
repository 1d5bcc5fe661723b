"""
Command implementations.

Each command takes a resolved RunConfig, writes its report and returns
an exit code. Errors propagate as PFTheoryError subclasses; main() maps
them onto exit codes.
"""

import logging
import math
import sys
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from config.settings import Config
from src.core.constants import (
    EquationForm,
    ExitCode,
    LimitFamily,
    OutputFormat,
    SolverBackend,
)
from src.core.exceptions import ConfigurationError
from src.core.schemas import ParticleState, PFCoupling
from src.core.units import make_constants
from src.field.loader import load_profile_csv
from src.field.profiles import FieldProfile, box_eigenfield
from src.kinematics.integrator import integrate_particle
from src.kinematics.pf_mechanics import pf_force, pf_force_residual
from src.relativity.verifier import VerifierSettings, quartic_scaling, run_verifier, verifier_document
from src.spectral.limits import limit_document, nonrel_mass_sweep, photon_limit_report
from src.spectral.problems import Potential, SpectralProblem
from src.spectral.solvers.registry import solve_problem
from src.utils.numerics import parse_length

from .config import RunConfig
from .exporters import dumps_json, write_eigenfields, write_jsonl, write_report, write_text

logger = logging.getLogger(__name__)


def _summary(line: str) -> None:
    """Human-readable summary; stderr keeps stdout clean for reports."""
    print(line, file=sys.stderr)


def _length(config: RunConfig, key: str, default: Optional[float] = None) -> Optional[float]:
    value = config.get(key, default)
    if value is None:
        return None
    try:
        return parse_length(value)
    except ValueError:
        raise ConfigurationError(f"Cannot parse --{key.replace('_', '-')} value {value!r}", config_key=key)


def _float_list(config: RunConfig, key: str, default: Tuple[float, ...]) -> Tuple[float, ...]:
    value = config.get(key)
    if value is None:
        return default
    if isinstance(value, (list, tuple)):
        return tuple(float(v) for v in value)
    try:
        return tuple(float(part) for part in str(value).split(",") if part.strip())
    except ValueError:
        raise ConfigurationError(f"Expected comma-separated numbers for --{key.replace('_', '-')}", config_key=key)


# =============================================================================
# spectrum
# =============================================================================


def build_spectral_problem(config: RunConfig) -> SpectralProblem:
    """SpectralProblem from --box/--a or --potential-csv plus mass and form."""
    m0 = float(config.require("m0"))
    try:
        form = EquationForm.from_string(config.get("form", EquationForm.MASS_INDEPENDENT.value))
    except ValueError as e:
        raise ConfigurationError(str(e), config_key="form")

    if config.get("box"):
        a = _length(config, "a")
        if a is None:
            config.require("a")
        return SpectralProblem.box(a, m0, form=form, level=float(config.get("v_floor", 0.0)))

    if config.get("potential_csv"):
        potential = Potential.from_csv(config.get("potential_csv"))
        x_lo, x_hi = _length(config, "x_lo"), _length(config, "x_hi")
        domain = (x_lo, x_hi) if x_lo is not None and x_hi is not None else None
        return SpectralProblem(potential=potential, m0=m0, form=form, domain=domain)

    raise ConfigurationError("Choose a problem with --box or --potential-csv", config_key="problem")


def cmd_spectrum(config: RunConfig) -> int:
    """Solve a spectral problem and write the level table."""
    constants = make_constants(config.units)
    problem = build_spectral_problem(config)
    n_levels = int(config.get("levels", Config.LEVELS))
    backend = SolverBackend(config.get("backend", SolverBackend.AUTO.value))

    bracket = None
    if config.get("e_min") is not None and config.get("e_max") is not None:
        bracket = (float(config.get("e_min")), float(config.get("e_max")))

    spectrum = solve_problem(
        problem,
        n_levels,
        constants,
        backend=backend,
        energy_bracket=bracket,
        grid_size=int(config.get("grid_size", Config.GRID_SIZE)),
        tol=float(config.get("tol", Config.SHOOTING_TOL)),
        progress=config.progress,
    )

    frame = spectrum.to_frame()
    frame["nodes"] = [level.nodes for level in spectrum.levels]
    frame["residual"] = [level.residual for level in spectrum.levels]
    if problem.is_box:
        reference = solve_problem(problem, n_levels, constants, backend=SolverBackend.ANALYTIC)
        frame["E_analytic"] = reference.energies
        frame["rel_diff"] = np.abs(frame["E"].to_numpy() - reference.energies) / reference.energies

    _summary(f"backend: {spectrum.backend}")
    for level in spectrum.levels:
        _summary(f"  n={level.n} E={level.energy:.10g} nodes={level.nodes} residual={level.residual:.2e}")
    if "rel_diff" in frame:
        _summary(f"max relative difference to analytic box: {frame['rel_diff'].max():.3e}")

    document = spectrum.to_dict()
    document["meta"]["run"] = config.to_dict()
    if "rel_diff" in frame:
        document["meta"]["analytic"] = frame["E_analytic"].tolist()
    write_report(frame, config.output_format, config.output, json_document=document)

    if config.get("eigenfields"):
        write_eigenfields(spectrum, config.get("eigenfields"))
    return ExitCode.SUCCESS


# =============================================================================
# trajectory
# =============================================================================


def build_profile(config: RunConfig) -> FieldProfile:
    """Field preset from --field and its parameters."""
    kind = str(config.get("field", "zero")).lower()
    if kind == "zero":
        return FieldProfile.zero()
    if kind == "linear":
        return FieldProfile.linear(float(config.get("slope", 1.0)))
    if kind == "sine":
        return FieldProfile.sine(float(config.get("amplitude", 1.0)), float(config.get("wavenumber", 1.0)))
    if kind == "box":
        return box_eigenfield(int(config.get("n", 1)), _length(config, "a", math.pi), float(config.get("amplitude", 1.0)))
    if kind == "csv":
        return load_profile_csv(config.require("field_csv"))
    raise ConfigurationError(f"Unknown field preset '{kind}'", config_key="field")


def build_force(config: RunConfig, profile: FieldProfile):
    """
    Particle force and potential.

    'free' has f = 0; 'harmonic' has f = -k (x - center), center defaulting
    to the middle of a bounded field domain.
    """
    kind = str(config.get("force", "free")).lower()
    if kind == "free":
        return (lambda x: 0.0), None
    if kind == "harmonic":
        k = float(config.get("spring", 1.0))
        lo, hi = profile.domain
        default_center = 0.5 * (lo + hi) if math.isfinite(lo) and math.isfinite(hi) else 0.0
        center = _length(config, "center", default_center)
        return (lambda x: -k * (x - center)), (lambda x: 0.5 * k * (x - center) ** 2)
    raise ConfigurationError(f"Unknown force law '{kind}'", config_key="force")


def cmd_trajectory(config: RunConfig) -> int:
    """Integrate a particle in a field and write t, x, v, q, E with the f_PF check."""
    profile = build_profile(config)
    force, potential = build_force(config, profile)
    state = ParticleState(
        x=_length(config, "x0", 0.0),
        v_p=float(config.get("v0", 0.0)),
        m=float(config.get("mass", 1.0)),
    )
    coupling = PFCoupling(float(config.get("g_pf", 1.0)))
    record = integrate_particle(
        force,
        state,
        dt=float(config.get("dt", Config.TIME_STEP)),
        n_steps=int(config.get("steps", Config.N_STEPS)),
        profile=profile,
        g=coupling,
        potential=potential,
        sample_every=int(config.get("sample_every", 1)),
    )

    f_pf = np.array(
        [
            pf_force(ParticleState(x=x, v_p=v, m=state.m), force(x), profile, coupling)
            for x, v in zip(record.xs, record.vs)
        ]
    )
    frame = record.to_frame()
    frame["f_pf"] = f_pf
    frame["residual"] = pf_force_residual(record.ts, record.qs, f_pf, state.m)
    max_residual = float(np.nanmax(frame["residual"])) if len(frame) > 2 else float("nan")
    record.metadata["max_force_residual"] = max_residual

    _summary(f"samples: {len(record)} exited_domain: {record.exited_domain}")
    _summary(f"max |m q'' - f_PF| / max|f_PF|: {max_residual:.3e}")

    document = record.to_dict()
    document["samples"] = frame.to_dict(orient="records")
    document["metadata"]["run"] = config.to_dict()
    write_report(frame, config.output_format, config.output, json_document=document)

    if record.exited_domain:
        logger.warning("Trajectory left the field domain; output is partial")
        return ExitCode.REGIME_VIOLATION
    return ExitCode.SUCCESS


# =============================================================================
# lorentz-check
# =============================================================================


def cmd_lorentz_check(config: RunConfig) -> int:
    """Randomized matching and interval-invariance check."""
    settings = VerifierSettings(
        seed=config.seed,
        n_samples=int(config.get("samples", Config.VERIFIER_SAMPLES)),
        max_speed=float(config.get("max_speed", Config.VERIFIER_MAX_SPEED)),
        max_slope=float(config.get("max_slope", Config.VERIFIER_MAX_SLOPE)),
        min_gamma=float(config.get("min_gamma", Config.VERIFIER_MIN_GAMMA)),
        tolerance=float(config.get("tolerance", 1e-10)),
        workers=int(config.get("workers", Config.VERIFIER_WORKERS)),
    )
    report, summary = run_verifier(settings, progress=config.progress)

    if config.get("scaling"):
        scaling = quartic_scaling(
            float(config.get("scaling_v_p_prime", Config.SCALING_V_P_PRIME)),
            float(config.get("scaling_v_pf", Config.SCALING_V_PF)),
        )
        summary.metadata["scaling"] = scaling
        _summary(f"delta_full order in slope: {scaling['exponent']:.3f} (C = {scaling['constant']:.4g})")

    _summary(f"samples: {summary.n_samples} out of regime: {summary.n_out_of_regime}")
    _summary(f"max |residual_a18|: {summary.max_matching_residual:.3e}")
    _summary(
        f"max truncated-form discrepancy (gamma_p >= {settings.min_gamma:g}, "
        f"{summary.n_in_regime} samples): {summary.max_delta_truncated_in_regime:.3e}"
    )
    _summary(f"max truncated-form discrepancy (all samples): {summary.max_delta_truncated:.3e}")
    if summary.classical_deviation is not None:
        _summary(f"max |gamma_PF a - gamma'_p| / gamma'_p: {summary.classical_deviation:.3e}")
    if summary.quartic_constant is not None:
        _summary(f"delta_full ~ C chi'^4 with C = {summary.quartic_constant:.4g}")

    document = verifier_document(report, summary, {"run": config.to_dict()})
    if config.output_format == OutputFormat.JSONL:
        write_jsonl(report.to_dict(orient="records"), config.output)
    elif config.output_format == OutputFormat.JSON:
        write_text(dumps_json(document), config.output)
    else:
        write_report(report, OutputFormat.CSV, config.output)

    return ExitCode.SUCCESS if summary.passed else ExitCode.NUMERICAL_FAILURE


# =============================================================================
# limits
# =============================================================================


def cmd_limits(config: RunConfig) -> int:
    """Non-relativistic (m0 sweep) or photon (gamma_p sweep) limit table."""
    try:
        family = LimitFamily(str(config.require("family")).lower())
    except ValueError:
        raise ConfigurationError(
            f"Unknown limit family {config.get('family')!r} (nonrel or photon)",
            config_key="family",
        )
    constants = make_constants(config.units)

    if family == LimitFamily.NONREL:
        a = _length(config, "a", math.pi)
        levels = int(config.get("levels", 1))
        frame = nonrel_mass_sweep(_float_list(config, "masses", (1e2, 1e3, 1e4)), a, levels, constants)
        for row in frame.itertuples():
            _summary(f"  m0={row.m0:g} n={row.n} relative deviation={row.rel_deviation:.3e}")
    else:
        frame = photon_limit_report(
            _float_list(config, "gammas", (1e3, 1e6, 1e9)),
            _float_list(config, "slopes", (0.0, 0.5, 2.0)),
            constants.c,
        )
        for row in frame.itertuples():
            _summary(f"  gamma_p={row.gamma_p:g} chi'={row.chi_slope:g} 1-q'/c={row.deficit:.3e}")

    document = limit_document(family, frame, {"run": config.to_dict()})
    write_report(frame, config.output_format, config.output, json_document=document)
    return ExitCode.SUCCESS


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "spectrum": cmd_spectrum,
    "trajectory": cmd_trajectory,
    "lorentz-check": cmd_lorentz_check,
    "limits": cmd_limits,
}
