"""
Randomized invariance verifier for the PF interval.

Draws frame pairs in standard configuration, evaluates the matching
residual, the truncated and the untruncated interval gaps, and tabulates
one row per sample. Each sample owns its RNG seed, so the report depends
only on the base seed and the sample count, never on thread scheduling.
"""

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from src.core.constants import (
    CLASSICAL_REDUCTION_TOLERANCE,
    VERIFIER_COLUMNS,
    VERIFIER_MAX_SLOPE,
    VERIFIER_MAX_SPEED,
    VERIFIER_MIN_GAMMA,
    VERIFIER_SAMPLES,
    VERIFIER_TOLERANCE,
)
from src.core.exceptions import InvalidArgumentError, RegimeError
from src.core.schemas import FrameContext

from .frames import (
    ab_factors,
    delta_full,
    delta_truncated,
    gamma_pf_matching,
    make_frame_context,
    matching_residual,
)
from .pf_relativity import gamma, gamma_pf_kinematic

logger = logging.getLogger(__name__)

_NAN = float("nan")


@dataclass(frozen=True)
class VerifierSettings:
    """Sampling ranges and pass/fail tolerance of a verifier run."""
    seed: int = 0
    n_samples: int = VERIFIER_SAMPLES
    max_speed: float = VERIFIER_MAX_SPEED  # fraction of c
    max_slope: float = VERIFIER_MAX_SLOPE
    min_gamma: float = VERIFIER_MIN_GAMMA
    tolerance: float = VERIFIER_TOLERANCE
    workers: int = 4
    c: float = 1.0

    def __post_init__(self):
        if self.n_samples < 1:
            raise InvalidArgumentError("Need at least one sample", argument="n_samples", value=self.n_samples)
        if not 0.0 <= self.max_speed < 1.0:
            raise InvalidArgumentError(
                "max_speed is a fraction of c in [0, 1)", argument="max_speed", value=self.max_speed
            )
        if self.max_slope < 0:
            raise InvalidArgumentError("max_slope must be non-negative", argument="max_slope", value=self.max_slope)
        if self.workers < 1:
            raise InvalidArgumentError("workers must be >= 1", argument="workers", value=self.workers)


@dataclass
class VerifierSummary:
    """Aggregates of a verifier run and its pass/fail verdict."""
    n_samples: int
    n_out_of_regime: int
    n_in_regime: int
    max_matching_residual: float
    max_delta_truncated: float
    max_delta_truncated_in_regime: float
    max_delta_full: float
    classical_deviation: Optional[float] = None
    quartic_constant: Optional[float] = None
    passed: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "n_samples": self.n_samples,
            "n_out_of_regime": self.n_out_of_regime,
            "n_in_regime": self.n_in_regime,
            "max_matching_residual": self.max_matching_residual,
            "max_delta_truncated": self.max_delta_truncated,
            "max_delta_truncated_in_regime": self.max_delta_truncated_in_regime,
            "max_delta_full": self.max_delta_full,
            "classical_deviation": self.classical_deviation,
            "quartic_constant": self.quartic_constant,
            "passed": self.passed,
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "VerifierSummary":
        """Rebuild from to_dict() output."""
        return cls(
            n_samples=int(data["n_samples"]),
            n_out_of_regime=int(data["n_out_of_regime"]),
            n_in_regime=int(data["n_in_regime"]),
            max_matching_residual=float(data["max_matching_residual"]),
            max_delta_truncated=float(data["max_delta_truncated"]),
            max_delta_truncated_in_regime=float(data["max_delta_truncated_in_regime"]),
            max_delta_full=float(data["max_delta_full"]),
            classical_deviation=data.get("classical_deviation"),
            quartic_constant=data.get("quartic_constant"),
            passed=bool(data.get("passed", False)),
            metadata=dict(data.get("metadata", {})),
        )


def report_from_rows(rows: Sequence[Dict[str, Any]]) -> pd.DataFrame:
    """Report table from its JSON rows; null becomes NaN."""
    report = pd.DataFrame.from_records(list(rows), columns=VERIFIER_COLUMNS).astype(float)
    report["seed"] = report["seed"].astype(np.int64)
    return report


def verifier_document(report: pd.DataFrame, summary: VerifierSummary, meta: Dict[str, Any]) -> Dict[str, Any]:
    """JSON document {rows, summary, meta} of a verifier run."""
    return {"rows": report.to_dict(orient="records"), "summary": summary.to_dict(), "meta": meta}


def read_verifier_document(text: str) -> Tuple[pd.DataFrame, VerifierSummary, Dict[str, Any]]:
    """
    Parse the JSON document of a verifier run.

    Returns:
        (report table, summary, meta)
    """
    document = json.loads(text)
    return (
        report_from_rows(document["rows"]),
        VerifierSummary.from_dict(document["summary"]),
        dict(document.get("meta", {})),
    )


def sample_seeds(seed: int, n_samples: int) -> np.ndarray:
    """Per-sample seeds derived from the base seed."""
    return np.random.SeedSequence(seed).generate_state(n_samples, dtype=np.uint32)


def draw_context(sample_seed: int, settings: VerifierSettings) -> FrameContext:
    """Frame pair for one sample seed, speeds uniform in +-max_speed c, slope in +-max_slope."""
    rng = np.random.default_rng(int(sample_seed))
    v_p_prime, v_pf = rng.uniform(-settings.max_speed, settings.max_speed, size=2) * settings.c
    slope = rng.uniform(-settings.max_slope, settings.max_slope) if settings.max_slope > 0 else 0.0
    return make_frame_context(float(v_p_prime), float(v_pf), float(slope), settings.c)


def evaluate_sample(sample_seed: int, settings: VerifierSettings) -> Dict[str, Any]:
    """
    One report row. Out-of-regime samples keep their seed and speeds and
    carry NaN in the derived columns.
    """
    c = settings.c
    row: Dict[str, Any] = {name: _NAN for name in VERIFIER_COLUMNS}
    row["seed"] = int(sample_seed)
    row["in_regime"] = True
    row["_slope_primed"] = _NAN
    row["_classical"] = _NAN
    try:
        ctx = draw_context(sample_seed, settings)
        row.update(
            v_p=ctx.v_p,
            v_p_prime=ctx.v_p_prime,
            v_pf=ctx.v_pf,
            chi_slope=ctx.chi_slope,
        )
        g_match = gamma_pf_matching(ctx, c)
        gamma_p_prime = gamma(ctx.v_p_prime, c)
        row.update(
            gamma_pf_kinematic=gamma_pf_kinematic(gamma(ctx.v_p, c), ctx.chi_slope),
            gamma_pf_matching=g_match,
            residual_a18=matching_residual(ctx, g_match, c) / gamma_p_prime ** 2,
            delta_truncated=delta_truncated(ctx, c),
            delta_full=delta_full(ctx, c),
        )
        row["_slope_primed"] = ctx.chi_slope_primed
        row["_classical"] = abs(g_match * ab_factors(ctx, c).a - gamma_p_prime) / gamma_p_prime
    except RegimeError as e:
        logger.debug(f"seed={sample_seed} out of regime: {e}")
        row["in_regime"] = False
    return row


def _evaluate_chunk(seeds: Sequence[int], settings: VerifierSettings) -> List[Dict[str, Any]]:
    return [evaluate_sample(s, settings) for s in seeds]


def quartic_fit(slopes: np.ndarray, deltas: np.ndarray) -> Optional[float]:
    """
    Least-squares C in delta_full ~ C s^4 over samples with s != 0.

    None if no usable sample.
    """
    slopes = np.asarray(slopes, dtype=float)
    deltas = np.asarray(deltas, dtype=float)
    mask = np.isfinite(deltas) & np.isfinite(slopes) & (slopes != 0)
    if not np.any(mask):
        return None
    s4 = slopes[mask] ** 4
    return float(np.dot(s4, deltas[mask]) / np.dot(s4, s4))


def scaling_exponent(slopes: Sequence[float], deltas: Sequence[float]) -> float:
    """Slope of log(delta) against log(|s|), the empirical order of the gap."""
    x = np.log(np.abs(np.asarray(slopes, dtype=float)))
    y = np.log(np.asarray(deltas, dtype=float))
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)


def run_verifier(settings: VerifierSettings, progress: bool = False):
    """
    Run the randomized invariance check.

    Args:
        settings: Seed, sample count, ranges and tolerance
        progress: Show a tqdm progress bar over chunks

    Returns:
        (report DataFrame with the verifier columns, VerifierSummary)
    """
    seeds = sample_seeds(settings.seed, settings.n_samples)
    n_chunks = min(settings.n_samples, settings.workers * 8)
    chunks = [list(chunk) for chunk in np.array_split(seeds, n_chunks)]
    logger.info(
        f"Verifying {settings.n_samples} samples (seed={settings.seed}, "
        f"workers={settings.workers}, |v|/c<={settings.max_speed}, |chi'|<={settings.max_slope})"
    )

    with ThreadPoolExecutor(max_workers=settings.workers) as pool:
        # map preserves submission order, so rows stay in seed order
        results = pool.map(lambda chunk: _evaluate_chunk(chunk, settings), chunks)
        rows: List[Dict[str, Any]] = []
        for chunk_rows in tqdm(results, total=len(chunks), desc="Verifying samples", disable=not progress):
            rows.extend(chunk_rows)

    full = pd.DataFrame(rows)
    report = full[VERIFIER_COLUMNS].copy()
    report["seed"] = report["seed"].astype(np.int64)

    in_regime = full["in_regime"].to_numpy(dtype=bool)
    n_out = int((~in_regime).sum())
    if n_out:
        logger.warning(f"{n_out} of {settings.n_samples} samples out of regime")

    gamma_p = 1.0 / np.sqrt(1.0 - (full["v_p"].to_numpy(dtype=float) / settings.c) ** 2)
    high_gamma = in_regime & (gamma_p >= settings.min_gamma)
    n_high = int(high_gamma.sum())

    def _max(values) -> float:
        values = np.asarray(values, dtype=float)
        values = values[np.isfinite(values)]
        return float(values.max()) if values.size else 0.0

    max_residual = _max(np.abs(report["residual_a18"]))
    max_trunc = _max(report["delta_truncated"])
    max_trunc_regime = _max(report["delta_truncated"].to_numpy()[high_gamma])
    if n_high == 0:
        logger.warning(
            f"No sample has gamma_p >= {settings.min_gamma}; truncated-form check passes vacuously"
        )

    classical = None
    if settings.max_slope == 0:
        classical = _max(full["_classical"])

    summary = VerifierSummary(
        n_samples=settings.n_samples,
        n_out_of_regime=n_out,
        n_in_regime=n_high,
        max_matching_residual=max_residual,
        max_delta_truncated=max_trunc,
        max_delta_truncated_in_regime=max_trunc_regime,
        max_delta_full=_max(report["delta_full"]),
        classical_deviation=classical,
        quartic_constant=quartic_fit(full["_slope_primed"], full["delta_full"]),
        metadata={
            "seed": settings.seed,
            "max_speed": settings.max_speed,
            "max_slope": settings.max_slope,
            "min_gamma": settings.min_gamma,
            "tolerance": settings.tolerance,
            "classical_tolerance": CLASSICAL_REDUCTION_TOLERANCE,
        },
    )
    summary.passed = bool(
        max_residual <= settings.tolerance
        and max_trunc_regime <= settings.tolerance
        and (classical is None or classical <= CLASSICAL_REDUCTION_TOLERANCE)
    )
    logger.info(
        f"max|residual_a18|={max_residual:.3e} max delta_truncated(gamma_p>={settings.min_gamma})="
        f"{max_trunc_regime:.3e} passed={summary.passed}"
    )
    return report, summary


def quartic_scaling(
    v_p_prime: float,
    v_pf: float,
    slopes: Sequence[float] = (0.1, 0.05, 0.025, 0.0125),
    c: float = 1.0,
) -> Dict[str, Any]:
    """
    delta_full along a halving sequence of primed slopes at fixed speeds,
    with the fitted order of the gap.
    """
    deltas = [delta_full(make_frame_context(v_p_prime, v_pf, s, c), c) for s in slopes]
    if not all(math.isfinite(d) and d > 0 for d in deltas):
        raise RegimeError("delta_full vanished or is not finite; order undefined", details={"deltas": deltas})
    return {
        "slopes": list(slopes),
        "deltas": deltas,
        "exponent": scaling_exponent(slopes, deltas),
        "constant": quartic_fit(np.asarray(slopes), np.asarray(deltas)),
    }
