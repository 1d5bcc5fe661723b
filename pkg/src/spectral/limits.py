"""
Limit-law reports.

Non-relativistic limit of the box spectrum (E - m0 c^2 tends to the
Schrodinger box energies n^2 h^2 / (8 m0 a^2)) and the photon limit of
the PF speed (q' tends to c as gamma_p grows).
"""

import json
import logging
from typing import Any, Dict, Iterable, Tuple

import pandas as pd

from src.core.constants import LimitFamily, SolverBackend
from src.core.exceptions import PhotonicNotApplicableError
from src.core.schemas import Constants
from src.relativity.pf_relativity import gamma_pf_kinematic, pf_speed_deficit, pf_speed_relativistic

from .problems import SpectralProblem, Spectrum
from .solvers.registry import solve_problem

logger = logging.getLogger(__name__)

NONREL_COLUMNS = ["n", "E", "excess", "E_nonrel", "rel_deviation", "bound"]
PHOTON_COLUMNS = ["gamma_p", "chi_slope", "gamma_pf", "q_dot", "deficit", "bound"]
LIMIT_COLUMNS = {
    LimitFamily.NONREL: ["m0"] + NONREL_COLUMNS,
    LimitFamily.PHOTON: PHOTON_COLUMNS,
}


def nonrel_limit_report(spectrum: Spectrum, m0: float, a: float, constants: Constants) -> pd.DataFrame:
    """
    Per-level comparison with the non-relativistic box.

    excess = E - m0 c^2, taken as p^2 c^2 / (E + m0 c^2) when the level
    carries its momentum, so large m0 does not cancel digits away.
    bound = excess / (2 m0 c^2), the leading relative correction.

    Raises:
        PhotonicNotApplicableError: If m0 = 0
    """
    if m0 == 0:
        raise PhotonicNotApplicableError("nonrel_limit_report")
    rest = m0 * constants.c ** 2
    rows = []
    for level in spectrum.levels:
        if level.momentum_sq is not None:
            excess = level.momentum_sq * constants.c ** 2 / (level.energy + rest)
        else:
            excess = level.energy - rest
        e_nonrel = (level.n * constants.h) ** 2 / (8.0 * m0 * a * a)
        rows.append(
            {
                "n": level.n,
                "E": level.energy,
                "excess": excess,
                "E_nonrel": e_nonrel,
                "rel_deviation": abs(excess - e_nonrel) / e_nonrel,
                "bound": excess / (2.0 * rest),
            }
        )
    logger.info(f"Non-relativistic limit report for m0={m0:.6g}, {len(rows)} levels")
    return pd.DataFrame(rows, columns=NONREL_COLUMNS)


def photon_limit_report(gammas: Iterable[float], slopes: Iterable[float], c: float = 1.0) -> pd.DataFrame:
    """
    1 - q'/c against its leading-order bound 1 / (2 gamma_PF^2) over a
    grid of gamma_p and field slopes.
    """
    rows = []
    for gamma_p in gammas:
        for slope in slopes:
            g_pf = gamma_pf_kinematic(gamma_p, slope)
            rows.append(
                {
                    "gamma_p": gamma_p,
                    "chi_slope": slope,
                    "gamma_pf": g_pf,
                    "q_dot": pf_speed_relativistic(gamma_p, slope, c),
                    "deficit": pf_speed_deficit(gamma_p, slope),
                    "bound": 0.5 / (g_pf * g_pf),
                }
            )
    return pd.DataFrame(rows, columns=PHOTON_COLUMNS)


def nonrel_mass_sweep(masses: Iterable[float], a: float, n_levels: int, constants: Constants) -> pd.DataFrame:
    """nonrel_limit_report of the analytic box for each rest mass, stacked with an m0 column."""
    frames = []
    for m0 in masses:
        spectrum = solve_problem(SpectralProblem.box(a, m0), n_levels, constants, backend=SolverBackend.ANALYTIC)
        table = nonrel_limit_report(spectrum, m0, a, constants)
        table.insert(0, "m0", float(m0))
        frames.append(table)
    return pd.concat(frames, ignore_index=True)


def limit_document(family: LimitFamily, frame: pd.DataFrame, meta: Dict[str, Any]) -> Dict[str, Any]:
    """JSON document {rows, meta} of a limit table."""
    return {"rows": frame.to_dict(orient="records"), "meta": {**meta, "family": LimitFamily(family).value}}


def read_limit_document(text: str) -> Tuple[LimitFamily, pd.DataFrame, Dict[str, Any]]:
    """
    Parse the JSON document of a limit table.

    Returns:
        (family, table with the family's columns, meta)
    """
    document = json.loads(text)
    meta = dict(document.get("meta", {}))
    family = LimitFamily(meta["family"])
    frame = pd.DataFrame.from_records(document["rows"], columns=LIMIT_COLUMNS[family])
    return family, frame, meta
