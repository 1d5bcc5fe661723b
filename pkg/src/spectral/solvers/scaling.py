"""
SI problems solved in natural units.

An SI problem is rescaled with a reference mass (the rest mass, or for a
photonic problem the mass whose reduced Compton wavelength is the box
width), solved with c = hbar = 1 and mapped back. Eigenfields are
renormalized so the integral of chi^2 over x in metres stays 1.
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from src.core.constants import FieldKind, PotentialKind, UnitSystem
from src.core.schemas import Constants
from src.core.units import from_natural, make_constants, to_natural
from src.field.profiles import FieldProfile, box_eigenfield

from ..problems import Potential, SpectralLevel, SpectralProblem, Spectrum
from .common import problem_record

logger = logging.getLogger(__name__)

NATURAL = make_constants(UnitSystem.NATURAL)


def reference_mass(problem: SpectralProblem, constants: Constants) -> float:
    """Rest mass, or hbar / (c * width) for a photonic problem."""
    if problem.m0 > 0:
        return problem.m0
    return constants.hbar / (constants.c * problem.width)


def _potential_to_natural(potential: Potential, constants: Constants, m_ref: float) -> Potential:
    def length(value):
        return to_natural(value, "length", constants, m_ref)

    def energy(value):
        return to_natural(value, "energy", constants, m_ref)

    if potential.kind == PotentialKind.INFINITE_BOX:
        return Potential.infinite_box(length(potential.a), energy(potential.level))
    if potential.kind == PotentialKind.SAMPLED_GRID:
        return Potential.sampled_grid(length(potential.xs), energy(potential.vs))
    return Potential(kind=potential.kind, level=energy(potential.level))


def problem_to_natural(problem: SpectralProblem, constants: Constants, m_ref: float) -> SpectralProblem:
    """The same problem with lengths, energies and the mass in natural units of m_ref."""
    x_lo, x_hi = (to_natural(x, "length", constants, m_ref) for x in problem.domain)
    return SpectralProblem(
        potential=_potential_to_natural(problem.potential, constants, m_ref),
        m0=to_natural(problem.m0, "mass", constants, m_ref),
        form=problem.form,
        domain=(x_lo, x_hi),
        boundary=problem.boundary,
    )


def _eigenfield_from_natural(profile: Optional[FieldProfile], length: float) -> Optional[FieldProfile]:
    if profile is None:
        return None
    if profile.kind == FieldKind.BOX_EIGENFIELD:
        return box_eigenfield(profile.n, profile.a * length, profile.amplitude)
    return FieldProfile.sampled(profile.xs * length, profile.ys / math.sqrt(length))


def spectrum_from_natural(
    spectrum: Spectrum,
    problem: SpectralProblem,
    constants: Constants,
    m_ref: float,
) -> Spectrum:
    """Map a spectrum solved in natural units back onto the units of constants."""
    length = from_natural(1.0, "length", constants, m_ref)
    energy = from_natural(1.0, "energy", constants, m_ref)
    momentum = from_natural(1.0, "momentum", constants, m_ref)
    levels = [
        SpectralLevel(
            n=level.n,
            energy=level.energy * energy,
            eigenfield=_eigenfield_from_natural(level.eigenfield, length),
            nodes=level.nodes,
            momentum_sq=None if level.momentum_sq is None else level.momentum_sq * momentum * momentum,
            residual=level.residual,
        )
        for level in spectrum.levels
    ]
    meta = dict(spectrum.meta)
    if "bracket" in meta:
        meta["bracket"] = [value * energy for value in meta["bracket"]]
    if "spacing" in meta:
        meta["spacing"] = meta["spacing"] * length
    meta["natural_units"] = {"m_ref": m_ref, "energy_scale": energy, "length_scale": length}
    return Spectrum(
        levels=levels,
        grid=None if spectrum.grid is None else np.asarray(spectrum.grid) * length,
        backend=spectrum.backend,
        problem=problem_record(problem, constants),
        meta=meta,
    )


def bracket_to_natural(
    bracket: Optional[Tuple[float, float]], constants: Constants, m_ref: float
) -> Optional[Tuple[float, float]]:
    if bracket is None:
        return None
    return tuple(to_natural(float(value), "energy", constants, m_ref) for value in bracket)
