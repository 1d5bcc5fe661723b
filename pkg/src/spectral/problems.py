"""
Spectral problem definitions and results.

Potential describes V_nrP(x), SpectralProblem couples it with a rest mass
and an equation form, and Spectrum holds the ordered levels a solver
returns together with their eigenfields.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from src.core.constants import EquationForm, PotentialKind
from src.core.exceptions import (
    FieldDomainError,
    InvalidArgumentError,
    NumericalFailureError,
    PhotonicNotApplicableError,
    RegimeError,
)
from src.core.schemas import Constants
from src.field.loader import read_two_column_csv
from src.field.profiles import FieldProfile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Potential:
    """
    Non-relativistic particle potential V_nrP(x).

    ZERO has no walls of its own; the problem domain supplies them.
    INFINITE_BOX is V = level on [0, a] with Dirichlet walls, never a
    large finite value. SAMPLED_GRID interpolates (xs, vs) linearly and
    puts walls at its end points.
    """
    kind: PotentialKind
    a: float = 0.0
    level: float = 0.0
    xs: Optional[np.ndarray] = field(default=None, repr=False, compare=False)
    vs: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if not math.isfinite(self.level):
            raise InvalidArgumentError("Potential level must be finite", argument="level", value=self.level)
        if self.kind == PotentialKind.INFINITE_BOX and not (math.isfinite(self.a) and self.a > 0):
            raise InvalidArgumentError("Box width must be positive", argument="a", value=self.a)
        if self.kind == PotentialKind.SAMPLED_GRID:
            xs = np.asarray(self.xs, dtype=float)
            vs = np.asarray(self.vs, dtype=float)
            if xs.ndim != 1 or xs.shape != vs.shape or xs.size < 2:
                raise InvalidArgumentError(
                    "Sampled potential needs 1-D xs and vs of equal length >= 2",
                    details={"xs_shape": xs.shape, "vs_shape": vs.shape},
                )
            if not np.all(np.diff(xs) > 0):
                raise InvalidArgumentError("Sampled potential xs must be strictly increasing", argument="xs")
            if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(vs))):
                raise InvalidArgumentError("Sampled potential values must be finite", argument="vs")
            object.__setattr__(self, "xs", xs)
            object.__setattr__(self, "vs", vs)

    @classmethod
    def zero(cls) -> "Potential":
        return cls(kind=PotentialKind.ZERO)

    @classmethod
    def infinite_box(cls, a: float, level: float = 0.0) -> "Potential":
        """Flat floor V = level on [0, a] between infinite walls."""
        return cls(kind=PotentialKind.INFINITE_BOX, a=float(a), level=float(level))

    @classmethod
    def sampled_grid(cls, xs, vs) -> "Potential":
        return cls(kind=PotentialKind.SAMPLED_GRID, xs=np.asarray(xs, dtype=float), vs=np.asarray(vs, dtype=float))

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "Potential":
        """Sampled potential from an (x, V) CSV file."""
        xs, vs = read_two_column_csv(path)
        return cls.sampled_grid(xs, vs)

    @property
    def domain(self) -> Optional[Tuple[float, float]]:
        """Wall positions, or None when the problem must supply them."""
        if self.kind == PotentialKind.INFINITE_BOX:
            return (0.0, self.a)
        if self.kind == PotentialKind.SAMPLED_GRID:
            return (float(self.xs[0]), float(self.xs[-1]))
        return None

    @property
    def is_constant(self) -> bool:
        if self.kind == PotentialKind.SAMPLED_GRID:
            return bool(np.all(self.vs == self.vs[0]))
        return True

    @property
    def constant_value(self) -> float:
        """Value of a constant potential."""
        if not self.is_constant:
            raise InvalidArgumentError("Potential is not constant", argument="kind", value=self.kind.value)
        if self.kind == PotentialKind.SAMPLED_GRID:
            return float(self.vs[0])
        return self.level

    def evaluate(self, x):
        """V(x); float for scalar input."""
        arr = np.asarray(x, dtype=float)
        domain = self.domain
        if domain is not None and not np.all((arr >= domain[0]) & (arr <= domain[1])):
            bad = np.ravel(arr[~((arr >= domain[0]) & (arr <= domain[1]))] if arr.ndim else arr)
            raise FieldDomainError(float(bad[0]), domain)
        if self.kind == PotentialKind.SAMPLED_GRID:
            values = np.interp(arr, self.xs, self.vs)
        else:
            values = np.full(arr.shape, self.level)
        return float(values) if np.ndim(x) == 0 else values

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        data: Dict[str, Any] = {"kind": self.kind.value}
        if self.kind == PotentialKind.INFINITE_BOX:
            data.update(a=self.a, level=self.level)
        elif self.kind == PotentialKind.SAMPLED_GRID:
            data.update(xs=self.xs.tolist(), vs=self.vs.tolist())
        elif self.level:
            data["level"] = self.level
        return data


@dataclass(frozen=True)
class SpectralProblem:
    """
    Dirichlet eigenproblem for one of the two relativistic Schrodinger forms.

    m0 = 0 (photonic) is allowed only with the mass-independent form.
    Positivity of 1 + V/(m0 c^2) depends on c and is checked by
    check_positivity at solve time.
    """
    potential: Potential
    m0: float
    form: EquationForm = EquationForm.MASS_INDEPENDENT
    domain: Optional[Tuple[float, float]] = None
    boundary: str = "dirichlet"

    def __post_init__(self):
        if not (math.isfinite(self.m0) and self.m0 >= 0):
            raise InvalidArgumentError("Rest mass must be non-negative", argument="m0", value=self.m0)
        object.__setattr__(self, "form", EquationForm(self.form))
        if self.m0 == 0 and self.form == EquationForm.MASS_DEPENDENT:
            raise PhotonicNotApplicableError("mass-dependent equation form")
        if self.boundary != "dirichlet":
            raise InvalidArgumentError("Only Dirichlet boundaries are supported", argument="boundary", value=self.boundary)

        domain = self.domain if self.domain is not None else self.potential.domain
        if domain is None:
            raise InvalidArgumentError("A zero potential needs an explicit domain", argument="domain")
        x_lo, x_hi = float(domain[0]), float(domain[1])
        if not (math.isfinite(x_lo) and math.isfinite(x_hi) and x_lo < x_hi):
            raise InvalidArgumentError("Domain must be finite with x_lo < x_hi", argument="domain", value=domain)
        walls = self.potential.domain
        if walls is not None and (x_lo < walls[0] or x_hi > walls[1]):
            raise FieldDomainError(x_lo if x_lo < walls[0] else x_hi, walls)
        object.__setattr__(self, "domain", (x_lo, x_hi))

    @classmethod
    def box(
        cls,
        a: float,
        m0: float,
        form: EquationForm = EquationForm.MASS_INDEPENDENT,
        level: float = 0.0,
    ) -> "SpectralProblem":
        """Infinite square well of width a."""
        return cls(potential=Potential.infinite_box(a, level), m0=m0, form=form)

    @property
    def width(self) -> float:
        return self.domain[1] - self.domain[0]

    @property
    def is_box(self) -> bool:
        """Constant potential between walls starting at x = 0."""
        return self.potential.is_constant and self.domain[0] == 0.0

    def potential_range(self) -> Tuple[float, float]:
        """(min V, max V) over the domain."""
        if self.potential.kind == PotentialKind.SAMPLED_GRID:
            xs = self.potential.xs
            inside = self.potential.vs[(xs >= self.domain[0]) & (xs <= self.domain[1])]
            ends = self.potential.evaluate(np.array(self.domain))
            values = np.concatenate([inside, ends])
            return float(values.min()), float(values.max())
        return self.potential.level, self.potential.level

    def check_positivity(self, constants: Constants) -> None:
        """
        Mass-dependent form needs 1 + V/(m0 c^2) > 0 on the whole domain.

        Raises:
            RegimeError: If the operator is not positive
        """
        if self.form != EquationForm.MASS_DEPENDENT:
            return
        v_min, _ = self.potential_range()
        scale = 1.0 + v_min / (self.m0 * constants.c ** 2)
        if not scale > 0:
            raise RegimeError(
                "Mass-dependent form needs 1 + V/(m0 c^2) > 0 on the domain",
                quantity="1+V/(m0c^2)",
                value=scale,
            )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "potential": self.potential.to_dict(),
            "m0": self.m0,
            "form": self.form.value,
            "domain": list(self.domain),
            "boundary": self.boundary,
        }


@dataclass
class SpectralLevel:
    """One bound level: index, energy, eigenfield and bookkeeping."""
    n: int
    energy: float
    eigenfield: Optional[FieldProfile] = field(default=None, repr=False)
    nodes: Optional[int] = None
    momentum_sq: Optional[float] = None
    residual: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "n": self.n,
            "energy": self.energy,
            "nodes": self.nodes,
            "momentum_sq": self.momentum_sq,
            "residual": self.residual,
        }


@dataclass
class Spectrum:
    """
    Ordered levels of a spectral problem.

    Energies are strictly increasing and never negative; levels below
    m0 c^2 (attractive potentials only) are kept and logged.
    """
    levels: List[SpectralLevel]
    grid: Optional[np.ndarray] = None
    backend: str = ""
    problem: Dict[str, Any] = field(default_factory=dict)
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        energies = [level.energy for level in self.levels]
        if any(not math.isfinite(e) for e in energies):
            raise NumericalFailureError("Solver produced a non-finite energy", details={"energies": energies})
        if any(e < 0 for e in energies):
            raise NumericalFailureError("Solver produced a negative energy", details={"energies": energies})
        if any(b <= a for a, b in zip(energies, energies[1:])):
            raise NumericalFailureError("Energies are not strictly increasing", details={"energies": energies})
        rest = self.problem.get("rest_energy")
        if rest is not None:
            below = [level.n for level in self.levels if level.energy < rest]
            if below:
                logger.warning(f"Levels {below} lie below the rest energy m0 c^2 = {rest:.6g}")

    def __len__(self) -> int:
        return len(self.levels)

    @property
    def energies(self) -> np.ndarray:
        return np.array([level.energy for level in self.levels])

    def level(self, n: int) -> SpectralLevel:
        """Level with index n."""
        for item in self.levels:
            if item.n == n:
                return item
        raise InvalidArgumentError(f"Spectrum has no level n={n}", argument="n", value=n)

    def to_frame(self) -> pd.DataFrame:
        """Table with columns n, E."""
        return pd.DataFrame({"n": [level.n for level in self.levels], "E": self.energies})

    def to_dict(self) -> Dict[str, Any]:
        """JSON form {problem, levels, meta}."""
        return {
            "problem": self.problem,
            "levels": [level.to_dict() for level in self.levels],
            "meta": {"backend": self.backend, **self.meta},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Spectrum":
        """Rebuild from to_dict() output; eigenfields are not part of the JSON form."""
        levels = [
            SpectralLevel(
                n=int(item["n"]),
                energy=float(item["energy"]),
                nodes=item.get("nodes"),
                momentum_sq=item.get("momentum_sq"),
                residual=item.get("residual"),
            )
            for item in data["levels"]
        ]
        meta = dict(data.get("meta", {}))
        backend = meta.pop("backend", "")
        return cls(levels=levels, backend=backend, problem=data.get("problem", {}), meta=meta)

    @classmethod
    def from_json(cls, text: str) -> "Spectrum":
        return cls.from_dict(json.loads(text))

    def eigenfield_frame(self, n: int, grid: Optional[np.ndarray] = None) -> pd.DataFrame:
        """
        Table x, chi for level n, on the solver grid or on a supplied one.

        Raises:
            InvalidArgumentError: If the level carries no eigenfield
        """
        item = self.level(n)
        if item.eigenfield is None:
            raise InvalidArgumentError(f"Level n={n} has no eigenfield", argument="n", value=n)
        xs = grid if grid is not None else self.grid
        if xs is None:
            xs = np.linspace(item.eigenfield.domain[0], item.eigenfield.domain[1], 1001)
        xs = np.asarray(xs, dtype=float)
        return pd.DataFrame({"x": xs, "chi": item.eigenfield.evaluate(xs, 0)})
