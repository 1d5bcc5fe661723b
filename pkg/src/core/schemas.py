"""
Shared data schemas for PF computations.

These dataclasses define the records every package exchanges: physical
constants, the PF coupling, particle states, frame pairs, events and
trajectory records.

Design principles:
- Value types are frozen; solvers and integrators build new records
  instead of mutating inputs
- Validation happens in __post_init__ and raises the core exceptions
- JSON serializable via to_dict() for reports and caching
"""

import json
import math
from dataclasses import dataclass, field
from typing import List, Dict, Any

import numpy as np
import pandas as pd

from .constants import UnitSystem, TRAJECTORY_COLUMNS
from .exceptions import InvalidArgumentError, ConfigurationError


@dataclass(frozen=True)
class Constants:
    """
    Physical constants used by a computation.

    h is derived from hbar so h / hbar = 2 pi holds to machine precision.
    """
    c: float
    hbar: float
    unit_system: UnitSystem = UnitSystem.NATURAL

    def __post_init__(self):
        for name in ("c", "hbar"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConfigurationError(
                    f"Constant '{name}' must be positive and finite",
                    config_key=name,
                    details={"value": value},
                )

    @property
    def h(self) -> float:
        """Planck constant, 2 pi hbar."""
        return 2.0 * math.pi * self.hbar

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "c": self.c,
            "hbar": self.hbar,
            "h": self.h,
            "unit_system": self.unit_system.value,
        }


@dataclass(frozen=True)
class PFCoupling:
    """
    Proportionality factor g_PF between the PF kinetic energy and the
    particle plus field kinetic energies. Equal to one for most problems.
    """
    g_pf: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.g_pf) and self.g_pf > 0):
            raise InvalidArgumentError(
                "PF coupling must be positive", argument="g_pf", value=self.g_pf
            )


@dataclass(frozen=True)
class ParticleState:
    """
    Particle position, velocity and mass.

    m is the non-relativistic mass, or the rest mass m0 in relativistic
    contexts. Massless systems never enter the kinematics package.
    """
    x: float
    v_p: float
    m: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.m) and self.m > 0):
            raise InvalidArgumentError(
                "Particle mass must be positive", argument="m", value=self.m
            )
        if not (math.isfinite(self.x) and math.isfinite(self.v_p)):
            raise InvalidArgumentError(
                "Particle state must be finite",
                details={"x": self.x, "v_p": self.v_p},
            )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {"x": self.x, "v_p": self.v_p, "m": self.m}


@dataclass(frozen=True)
class FrameContext:
    """
    Pair-of-frames data in standard configuration.

    Q' moves with v_pf along q_x relative to Q. Use
    relativity.frames.make_frame_context to build a consistent context.
    """
    v_p: float
    v_p_prime: float
    v_pf: float
    chi_slope_primed: float
    chi_slope: float

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "v_p": self.v_p,
            "v_p_prime": self.v_p_prime,
            "v_pf": self.v_pf,
            "chi_slope_primed": self.chi_slope_primed,
            "chi_slope": self.chi_slope,
        }


@dataclass(frozen=True)
class Event:
    """Spacetime event (t, q) in PF coordinates."""
    t: float
    q: float

    def __post_init__(self):
        if not (math.isfinite(self.t) and math.isfinite(self.q)):
            raise InvalidArgumentError(
                "Event components must be finite", details={"t": self.t, "q": self.q}
            )


@dataclass(frozen=True)
class ABFactors:
    """Frame factors a = gamma_p (1 - v_p v_PF / c^2) and b = chi'_x' (1 - v_PF v'_p / c^2)."""
    a: float
    b: float


@dataclass(frozen=True)
class EnergyBreakdown:
    """
    Non-relativistic PF energy bookkeeping.

    K_f = K_p chi'^2; E_total = V_p + K_p + E_f with E_f supplied by the caller.
    """
    K_p: float
    K_f: float
    E_p: float
    E_total: float

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {"K_p": self.K_p, "K_f": self.K_f, "E_p": self.E_p, "E_total": self.E_total}


@dataclass
class TrajectoryRecord:
    """
    Sampled PF trajectory.

    Arrays are filled by the integrator (single owner during integration)
    and treated as read-only afterwards.
    """
    ts: np.ndarray
    xs: np.ndarray
    vs: np.ndarray
    qs: np.ndarray
    energy: np.ndarray
    exited_domain: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        arrays = [np.asarray(a, dtype=float) for a in (self.ts, self.xs, self.vs, self.qs, self.energy)]
        lengths = {len(a) for a in arrays}
        if len(lengths) != 1:
            raise InvalidArgumentError(
                "Trajectory arrays must have equal length",
                details={"lengths": sorted(lengths)},
            )
        if len(arrays[0]) > 1 and not np.all(np.diff(arrays[0]) > 0):
            raise InvalidArgumentError("Trajectory times must be strictly increasing")
        self.ts, self.xs, self.vs, self.qs, self.energy = arrays

    def __len__(self) -> int:
        return len(self.ts)

    def to_frame(self) -> pd.DataFrame:
        """Tabulate as a DataFrame with columns t, x, v, q, E."""
        return pd.DataFrame(
            dict(zip(TRAJECTORY_COLUMNS, (self.ts, self.xs, self.vs, self.qs, self.energy)))
        )

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return {
            "samples": self.samples(),
            "exited_domain": self.exited_domain,
            "metadata": self.metadata,
        }

    def samples(self) -> List[Dict[str, float]]:
        """List of per-sample dicts (the JSON array form)."""
        return [
            {"t": float(t), "x": float(x), "v": float(v), "q": float(q), "E": float(e)}
            for t, x, v, q, e in zip(self.ts, self.xs, self.vs, self.qs, self.energy)
        ]

    def to_json(self) -> str:
        """JSON array of samples."""
        return json.dumps(self.samples(), sort_keys=True)

    @classmethod
    def from_samples(cls, samples: List[Dict[str, float]], exited_domain: bool = False) -> "TrajectoryRecord":
        """Rebuild a record from its JSON array form."""
        columns = {name: [float(s[name]) for s in samples] for name in TRAJECTORY_COLUMNS}
        return cls(
            ts=np.array(columns["t"]),
            xs=np.array(columns["x"]),
            vs=np.array(columns["v"]),
            qs=np.array(columns["q"]),
            energy=np.array(columns["E"]),
            exited_domain=exited_domain,
        )

    @classmethod
    def from_json(cls, text: str) -> "TrajectoryRecord":
        """Parse to_json() output, or the {samples, exited_domain, metadata} object of to_dict()."""
        data = json.loads(text)
        if isinstance(data, list):
            return cls.from_samples(data)
        record = cls.from_samples(data["samples"], exited_domain=bool(data.get("exited_domain", False)))
        record.metadata = dict(data.get("metadata", {}))
        return record

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "TrajectoryRecord":
        """Rebuild a record from a t, x, v, q, E table (extra columns ignored)."""
        return cls(
            ts=frame["t"].to_numpy(dtype=float),
            xs=frame["x"].to_numpy(dtype=float),
            vs=frame["v"].to_numpy(dtype=float),
            qs=frame["q"].to_numpy(dtype=float),
            energy=frame["E"].to_numpy(dtype=float),
        )

