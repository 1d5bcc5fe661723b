"""
PF Theory Toolkit

Numerical library and CLI for particle-field (PF) systems: PF kinematics
and forces, the relativistic PF interval and its Lorentz-matching factor,
and the two relativistic time-independent Schrodinger equations.
"""

__version__ = "0.1.0"
__author__ = "PF Theory Developers"
__description__ = "Particle-field kinematics, relativity and relativistic TISE solvers"
