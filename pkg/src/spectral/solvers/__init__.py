"""
Spectral solver back ends: analytic box, finite differences and shooting.
"""

from .analytic import AnalyticSolver, solve_box_analytic
from .finite_difference import FiniteDifferenceSolver, solve_fd
from .shooting import ShootingSolver, solve_shooting
from .registry import get_solver, list_backends, register_solver, select_backend, solve_problem

__all__ = [
    "AnalyticSolver",
    "solve_box_analytic",
    "FiniteDifferenceSolver",
    "solve_fd",
    "ShootingSolver",
    "solve_shooting",
    "get_solver",
    "list_backends",
    "register_solver",
    "select_backend",
    "solve_problem",
]
