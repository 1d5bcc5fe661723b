import os
from dotenv import load_dotenv

load_dotenv()

class Config:
    # Units used when the CLI is not told otherwise
    UNITS = os.getenv("PF_UNITS", "natural")

    # Reproducibility
    SEED = int(os.getenv("PF_SEED", "0"))

    # Logging
    LOG_LEVEL = os.getenv("PF_LOG_LEVEL", "INFO")

    # Output
    OUTPUT_DIR = os.getenv("PF_OUTPUT_DIR", "output")
    OUTPUT_FORMAT = os.getenv("PF_OUTPUT_FORMAT", "csv")

    # Spectral solvers
    GRID_SIZE = int(os.getenv("PF_GRID_SIZE", "2000"))  # interior nodes
    SHOOTING_TOL = float(os.getenv("PF_SHOOTING_TOL", "1e-10"))
    LEVELS = 3

    # Trajectory integration
    TIME_STEP = 1e-3
    N_STEPS = 1000

    # Invariance verifier
    VERIFIER_SAMPLES = int(os.getenv("PF_VERIFIER_SAMPLES", "10000"))
    VERIFIER_WORKERS = int(os.getenv("PF_WORKERS", "4"))
    VERIFIER_MAX_SPEED = 0.9  # fraction of c
    VERIFIER_MAX_SLOPE = 0.1
    VERIFIER_MIN_GAMMA = 10.0

    # Speeds (fractions of c) of the slope-scaling fit
    SCALING_V_P_PRIME = float(os.getenv("PF_SCALING_V_P_PRIME", "0.5"))
    SCALING_V_PF = float(os.getenv("PF_SCALING_V_PF", "0.3"))

    @staticmethod
    def env_seed():
        """Seed from PF_SEED if it is set, else None (lets --seed apply)."""
        value = os.getenv("PF_SEED")
        return int(value) if value not in (None, "") else None
