"""
Configuration settings for spamlab runs
"""

import logging
from pathlib import Path
from typing import Dict, Union

logger = logging.getLogger(__name__)


class Settings:
    """Application settings"""

    # Numerical tolerances
    MATRIX_TOL: float = 1e-10
    PROBABILITY_SUM_TOL: float = 1e-9

    # Density-matrix engine limits
    MAX_QUBITS: int = 12
    MAX_PREP_ANCILLAS: int = 10
    MAX_MEAS_ANCILLAS: int = 9
    MAX_SWAP_ANCILLAS: int = 4

    # Verification solver
    RESIDUAL_THRESHOLD: float = 1e-4
    GRID_POINTS: int = 21
    REFINE_STARTS: int = 5
    DISTINCT_FIT_TOL: float = 1e-4
    ALTERNATIVE_RESIDUAL_TOL: float = 1e-14

    # Distillation
    DEFAULT_TARGET_FIDELITY: float = 0.999
    MAX_DISTILL_ROUNDS: int = 10000

    # Output settings
    SIGNIFICANT_DIGITS: int = 12
    DEFAULT_FORMAT: str = "csv"

    # Worker pool (None -> physical core count)
    WORKERS: Union[int, None] = None

    # Logging settings
    LOG_LEVEL: str = "INFO"


# Global settings instance
settings = Settings()


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Load key=value pairs from a run configuration file"""
    config_file = Path(path)
    values: Dict[str, str] = {}
    with open(config_file, 'r', encoding='utf-8') as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith('#') and '=' in line:
                key, value = line.split('=', 1)
                values[key.strip().replace('-', '_')] = value.strip()
    logger.debug(f"Loaded {len(values)} settings from {config_file}")
    return values
