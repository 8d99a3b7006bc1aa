"""
Configuration settings for the polytope semiring toolkit
"""
import os
from pathlib import Path
from typing import List, Dict, Any

from dotenv import load_dotenv

# Environment overrides (POLYSEMI_<SECTION>_<KEY>) are read from .env when present
load_dotenv()

# Base paths
BASE_DIR = Path(__file__).parent
OUTPUT_DIR = Path(os.getenv("POLYSEMI_OUTPUT_DIR", str(BASE_DIR / "reports")))


def _env_int(name: str, default: int) -> int:
    value = os.getenv(name)
    if value is None or value.strip() == "":
        return default
    try:
        return int(value)
    except ValueError:
        return default


def _env_bool(name: str, default: bool) -> bool:
    value = os.getenv(name)
    if value is None:
        return default
    return value.strip().lower() in ("1", "true", "yes", "on")


# Step limits for every bounded search
BUDGET_CONFIG = {
    'summand_tests': _env_int("POLYSEMI_BUDGET_SUMMAND_TESTS", 20000),
    'solution_checks': _env_int("POLYSEMI_BUDGET_SOLUTION_CHECKS", 50000),
    'circuit_rank_tests': _env_int("POLYSEMI_BUDGET_CIRCUIT_RANK_TESTS", 200000),
    'syzygy_checks': _env_int("POLYSEMI_BUDGET_SYZYGY_CHECKS", 100000),
    'regular_candidates': _env_int("POLYSEMI_BUDGET_REGULAR_CANDIDATES", 20000),
    'kos_lattice_points': _env_int("POLYSEMI_BUDGET_KOS_LATTICE_POINTS", 100000),
    'basis_steps': _env_int("POLYSEMI_BUDGET_BASIS_STEPS", 20000),
}

# Degree and box defaults for bounded verdicts
DEGREE_CONFIG = {
    'default_max_degree': _env_int("POLYSEMI_DEGREE_DEFAULT_MAX_DEGREE", 4),
    'default_box': _env_int("POLYSEMI_DEGREE_DEFAULT_BOX", 2),
}

# Circuit enumeration works on C(n+k-1, k) monomials at most
CIRCUIT_CONFIG = {
    'max_monomials': _env_int("POLYSEMI_CIRCUIT_MAX_MONOMIALS", 20),
}

# Generic coefficient sampling
GENERIC_CONFIG = {
    'default_seed': _env_int("POLYSEMI_GENERIC_DEFAULT_SEED", 20240601),
    'default_trials': _env_int("POLYSEMI_GENERIC_DEFAULT_TRIALS", 3),
    'coefficient_bits': _env_int("POLYSEMI_GENERIC_COEFFICIENT_BITS", 30),
}

# Rational-form fitting of Newton-Hilbert series
SERIES_CONFIG = {
    'require_integer_denominator': _env_bool("POLYSEMI_SERIES_REQUIRE_INTEGER_DENOMINATOR", True),
    'min_check_equations': _env_int("POLYSEMI_SERIES_MIN_CHECK_EQUATIONS", 1),
}

# Report output
OUTPUT_CONFIG = {
    'default_format': os.getenv("POLYSEMI_OUTPUT_DEFAULT_FORMAT", "json"),
    'json_indent': _env_int("POLYSEMI_OUTPUT_JSON_INDENT", 2),
    'sort_keys': True,
    'supported_formats': ['json', 'text'],
}

# Progress bars on long enumerations
PROGRESS_CONFIG = {
    'show_progress': _env_bool("POLYSEMI_PROGRESS_SHOW_PROGRESS", False),
    'min_items': _env_int("POLYSEMI_PROGRESS_MIN_ITEMS", 200),
}

# Logging
LOGGING_CONFIG = {
    'level': os.getenv("POLYSEMI_LOGGING_LEVEL", "WARNING"),
    'format': '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    'log_file': os.getenv("POLYSEMI_LOGGING_LOG_FILE", ""),
}
