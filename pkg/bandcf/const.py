"""Constants for bandcf."""

from logging import Logger, getLogger
from typing import Dict, List

LOGGER: Logger = getLogger(__package__)

DOMAIN = "bandcf"
SCHEMA_VERSION = "bandcf/1"

# Input document keys
CONF_P = "p"
CONF_Q = "q"
CONF_RING = "ring"
CONF_DIAGONALS = "diagonals"
CONF_LO = "lo"
CONF_VALUES = "values"
CONF_DEFAULT = "default"
CONF_KIND = "kind"
CONF_C = "c"
CONF_A = "a"
CONF_B = "b"
CONF_SUPPORT = "support"
CONF_PROBABILITIES = "probabilities"

# Verify parameters
CONF_WIDTH = "width"
CONF_TRIALS = "trials"
CONF_SEED = "seed"
CONF_MAX_LEN = "max_len"
CONF_MAX_IDX = "max_idx"
CONF_MAX_N = "max_n"
CONF_LEVELS = "levels"
CONF_SIZES = "sizes"
CONF_ELL_MAX = "ell_max"
CONF_JOBS = "jobs"
CONF_DEPTH = "depth"
CONF_SIGMAS = "sigmas"
CONF_ENSEMBLE = "ensemble"

DEFAULT_WIDTH = 24
DEFAULT_PATH_BUDGET = 10**7
DEFAULT_SEED = 0
DEFAULT_JOBS = 1
DEFAULT_TRIALS = 200
DEFAULT_SIZES: List[int] = [100, 200, 400]
DEFAULT_SIGMAS = 5.0

# Verify suites, in the order `all` runs them
SUITE_RELATIONS = "theorem1"
SUITE_PATH_ORACLE = "theorem2"
SUITE_TWO_SIDED = "theorem51"
SUITE_ONE_SIDED_CF = "theorem62"
SUITE_TWO_SIDED_CF = "theorem64"
SUITE_REFLECTED_CF = "prop65"
SUITE_CONTACT_ORDER = "theorem73"
SUITE_TRUNCATED_CF = "prop74"
SUITE_CENTRAL_WINDOW = "prop75"
SUITE_MOMENT_LIMIT = "theorem81"
SUITE_ALL = "all"

SUITES: List[str] = [
    SUITE_RELATIONS,
    SUITE_PATH_ORACLE,
    SUITE_TWO_SIDED,
    SUITE_ONE_SIDED_CF,
    SUITE_TWO_SIDED_CF,
    SUITE_REFLECTED_CF,
    SUITE_CONTACT_ORDER,
    SUITE_TRUNCATED_CF,
    SUITE_CENTRAL_WINDOW,
    SUITE_MOMENT_LIMIT,
]

# Descriptive names accepted wherever a suite name is
SUITE_ALIASES: Dict[str, str] = {
    "relations": SUITE_RELATIONS,
    "path-oracle": SUITE_PATH_ORACLE,
    "two-sided": SUITE_TWO_SIDED,
    "one-sided-cf": SUITE_ONE_SIDED_CF,
    "two-sided-cf": SUITE_TWO_SIDED_CF,
    "reflected-cf": SUITE_REFLECTED_CF,
    "contact-order": SUITE_CONTACT_ORDER,
    "truncated-cf": SUITE_TRUNCATED_CF,
    "central-window": SUITE_CENTRAL_WINDOW,
    "moment-limit": SUITE_MOMENT_LIMIT,
}

FLOAT_TOLERANCE = 1e-9
FLOAT_DIGITS = 17

RING_RATIONAL = "rational"
RING_COMPLEX = "complex"

KIND_POINT_MASS = "pointMass"
KIND_RADEMACHER = "rademacher"
KIND_UNIFORM = "uniform"
KIND_DISCRETE = "discrete"

DISTRIBUTION_KINDS: List[str] = [
    KIND_POINT_MASS,
    KIND_RADEMACHER,
    KIND_UNIFORM,
    KIND_DISCRETE,
]

# Exit codes
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
