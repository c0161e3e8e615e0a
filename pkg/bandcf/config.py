"""Schemas for bandcf input documents."""

from fractions import Fraction
import json
from typing import Any, Dict

import voluptuous as vol

from .const import (
    CONF_A,
    CONF_B,
    CONF_C,
    CONF_DEFAULT,
    CONF_DEPTH,
    CONF_DIAGONALS,
    CONF_ELL_MAX,
    CONF_ENSEMBLE,
    CONF_JOBS,
    CONF_KIND,
    CONF_LEVELS,
    CONF_LO,
    CONF_MAX_IDX,
    CONF_MAX_LEN,
    CONF_MAX_N,
    CONF_P,
    CONF_PROBABILITIES,
    CONF_Q,
    CONF_RING,
    CONF_SEED,
    CONF_SIGMAS,
    CONF_SIZES,
    CONF_SUPPORT,
    CONF_TRIALS,
    CONF_VALUES,
    CONF_WIDTH,
    DEFAULT_JOBS,
    DEFAULT_SEED,
    DEFAULT_SIGMAS,
    DEFAULT_SIZES,
    DEFAULT_TRIALS,
    KIND_DISCRETE,
    KIND_POINT_MASS,
    KIND_RADEMACHER,
    KIND_UNIFORM,
    LOGGER,
    RING_COMPLEX,
    RING_RATIONAL,
    SUITE_CENTRAL_WINDOW,
    SUITE_CONTACT_ORDER,
    SUITE_MOMENT_LIMIT,
    SUITE_ONE_SIDED_CF,
    SUITE_PATH_ORACLE,
    SUITE_REFLECTED_CF,
    SUITE_RELATIONS,
    SUITE_TRUNCATED_CF,
    SUITE_TWO_SIDED,
    SUITE_TWO_SIDED_CF,
)
from .errors import InvalidInput

DIAGONAL_KEY = vol.Match(r"^-?\d+$")

SCALAR = vol.Any(
    int,
    float,
    str,
    vol.All([vol.Coerce(float)], vol.Length(min=2, max=2)),
)

REAL = vol.Any(int, float, vol.All(str, vol.Coerce(Fraction)))


def _rational(value: Any) -> Fraction:
    try:
        return Fraction(value)
    except (TypeError, ValueError) as error:
        raise vol.Invalid(f"expected a rational number, got {value!r}") from error


RATIONAL = vol.All(vol.Any(int, str), _rational)

WINDOW_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_LO, default=0): int,
        vol.Required(CONF_VALUES, default=list): [SCALAR],
        vol.Optional(CONF_DEFAULT): SCALAR,
    }
)


def _one_per_diagonal(data: Dict[str, Any]) -> Dict[str, Any]:
    expected = {str(k) for k in range(-data[CONF_P], data[CONF_Q] + 1)}
    found = {str(int(k)) for k in data[CONF_DIAGONALS]}
    if found != expected:
        raise vol.Invalid(
            f"diagonals must be exactly {sorted(expected, key=int)}, "
            f"got {sorted(found, key=int)}"
        )
    return data


SPEC_SCHEMA = vol.All(
    vol.Schema(
        {
            vol.Required(CONF_P): vol.All(int, vol.Range(min=1)),
            vol.Required(CONF_Q): vol.All(int, vol.Range(min=1)),
            vol.Required(CONF_RING, default=RING_RATIONAL): vol.In(
                [RING_RATIONAL, RING_COMPLEX]
            ),
            vol.Required(CONF_DIAGONALS): {DIAGONAL_KEY: WINDOW_SCHEMA},
        }
    ),
    _one_per_diagonal,
)


def _uniform_bounds(data: Dict[str, Any]) -> Dict[str, Any]:
    if not Fraction(data[CONF_A]) < Fraction(data[CONF_B]):
        raise vol.Invalid("uniform needs a < b")
    return data


def _probabilities(data: Dict[str, Any]) -> Dict[str, Any]:
    if len(data[CONF_SUPPORT]) != len(data[CONF_PROBABILITIES]):
        raise vol.Invalid("support and probabilities differ in length")
    if any(weight < 0 for weight in data[CONF_PROBABILITIES]):
        raise vol.Invalid("probabilities must be nonnegative")
    if sum(data[CONF_PROBABILITIES]) != 1:
        raise vol.Invalid("probabilities must sum to exactly 1")
    return data


DISTRIBUTION_SCHEMA = vol.Any(
    vol.Schema({vol.Required(CONF_KIND): KIND_POINT_MASS, vol.Required(CONF_C): RATIONAL}),
    vol.Schema({vol.Required(CONF_KIND): KIND_RADEMACHER}),
    vol.All(
        vol.Schema(
            {
                vol.Required(CONF_KIND): KIND_UNIFORM,
                vol.Required(CONF_A): RATIONAL,
                vol.Required(CONF_B): RATIONAL,
            }
        ),
        _uniform_bounds,
    ),
    vol.All(
        vol.Schema(
            {
                vol.Required(CONF_KIND): KIND_DISCRETE,
                vol.Required(CONF_SUPPORT): vol.All([RATIONAL], vol.Length(min=1)),
                vol.Required(CONF_PROBABILITIES): vol.All([RATIONAL], vol.Length(min=1)),
            }
        ),
        _probabilities,
    ),
)

ENSEMBLE_SCHEMA = vol.All(
    vol.Schema(
        {
            vol.Required(CONF_P): vol.All(int, vol.Range(min=1)),
            vol.Required(CONF_Q): vol.All(int, vol.Range(min=1)),
            vol.Required(CONF_DIAGONALS): {DIAGONAL_KEY: DISTRIBUTION_SCHEMA},
        }
    ),
    _one_per_diagonal,
)


POSITIVE = vol.All(int, vol.Range(min=1))
NON_NEGATIVE = vol.All(int, vol.Range(min=0))

OPTION_VALIDATORS: Dict[str, Any] = {
    CONF_TRIALS: POSITIVE,
    CONF_WIDTH: POSITIVE,
    CONF_MAX_LEN: NON_NEGATIVE,
    CONF_MAX_IDX: NON_NEGATIVE,
    CONF_MAX_N: POSITIVE,
    CONF_LEVELS: POSITIVE,
    CONF_DEPTH: POSITIVE,
    CONF_SIZES: vol.All([POSITIVE], vol.Length(min=1)),
    CONF_ELL_MAX: NON_NEGATIVE,
    CONF_SIGMAS: vol.All(vol.Coerce(float), vol.Range(min=0)),
    CONF_ENSEMBLE: dict,
    CONF_JOBS: POSITIVE,
}


def _suite_schema(**defaults: Any) -> vol.Schema:
    fields = {vol.Required(CONF_SEED, default=DEFAULT_SEED): NON_NEGATIVE}
    for key, default in defaults.items():
        fields[vol.Required(key, default=default)] = OPTION_VALIDATORS[key]
    return vol.Schema(fields, extra=vol.REMOVE_EXTRA)


UNIFORM_TRIDIAGONAL = {
    CONF_P: 1,
    CONF_Q: 1,
    CONF_DIAGONALS: {
        str(k): {CONF_KIND: KIND_UNIFORM, CONF_A: 0, CONF_B: 1} for k in (-1, 0, 1)
    },
}

SUITE_OPTIONS: Dict[str, vol.Schema] = {
    SUITE_RELATIONS: _suite_schema(trials=20, width=10, max_idx=3),
    SUITE_PATH_ORACLE: _suite_schema(trials=50, max_len=7, max_idx=4),
    SUITE_TWO_SIDED: _suite_schema(trials=10, width=10),
    SUITE_ONE_SIDED_CF: _suite_schema(trials=10, width=10, levels=5),
    SUITE_TWO_SIDED_CF: _suite_schema(trials=10, width=10, levels=4, depth=10),
    SUITE_REFLECTED_CF: _suite_schema(trials=10, width=10, levels=4),
    SUITE_CONTACT_ORDER: _suite_schema(trials=20, max_n=8),
    SUITE_TRUNCATED_CF: _suite_schema(trials=10, width=10, max_n=5),
    SUITE_CENTRAL_WINDOW: _suite_schema(trials=4, ell_max=4),
    SUITE_MOMENT_LIMIT: _suite_schema(
        trials=DEFAULT_TRIALS,
        ell_max=2,
        sizes=list(DEFAULT_SIZES),
        sigmas=DEFAULT_SIGMAS,
        ensemble=UNIFORM_TRIDIAGONAL,
        jobs=DEFAULT_JOBS,
    ),
}


def validate(schema: Any, data: Any, what: str) -> Any:
    """Run a schema, converting failures to InvalidInput."""

    try:
        return schema(data)
    except vol.Invalid as error:
        LOGGER.error("Invalid %s: %s", what, error)
        raise InvalidInput(f"Invalid {what}: {error}") from error


def load_document(path: str) -> Any:
    """Read a JSON document from disk."""

    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as error:
        raise InvalidInput(f"Cannot read {path} - {error}") from error
    except json.JSONDecodeError as error:
        raise InvalidInput(f"Error parsing {path} - {error}") from error
