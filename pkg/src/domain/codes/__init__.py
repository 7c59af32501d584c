"""CSS code construction: bivariate-bicycle and rotated surface codes."""

from .bivariate_bicycle import build_bb
from .code_spec import (
    CodeSpec,
    CodeSpecError,
    build_code,
    dump_check_matrices,
    load_code_specs,
    parse_code_spec,
)
from .distance import ResourceGuardError, min_logical_weight_bruteforce
from .logicals import find_logical_operators, logical_operators
from .models import (
    BBParams,
    CodeConstructionError,
    CodeReport,
    MonomialTerm,
    StabilizerCode,
)
from .rotated_surface import build_rotated_sc

__all__ = [
    "BBParams",
    "CodeConstructionError",
    "CodeReport",
    "CodeSpec",
    "CodeSpecError",
    "MonomialTerm",
    "ResourceGuardError",
    "StabilizerCode",
    "build_bb",
    "build_code",
    "build_rotated_sc",
    "dump_check_matrices",
    "find_logical_operators",
    "load_code_specs",
    "logical_operators",
    "min_logical_weight_bruteforce",
    "parse_code_spec",
]
