"""Parsing of code description lines and named presets.

Grammar (one code per line)::

    bb l=3 m=3 a=1+x+y b=1+x2+y2 [d=4]
    sc d=5
    bb18 | bb54 | bb144 | sc3 | sc5 | sc7 | sc11

Monomials are written ``x<i>y<j>`` with omitted exponents meaning 1 and
``1`` for the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from domain.constants import PRESET_CODES

from .bivariate_bicycle import build_bb
from .models import BBParams, MonomialTerm, StabilizerCode
from .rotated_surface import build_rotated_sc


class CodeSpecError(ValueError):
    """Raised when a code description cannot be parsed."""


_TERM_RE = re.compile(r"^(?:x(\d*))?(?:y(\d*))?$")


@dataclass(frozen=True)
class CodeSpec:
    family: str
    bb: Optional[BBParams] = None
    distance: Optional[int] = None
    name: Optional[str] = None


def parse_monomial(text: str) -> MonomialTerm:
    token = text.strip()
    if token == "1":
        return MonomialTerm(0, 0)
    match = _TERM_RE.match(token)
    if not token or match is None:
        raise CodeSpecError(f"Invalid monomial: {text!r}")
    x_raw, y_raw = match.groups()
    x_exp = 0 if x_raw is None else int(x_raw or "1")
    y_exp = 0 if y_raw is None else int(y_raw or "1")
    return MonomialTerm(x_exp, y_exp)


def parse_polynomial(text: str) -> Tuple[MonomialTerm, ...]:
    return tuple(parse_monomial(part) for part in text.split("+"))


def _fields(tokens: List[str], line: str) -> Dict[str, str]:
    fields: Dict[str, str] = {}
    for token in tokens:
        key, sep, value = token.partition("=")
        if not sep or not value:
            raise CodeSpecError(f"Expected key=value, got {token!r} in {line!r}")
        if key in fields:
            raise CodeSpecError(f"Duplicate field {key!r} in {line!r}")
        fields[key] = value
    return fields


def _int_field(fields: Dict[str, str], key: str, line: str) -> int:
    try:
        return int(fields[key])
    except KeyError as e:
        raise CodeSpecError(f"Missing field {key!r} in {line!r}") from e
    except ValueError as e:
        raise CodeSpecError(f"Field {key!r} is not an integer in {line!r}") from e


def parse_code_spec(text: str) -> CodeSpec:
    line = text.split("#", 1)[0].strip()
    if not line:
        raise CodeSpecError("Empty code description")
    preset = PRESET_CODES.get(line.lower())
    if preset is not None:
        parsed = parse_code_spec(preset)
        return CodeSpec(parsed.family, parsed.bb, parsed.distance, line.lower())
    family, *tokens = line.split()
    fields = _fields(tokens, line)
    if family == "sc":
        unknown = set(fields) - {"d"}
        if unknown:
            raise CodeSpecError(f"Unknown sc fields {sorted(unknown)} in {line!r}")
        return CodeSpec("sc", distance=_int_field(fields, "d", line))
    if family == "bb":
        unknown = set(fields) - {"l", "m", "a", "b", "d"}
        if unknown:
            raise CodeSpecError(f"Unknown bb fields {sorted(unknown)} in {line!r}")
        for key in ("a", "b"):
            if key not in fields:
                raise CodeSpecError(f"Missing field {key!r} in {line!r}")
        params = BBParams(
            l=_int_field(fields, "l", line),
            m=_int_field(fields, "m", line),
            a_terms=parse_polynomial(fields["a"]),
            b_terms=parse_polynomial(fields["b"]),
        )
        distance = _int_field(fields, "d", line) if "d" in fields else None
        return CodeSpec("bb", bb=params, distance=distance)
    raise CodeSpecError(f"Unknown code family {family!r} in {line!r}")


def build_code(spec: str | CodeSpec) -> StabilizerCode:
    """Build a code from a description line, preset name or parsed spec."""
    parsed = parse_code_spec(spec) if isinstance(spec, str) else spec
    if parsed.family == "sc":
        assert parsed.distance is not None
        code = build_rotated_sc(parsed.distance)
    else:
        assert parsed.bb is not None
        code = build_bb(parsed.bb, d=parsed.distance)
    if parsed.name:
        code.spec = parsed.name
    return code


def load_code_specs(path: Path) -> List[CodeSpec]:
    """Read a code description file; ``#`` comments and blank lines are skipped."""
    specs: List[CodeSpec] = []
    with path.open("r", encoding="utf-8") as f:
        for number, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                specs.append(parse_code_spec(line))
            except CodeSpecError as e:
                raise CodeSpecError(f"{path}:{number}: {e}") from e
    return specs


def dump_check_matrices(code: StabilizerCode) -> str:
    """Sparse row listing of H_X and H_Z, one check per line."""
    lines = [f"# {code.name} n={code.n} k={code.k}"]
    for label, matrix in (("X", code.h_x), ("Z", code.h_z)):
        for r in range(matrix.rows):
            support = " ".join(str(q) for q in matrix.row_support(r))
            lines.append(f"{label}{r}: {support}")
    return "\n".join(lines) + "\n"
