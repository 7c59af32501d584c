"""Detector error model text format.

::

    dem detectors=<n> observables=<m>
    error(<p>) D<i> D<j> ... L<k> ...
"""

from __future__ import annotations

import re
from typing import List

from .model import DetectorErrorModel

_HEADER_RE = re.compile(r"^dem\s+detectors=(\d+)\s+observables=(\d+)$")
_ERROR_RE = re.compile(r"^error\(([^)]*)\)((?:\s+[DL]\d+)*)$")


class DemParseError(ValueError):
    def __init__(self, line_number: int, message: str) -> None:
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


def serialize_dem(model: DetectorErrorModel) -> str:
    lines = [
        f"dem detectors={model.detector_count} "
        f"observables={model.observable_count}"
    ]
    for prior, dets, obs in zip(
        model.priors.tolist(), model.detector_columns, model.observable_columns
    ):
        targets = [f"D{d}" for d in dets] + [f"L{o}" for o in obs]
        lines.append(f"error({prior:.12g}) " + " ".join(targets))
    return "\n".join(lines) + "\n"


def parse_dem(text: str) -> DetectorErrorModel:
    detector_count = observable_count = -1
    detector_columns: List[List[int]] = []
    observable_columns: List[List[int]] = []
    priors: List[float] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if detector_count < 0:
            header = _HEADER_RE.match(line)
            if header is None:
                raise DemParseError(
                    number, "expected 'dem detectors=<n> observables=<m>'"
                )
            detector_count = int(header.group(1))
            observable_count = int(header.group(2))
            continue
        match = _ERROR_RE.match(line)
        if match is None:
            raise DemParseError(number, f"cannot parse {line!r}")
        try:
            prior = float(match.group(1))
        except ValueError as e:
            raise DemParseError(
                number, f"invalid probability {match.group(1)!r}"
            ) from e
        if not 0.0 <= prior <= 1.0:
            raise DemParseError(number, f"probability {prior} outside [0, 1]")
        dets: List[int] = []
        obs: List[int] = []
        for token in match.group(2).split():
            index = int(token[1:])
            if token[0] == "D":
                if index >= detector_count:
                    raise DemParseError(
                        number, f"{token} exceeds {detector_count} detectors"
                    )
                dets.append(index)
            else:
                if index >= observable_count:
                    raise DemParseError(
                        number, f"{token} exceeds {observable_count} observables"
                    )
                obs.append(index)
        if len(set(dets)) != len(dets) or len(set(obs)) != len(obs):
            raise DemParseError(number, "repeated target")
        detector_columns.append(dets)
        observable_columns.append(obs)
        priors.append(prior)
    if detector_count < 0:
        raise DemParseError(1, "missing header")
    return DetectorErrorModel(
        detector_count, observable_count, detector_columns, observable_columns, priors
    )
