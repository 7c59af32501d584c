"""Shot batch dumps.

Text: one line per shot, ``D: <hex> L: <hex>``, each field the packed bits
as hex bytes. Binary: per shot, detector bits followed by observable bits
packed into ``ceil((D + L) / 8)`` bytes. In both, bit 0 is the least
significant bit of the first byte.
"""

from __future__ import annotations

from typing import List

import numpy as np

from .models import ShotBatch


def _pack_rows(bits: np.ndarray) -> np.ndarray:
    return np.packbits(bits, axis=1, bitorder="little")


def _unpack_rows(packed: np.ndarray, width: int) -> np.ndarray:
    return np.unpackbits(packed, axis=1, count=width, bitorder="little")


def write_batch_text(batch: ShotBatch) -> str:
    detectors = _pack_rows(batch.detector_bits)
    observables = _pack_rows(batch.observable_bits)
    lines = [
        f"D: {detectors[s].tobytes().hex()} L: {observables[s].tobytes().hex()}"
        for s in range(batch.shots)
    ]
    return "".join(line + "\n" for line in lines)


def read_batch_text(text: str, detector_count: int, observable_count: int) -> ShotBatch:
    d_bytes = (detector_count + 7) // 8
    l_bytes = (observable_count + 7) // 8
    detectors: List[bytes] = []
    observables: List[bytes] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3, 4) or parts[0] != "D:" or "L:" not in parts:
            raise ValueError(f"line {number}: expected 'D: <hex> L: <hex>'")
        d_hex = parts[1] if parts[1] != "L:" else ""
        l_hex = parts[-1] if parts[-1] != "L:" else ""
        try:
            d = bytes.fromhex(d_hex)
            o = bytes.fromhex(l_hex)
        except ValueError as e:
            raise ValueError(f"line {number}: invalid hex field") from e
        if len(d) != d_bytes or len(o) != l_bytes:
            raise ValueError(f"line {number}: field widths do not match the model")
        detectors.append(d)
        observables.append(o)
    shots = len(detectors)
    d_packed = np.frombuffer(b"".join(detectors), dtype=np.uint8)
    o_packed = np.frombuffer(b"".join(observables), dtype=np.uint8)
    d_packed = d_packed.reshape(shots, d_bytes)
    o_packed = o_packed.reshape(shots, l_bytes)
    return ShotBatch(
        _unpack_rows(d_packed, detector_count), _unpack_rows(o_packed, observable_count)
    )


def write_batch_binary(batch: ShotBatch) -> bytes:
    bits = np.hstack([batch.detector_bits, batch.observable_bits])
    return _pack_rows(bits).tobytes()


def read_batch_binary(
    data: bytes, detector_count: int, observable_count: int
) -> ShotBatch:
    width = detector_count + observable_count
    row_bytes = (width + 7) // 8
    if row_bytes == 0:
        raise ValueError("cannot infer the shot count of a zero-width batch")
    if len(data) % row_bytes:
        raise ValueError(
            f"{len(data)} bytes is not a multiple of the {row_bytes}-byte row"
        )
    packed = np.frombuffer(data, dtype=np.uint8).reshape(-1, row_bytes)
    bits = _unpack_rows(packed, width)
    return ShotBatch(bits[:, :detector_count], bits[:, detector_count:])
