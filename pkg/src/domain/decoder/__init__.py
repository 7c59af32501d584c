"""BP-OSD decoding against a detector error model."""

from .bp import TannerGraph, bp_decode
from .bposd import BpOsdDecoder, decode_batch
from .config import BpConfig, BpResult, DecodeOutcome, OsdConfig
from .osd import osd_postprocess

__all__ = [
    "BpConfig",
    "BpOsdDecoder",
    "BpResult",
    "DecodeOutcome",
    "OsdConfig",
    "TannerGraph",
    "bp_decode",
    "decode_batch",
    "osd_postprocess",
]
