"""Belief propagation over the Tanner graph of a detector error model.

Messages are log-likelihood ratios clamped to ``LLR_CLAMP``. The parallel
schedule updates every check from the previous iteration's messages; the
serial schedule sweeps checks in index order and refreshes posteriors after
each one.
"""

from __future__ import annotations

import logging
from typing import Optional, Union

import numpy as np
import scipy.sparse as sp
from scipy.special import expit

from domain.constants import LLR_CLAMP
from domain.dem.model import DetectorErrorModel
from domain.linalg import BitVector

from .config import BpConfig, BpResult

logger = logging.getLogger(__name__)

_TINY = 1e-300
_ATANH_LIMIT = 1.0 - 1e-15

Syndrome = Union[BitVector, np.ndarray]


def as_bits(syndrome: Syndrome) -> np.ndarray:
    if isinstance(syndrome, BitVector):
        return syndrome.to_dense().astype(np.uint8)
    return np.asarray(syndrome, dtype=np.uint8) & 1


def prior_llrs(priors: np.ndarray) -> np.ndarray:
    p = np.clip(np.asarray(priors, dtype=np.float64), _TINY, 1.0 - 1e-16)
    return np.clip(np.log1p(-p) - np.log(p), -LLR_CLAMP, LLR_CLAMP)


class TannerGraph:
    """Edges of a parity-check matrix, grouped by check."""

    def __init__(self, pcm: sp.spmatrix) -> None:
        csr = sp.csr_matrix(pcm, dtype=np.uint8)
        csr.sum_duplicates()
        csr.sort_indices()
        self.check_count, self.variable_count = csr.shape
        self.check_ptr = csr.indptr.astype(np.int64)
        self.edge_var = csr.indices.astype(np.int64)
        self.degrees = np.diff(self.check_ptr)
        self.edge_check = np.repeat(np.arange(self.check_count), self.degrees)
        self.active = np.flatnonzero(self.degrees)
        self.starts = self.check_ptr[:-1][self.active]
        self._csr = csr

    @property
    def edge_count(self) -> int:
        return int(self.edge_var.size)

    def syndrome_of(self, bits: np.ndarray) -> np.ndarray:
        return ((self._csr @ bits.astype(np.int64)) % 2).astype(np.uint8)

    def check_sum(self, values: np.ndarray) -> np.ndarray:
        out = np.zeros(self.check_count, dtype=values.dtype)
        if self.active.size:
            out[self.active] = np.add.reduceat(values, self.starts)
        return out

    def variable_sum(self, values: np.ndarray) -> np.ndarray:
        return np.bincount(self.edge_var, weights=values, minlength=self.variable_count)


def _product_sum(graph: TannerGraph, v2c: np.ndarray, flip: np.ndarray) -> np.ndarray:
    t = np.tanh(v2c / 2.0)
    logs = np.log(np.maximum(np.abs(t), _TINY))
    negative = (t < 0).astype(np.int64)
    excluded = graph.check_sum(logs)[graph.edge_check] - logs
    parity = (graph.check_sum(negative)[graph.edge_check] - negative + flip) % 2
    magnitude = 2.0 * np.arctanh(np.minimum(np.exp(excluded), _ATANH_LIMIT))
    return np.where(parity == 1, -magnitude, magnitude)


def _min_sum(
    graph: TannerGraph, v2c: np.ndarray, flip: np.ndarray, scaling: float
) -> np.ndarray:
    magnitude = np.abs(v2c)
    negative = (v2c < 0).astype(np.int64)
    # Stable sort by check then magnitude: each check's first edge holds its minimum
    order = np.lexsort((magnitude, graph.edge_check))
    first = order[graph.starts]
    min1 = np.full(graph.check_count, LLR_CLAMP)
    min2 = np.full(graph.check_count, LLR_CLAMP)
    min1[graph.active] = magnitude[first]
    wide = graph.degrees[graph.active] >= 2
    min2[graph.active[wide]] = magnitude[order[graph.starts[wide] + 1]]
    out = min1[graph.edge_check]
    out[first] = min2[graph.active]
    parity = (graph.check_sum(negative)[graph.edge_check] - negative + flip) % 2
    return scaling * np.where(parity == 1, -out, out)


def _single_check(v2c: np.ndarray, flip: int, cfg: BpConfig) -> np.ndarray:
    if cfg.variant == "min-sum":
        magnitude = np.abs(v2c)
        order = np.argsort(magnitude, kind="stable")
        out = np.full(v2c.size, magnitude[order[0]])
        out[order[0]] = magnitude[order[1]] if v2c.size > 1 else LLR_CLAMP
        out *= cfg.scaling
        negative = (v2c < 0).astype(np.int64)
    else:
        t = np.tanh(v2c / 2.0)
        logs = np.log(np.maximum(np.abs(t), _TINY))
        out = 2.0 * np.arctanh(np.minimum(np.exp(logs.sum() - logs), _ATANH_LIMIT))
        negative = (t < 0).astype(np.int64)
    parity = (negative.sum() - negative + flip) % 2
    return np.where(parity == 1, -out, out)


def _clamp(values: np.ndarray) -> np.ndarray:
    return np.clip(values, -LLR_CLAMP, LLR_CLAMP)


def bp_decode(
    model: DetectorErrorModel,
    syndrome: Syndrome,
    cfg: Optional[BpConfig] = None,
    graph: Optional[TannerGraph] = None,
) -> BpResult:
    """Run BP until the hard decision reproduces ``syndrome`` or iterations run out.

    Posteriors are per-mechanism error probabilities and are returned even
    when BP does not converge.
    """
    cfg = cfg or BpConfig()
    graph = graph or TannerGraph(model.pcm)
    bits = as_bits(syndrome)
    if bits.size != graph.check_count:
        raise ValueError(
            f"syndrome has {bits.size} bits, "
            f"the model has {graph.check_count} detectors"
        )
    llr = prior_llrs(model.priors)
    flip = bits[graph.edge_check].astype(np.int64)
    c2v = np.zeros(graph.edge_count)
    posterior = llr.copy()
    hard = np.zeros(graph.variable_count, dtype=np.uint8)
    converged = False
    iteration = 0

    for iteration in range(1, cfg.max_iterations + 1):
        if cfg.schedule == "parallel":
            v2c = _clamp(posterior[graph.edge_var] - c2v)
            if cfg.variant == "min-sum":
                c2v = _clamp(_min_sum(graph, v2c, flip, cfg.scaling))
            else:
                c2v = _clamp(_product_sum(graph, v2c, flip))
            posterior = llr + graph.variable_sum(c2v)
        else:
            for c in graph.active.tolist():
                lo, hi = graph.check_ptr[c], graph.check_ptr[c + 1]
                variables = graph.edge_var[lo:hi]
                v2c = _clamp(posterior[variables] - c2v[lo:hi])
                fresh = _clamp(_single_check(v2c, int(bits[c]), cfg))
                posterior[variables] += fresh - c2v[lo:hi]
                c2v[lo:hi] = fresh
        hard = (posterior < 0).astype(np.uint8)
        if np.array_equal(graph.syndrome_of(hard), bits):
            converged = True
            break

    state = "converged" if converged else "stalled"
    logger.debug("bp %s after %d iterations", state, iteration)
    return BpResult(
        posteriors=expit(-posterior),
        hard_decision=hard,
        converged=converged,
        iterations=iteration,
    )
