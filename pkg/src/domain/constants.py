from __future__ import annotations

import os

# Named code presets. Claimed distances come from the literature and are only
# verified when a brute-force check is requested.
PRESET_CODES = {
    "bb18": "bb l=3 m=3 a=1+x+y b=1+x2+y2 d=4",
    "bb54": "bb l=3 m=9 a=x+y+y3 b=1+x2+y2 d=8",
    "bb144": "bb l=12 m=6 a=x3+y+y2 b=x+x2+y3 d=12",
    "sc3": "sc d=3",
    "sc5": "sc d=5",
    "sc7": "sc d=7",
    "sc11": "sc d=11",
}

CIRCUIT_KINDS = ("nonlocal-cnot", "teleport")

# Syndrome-round layout of the two experiments
ROUNDS_BEFORE_GADGET = 4
ROUNDS_AFTER_GADGET = 3
ROUNDS_AFTER_TELEPORT = 1

# Decoder defaults
BP_MAX_ITERATIONS = 10_000
MIN_SUM_SCALING = 0.625
OSD_ORDER = 7
LLR_CLAMP = 30.0

# Likelihood-ratio interval width
BAYES_FACTOR = 1000.0

# Ebit noise is swept as a multiple of the local physical error rate
EBIT_RATIOS = (1.0, 10.0, 100.0)

# Surface-code thresholds per circuit at ebit ratio 1, used by extrapolation
REFERENCE_THRESHOLDS = {"nonlocal-cnot": 7e-3, "teleport": 2e-3}

# Upper bound on candidate operators examined by brute-force distance checks
DISTANCE_CHECK_BUDGET = 5_000_000

# BP iterations per decode during circuit-distance searches
DISTANCE_SEARCH_BP_ITERATIONS = 100

# Shots sampled and decoded per worker task
SHOTS_PER_CHUNK = 1000

# Environment overrides
ENV_THREADS = "DQCSIM_THREADS"
ENV_LOG_LEVEL = "DQCSIM_LOG_LEVEL"
ENV_SLOW_TESTS = "DQCSIM_SLOW_TESTS"


def default_workers() -> int:
    """Worker count from DQCSIM_THREADS, falling back to 1."""
    raw = os.environ.get(ENV_THREADS, "").strip()
    if not raw:
        return 1
    try:
        value = int(raw)
    except ValueError:
        return 1
    return max(1, value)


def default_log_level() -> str:
    return os.environ.get(ENV_LOG_LEVEL, "WARNING").upper()
