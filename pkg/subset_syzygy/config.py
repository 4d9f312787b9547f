import os
from typing import Optional

DEFAULT_PRIME = 31991
MAX_PRIME = 2**31 - 1  # products of two residues stay inside int64
DEFAULT_SEED = 42
GENERIC_RETRIES = 25
ENUMERATE_BUDGET = 10**6
EXPERIMENT_BUDGET = 64
RANK_PANEL_WIDTH = 128
LOG_LEVEL = "WARNING"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"


def worker_limit(value: Optional[str]) -> int:
    """Thread cap from SUBSET_SYZYGY_THREADS; unset or unparsable means one per CPU."""
    try:
        return max(1, int(value or ""))
    except ValueError:
        return os.cpu_count() or 1


WORKERS = worker_limit(os.environ.get("SUBSET_SYZYGY_THREADS"))
