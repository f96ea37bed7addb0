import os
from concurrent.futures import ThreadPoolExecutor


def worker_count():
    """Worker cap from ``MODHOM_THREADS``; defaults to the CPU count."""
    raw = os.environ.get("MODHOM_THREADS", "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"MODHOM_THREADS must be a positive integer, got {raw!r}") from None
        if n < 1:
            raise ValueError(f"MODHOM_THREADS must be a positive integer, got {raw!r}")
        return n
    return os.cpu_count() or 1


def pmap(fn, items, workers=None):
    """Ordered map over a bounded pool; output order never depends on ``workers``."""
    items = list(items)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(workers, len(items))) as pool:
        return list(pool.map(fn, items))
