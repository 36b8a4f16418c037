"""
Utility functions for spamlab commands
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

import psutil

from config.settings import settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def worker_count(workers: Optional[int] = None) -> int:
    """Explicit count, else Settings.WORKERS, else physical cores"""
    if workers is None:
        workers = settings.WORKERS
    if workers is None:
        workers = psutil.cpu_count(logical=False) or 1
    return max(1, int(workers))


def fan_out(func: Callable[[T], R], items: Sequence[T], workers: Optional[int] = None) -> List[R]:
    """Map a pure function over items on a thread pool; results keep input order"""
    items = list(items)
    workers = min(worker_count(workers), max(len(items), 1))
    if workers == 1:
        return [func(item) for item in items]
    logger.debug(f"Fanning out {len(items)} points over {workers} workers")
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def format_number(value: float, digits: int = settings.SIGNIFICANT_DIGITS) -> str:
    """Fixed significant-digit rendering so reruns are byte-identical"""
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    text = f"{value:.{digits}g}"
    return "0" if text == "-0" else text


def parse_range(text: str, integer: bool = False) -> List[float]:
    """Parse 'x', 'a..b' (integers, inclusive) or 'a..b:step' into a list"""
    text = text.strip()
    if ".." not in text:
        return [int(text) if integer else float(text)]
    bounds, _, step_text = text.partition(":")
    start_text, _, stop_text = bounds.partition("..")
    if integer:
        start, stop = int(start_text), int(stop_text)
        step = int(step_text) if step_text else 1
        if step <= 0:
            raise ValueError(f"step must be positive in {text!r}")
        return list(range(start, stop + 1, step))
    if not step_text:
        raise ValueError(f"real range {text!r} needs a step, e.g. 0.9..0.99:0.01")
    start, stop, step = float(start_text), float(stop_text), float(step_text)
    if step <= 0:
        raise ValueError(f"step must be positive in {text!r}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + i * step, 12) for i in range(max(count, 0))]


class TimingContext:
    """Context manager for timing operations"""
    def __init__(self):
        self.start_time = None
        self.end_time = None

    def __enter__(self):
        self.start_time = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.end_time = time.perf_counter()

    @property
    def elapsed_ms(self) -> int:
        """Get elapsed time in milliseconds"""
        if self.start_time is not None and self.end_time is not None:
            return int((self.end_time - self.start_time) * 1000)
        return 0
