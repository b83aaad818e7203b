"""
Utility functions for prismatoid-band-tools

Provides JSON handling, per-trial seed derivation and the thread-pool map
used by the verification suites.
"""

import os
import sys
import threading
import zlib
from concurrent.futures import ThreadPoolExecutor, as_completed
from pathlib import Path
from typing import Any, Callable, List, Optional, Sequence, Tuple, TypeVar

import json5 as json
import numpy as np

from .constants import DEFAULT_MAX_WORKERS, MAX_DOCUMENT_SIZE, PARALLEL_THRESHOLD

T = TypeVar("T")
R = TypeVar("R")


def format_json(data: Any, indent: Optional[int] = 2) -> str:
    """Format data as strict JSON

    Args:
        data: Data to serialize (plain Python types)
        indent: Indentation width, or None for compact output

    Returns:
        JSON text without trailing newline

    Notes:
        - Floats are written with repr(), which is the shortest string that
          parses back to the same double
        - Keys are always quoted and trailing commas are never emitted
    """
    separators = (",", ":") if indent is None else None
    return json.dumps(
        data,
        indent=indent,
        separators=separators,
        ensure_ascii=False,
        quote_keys=True,
        trailing_commas=False,
        allow_nan=False,
    )


def write_json(path: Path, data: Any) -> None:
    """Write JSON with trailing newline (path "-" means stdout)"""
    text = format_json(data) + "\n"
    if str(path) == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text)


def read_json_with_size_limit(path: Path, max_size: int = MAX_DOCUMENT_SIZE) -> Any:
    """Read and parse JSON file with size validation

    Args:
        path: Path to JSON file, or "-" for stdin
        max_size: Maximum file size in bytes (default: MAX_DOCUMENT_SIZE)

    Returns:
        Parsed JSON data

    Raises:
        FileNotFoundError: If the file does not exist
        ValueError: If file size exceeds max_size or the text is not JSON
    """
    if str(path) == "-":
        text = sys.stdin.read(max_size + 1)
        if len(text) > max_size:
            raise ValueError(f"stdin input exceeds {max_size} bytes")
        return json.loads(text)

    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"File not found: {path}")

    file_size = path.stat().st_size
    if file_size > max_size:
        size_mb = file_size / 1024 / 1024
        max_mb = max_size / 1024 / 1024
        raise ValueError(f"File too large: {size_mb:.1f}MB (maximum: {max_mb:.1f}MB)")

    with open(path, "r") as f:
        return json.load(f)


def trial_seed(base_seed: int, suite_name: str, index: int) -> int:
    """Derive an independent, reproducible seed for one verification trial

    Args:
        base_seed: Run-level seed
        suite_name: Suite the trial belongs to
        index: Trial index within the suite

    Returns:
        32-bit seed; feeding it back via --replay-seed reruns exactly this trial
    """
    seq = np.random.SeedSequence([base_seed, zlib.crc32(suite_name.encode()), index])
    return int(seq.generate_state(1)[0])


def parallel_map(
    fn: Callable[[T], R],
    items: Sequence[T],
    max_workers: Optional[int] = DEFAULT_MAX_WORKERS,
    progress_task: Optional[Tuple] = None,
) -> List[R]:
    """Apply fn to every item, in a thread pool when the batch is large

    Args:
        fn: Function to apply; must not share mutable state between calls
        items: Inputs
        max_workers: Max worker threads (None = cpu_count, 1 = sequential)
        progress_task: Optional (progress, task_id) tuple advanced once per item

    Returns:
        Results in input order
    """
    total = len(items)
    use_parallel = max_workers != 1 and total >= PARALLEL_THRESHOLD
    if use_parallel and max_workers is None:
        max_workers = os.cpu_count() or 4

    progress_lock = threading.Lock()

    def update_progress() -> None:
        if progress_task:
            with progress_lock:
                progress, task_id = progress_task
                progress.update(task_id, advance=1)

    if not use_parallel:
        results = []
        for item in items:
            results.append(fn(item))
            update_progress()
        return results

    ordered: List[Optional[R]] = [None] * total
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = {executor.submit(fn, item): idx for idx, item in enumerate(items)}
        for future in as_completed(futures):
            ordered[futures[future]] = future.result()
            update_progress()
    return ordered  # type: ignore[return-value]
