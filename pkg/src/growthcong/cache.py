"""Persistent coefficient-table cache with atomic writes and run configuration."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from .qseries import CoefficientRing, QSeries, dump_qseries, load_qseries

CACHE_ENV_VAR = "GROWTHCONG_CACHE_DIR"
DEFAULT_SEED = 20260823
_BUDGET_CHECK_THRESHOLD = 1 << 20  # entries


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV_VAR)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "growthcong"


@dataclass
class RunConfig:
    memory_budget: int | None = None
    threads: int = 1
    cache_dir: Path = field(default_factory=default_cache_dir)
    long_run: bool = False
    output_format: str = "json"
    seed: int = DEFAULT_SEED

    def check_budget(self, entries: int):
        if entries <= _BUDGET_CHECK_THRESHOLD or self.memory_budget is None:
            return
        if 8 * entries > self.memory_budget:
            from .congruence import BudgetExceededError

            raise BudgetExceededError(
                f"{entries} entries (~{8 * entries} bytes) exceed budget "
                f"{self.memory_budget}"
            )


def _ring_token(ring: CoefficientRing) -> str:
    return "Z" if ring.modulus is None else f"mod{ring.modulus}"


class SeriesCache:
    """On-disk store of QSeries records keyed by (tag, ring, truncation).

    An entry built to truncation T serves any request with T' <= T by
    prefix slicing.  Writes go through a temp file plus atomic rename;
    a per-tag lock prevents duplicate builds within one process.
    """

    def __init__(self, directory: Path | str | None = None):
        self.directory = Path(directory) if directory else default_cache_dir()
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock_for(self, tag: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(tag, threading.Lock())

    def _entry_path(self, tag: str, ring: CoefficientRing, trunc: int) -> Path:
        safe = tag.replace(":", "_").replace("/", "_")
        return self.directory / f"{safe}__{_ring_token(ring)}__{trunc}.qsc"

    def _meta_path(self, path: Path) -> Path:
        return path.with_suffix(".meta.json")

    def _matching_entries(self, tag: str, ring: CoefficientRing, trunc: int):
        safe = tag.replace(":", "_").replace("/", "_")
        prefix = f"{safe}__{_ring_token(ring)}__"
        if not self.directory.exists():
            return []
        found = []
        for path in self.directory.glob(f"{prefix}*.qsc"):
            try:
                t = int(path.stem.rsplit("__", 1)[1])
            except (IndexError, ValueError):
                continue
            if t >= trunc:
                found.append((t, path))
        return sorted(found)

    def _load(self, path: Path) -> QSeries | None:
        meta_path = self._meta_path(path)
        try:
            data = path.read_bytes()
            meta = json.loads(meta_path.read_text())
        except OSError:
            return None
        digest = hashlib.sha256(data).hexdigest()
        if digest != meta.get("checksum"):
            warnings.warn(f"cache checksum mismatch, evicting {path.name}", stacklevel=2)
            path.unlink(missing_ok=True)
            meta_path.unlink(missing_ok=True)
            return None
        return load_qseries(data)

    def store(self, tag: str, series: QSeries) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._entry_path(tag, series.ring, series.trunc)
        data = dump_qseries(series)
        meta = {
            "tag": tag,
            "ring": _ring_token(series.ring),
            "truncation": series.trunc,
            "checksum": hashlib.sha256(data).hexdigest(),
            "created_at": time.time(),
        }
        for payload, target in ((data, path), (json.dumps(meta).encode(), self._meta_path(path))):
            fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-")
            with os.fdopen(fd, "wb") as handle:
                handle.write(payload)
            os.replace(tmp, target)
        return path

    def get_or_build(self, tag: str, ring: CoefficientRing, trunc: int, builder) -> QSeries:
        """Load a sufficient entry if present, else build and persist.

        ``builder(trunc, ring)`` must return the series at exactly the
        requested truncation.
        """
        with self._lock_for(tag):
            for t, path in self._matching_entries(tag, ring, trunc):
                series = self._load(path)
                if series is None:
                    continue
                if series.trunc == trunc:
                    return series
                cut = trunc - series.start
                return QSeries(ring, series.grain, series.start, series.coeffs[:cut], trunc)
            series = builder(trunc, ring)
            if series.trunc != trunc:
                raise ValueError("builder returned a different truncation")
            # a larger rebuild replaces smaller stale entries
            for _, path in self._matching_entries(tag, ring, 0):
                if path != self._entry_path(tag, ring, trunc):
                    path.unlink(missing_ok=True)
                    self._meta_path(path).unlink(missing_ok=True)
            self.store(tag, series)
            return series


def registered_builders():
    """Builders for the well-known tags: p, p_k:K, f, F:ell, g:ell:j."""
    from .partitions import colored_series, partition_series
    from .treneer import build_F, build_f, build_g, make_context

    builders = {
        "p": partition_series,
        "f": build_f,
    }

    def colored(k):
        return lambda trunc, ring: colored_series(k, trunc, ring)

    def big_f(ell):
        return lambda trunc, ring: build_F(ell, trunc, ring)

    def g_pipeline(ell, j):
        def build(trunc, ring):
            if ring.modulus != ell**j:
                raise ValueError(f"g:{ell}:{j} must be built over Z/{ell**j}")
            return build_g(make_context(ell, j, trunc))

        return build

    class _Registry(dict):
        def __missing__(self, tag):
            if tag.startswith("p_k:"):
                return colored(int(tag.split(":", 1)[1]))
            if tag.startswith("F:"):
                return big_f(int(tag.split(":", 1)[1]))
            if tag.startswith("g:"):
                _, ell, j = tag.split(":")
                return g_pipeline(int(ell), int(j))
            raise KeyError(f"no builder registered for tag {tag!r}")

    return _Registry(builders)
