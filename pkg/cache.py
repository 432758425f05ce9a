"""
On-disk Kac polynomial cache: one JSON document per quiver
"""

import json
import os
import random
import tempfile
import threading
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple

import structlog
from pydantic import ValidationError

from core.config import settings
from core.exceptions import CacheError
from models.kac import IntPoly
from models.quiver import DimVector, Quiver
from schemas.cache import KacCacheEntry, KacCacheFile
from services.quiver import quiver_hash

logger = structlog.get_logger(__name__)


class KacCache:
    """Advisory cache; deleting the directory forces recomputation"""

    def __init__(self, directory: Optional[str] = None):
        self.directory = Path(directory or settings.KAC_CACHE_DIR)
        self._lock = threading.Lock()

    def path_for(self, Q: Quiver) -> Path:
        return self.directory / f"{quiver_hash(Q)}.json"

    # ========== READ ==========

    def load(self, Q: Quiver) -> KacCacheFile:
        """Cache document for Q; unreadable files count as empty"""
        path = self.path_for(Q)
        qhash = quiver_hash(Q)
        if not path.exists():
            return KacCacheFile(quiver_hash=qhash)
        try:
            document = KacCacheFile.model_validate_json(path.read_text(encoding="utf-8"))
        except (OSError, ValidationError, ValueError) as e:
            logger.warning("kac_cache_unreadable", path=str(path), error=str(e))
            return KacCacheFile(quiver_hash=qhash)
        if document.quiver_hash != qhash:
            logger.warning("kac_cache_hash_mismatch", path=str(path))
            return KacCacheFile(quiver_hash=qhash)
        return document

    def get(self, Q: Quiver, d: Sequence[int]) -> Optional[Tuple[IntPoly, List[int]]]:
        d = list(Q.check_dim(d))
        for entry in self.load(Q).entries:
            if entry.d == d:
                logger.debug("kac_cache_hit", d=d)
                return IntPoly({int(k): v for k, v in entry.poly.items()}), list(entry.primes)
        return None

    # ========== WRITE ==========

    def put(self, Q: Quiver, d: Sequence[int], poly: IntPoly, primes: Sequence[int]) -> None:
        d = list(Q.check_dim(d))
        entry = KacCacheEntry(d=d, poly={str(e): c for e, c in poly.items()}, primes=list(primes))
        with self._lock:
            document = self.load(Q)
            entries = [e for e in document.entries if e.d != d] + [entry]
            entries.sort(key=lambda e: (sum(e.d), e.d))
            self._write(Q, KacCacheFile(quiver_hash=document.quiver_hash, entries=entries))
        logger.debug("kac_cache_put", d=d, primes=list(primes))

    def _write(self, Q: Quiver, document: KacCacheFile) -> None:
        path = self.path_for(Q)
        tmp = None
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=str(self.directory), prefix=".kac-", suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump(document.model_dump(), handle, sort_keys=True, indent=1)
            os.replace(tmp, path)
            tmp = None
        except OSError as e:
            # advisory: the value is recomputed next time
            logger.warning("kac_cache_write_failed", path=str(path), error=str(e))
        finally:
            if tmp is not None:
                Path(tmp).unlink(missing_ok=True)

    # ========== COHERENCE ==========

    def spot_check(
        self,
        Q: Quiver,
        recompute: Callable[[DimVector], IntPoly],
        fraction: float = 0.1,
        seed: Optional[int] = None,
    ) -> int:
        """Recompute a random sample of cached entries; returns how many were checked"""
        entries = self.load(Q).entries
        if not entries:
            return 0
        rng = random.Random(seed)
        size = max(1, round(len(entries) * fraction))
        checked = 0
        for entry in rng.sample(entries, min(size, len(entries))):
            cached = IntPoly({int(k): v for k, v in entry.poly.items()})
            fresh = recompute(tuple(entry.d))
            if fresh != cached:
                raise CacheError(
                    "cached Kac polynomial differs from recomputation",
                    d=entry.d,
                    cached=entry.poly,
                    fresh={str(e): c for e, c in fresh.items()},
                )
            checked += 1
        logger.info("kac_cache_spot_check", checked=checked, total=len(entries))
        return checked
