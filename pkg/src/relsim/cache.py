"""On-disk cache of raw hit counts, keyed by word pair.

Raw counts (integers, not logs) are persisted so the transform can change
without re-querying. The cache records the corpus digest and joining-term
checksum it was built against and refuses to load under a different
configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .errors import CacheProvenanceError, DataFormatError
from .vectors import RelationVector, WordPair

_MAGIC = "# relsim-vector-cache v1"
VECTOR_LEN = 128


@dataclass
class VectorCache:
    corpus_digest: str
    terms_checksum: str
    entries: dict[str, tuple[int, ...]] = field(default_factory=dict)

    def __contains__(self, pair: WordPair) -> bool:
        return pair.key() in self.entries

    def put(self, pair: WordPair, raw: Sequence[int]) -> None:
        raw = tuple(int(c) for c in raw)
        if len(raw) != VECTOR_LEN or any(c < 0 for c in raw):
            raise ValueError(f"cache entries must be {VECTOR_LEN} non-negative integers")
        self.entries[pair.key()] = raw

    def vector(self, pair: WordPair) -> RelationVector:
        return RelationVector.from_raw(pair, self.entries[pair.key()])

    def save(self, path: str | Path) -> None:
        lines = [_MAGIC,
                 f"# corpus: {self.corpus_digest}",
                 f"# terms: {self.terms_checksum}"]
        for key in sorted(self.entries):
            lines.append(key + "\t" + "\t".join(str(c) for c in self.entries[key]))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_cache(path: str | Path, corpus_digest: str | None = None,
               terms_checksum: str | None = None) -> VectorCache:
    """Load a cache, verifying it matches the active corpus and term table.

    Passing None for a digest skips that check (trust the cache header).
    """
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or lines[0] != _MAGIC:
        raise DataFormatError(f"{path} is not a relsim vector cache")
    header = {}
    body_start = 1
    for line in lines[1:]:
        if not line.startswith("# "):
            break
        body_start += 1
        k, _, v = line[2:].partition(": ")
        header[k] = v
    for field_name, expected in (("corpus", corpus_digest), ("terms", terms_checksum)):
        if expected is None:
            continue
        found = header.get(field_name, "<missing>")
        if found != expected:
            raise CacheProvenanceError(
                f"{path}: {field_name} provenance mismatch: cache has {found}, "
                f"active configuration has {expected}")
    cache = VectorCache(header.get("corpus", ""), header.get("terms", ""))
    for lineno, line in enumerate(lines[body_start:], body_start + 1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != VECTOR_LEN + 1:
            raise DataFormatError(f"{path}:{lineno}: expected pair key and "
                                  f"{VECTOR_LEN} counts")
        try:
            cache.put(WordPair.from_key(fields[0]), [int(c) for c in fields[1:]])
        except ValueError as e:
            raise DataFormatError(f"{path}:{lineno}: {e}") from e
    return cache
