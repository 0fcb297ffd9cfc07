"""The default table of 64 joining terms, shipped as data.

The first entry is the empty term (the two words are simply adjacent).
The table is overridable by pointing at another file of the same shape,
one term per line, blank line = empty term.
"""

from __future__ import annotations

import hashlib
from importlib import resources
from pathlib import Path

from .errors import DataFormatError

TERM_COUNT = 64


def _parse(text: str) -> tuple[str, ...]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines = lines[:-1]  # trailing newline
    terms = tuple(line.strip() for line in lines)
    if len(terms) != TERM_COUNT:
        raise DataFormatError(
            f"joining-term table must have exactly {TERM_COUNT} entries, got {len(terms)}"
        )
    return terms


def default_joining_terms() -> tuple[str, ...]:
    text = resources.files("relsim.data").joinpath("joining_terms.txt").read_text("utf-8")
    return _parse(text)


def load_joining_terms(path: str | Path) -> tuple[str, ...]:
    return _parse(Path(path).read_text(encoding="utf-8"))


def terms_checksum(terms: tuple[str, ...] | list[str]) -> str:
    return hashlib.sha256("\n".join(terms).encode("utf-8")).hexdigest()
