"""Exception types shared across the package."""


class InputError(Exception):
    """Bad user-supplied input (malformed files, invalid queries, ...)."""


class DuplicateDocIdError(InputError):
    """Two documents in one corpus share a doc_id."""


class PhraseSyntaxError(InputError):
    """A phrase query string violates the wildcard grammar."""


class DataFormatError(InputError):
    """A data file (questions, labeled pairs, cache) failed to parse."""


class CacheProvenanceError(InputError):
    """A vector cache was built against a different corpus or term table."""


class ProviderError(Exception):
    """A hit-count provider failed; carries the offending query."""

    def __init__(self, query: str, cause: Exception):
        super().__init__(f"hit-count provider failed on query {query!r}: {cause}")
        self.query = query
