"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class PerfdivError(Exception):
    """Base class for all errors raised by perfdiv."""


class Graph6Error(PerfdivError, ValueError):
    """A graph6 word could not be decoded."""


class Graph6LengthError(Graph6Error):
    pass


class Graph6CharError(Graph6Error):
    pass


class Graph6SizeError(Graph6Error):
    pass


class Graph6TrailingError(Graph6Error):
    pass


class Graph6PaddingError(Graph6Error):
    pass


class VertexError(PerfdivError, ValueError):
    """A vertex or vertex set lies outside its ground graph."""


class WeightError(PerfdivError, ValueError):
    """A weight function is not positive, integral, or correctly sized."""


class CapExceeded(PerfdivError, RuntimeError):
    """An exhaustive routine was asked to run beyond its vertex cap."""

    def __init__(self, what: str, n: int, cap: int):
        super().__init__(f"{what}: n={n} exceeds cap {cap}")
        self.what = what
        self.n = n
        self.cap = cap


class CertificateError(PerfdivError):
    """A division or certificate failed its independent check."""


class NotDivisibleError(PerfdivError):
    """No perfect division exists for a requested vertex subset.

    ``subset`` is a bitmask over the vertices of the graph the provider serves.
    """

    def __init__(self, subset: int, message: str | None = None):
        super().__init__(message or f"no perfect division for subset mask {subset:#x}")
        self.subset = subset


class ProofGapError(CertificateError):
    """The literal clique-cut case of the lifting argument produced an invalid division."""

    def __init__(self, subset: int, message: str):
        super().__init__(message)
        self.subset = subset
