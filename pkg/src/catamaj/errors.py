"""Exception types raised by the toolkit.

Every error that corresponds to a rejected input carries enough context in
its message to be reported verbatim by the CLI.
"""


class CatamajError(Exception):
    """Base class for all toolkit errors."""


class EmptyInput(CatamajError):
    """A vector was constructed from an empty sequence."""


class NegativeEntry(CatamajError):
    """A probability or amplitude entry is negative."""


class SumNotOne(CatamajError):
    """Entries do not sum to one within the backend tolerance."""

    def __init__(self, total, deviation):
        self.total = total
        self.deviation = deviation
        super().__init__(f"entries sum to {total} (deviation {deviation})")


class ReciprocalOfZero(CatamajError):
    """Pointwise reciprocal (or negative power) of a vector with zeros."""


class PZero(CatamajError):
    """Renyi entropy requested at p = 0; use the Burg entropy instead."""


class DegreeCapExceeded(CatamajError):
    """A polynomial family would exceed the configured degree cap."""

    def __init__(self, degree, cap):
        self.degree = degree
        self.cap = cap
        super().__init__(f"polynomial degree {degree} exceeds cap {cap}")


class KOutOfRange(CatamajError):
    """Coefficient index outside 0..n*r."""


class GibbsZeroEntry(CatamajError):
    """A Gibbs vector with a zero entry cannot weight a Lorenz curve."""


class GridTooLarge(CatamajError):
    """Simplex enumeration would exceed the configured point budget."""

    def __init__(self, points, budget):
        self.points = points
        self.budget = budget
        super().__init__(f"grid has {points} points, budget is {budget}")


class EpsNonPositive(CatamajError):
    """Rational approximation requires a strictly positive tolerance."""


class DimMismatch(CatamajError):
    """Vector dimensions do not line up for the requested operation."""


class SupportViolation(CatamajError):
    """Divergence of x from g requires support(x) within support(g)."""


class EmbeddingTooLarge(CatamajError):
    """Embedding dimension exceeds the configured cap."""

    def __init__(self, n, cap):
        self.n = n
        self.cap = cap
        super().__init__(f"embedding dimension {n} exceeds cap {cap}")


class InputError(CatamajError):
    """Malformed problem file or invalid CLI arguments."""
