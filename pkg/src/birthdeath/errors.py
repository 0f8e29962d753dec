"""Exception types shared across the package."""

from __future__ import annotations


class PrecisionError(ValueError):
    """Invalid precision request (extended mode needs >= 15 digits)."""


class ContextMismatchError(TypeError):
    """Two values from incompatible precision contexts were combined.

    Mixing precisions silently is exactly the kind of bug the stable
    engines are meant to rule out, so this is a hard failure.
    """


class ExprSyntaxError(ValueError):
    """Rate expression failed to parse. Carries the byte offset."""

    def __init__(self, message: str, offset: int):
        self.message = message
        self.offset = offset
        super().__init__(f"syntax error at offset {offset}: {message}")


class ExprEvalError(ArithmeticError):
    """Rate expression failed to evaluate (domain error, overflow, ...)."""

    def __init__(self, message: str, offset: int):
        self.message = message
        self.offset = offset
        super().__init__(f"evaluation error at offset {offset}: {message}")


class NonPositiveRateError(ValueError):
    """A queried transition rate was zero or negative."""

    def __init__(self, which: str, index: int | None, value=None):
        self.which = which
        self.index = index
        self.value = value
        where = f"(n={index})" if index is not None else ""
        shown = "" if value is None else f" = {value}"
        super().__init__(
            f"rate {which}{where}{shown} is not positive; rates must be > 0"
        )


class InconclusiveSeriesError(ArithmeticError):
    """Series summation hit the term budget without a decisive verdict.

    Raised instead of guessing between convergence and divergence, e.g.
    for harmonic-like terms that shrink but do not shrink fast enough.
    """

    def __init__(self, terms: int, message: str | None = None):
        self.terms = terms
        super().__init__(
            message
            or f"series verdict inconclusive after {terms} terms; "
            "raise max_terms or loosen rel_tol"
        )
