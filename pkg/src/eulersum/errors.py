"""Exception types shared across the package."""


class EulersumError(Exception):
    """Base class for all package errors."""


# --- composition / word calculus ---

class DivergentComposition(EulersumError):
    """Composition starts with an unsigned 1, so the nested sum diverges."""


class InadmissibleWord(EulersumError):
    """Word cannot be read back as a convergent nested sum."""


class UnsupportedSigns(EulersumError):
    """Operation is defined for all-positive compositions only."""


class UnsupportedAlphabet(EulersumError):
    """Operation is defined for {a,b}-words only."""


class NoSolution(EulersumError):
    """Linear system for transform coefficients is inconsistent."""


class UnderdeterminedSolution(EulersumError):
    """Linear system has a solution space of positive dimension."""

    def __init__(self, solution, nullity):
        super().__init__(f"solution space has nullity {nullity}")
        self.solution = solution
        self.nullity = nullity


# --- series engines ---

class DivergentInput(EulersumError):
    """Requested series diverges for the given arguments."""


class PrecisionUnreachable(EulersumError):
    """Engine cannot certify a usable radius within the term budget."""


class InvalidQ(EulersumError):
    """q-parameter outside the open interval (0, 1)."""


class OutOfRange(EulersumError):
    """Argument outside the supported domain."""


class NonConvergent(DivergentInput):
    """Triple sum parameters fail the convergence predicate."""


class NoConvergence(EulersumError):
    """Iteration failed to stabilise."""


class PoleAtPositiveInteger(EulersumError):
    """Shifted series hits a pole because x is a positive integer."""


# --- quadrature ---

class UnknownEntry(EulersumError):
    """No integral with that identifier in the catalog."""


class ToleranceNotMet(EulersumError):
    """Adaptive subdivision exhausted its panel budget."""


# --- expression layer ---

class ExpressionSyntaxError(EulersumError):
    """Expression text failed to parse; carries the byte offset."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class ArityError(EulersumError):
    """Known function called with the wrong number of arguments."""


class DomainError(EulersumError):
    """Function arguments outside the evaluable domain."""
