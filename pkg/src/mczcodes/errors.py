"""Exception types raised across the package."""

from __future__ import annotations


class MczError(Exception):
    """Base class for all package errors."""


# field layer
class NonPrime(MczError, ValueError):
    pass


class ReducibleModulus(MczError, ValueError):
    pass


class DegreeMismatch(MczError, ValueError):
    pass


class SpecMismatch(MczError, ValueError):
    pass


class DivisionByZero(MczError, ZeroDivisionError):
    pass


# codes
class LengthMismatch(MczError, ValueError):
    pass


class BudgetExceeded(MczError, RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""

    def __init__(self, needed: int, budget: int, what: str = "enumeration"):
        super().__init__(f"{what} needs {needed} evaluations, budget is {budget}")
        self.needed = needed
        self.budget = budget


class AllOnesMissing(MczError, ValueError):
    pass


class NotAutomorphism(MczError, ValueError):
    def __init__(self, index: int, message: str = ""):
        super().__init__(message or f"group element {index} is not a code automorphism")
        self.index = index


class DegenerateCodeWarning(UserWarning):
    """The dual of a full-space code is the zero code."""


# family
class MultiplicationTooWeak(MczError, ValueError):
    def __init__(self, m: int):
        super().__init__(f"multiplication property fails at order {m}")
        self.m = m


class DualDistanceTooSmall(MczError, ValueError):
    pass


class BlockNotCoset(MczError, ValueError):
    pass


class HypothesisViolated(MczError, ValueError):
    pass


# css
class LogicalColumnsDependent(MczError, ValueError):
    def __init__(self, columns: tuple[int, ...]):
        super().__init__(f"logical columns {list(columns)} are linearly dependent")
        self.columns = columns


class IndependenceViolated(MczError, ValueError):
    pass


class NoLogicalQudits(MczError, ValueError):
    pass


# gates / scheduler
class UnknownLabel(MczError, KeyError):
    pass


class BlockMismatch(MczError, ValueError):
    pass


class ArityMismatch(MczError, ValueError):
    pass


class NonRegular(MczError, AssertionError):
    pass


# files
class ParseError(MczError, ValueError):
    """A structured input file does not match its schema."""
