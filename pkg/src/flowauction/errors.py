"""Semantic exceptions shared across the package."""


class AuctionError(Exception):
    """Base class for all flowauction errors."""


class InvalidParamsError(AuctionError, ValueError):
    """Inputs violate a documented contract (domain, shape, or consistency)."""


class BracketError(AuctionError, RuntimeError):
    """A sign-change bracket could not be established; indicates a bug or
    an input outside the model's premises rather than a user mistake."""


class ConvergenceError(AuctionError, ArithmeticError):
    """An iterative numerical scheme failed to converge within its budget."""
