"""Exception hierarchy shared by every module of the package."""


class NLBundlesError(Exception):
    """Base class for all errors raised by nlbundles."""


class PreconditionError(NLBundlesError, ValueError):
    """An operation was called outside the parameter range it is defined on."""


class LatticeUndefinedError(PreconditionError):
    """The L/C lattice does not exist (degree-1 surface: there is no curve C)."""


class OutOfRegimeError(PreconditionError):
    """A closed form was evaluated outside the regime where it holds."""


class NotAdmissibleError(PreconditionError):
    """A bundle specification does not describe a (known) stable bundle."""


class ArithmeticFault(NLBundlesError, ArithmeticError):
    """Two routes to the same number disagree, or an integer came out fractional.

    This indicates a bug in the formula pack and should never be raised on
    valid input.
    """
