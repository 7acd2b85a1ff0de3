"""Exception types shared across the package.

Errors fall in two groups: input problems (bad shapes, invalid data,
unsatisfied preconditions) and theorem-consistency failures.  The latter
subclass ``InternalInconsistency`` -- they fire when two independent
computations of the same object disagree, which signals a bug in this
package rather than bad user input.
"""


class ShapeError(ValueError):
    """Dimensions of the supplied arrays do not match."""


class InvalidMatrix(ValueError):
    """Matrix contains NaN or infinite entries."""


class IncompatibleAction(ValueError):
    """Bimodule action fails the compatibility or bimodule axioms."""


class NotACharacter(ValueError):
    """Supplied functional is not a nonzero multiplicative functional."""


class MissingAction(ValueError):
    """Operation needs bimodule action tensors but none were given."""


class DegenerateSpectrum(RuntimeError):
    """Character search could not isolate all joint eigenvector rays."""


class CommutativityRequired(ValueError):
    """Operation is only defined for commutative algebras."""


class NotAProperIdeal(ValueError):
    """Subspace is not a proper one-sided ideal."""


class HypothesisNotMet(ValueError):
    """The stated sufficient condition does not hold for this input."""


class UnitRequired(ValueError):
    """Operation needs a unital algebra."""


class ParseError(ValueError):
    """Bundle JSON is malformed."""


class DuplicateEntry(ValueError):
    """Bundle contains two tensor entries with the same index triple."""


class InternalInconsistency(RuntimeError):
    """Two independent computations of the same object disagree."""


class SpectrumTheoremViolation(InternalInconsistency):
    """Directly-computed spectrum differs from the assembled one."""


class ArensDefect(InternalInconsistency):
    """A three-step product tensor differs from the original tensor."""


class DecompositionDefect(InternalInconsistency):
    """Block decomposition violates its characterizing identities."""
