"""Exception types shared across the library."""


class ClassconvError(Exception):
    """Base class for all library errors."""


class InvalidParams(ClassconvError, ValueError):
    """Arguments violate a documented precondition."""


class DegenerateClass(InvalidParams):
    """Class parameter sits at a degenerate value (the orbit collapses)."""


class DegenerateInput(InvalidParams):
    """Density parameters collapse the support to a point."""


class TraceBelowTwo(ClassconvError, ValueError):
    """Tr(g g*) < 2 beyond tolerance; the matrix is not numerically in SL(2)."""


class UnsortedInput(ClassconvError, ValueError):
    """A routine requiring a sorted sample received unsorted data."""


class CoincidentPoints(ClassconvError, ValueError):
    """Two points of a sphere configuration coincide."""


class FoldedRegime(ClassconvError, ValueError):
    """Angle sum reaches pi; the unfolded label comparison is unavailable."""


class NumericalError(ClassconvError, RuntimeError):
    """Quadrature or an iterative solve failed to reach the requested accuracy."""
