class DimensionError(ValueError):
    """Operand shapes are inconsistent or outside the supported range."""


class CompletenessError(ValueError):
    """A Kraus set does not satisfy sum_i K_i^dag K_i = I."""


class DegenerateBranchError(ArithmeticError):
    """A post-selected measurement branch has (numerically) zero probability."""


class CapacityError(ValueError):
    """Requested size exceeds the desk-scale caps (d <= 16 / k <= k_max)."""
