"""Exception hierarchy for leafkit.

Numerical precondition failures get their own classes so callers (and the
CLI exit-code logic) can tell "your input is outside the contract" apart
from ordinary usage errors.
"""


class LeafkitError(Exception):
    """Base class for all leafkit errors."""


class ShapeError(LeafkitError):
    """Matrix has the wrong shape, or shapes are inconsistent."""


class SizeMismatch(LeafkitError):
    """Two operands do not have compatible dimensions."""


class NotHermitian(LeafkitError):
    """Symmetry residual of a would-be Hermitian matrix exceeds tolerance."""


class NotSkewHermitian(LeafkitError):
    """Anti-symmetry residual of a would-be skew-Hermitian matrix exceeds tolerance."""


class NotPositive(LeafkitError):
    """Matrix required to be positive semidefinite has a negative eigenvalue."""


class NotUnitary(LeafkitError):
    """Unitarity residual exceeds tolerance."""


class NotUnitVector(LeafkitError):
    """Vector required to have unit norm does not."""


class NotCommuting(LeafkitError):
    """Operator required to commute with the reference does not."""


class ClusterAmbiguity(LeafkitError):
    """Eigenvalue gaps straddle the clustering tolerance; grouping is ill-posed."""


class NearSingular(LeafkitError):
    """Smallest singular value is below the invertibility threshold."""


class CornerSingular(LeafkitError):
    """A spectral-block compression is too close to singular for the
    block-wise polar construction (the input is outside the cross-section
    neighborhood)."""


class SpectrumOutOfRange(LeafkitError):
    """Eigenvalues fall outside the interval the scalar function requires."""


class UnsupportedKind(LeafkitError):
    """The requested operation is not available for this norming-function kind."""


class RankTooHigh(LeafkitError):
    """Matrix rank exceeds the bound the inequality is stated for."""


class SingleCluster(LeafkitError):
    """The reference operator has only one eigenvalue cluster, so there are
    no off-diagonal spectral gaps to test."""


class ParseError(LeafkitError):
    """Matrix file is not valid (malformed JSON, bad field, or non-finite entry)."""
