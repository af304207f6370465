"""Exception types shared across sectorkit modules."""


class SectorKitError(Exception):
    """Base class for all sectorkit errors."""


class InvalidPermutation(SectorKitError):
    pass


class OrderCapExceeded(SectorKitError):
    pass


class RepresentativeInconsistency(SectorKitError):
    """Class-fusion counts differ between representatives of one class."""


class DegenerateSpectrum(SectorKitError):
    """Random-combination diagonalization kept hitting eigenvalue collisions."""


class NonUnitaryS(SectorKitError):
    pass


class NonIntegralFusion(SectorKitError):
    pass


class DimensionSumMismatch(SectorKitError):
    pass


class DimensionIdentityFailure(SectorKitError):
    pass


class ShapeMismatch(SectorKitError):
    pass


class SizeCap(SectorKitError):
    pass


class NonProjector(SectorKitError):
    pass


class StrandMismatch(SectorKitError):
    pass


class CutoffReached(SectorKitError):
    """Wenzl recursion hit the degenerate level n = q.

    Carries the degenerate element (the plain shift of the last good
    projector) as ``element``.
    """

    def __init__(self, message, element=None):
        super().__init__(message)
        self.element = element


class IndexOutOfRange(SectorKitError):
    pass


class SingularVacuumRow(SectorKitError):
    pass


class DegenerateData(SectorKitError):
    pass


class InterpolationOutOfRange(SectorKitError):
    pass


class SupportViolation(SectorKitError):
    pass


class FockCapExceeded(SectorKitError):
    pass


class PoleInStrip(SectorKitError):
    pass


class SupportOutsideWindow(SectorKitError):
    pass


class WindowMismatch(SectorKitError):
    pass


class InputError(SectorKitError):
    """Bad CLI / JSON input."""
