"""Exception hierarchy. Everything raised on bad input derives from CircleMapError."""


class CircleMapError(ValueError):
    pass


class DomainError(CircleMapError):
    """Argument outside the domain of an operation (e.g. t not in [0, 1])."""


class ContinuityError(CircleMapError):
    """Sampled curve is not closed, or adjacent samples are too far apart to unwrap safely."""


class AliasingError(CircleMapError):
    """Two candidate branches are equidistant; the phase sequence is under-sampled."""


class NonIntegerGapError(CircleMapError):
    pass


class GridMismatchError(CircleMapError):
    pass


class KnotAlignmentError(CircleMapError):
    pass


class DegreeAlignmentError(CircleMapError):
    pass


class ClassMismatchError(CircleMapError):
    """Map is not in the requested class C_m^q (wrong winding or wrong base value)."""


class DegenerateDenominatorError(CircleMapError):
    pass


class IllConditionedError(CircleMapError):
    pass


class ConstraintError(CircleMapError):
    """Input does not satisfy the constraints an operation presupposes."""


class SchemaError(CircleMapError):
    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")
