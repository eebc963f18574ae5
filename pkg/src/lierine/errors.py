"""Exception hierarchy shared by every module."""


class LierineError(Exception):
    pass


class StructuralError(LierineError, ValueError):
    """Mismatched rings, ranks, degrees or kinds."""


class ParseError(LierineError, ValueError):
    pass


class ManifestError(LierineError, ValueError):
    pass


class NotClosedError(LierineError):
    pass


class NonFlatError(LierineError):
    pass


class RegimeError(LierineError, ValueError):
    pass
