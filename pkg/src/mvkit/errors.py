"""Exception types shared across the package."""


class MVKitError(Exception):
    pass


class NonGenericError(MVKitError):
    """A coweight failed the genericity test; carries the violating pair."""

    def __init__(self, msg, pair=None):
        super().__init__(msg)
        self.pair = pair


class WallCrossingError(MVKitError):
    """The requested operation needs an order change across the imaginary
    root, whose exchange rule is not implemented here."""


class InsufficientResolutionError(MVKitError):
    """A polytope query needs vertex data beyond the stored stabilization
    length or height certificate."""


class CoreTypeError(MVKitError):
    """Jordan-type extraction rejected the module (wrong shape, wrong
    dimension-vector, or singular first arrow)."""


class SchemaError(MVKitError):
    """JSON payload failed validation; `errors` lists pointer/message pairs."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join("%s: %s" % (p, m) for p, m in self.errors))
