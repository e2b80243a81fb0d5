class SweepflowError(Exception):
    pass


class InvalidStateError(SweepflowError, ValueError):
    """A state with non-positive density or pressure was passed to an
    operation that requires a physically valid gas state.

    ``location`` carries the (i, j) interior grid index when the offending
    state came from a field, otherwise ``None``.
    """

    def __init__(self, message, location=None):
        if location is not None:
            message = f"{message} at grid point {location}"
        super().__init__(message)
        self.location = location


class ConfigurationError(SweepflowError, ValueError):
    pass
