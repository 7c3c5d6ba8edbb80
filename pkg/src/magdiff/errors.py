"""Exception types shared across the package.

Invalid arguments raise the builtin ValueError; everything that can fail
during a numerically legitimate call gets its own class so callers (and the
command line front end) can map failures to distinct exit codes.
"""


class AccuracyError(RuntimeError):
    """Quadrature could not reach the requested tolerance within budget."""


class NoRootError(RuntimeError):
    """The bracket scan found no sign change of bc1(h) - bc2(h)."""


class AmbiguousRootError(RuntimeError):
    """The bracket scan found more than one sign change.

    Carries the list of (h_lo, h_hi) brackets in ``brackets``.
    """

    def __init__(self, message: str, brackets=None):
        super().__init__(message)
        self.brackets = list(brackets or [])


class DomainTooSmallError(RuntimeError):
    """The diffusion front would approach the truncated right boundary.

    ``required_x_max`` names the smallest admissible domain size.
    """

    def __init__(self, message: str, required_x_max: float):
        super().__init__(message)
        self.required_x_max = required_x_max


class FrontNotFoundError(RuntimeError):
    """A profile has no e = e_c crossing to interpolate."""


class NumericalFailureError(RuntimeError):
    """Non-finite values appeared during time stepping.

    ``step_index`` is the step at which the failure was detected.
    """

    def __init__(self, message: str, step_index: int):
        super().__init__(message)
        self.step_index = step_index
