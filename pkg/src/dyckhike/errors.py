"""Exception taxonomy.

Every user-facing failure derives from :class:`DyckHikeError`; the CLI maps the
three families below onto exit codes (parse=2, validation=3, math=4).
"""


class DyckHikeError(Exception):
    exit_code = 5


class ParseError(DyckHikeError):
    exit_code = 2

    def __init__(self, message, text="", position=0, expected=()):
        self.text = text
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        detail = message
        if expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(f"{detail} at position {position}")


class ValidationError(DyckHikeError):
    exit_code = 3


class MathError(DyckHikeError):
    exit_code = 4


class EmptySpec(ValidationError):
    """A path specification that admits no Dyck path."""


class NotAVacuum(MathError):
    pass


class NotProportional(MathError):
    """A A^dagger does not act as a scalar on a ladder state."""


class IncompatibleRadicals(MathError):
    pass


class InsufficientTower(MathError):
    pass


class InterpolationMismatch(MathError):
    pass


class TowerExhausted(MathError):
    pass


class TruncationBreach(MathError):
    pass


class ResidualOutsideTower(MathError):
    pass


class SingularSystem(MathError):
    def __init__(self, message, rank=None, size=None):
        self.rank = rank
        self.size = size
        super().__init__(message)


class NearPole(MathError):
    pass
