"""Exception hierarchy shared by all rotpoly modules."""


class RotpolyError(Exception):
    """Base class for all rotpoly errors."""


class InputError(RotpolyError):
    """Bad input data or parameters (CLI maps these to exit code 2)."""


class NonPositiveMoment(InputError):
    def __init__(self, n, value):
        self.n = n
        self.value = value
        super().__init__(f"moment m_{n} = {value} is not positive")


class NotNormalized(InputError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"m_0 = {value}, expected 1 (probability normalization)")


class OutOfRange(InputError):
    def __init__(self, needed, available):
        self.needed = needed
        self.available = available
        super().__init__(
            f"moment index {needed} requested but only m_0..m_{available} available"
        )


class DegenerateMeasure(InputError):
    """Hankel matrix of sector d fails positive definiteness at size s."""

    def __init__(self, d, s):
        self.d = d
        self.s = s
        super().__init__(f"degenerate measure: sector d={d} Hankel fails at size s={s}")


class NotAProbability(InputError):
    def __init__(self, m0):
        self.m0 = m0
        super().__init__(f"quadrature gives m_0 = {m0}, not a probability density")


class RecurrenceViolation(RotpolyError):
    def __init__(self, k, l, residual):
        self.k = k
        self.l = l
        self.residual = residual
        super().__init__(
            f"z*P_{{{k},{l}}} leaves span{{P_{{{k+1},{l}}}, P_{{{k},{l-1}}}}}:"
            f" residual {residual}"
        )


class MissingAlpha(InputError):
    def __init__(self, k, l):
        self.k = k
        self.l = l
        super().__init__(f"alpha table lacks required entry ({k},{l})")


class CutoffTooSmall(InputError):
    def __init__(self, k, l, cutoff):
        self.k = k
        self.l = l
        self.cutoff = cutoff
        super().__init__(
            f"vacuum moment ({k},{l}) needs k+l <= cutoff, got cutoff {cutoff}"
        )


class IncompleteTable(InputError):
    def __init__(self, k, l):
        self.k = k
        self.l = l
        super().__init__(f"alpha table incomplete: missing ({k},{l})")


class NonPositiveEntry(InputError):
    def __init__(self, k, l, value):
        self.k = k
        self.l = l
        self.value = value
        super().__init__(f"alpha ({k},{l}) = {value} is not positive")


class InvalidParameter(InputError):
    def __init__(self, message):
        super().__init__(message)
