"""Exception types shared across the package."""


class SpinOrbitError(Exception):
    """Base class for all computational failures in this package."""


class DomainError(SpinOrbitError, ValueError):
    """A parameter is outside its mathematical domain (e.g. e >= 1)."""


class NearResonanceError(SpinOrbitError, ValueError):
    """Frequency too close to a pole of the normalized-frequency formula."""

    def __init__(self, y: float, distance: float, guard: float):
        self.y = y
        self.distance = distance
        self.guard = guard
        super().__init__(
            f"frequency {y} is within {distance:.3e} of a singular value "
            f"(guard radius {guard:.1e}); the non-resonant expansion cannot be used"
        )


class SmallDivisorError(SpinOrbitError, ValueError):
    """A divisor omega0*m + n fell below the configured floor."""

    def __init__(self, wave: tuple[int, int], divisor: float, floor: float):
        self.wave = wave
        self.divisor = divisor
        self.floor = floor
        super().__init__(
            f"small divisor at harmonic (m, n) = {wave}: "
            f"|omega0*m + n| = {abs(divisor):.3e} < floor {floor:.1e}"
        )


class NonZeroAverageError(SpinOrbitError, ValueError):
    """Inversion of D^2 + mu*D requires a zero-average right-hand side."""


class DriftUndeterminedError(SpinOrbitError, ValueError):
    """mu = 0 leaves the drift coefficients of the embedding undetermined."""


class IntegrationBlowupError(SpinOrbitError, RuntimeError):
    """The integrator produced a non-finite state.

    ``k`` is the first stroboscopic index at which the state was non-finite.
    """

    def __init__(self, k: int):
        self.k = k
        super().__init__(f"non-finite state at stroboscopic index k = {k}")
