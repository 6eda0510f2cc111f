"""Time-dependent control fields: the coupling pulse and the sign-jump detuning.

All quantities use hbar = 1 code units: times carry the unit of the pulse
width ``T`` and frequencies the unit ``1/T``.  Profile objects are frozen
dataclasses and safe to share across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = [
    "SHAPE_KINDS",
    "PulseShape",
    "DetuningProfile",
    "DriveProfile",
]


def _gaussian(x: float) -> float:
    return math.exp(-0.5 * x * x)


def _gaussian_dlog(x: float) -> float:
    # d/dx log f = -x
    return -x


def _sech(x: float) -> float:
    return 1.0 / math.cosh(x)


def _sech_dlog(x: float) -> float:
    return -math.tanh(x)


def _lorentzian(x: float) -> float:
    return 1.0 / (1.0 + x * x)


def _lorentzian_dlog(x: float) -> float:
    return -2.0 * x / (1.0 + x * x)


# kind -> (f(x), d/dx log f(x)) with x = t / width; every f is even,
# peak-normalized (f(0) = 1) and monotone decreasing in |x|.
_SHAPES = {
    "gaussian": (_gaussian, _gaussian_dlog),
    "sech": (_sech, _sech_dlog),
    "lorentzian": (_lorentzian, _lorentzian_dlog),
}

SHAPE_KINDS = tuple(_SHAPES)


def _check_time(t: float) -> float:
    t = float(t)
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t!r}")
    return t


@dataclass(frozen=True)
class PulseShape:
    """Peak-normalized even envelope f(t): gaussian, sech or lorentzian.

    ``gaussian`` is exp(-t^2 / 2 width^2), ``sech`` is sech(t / width) and
    ``lorentzian`` is 1 / (1 + (t / width)^2).
    """

    kind: str = "gaussian"
    width: float = 1.0

    def __post_init__(self):
        if self.kind not in _SHAPES:
            raise ValueError(
                f"unknown pulse shape {self.kind!r}; choose one of {SHAPE_KINDS}"
            )
        if not (math.isfinite(self.width) and self.width > 0):
            raise ValueError(f"pulse width must be positive, got {self.width!r}")

    def evaluate(self, t: float) -> float:
        """Envelope value f(t) in (0, 1]."""
        t = _check_time(t)
        return _SHAPES[self.kind][0](t / self.width)

    def derivative(self, t: float) -> float:
        """Analytic df/dt (exact, no finite differences)."""
        t = _check_time(t)
        x = t / self.width
        f, dlog = _SHAPES[self.kind]
        return f(x) * dlog(x) / self.width


@dataclass(frozen=True)
class DetuningProfile:
    """Detuning of constant magnitude that flips sign at t = 0.

    With ``smoothing_time`` = 0 the flip is an ideal step:
    +magnitude for t < 0, -magnitude for t > 0, and the value at exactly
    t = 0 is +magnitude (left limit, a documented tie-break).  A positive
    ``smoothing_time`` tau replaces the step by -magnitude * tanh(t / tau).
    """

    magnitude: float
    smoothing_time: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.magnitude) and self.magnitude > 0):
            raise ValueError(
                f"detuning magnitude must be positive, got {self.magnitude!r}"
            )
        if not (math.isfinite(self.smoothing_time) and self.smoothing_time >= 0):
            raise ValueError(
                f"smoothing_time must be >= 0, got {self.smoothing_time!r}"
            )

    def value(self, t: float) -> float:
        t = _check_time(t)
        if self.smoothing_time == 0.0:
            return self.magnitude if t <= 0.0 else -self.magnitude
        return -self.magnitude * math.tanh(t / self.smoothing_time)

    def derivative(self, t: float) -> float:
        """d(detuning)/dt; zero on each side of an ideal step.

        Raises for t = 0 with an ideal step, where the derivative is a
        delta function.
        """
        t = _check_time(t)
        if self.smoothing_time == 0.0:
            if t == 0.0:
                raise ValueError("detuning derivative undefined at an ideal jump")
            return 0.0
        sech = 1.0 / math.cosh(t / self.smoothing_time)
        return -self.magnitude / self.smoothing_time * sech * sech


@dataclass(frozen=True)
class DriveProfile:
    """Full drive: coupling pulse Omega(t) plus the sign-jump detuning."""

    shape: PulseShape
    peak_rabi: float
    detuning: DetuningProfile = field(default_factory=lambda: DetuningProfile(5.0))

    def __post_init__(self):
        if not (math.isfinite(self.peak_rabi) and self.peak_rabi >= 0):
            raise ValueError(f"peak_rabi must be >= 0, got {self.peak_rabi!r}")

    def rabi(self, t: float) -> float:
        """Coupling Omega(t) = peak_rabi * f(t) >= 0."""
        return self.peak_rabi * self.shape.evaluate(t)

    def rabi_derivative(self, t: float) -> float:
        return self.peak_rabi * self.shape.derivative(t)

    def splitting(self, t: float) -> float:
        """Dressed-state gap sqrt(Omega(t)^2 + Delta(t)^2)."""
        return math.hypot(self.rabi(t), self.detuning.value(t))
