import pytest

from detjump import DetuningProfile, DriveProfile, IntegrationSpec, PulseShape


@pytest.fixture
def make_drive():
    def factory(omega0, delta0, shape="gaussian", tau=0.0, width=1.0):
        return DriveProfile(
            shape=PulseShape(kind=shape, width=width),
            peak_rabi=omega0 / width,
            detuning=DetuningProfile(magnitude=delta0 / width, smoothing_time=tau * width),
        )

    return factory


@pytest.fixture
def default_spec():
    return IntegrationSpec(t_start=-20.0, t_end=20.0, tolerance=1e-10)
