import math

import numpy as np
import pytest
from hypothesis import strategies as st

from spfc.params import SystemParams

SQRT2 = math.sqrt(2.0)

FIG2A = SystemParams(gamma1=2.0, omega1=5 * SQRT2, omega2=5.0)
FIG2B = SystemParams(gamma1=2.0, omega1=2 * SQRT2, omega2=2.0)
FIG2C = SystemParams(gamma1=2.0, omega1=0.5 * SQRT2, omega2=0.5)
FIG2D = SystemParams(gamma1=1.0, omega1=2.0, omega2=2.0)
FIG4C_LOSSLESS = SystemParams(gamma1=2.0, omega1=math.sqrt(91) / 3,
                              omega2=math.sqrt(140) / 3, delta1=-4.0, delta2=-4.0)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


finite = dict(allow_nan=False, allow_infinity=False)


@st.composite
def lossless_params(draw):
    return SystemParams(
        gamma1=draw(st.floats(0.1, 10, **finite)),
        gamma2=1.0,
        omega1=draw(st.floats(0, 10, **finite)),
        omega2=draw(st.floats(0, 10, **finite)),
        delta1=draw(st.floats(-10, 10, **finite)),
        delta2=draw(st.floats(-10, 10, **finite)),
    )


@st.composite
def lossy_params(draw):
    base = draw(lossless_params())
    return SystemParams(**{**base.to_dict(),
                           "gamma_a": draw(st.floats(0, 1, **finite)),
                           "gamma_f": draw(st.floats(0, 1, **finite)),
                           "gamma_d": draw(st.floats(0, 1, **finite))})


detunings = st.floats(-20, 20, **finite)
