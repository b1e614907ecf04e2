import numpy as np
from hypothesis import strategies as st

from slicespace import Quaternion, SlicePowerSeries, UnitImaginary

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)
small = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, allow_infinity=False)

quaternions = st.tuples(finite, finite, finite, finite).map(lambda t: Quaternion(*t))
small_quaternions = st.tuples(small, small, small, small).map(lambda t: Quaternion(*t))


@st.composite
def unit_imaginaries(draw):
    v = np.array(draw(st.tuples(small, small, small)))
    if np.linalg.norm(v) < 1e-3:
        v = np.array([1.0, 0.0, 0.0])
    return UnitImaginary.from_vector(v)


@st.composite
def ball_points(draw, radius=0.95):
    v = np.array(draw(st.tuples(small, small, small, small)))
    n = np.linalg.norm(v)
    if n > 1.0:
        v = v / n
    return Quaternion.from_array(radius * v)


@st.composite
def disk_points(draw, radius=0.95):
    r = draw(st.floats(min_value=0.0, max_value=radius))
    t = draw(st.floats(min_value=0.0, max_value=2 * np.pi))
    return complex(r * np.cos(t), r * np.sin(t))


@st.composite
def series(draw, max_degree=8, scale=1.0):
    n = draw(st.integers(min_value=0, max_value=max_degree))
    coeffs = draw(st.lists(st.tuples(small, small, small, small), min_size=n + 1, max_size=n + 1))
    return SlicePowerSeries([scale * np.array(c) for c in coeffs])
