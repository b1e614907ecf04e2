"""Slice regular functions on the quaternionic unit ball and their function spaces."""

from .quaternion import (
    E1,
    E2,
    E3,
    I1,
    I2,
    I3,
    ONE,
    Quaternion,
    SliceCoordinate,
    UnitImaginary,
    decompose,
    orthogonal_unit,
    pair_to_quaternion,
    quaternion_to_pair,
    same_slice,
    slice_complex,
    slice_frame,
    sphere_sample,
    unit_imaginary,
)
from .series import (
    HolomorphicPair,
    MoebiusMap,
    SliceFunction,
    SlicePowerSeries,
    compose_i,
    derivative,
    eval_series,
    merge,
    moebius,
    represent,
    slice_extension,
    split,
    star_product,
)

__version__ = "0.1.0"
