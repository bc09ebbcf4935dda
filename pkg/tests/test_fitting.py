import math

from montlab.fitting import FittedConstant, spread, stable_within


def test_from_ratios():
    fc = FittedConstant.from_ratios([3.0, 1.0, 2.0, math.inf])
    assert (fc.min, fc.median, fc.max, fc.count) == (1.0, 2.0, 3.0, 3)
    assert fc.positive


def test_spread_and_stability():
    assert spread([2.0, 4.0]) == 2.0
    assert spread([1.0, -1.0]) == math.inf
    assert stable_within([1.0, 1.9], 2)
    assert not stable_within([1.0, 2.0], 2)
    assert not FittedConstant.from_ratios([]).positive
