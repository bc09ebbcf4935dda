"""Fitted constants: family minima of lhs / rhs and their stability."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FittedConstant:
    min: float
    median: float
    max: float
    count: int

    @classmethod
    def from_ratios(cls, ratios):
        r = np.asarray(ratios, dtype=float)
        r = r[np.isfinite(r)]
        if r.size == 0:
            return cls(float("nan"), float("nan"), float("nan"), 0)
        return cls(float(r.min()), float(np.median(r)), float(r.max()), int(r.size))

    @property
    def positive(self):
        return self.count > 0 and self.min > 0


def spread(values):
    """max / min of positive values (inf if any value is not positive)."""
    v = np.asarray(list(values), dtype=float)
    if v.size == 0 or np.any(~np.isfinite(v)) or np.any(v <= 0):
        return float("inf")
    return float(v.max() / v.min())


def stable_within(values, factor):
    """True if all values are positive and agree up to ``factor``."""
    return spread(values) < factor
