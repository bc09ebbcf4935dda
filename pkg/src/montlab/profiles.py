"""Profile functions f: [-1, 1] -> R used to build zonal kernels on the sphere."""

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError


@dataclass(frozen=True, eq=False)
class ProfileFunction:
    """A function of the inner product t = x.y.

    Three kinds are supported:

    ``cap``
        the indicator of [tau, 1], i.e. membership in a spherical cap of
        aperture arccos(tau);
    ``numeric``
        an arbitrary vectorised callable, optionally with interior
        ``breakpoints`` where it is not smooth;
    ``series``
        a finite sum ``sum_n c_n E_n^lambda(t)`` for the dimension ``d``.
        With this convention the hat coefficients of the profile are exactly
        ``c_n``.

    Use the :meth:`cap`, :meth:`numeric` and :meth:`series` constructors.
    """

    kind: str
    tau: Optional[float] = None
    func: Optional[Callable] = None
    breakpoints: tuple = ()
    coefficients: Optional[np.ndarray] = None
    d: Optional[int] = None
    name: str = ""

    @classmethod
    def cap(cls, tau):
        tau = float(tau)
        if not -1.0 <= tau <= 1.0:
            raise DomainError(f"cap parameter tau={tau} outside [-1, 1]")
        return cls(kind="cap", tau=tau, name=f"cap({tau:g})")

    @classmethod
    def numeric(cls, func, breakpoints: Sequence[float] = (), name="numeric"):
        bps = tuple(sorted(float(b) for b in breakpoints if -1.0 < b < 1.0))
        return cls(kind="numeric", func=func, breakpoints=bps, name=name)

    @classmethod
    def constant(cls, value=1.0):
        value = float(value)
        return cls.numeric(lambda t: np.full(np.shape(t), value), name=f"const({value:g})")

    @classmethod
    def series(cls, coefficients, d):
        coefs = np.asarray(coefficients, dtype=float)
        if coefs.ndim != 1 or coefs.size == 0 or not np.all(np.isfinite(coefs)):
            raise DomainError("series coefficients must be a non-empty finite 1-d array")
        return cls(kind="series", coefficients=coefs, d=int(d), name=f"series(deg={coefs.size - 1})")

    @property
    def degree(self):
        """Polynomial degree for ``series`` profiles, ``None`` otherwise."""
        if self.kind == "series":
            return self.coefficients.size - 1
        return None

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "cap":
            return (t >= self.tau).astype(float)
        if self.kind == "numeric":
            return np.asarray(self.func(t), dtype=float) * np.ones_like(t)
        # local import keeps profiles free of a hard dependency cycle
        from .gegenbauer import normalized_gegenbauer_table

        lam = (self.d - 1) / 2.0
        table = normalized_gegenbauer_table(self.coefficients.size - 1, lam, t)
        return np.tensordot(self.coefficients, table, axes=1)
