"""Montgomery-type uniformity measures for point sets on spheres and tori."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .gegenbauer import GegenbauerContext, cap_hat, cap_hat_l2_average, hat_transform
from .pointsets import (
    GeneratorSpec,
    WeightedPointSet,
    generate,
    load_point_set,
    save_point_set,
    sphere_set,
    torus_set,
)
from .profiles import ProfileFunction
