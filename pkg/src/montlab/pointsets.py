"""Weighted point configurations on S^d and T^d: generators and text I/O.

File format (UTF-8)::

    # space=sphere d=2 weighted=0
    0.0 0.0 1.0
    1.0 0.0 0.0

One point per line, ``d + 1`` coordinates on the sphere and ``d`` on the
torus, followed by a weight when ``weighted=1``.  Further ``#`` lines are
comments.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import PointSetParseError, SpecError, WrongSpaceError

logger = logging.getLogger(__name__)

RNG_ALGORITHM = "Philox"
GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


def make_rng(seed):
    """Counter-based generator; identical seeds give identical streams."""
    return np.random.Generator(np.random.Philox(int(seed) & (2**64 - 1)))


@dataclass(frozen=True, eq=False)
class WeightedPointSet:
    space: str
    d: int
    points: np.ndarray
    weights: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.space not in ("sphere", "torus"):
            raise SpecError(f"unknown space {self.space!r}")
        pts = np.array(self.points, dtype=float, ndmin=2)
        ambient = self.d + 1 if self.space == "sphere" else self.d
        if pts.shape[0] < 1 or pts.shape[1] != ambient:
            raise SpecError(f"expected N x {ambient} coordinates, got shape {pts.shape}")
        if self.space == "sphere":
            norms = np.linalg.norm(pts, axis=1)
            if np.any(np.abs(norms - 1.0) >= 1e-12):
                raise SpecError("sphere points must be unit vectors (|norm - 1| < 1e-12)")
        else:
            pts = np.mod(pts, 1.0)
        w = np.ones(pts.shape[0]) if self.weights is None else np.array(self.weights, dtype=float)
        if w.shape != (pts.shape[0],) or np.any(w < 0) or not np.all(np.isfinite(w)):
            raise SpecError("weights must be N finite nonnegative numbers")
        pts.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "weights", w)

    @property
    def n(self):
        return self.points.shape[0]

    def __len__(self):
        return self.n

    @property
    def unit_weights(self):
        return bool(np.all(self.weights == 1.0))

    def require(self, space):
        if self.space != space:
            raise WrongSpaceError(f"expected a {space} point set, got {self.space}")
        return self

    def with_weights(self, weights):
        return WeightedPointSet(self.space, self.d, self.points, weights)

    def union(self, other):
        if (other.space, other.d) != (self.space, self.d):
            raise SpecError("cannot join point sets from different spaces")
        return WeightedPointSet(
            self.space,
            self.d,
            np.vstack([self.points, other.points]),
            np.concatenate([self.weights, other.weights]),
        )


def sphere_set(points, weights=None):
    """Build a sphere set from arbitrary nonzero vectors (they are normalised)."""
    pts = np.array(points, dtype=float, ndmin=2)
    pts = pts / np.linalg.norm(pts, axis=1, keepdims=True)
    return WeightedPointSet("sphere", pts.shape[1] - 1, pts, weights)


def torus_set(points, weights=None):
    pts = np.array(points, dtype=float, ndmin=2)
    return WeightedPointSet("torus", pts.shape[1], pts, weights)


@dataclass(frozen=True)
class GeneratorSpec:
    """Deterministic recipe for a test configuration.

    ``kind`` is one of ``uniform``, ``fibonacci``, ``spiral``, ``cluster-pairs``,
    ``antipodal``, ``torus-grid``, ``torus-random`` or ``file``.
    ``cluster-pairs`` and ``antipodal`` double a base configuration given by
    ``base_kind`` with ``N // 2`` points, so the result has ``N`` points.
    """

    kind: str
    n: int
    space: str = "sphere"
    d: int = 2
    seed: int = 0
    base_kind: str = "fibonacci"
    eps: float = 1e-3
    path: Optional[str] = None
    weighted: bool = False


def uniform_sphere(n, d, rng):
    """Normalised Gaussian vectors."""
    x = rng.standard_normal((n, d + 1))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def fibonacci_sphere(n):
    """Golden-angle spiral with z stratified at the midpoints (2i + 1) / n - 1."""
    i = np.arange(n, dtype=float)
    z = 1.0 - (2.0 * i + 1.0) / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = GOLDEN_ANGLE * i
    pts = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def generalized_spiral(n):
    """Rakhmanov-Saff-Zhou generalized spiral points."""
    if n == 1:
        return np.array([[0.0, 0.0, 1.0]])
    k = np.arange(1, n + 1, dtype=float)
    h = -1.0 + 2.0 * (k - 1.0) / (n - 1.0)
    theta = np.arccos(h)
    phi = np.zeros(n)
    for j in range(1, n - 1):
        phi[j] = (phi[j - 1] + 3.6 / math.sqrt(n) / math.sqrt(1.0 - h[j] ** 2)) % (2 * math.pi)
    pts = np.column_stack([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def _tangent(p):
    """A deterministic unit tangent vector at ``p``."""
    axes = np.eye(p.size)
    e = axes[int(np.argmin(np.abs(p)))]
    v = e - np.dot(e, p) * p
    return v / np.linalg.norm(v)


def cluster_pairs(base, eps):
    """Replace each base point by two points at chordal distance ``eps``."""
    out = []
    for p in base:
        v = _tangent(p)
        # chordal distance eps between cos(a) p +- sin(a) v needs sin(a) = eps / 2
        a = math.asin(min(1.0, eps / 2.0))
        out.append(math.cos(a) * p + math.sin(a) * v)
        out.append(math.cos(a) * p - math.sin(a) * v)
    pts = np.array(out)
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def torus_grid(n, d):
    m = round(n ** (1.0 / d))
    if m**d != n:
        raise SpecError(f"torus grid needs N to be a perfect {d}-th power, got {n}")
    axes = np.meshgrid(*([np.arange(m) / m] * d), indexing="ij")
    return np.column_stack([a.ravel() for a in axes])


def generate(spec: GeneratorSpec) -> WeightedPointSet:
    """Deterministically build the configuration described by ``spec``."""
    if spec.kind == "file":
        if spec.path is None:
            raise SpecError("file generator needs a path")
        return load_point_set(spec.path)
    if spec.n < 1:
        raise SpecError("N must be >= 1")
    rng = make_rng(spec.seed)
    sphere_kinds = {"uniform", "fibonacci", "spiral", "cluster-pairs", "antipodal"}
    torus_kinds = {"torus-grid", "torus-random"}
    if spec.space == "sphere" and spec.kind not in sphere_kinds:
        raise SpecError(f"generator {spec.kind!r} is not available on the sphere")
    if spec.space == "torus" and spec.kind not in torus_kinds:
        raise SpecError(f"generator {spec.kind!r} is not available on the torus")
    if spec.kind in ("fibonacci", "spiral") and spec.d != 2:
        raise SpecError(f"{spec.kind} points exist only on S^2")

    if spec.kind == "uniform":
        pts = uniform_sphere(spec.n, spec.d, rng)
    elif spec.kind == "fibonacci":
        pts = fibonacci_sphere(spec.n)
    elif spec.kind == "spiral":
        pts = generalized_spiral(spec.n)
    elif spec.kind in ("cluster-pairs", "antipodal"):
        if spec.n % 2:
            raise SpecError(f"{spec.kind} needs an even N")
        if spec.base_kind in ("cluster-pairs", "antipodal", "file"):
            raise SpecError(f"base kind {spec.base_kind!r} cannot be doubled")
        base_spec = GeneratorSpec(spec.base_kind, spec.n // 2, spec.space, spec.d, spec.seed)
        base = generate(base_spec).points
        if spec.kind == "cluster-pairs":
            pts = cluster_pairs(base, spec.eps)
        else:
            pts = np.vstack([base, -base])
    elif spec.kind == "torus-grid":
        pts = torus_grid(spec.n, spec.d)
    else:
        pts = rng.random((spec.n, spec.d))

    weights = rng.random(spec.n) if spec.weighted else None
    return WeightedPointSet(spec.space, spec.d, pts, weights)


def save_point_set(ps: WeightedPointSet, path):
    """Write ``ps`` to ``path`` (a filename or an open text stream)."""
    if hasattr(path, "write"):
        _write_points(ps, path)
        return
    with open(path, "w", encoding="utf-8") as fh:
        _write_points(ps, fh)


def _write_points(ps, fh):
    weighted = 0 if ps.unit_weights else 1
    fh.write(f"# space={ps.space} d={ps.d} weighted={weighted}\n")
    for p, a in zip(ps.points, ps.weights):
        row = [repr(float(v)) for v in p]
        if weighted:
            row.append(repr(float(a)))
        fh.write(" ".join(row) + "\n")


def _parse_header(line, path):
    fields = dict(item.split("=", 1) for item in line.lstrip("#").split() if "=" in item)
    try:
        space = fields["space"]
        d = int(fields["d"])
        weighted = int(fields.get("weighted", "0"))
    except (KeyError, ValueError):
        raise PointSetParseError("header must read '# space=sphere|torus d=<int> weighted=0|1'", 1, path)
    if space not in ("sphere", "torus") or weighted not in (0, 1) or d < 1:
        raise PointSetParseError("invalid header values", 1, path)
    return space, d, bool(weighted)


def load_point_set(path) -> WeightedPointSet:
    """Read a point-set file; sphere rows within 1e-9 of unit norm are renormalised."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    if not lines or not lines[0].startswith("#"):
        raise PointSetParseError("missing header line", 1, path)
    space, d, weighted = _parse_header(lines[0], path)
    ncoord = d + 1 if space == "sphere" else d
    pts, wts = [], []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != ncoord + int(weighted):
            raise PointSetParseError(
                f"expected {ncoord + int(weighted)} columns, found {len(parts)}", lineno, path
            )
        try:
            vals = [float(v) for v in parts]
        except ValueError:
            raise PointSetParseError(f"non-numeric entry in {line!r}", lineno, path)
        if not all(math.isfinite(v) for v in vals):
            raise PointSetParseError("non-finite coordinate", lineno, path)
        coords = np.array(vals[:ncoord])
        w = vals[ncoord] if weighted else 1.0
        if w < 0:
            raise PointSetParseError(f"negative weight {w}", lineno, path)
        if space == "sphere":
            dev = abs(np.linalg.norm(coords) - 1.0)
            if dev > 1e-9:
                raise PointSetParseError(f"vector norm deviates from 1 by {dev:.3g}", lineno, path)
            if dev >= 1e-12:
                logger.warning("%s:%d: renormalising vector (|norm - 1| = %.3g)", path, lineno, dev)
                coords = coords / np.linalg.norm(coords)
        pts.append(coords)
        wts.append(w)
    if not pts:
        raise PointSetParseError("file contains no points", None, path)
    return WeightedPointSet(space, d, np.array(pts), np.array(wts))
