"""Domains, uniform cell-centered meshes, geometric constants and quadrature.

Boxes are meshed with a uniform cell-centered grid; balls exist only as
analytic domains (geometric constants and volume) and cannot be meshed.
The origin is always the centroid of the domain.
"""

from dataclasses import dataclass
from math import pi, prod, sqrt

import numpy as np

from .errors import BallMeshUnsupported, NonFiniteSample, ResolutionTooCoarse

BOX = "box"
BALL = "ball"


@dataclass(frozen=True)
class DomainSpec:
    """A convex domain centered at the origin: an axis-aligned box or a ball."""

    kind: str
    dimension: int
    half_extents: tuple[float, ...] | None = None
    radius: float | None = None

    def __post_init__(self):
        if self.kind not in (BOX, BALL):
            raise ValueError(f"unknown domain kind {self.kind!r}")
        if self.dimension not in (2, 3):
            raise ValueError("dimension must be 2 or 3")
        if self.kind == BOX:
            if self.half_extents is None or len(self.half_extents) != self.dimension:
                raise ValueError("box needs one half-extent per axis")
            if any(L <= 0 for L in self.half_extents):
                raise ValueError("half-extents must be positive")
        else:
            if self.dimension != 3:
                raise ValueError("ball domains are supported in dimension 3 only")
            if self.radius is None or self.radius <= 0:
                raise ValueError("ball needs a positive radius")

    @property
    def volume(self) -> float:
        if self.kind == BOX:
            return prod(2.0 * L for L in self.half_extents)
        return 4.0 / 3.0 * pi * self.radius**3


@dataclass(frozen=True)
class GeometryConstants:
    """rho = min over the boundary of x.nu, d = max over the closure of |x|."""

    rho: float
    d: float


@dataclass(frozen=True)
class Mesh:
    """Uniform cell-centered grid over a box domain.

    Boundary faces are enumerated axis by axis, low side then high side,
    cells in C order; this fixed ordering keeps quadrature deterministic.
    """

    spec: DomainSpec
    cells_per_axis: tuple[int, ...]
    h: tuple[float, ...]
    cell_centers: np.ndarray  # (n_cells, N)
    face_cells: np.ndarray  # (n_faces,) flat cell index of the adjacent cell
    face_normals: np.ndarray  # (n_faces, N) outward unit normals
    face_areas: np.ndarray  # (n_faces,)

    @property
    def n_cells(self) -> int:
        return int(np.prod(self.cells_per_axis))

    @property
    def shape(self) -> tuple[int, ...]:
        return self.cells_per_axis

    @property
    def cell_volume(self) -> float:
        return prod(self.h)

    def to_grid(self, samples: np.ndarray) -> np.ndarray:
        return np.asarray(samples).reshape(self.shape)

    def boundary_values(self, samples: np.ndarray) -> np.ndarray:
        """Per-face values taken from the adjacent cell (face reconstruction)."""
        return np.asarray(samples).ravel()[self.face_cells]


def build_mesh(spec: DomainSpec, cells_per_axis) -> Mesh:
    """Build the uniform cell-centered mesh of a box domain."""
    if spec.kind != BOX:
        raise BallMeshUnsupported("only box domains can be meshed")
    if isinstance(cells_per_axis, int):
        cells_per_axis = (cells_per_axis,) * spec.dimension
    cells_per_axis = tuple(int(n) for n in cells_per_axis)
    if len(cells_per_axis) != spec.dimension:
        raise ValueError("need one cell count per axis")
    if any(n < 4 for n in cells_per_axis):
        raise ResolutionTooCoarse("need at least 4 cells per axis")

    N = spec.dimension
    h = tuple(2.0 * L / n for L, n in zip(spec.half_extents, cells_per_axis))
    axes = [
        np.linspace(-L + ha / 2.0, L - ha / 2.0, n)
        for L, ha, n in zip(spec.half_extents, h, cells_per_axis)
    ]
    grids = np.meshgrid(*axes, indexing="ij")
    centers = np.stack([g.ravel() for g in grids], axis=-1)

    flat_index = np.arange(prod(cells_per_axis)).reshape(cells_per_axis)
    face_cells, face_normals, face_areas = [], [], []
    cell_vol = prod(h)
    for axis in range(N):
        area = cell_vol / h[axis]
        for side, sl in ((-1.0, 0), (1.0, -1)):
            cells = np.take(flat_index, sl, axis=axis).ravel()
            normal = np.zeros(N)
            normal[axis] = side
            face_cells.append(cells)
            face_normals.append(np.tile(normal, (cells.size, 1)))
            face_areas.append(np.full(cells.size, area))

    return Mesh(
        spec=spec,
        cells_per_axis=cells_per_axis,
        h=h,
        cell_centers=centers,
        face_cells=np.concatenate(face_cells),
        face_normals=np.concatenate(face_normals),
        face_areas=np.concatenate(face_areas),
    )


def geometry_constants(spec: DomainSpec) -> GeometryConstants:
    """Closed-form rho and d for boxes and balls centered at the origin."""
    if spec.kind == BALL:
        return GeometryConstants(rho=spec.radius, d=spec.radius)
    rho = min(spec.half_extents)
    d = sqrt(sum(L * L for L in spec.half_extents))
    return GeometryConstants(rho=rho, d=d)


def interior_integral(mesh: Mesh, samples) -> float:
    """Midpoint-rule integral over the domain; exact for per-cell constants."""
    samples = np.asarray(samples, dtype=float).ravel()
    if samples.size != mesh.n_cells:
        raise ValueError("one sample per cell required")
    if not np.all(np.isfinite(samples)):
        raise NonFiniteSample("interior integrand has non-finite samples")
    return float(np.sum(samples) * mesh.cell_volume)


def boundary_integral(mesh: Mesh, boundary_samples) -> float:
    """Face-midpoint integral over the boundary of the box."""
    samples = np.asarray(boundary_samples, dtype=float).ravel()
    if samples.size != mesh.face_cells.size:
        raise ValueError("one sample per boundary face required")
    if not np.all(np.isfinite(samples)):
        raise NonFiniteSample("boundary integrand has non-finite samples")
    return float(np.sum(samples * mesh.face_areas))
