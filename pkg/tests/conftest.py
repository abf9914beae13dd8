import numpy as np
import pytest

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

from rdblowup.geometry import DomainSpec, build_mesh
from rdblowup.nonlinearity import Nonlinearity


def zero_reaction() -> Nonlinearity:
    """Pure heat flow: f1 = f2 = 0."""
    return Nonlinearity(family="custom", params={},
                        f1=lambda u, v: 0.0 * u,
                        f2=lambda u, v: 0.0 * v, F=None)


def linear_decay() -> Nonlinearity:
    """f1 = -u, f2 = -v (no blow-up)."""
    return Nonlinearity(family="custom", params={},
                        f1=lambda u, v: -u,
                        f2=lambda u, v: -v, F=None)


@pytest.fixture
def box2d():
    return DomainSpec("box", 2, half_extents=(1.0, 1.0))


@pytest.fixture
def box3d():
    return DomainSpec("box", 3, half_extents=(1.0, 1.0, 1.0))


@pytest.fixture
def mesh2d(box2d):
    return build_mesh(box2d, 16)


@pytest.fixture
def mesh3d(box3d):
    return build_mesh(box3d, 8)


def brute_force_geometry(spec, samples_per_axis=60):
    """Independent rho/d oracle for boxes: minimize x.nu over sampled
    boundary points, maximize |x| over the same samples (the max of |x|
    over the closure of a box is attained on the boundary)."""
    assert spec.kind == "box"
    L = np.asarray(spec.half_extents)
    N = spec.dimension
    axes = [np.linspace(-Li, Li, samples_per_axis) for Li in L]
    rho = np.inf
    d2 = 0.0
    for axis in range(N):
        for side in (-1.0, 1.0):
            coords = list(axes)
            coords[axis] = np.array([side * L[axis]])
            grid = np.meshgrid(*coords, indexing="ij")
            pts = np.stack([g.ravel() for g in grid], axis=-1)
            nu = np.zeros(N)
            nu[axis] = side
            rho = min(rho, float(np.min(pts @ nu)))
            d2 = max(d2, float(np.max(np.sum(pts**2, axis=1))))
    return rho, float(np.sqrt(d2))
