import math

import numpy as np
import pytest

from conftest import brute_force_geometry
from rdblowup.errors import BallMeshUnsupported, NonFiniteSample, ResolutionTooCoarse
from rdblowup.geometry import (
    DomainSpec,
    boundary_integral,
    build_mesh,
    geometry_constants,
    interior_integral,
)


class TestDomainSpec:
    def test_rejects_bad_dimension(self):
        with pytest.raises(ValueError):
            DomainSpec("box", 4, half_extents=(1, 1, 1, 1))

    def test_rejects_nonpositive_extent(self):
        with pytest.raises(ValueError):
            DomainSpec("box", 2, half_extents=(1.0, 0.0))

    def test_ball_requires_3d(self):
        with pytest.raises(ValueError):
            DomainSpec("ball", 2, radius=1.0)

    def test_volumes(self):
        assert DomainSpec("box", 3, half_extents=(1, 1, 1)).volume == 8.0
        ball = DomainSpec("ball", 3, radius=2.0)
        assert ball.volume == pytest.approx(4.0 / 3.0 * math.pi * 8.0)


class TestBuildMesh:
    def test_counts_2d(self, box2d):
        mesh = build_mesh(box2d, 4)
        assert mesh.n_cells == 16
        assert mesh.face_cells.size == 16
        assert mesh.h == (0.5, 0.5)

    def test_counts_3d(self, box3d):
        mesh = build_mesh(box3d, 4)
        assert mesh.n_cells == 64
        assert mesh.face_cells.size == 96

    def test_ball_unsupported(self):
        with pytest.raises(BallMeshUnsupported):
            build_mesh(DomainSpec("ball", 3, radius=1.0), 8)

    def test_too_coarse(self, box2d):
        with pytest.raises(ResolutionTooCoarse):
            build_mesh(box2d, 3)

    def test_normals_unit_and_outward(self, box3d):
        mesh = build_mesh(box3d, 4)
        norms = np.linalg.norm(mesh.face_normals, axis=1)
        assert np.max(np.abs(norms - 1.0)) < 1e-12
        # outward: x.nu > 0 at every adjacent boundary cell center
        x_nu = np.sum(mesh.cell_centers[mesh.face_cells] * mesh.face_normals, axis=1)
        assert np.all(x_nu > 0)

    def test_cell_volumes_sum_to_domain_volume(self, box3d):
        mesh = build_mesh(box3d, 5)
        assert mesh.n_cells * mesh.cell_volume == pytest.approx(8.0, abs=1e-14)


class TestGeometryConstants:
    def test_unit_ball(self):
        geo = geometry_constants(DomainSpec("ball", 3, radius=1.0))
        assert geo.rho == 1.0 and geo.d == 1.0

    def test_unit_cube(self, box3d):
        geo = geometry_constants(box3d)
        assert geo.rho == 1.0
        assert geo.d == pytest.approx(math.sqrt(3.0), abs=1e-15)

    def test_slab_box(self):
        spec = DomainSpec("box", 3, half_extents=(2.0, 1.0, 1.0))
        geo = geometry_constants(spec)
        assert geo.rho == 1.0
        assert geo.d == pytest.approx(math.sqrt(6.0), abs=1e-15)

    def test_matches_brute_force_sampling(self):
        rng = np.random.default_rng(42)
        for _ in range(10):
            L = tuple(rng.uniform(0.3, 3.0, size=3))
            spec = DomainSpec("box", 3, half_extents=L)
            geo = geometry_constants(spec)
            rho_bf, d_bf = brute_force_geometry(spec)
            assert abs(geo.rho - rho_bf) < 1e-6
            assert abs(geo.d - d_bf) < 1e-6


class TestQuadrature:
    def test_constant_interior_2d(self, mesh2d):
        assert interior_integral(mesh2d, np.ones(mesh2d.n_cells)) == pytest.approx(4.0)

    def test_constant_interior_3d(self, mesh3d):
        assert interior_integral(mesh3d, np.ones(mesh3d.n_cells)) == pytest.approx(8.0)

    def test_constant_boundary_2d(self, mesh2d):
        ones = np.ones(mesh2d.face_cells.size)
        assert boundary_integral(mesh2d, ones) == pytest.approx(8.0)

    def test_constant_boundary_3d(self, mesh3d):
        ones = np.ones(mesh3d.face_cells.size)
        assert boundary_integral(mesh3d, ones) == pytest.approx(24.0)

    def test_nonfinite_rejected(self, mesh2d):
        bad = np.ones(mesh2d.n_cells)
        bad[3] = np.nan
        with pytest.raises(NonFiniteSample):
            interior_integral(mesh2d, bad)

    def test_interior_order_two(self, box2d):
        # int x1^2 over [-1,1]^2 = 4/3; Richardson slope from three meshes
        errs = []
        for n in (8, 16, 32):
            mesh = build_mesh(box2d, n)
            val = interior_integral(mesh, mesh.cell_centers[:, 0] ** 2)
            errs.append(abs(val - 4.0 / 3.0))
        orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
        assert np.all(orders > 1.9)

    def test_boundary_order_two(self, box2d):
        # int x1^2 over the perimeter of [-1,1]^2 = 2*2 + 2*(2/3) = 16/3
        errs = []
        for n in (8, 16, 32):
            mesh = build_mesh(box2d, n)
            # face midpoint coordinates: cell center pushed to the face
            x_face = mesh.cell_centers[mesh.face_cells].copy()
            push = mesh.face_normals * (np.asarray(mesh.h) / 2.0)
            x_face += push
            val = boundary_integral(mesh, x_face[:, 0] ** 2)
            errs.append(abs(val - 16.0 / 3.0))
        orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
        assert np.all(orders > 1.9)

    def test_linearity(self, mesh2d):
        rng = np.random.default_rng(0)
        f = rng.normal(size=mesh2d.n_cells)
        g = rng.normal(size=mesh2d.n_cells)
        a, b = 2.5, -1.25
        lhs = interior_integral(mesh2d, a * f + b * g)
        rhs = a * interior_integral(mesh2d, f) + b * interior_integral(mesh2d, g)
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_determinism(self, mesh3d):
        rng = np.random.default_rng(7)
        f = rng.normal(size=mesh3d.n_cells)
        assert interior_integral(mesh3d, f) == interior_integral(mesh3d, f.copy())
