import numpy as np
import pytest

import liechannel as L
from liechannel.liecore import is_null, projective_distance, subspace_distance, intersect
from liechannel.cellcomplex import edge_key
from liechannel.legendre import face_spheres_of

from geo_helpers import revolution_net


@pytest.fixture(scope="module")
def torus():
    return L.make_dupin_torus(2.0, 1.0, 12, 10)


class TestContactElements:
    def test_from_point_normal_origin(self):
        f = L.contact_from_point_normal((0, 0, 0), (0, 0, 1))
        assert f.contains(L.E0)
        assert f.contains(np.array([0, 0, 1.0, 0, 0, 1.0]))

    def test_requires_unit_normal(self):
        with pytest.raises(L.LieGeometryError):
            L.contact_from_point_normal((0, 0, 0), (0, 0, 2))

    def test_pencil_members_are_null(self):
        f = L.contact_from_point_normal((1, 2, 0.5), (0.6, 0, 0.8))
        rng = np.random.default_rng(0)
        for _ in range(20):
            a, b = rng.normal(size=2)
            v = a * f.basis[0] + b * f.basis[1]
            assert is_null(v)

    def test_pencil_sweep_centers_on_normal_line(self):
        x = np.array([1.0, 0.0, 2.0])
        n = np.array([0.0, 0.6, 0.8])
        point = L.lift_point(x)
        plane = L.lift_plane(n, float(n @ x))
        for mu in (-2.0, -0.5, 0.7, 3.0):
            d = L.unlift(point + mu * plane)
            assert d.kind == "sphere"
            assert np.allclose(d.center, x + mu * n, atol=1e-12)
            assert d.radius == pytest.approx(mu)

    def test_point_sphere_and_plane_lift(self):
        x, n = np.array([0.5, -1, 2.0]), np.array([1.0, 0, 0])
        f = L.contact_from_point_normal(x, n)
        p = f.point_sphere()
        assert L.unlift(p).kind == "point"
        assert np.allclose(L.unlift(p).center, x)
        pl = f.plane_lift()
        d = L.unlift(pl)
        assert d.kind == "plane"
        assert abs(float(d.normal @ n)) == pytest.approx(1.0)


class TestCurvatureSphere:
    def test_unit_sphere_common(self):
        # outward-normal elements of the unit sphere: common sphere (0, -1)
        f1 = L.contact_from_point_normal((1, 0, 0), (1, 0, 0))
        f2 = L.contact_from_point_normal((0, 1, 0), (0, 1, 0))
        s = L.curvature_sphere(f1, f2)
        assert projective_distance(s, L.lift_sphere((0, 0, 0), -1.0)) < 1e-12

    def test_identical_elements_rejected(self):
        f = L.contact_from_point_normal((1, 0, 0), (1, 0, 0))
        with pytest.raises(L.IdenticalContactElementsError):
            L.curvature_sphere(f, f)

    def test_same_point_different_normals_gives_point(self):
        x = (0.3, 0.4, 1.0)
        f1 = L.contact_from_point_normal(x, (1, 0, 0))
        f2 = L.contact_from_point_normal(x, (0, 1, 0))
        s = L.curvature_sphere(f1, f2)
        assert projective_distance(s, L.lift_point(x)) < 1e-12

    def test_generic_elements_not_in_contact(self):
        f1 = L.contact_from_point_normal((0, 0, 0), (1, 0, 0))
        f2 = L.contact_from_point_normal((1, 1, 1), (0, 0.6, 0.8))
        with pytest.raises(L.NotInContactError):
            L.curvature_sphere(f1, f2)


class TestLegendreNets:
    def test_torus_is_legendre(self, torus):
        assert L.is_legendre(torus).ok

    def test_perturbed_normals_flagged(self, torus):
        rng = np.random.default_rng(5)
        pts = torus.vertex_points()
        normals = []
        for v in range(torus.complex.n_vertices):
            pl = torus.element(v).plane_lift()
            normals.append((pl / pl[5])[:3])
        normals = np.asarray(normals)
        normals += rng.normal(scale=0.05, size=normals.shape)
        normals /= np.linalg.norm(normals, axis=1)[:, None]
        bad = L.net_from_points_normals(torus.complex, pts, normals)
        assert not L.is_legendre(bad).ok

    def test_net_from_edge_spheres_roundtrip(self, torus):
        spheres = {}
        for i, j, _lab in torus.complex.edges:
            spheres[edge_key(i, j)] = torus.edge_sphere(i, j)
        rebuilt = L.net_from_edge_spheres(torus.complex, spheres)
        for v in range(torus.complex.n_vertices):
            assert subspace_distance(rebuilt.element(v).space,
                                     torus.element(v).space) < 1e-9

    def test_net_from_constant_sphere_fails(self):
        c = L.make_grid(3, 3)
        s = L.lift_sphere((0, 0, 0), 1.0)
        spheres = {edge_key(i, j): s for i, j, _lab in c.edges}
        with pytest.raises(L.LieGeometryError, match="vertex-star"):
            L.net_from_edge_spheres(c, spheres)

    def test_net_from_incompatible_spheres_fails(self):
        c = L.make_grid(3, 3)
        rng = np.random.default_rng(7)
        spheres = {edge_key(i, j): L.lift_sphere(rng.normal(size=3), rng.uniform(0.5, 1))
                   for i, j, _lab in c.edges}
        with pytest.raises(L.LieGeometryError, match="vertex-star"):
            L.net_from_edge_spheres(c, spheres)


class TestFaceCyclides:
    def test_sphere_pairs_orthogonal(self, torus):
        for face in torus.complex.faces[:20]:
            plus, minus = face_spheres_of(torus, face)
            for sp in plus:
                for sm in minus:
                    val = abs(L.inner(sp, sm))
                    val /= np.linalg.norm(sp) * np.linalg.norm(sm)
                    assert val < 1e-12

    def test_family_members_are_face_cyclides(self, torus):
        face = torus.complex.faces[5]
        fam = L.face_cyclide_family(torus, face)
        for t in np.linspace(-1.5, 1.5, 9):
            cy = fam(t)
            cy.validate()
            assert L.is_face_cyclide(torus, face, cy)

    def test_family_contains_ambient_cyclide(self, torus):
        cert = L.verify_channel(torus, "+")
        assert cert.ok
        face = torus.complex.faces[0]
        fam = L.face_cyclide_family(torus, face)
        t = fam.parameter_of(cert.cyclides[0])
        assert subspace_distance(fam(t).dminus, cert.cyclides[0].dminus) < 1e-9

    def test_family_dplus_intersections_recover_u(self, torus):
        fam = L.face_cyclide_family(torus, torus.complex.faces[3])
        for t1, t2 in [(0.0, 0.6), (-1.2, 0.4), (0.2, 1.4)]:
            meet = intersect(fam(t1).dplus, fam(t2).dplus)
            assert meet.dim == 2
            assert subspace_distance(meet, fam.u) < 1e-9

    def test_family_swap_symmetry(self, torus):
        face = torus.complex.faces[4]
        swapped = L.swapped_labels(torus.complex)
        net2 = L.LegendreNet(complex=swapped, elements=torus.elements)
        face2 = swapped.faces[4]
        fam = L.face_cyclide_family(torus, face)
        fam2 = L.face_cyclide_family(net2, face2)
        # roles of the sphere pairs exchange
        assert subspace_distance(fam2.u, fam.v) < 1e-9
        assert subspace_distance(fam2.v, fam.u) < 1e-9
        t = 0.37
        cy2 = fam2(t)
        assert all(cy2.dplus.contains(s) for s in fam.v.basis)
        assert all(cy2.dminus.contains(s) for s in fam.u.basis)

    def test_cyclide_of_other_face_rejected(self):
        net = revolution_net(seed=2, n_profile=6, m=8)
        cert = L.verify_channel(net, "+")
        assert cert.ok
        faces = net.complex.faces
        # a face from a different ribbon has different curvature spheres
        assert L.is_face_cyclide(net, faces[0], cert.cyclides[0])
        other = cert.ribbons[2][0]
        assert not L.is_face_cyclide(net, faces[other], cert.cyclides[0])

    def test_degenerate_face_rejected(self):
        # all four spheres concurrent through one vertex star: build a tiny
        # net whose '+' spheres coincide, making U one-dimensional
        f1 = L.contact_from_point_normal((1, 0, 0), (1, 0, 0))
        f2 = L.contact_from_point_normal((0, 1, 0), (0, 1, 0))
        f3 = L.contact_from_point_normal((-1, 0, 0), (-1, 0, 0))
        f4 = L.contact_from_point_normal((0, -1, 0), (0, -1, 0))
        c = L.make_grid(2, 2)
        net = L.LegendreNet(complex=c, elements=(f1, f2, f3, f4))
        assert L.is_legendre(net).ok
        with pytest.raises(L.DegenerateFaceError):
            L.face_cyclide_family(net, c.faces[0])
