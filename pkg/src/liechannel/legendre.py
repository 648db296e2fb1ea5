"""Discrete Legendre maps and face-cyclide families.

A contact element is a totally isotropic 2-plane of R^{4,2}; a discrete
Legendre map assigns one to every vertex of a labelled quad complex so that
adjacent elements meet in a line, the curvature sphere of the edge.

A Dupin cyclide is an orthogonal splitting of R^{4,2} into two
(2,1)-planes; the null cones of the two components are its two curvature
sphere families. A face-cyclide of a face carries the face's two '+'
curvature spheres in one component and the two '-' spheres in the other.
For a nondegenerate face these constraints leave a 1-parameter family:
with U = span(s+ pair), V = span(s- pair), the complement W = (U + V)^perp
is positive definite of dimension 2, and the family is

    t  ->  ( U + <cos t w1 + sin t w2>,  V + <-sin t w1 + cos t w2> )

for an orthonormal basis (w1, w2) of W. The parameter is periodic with
period pi; every member is a valid Dupin cyclide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .config import TOL
from . import liecore as lc
from .liecore import (
    LieVec, LieGeometryError, Subspace, inner, lift_plane, lift_point,
    canonical_sign, orthocomplement, signature, span,
)
from .cellcomplex import QuadComplex, edge_key, face_edge_labels, PLUS


class NotInContactError(LieGeometryError):
    pass


class IdenticalContactElementsError(LieGeometryError):
    pass


class DegenerateFaceError(LieGeometryError):
    pass


@dataclass(frozen=True)
class ContactElement:
    """Totally isotropic 2-plane, stored with an aux-orthonormal basis."""

    space: Subspace

    def __post_init__(self):
        if self.space.dim != 2:
            raise LieGeometryError("contact element must be 2-dimensional")
        g = self.space.restricted_gram()
        if float(np.max(np.abs(g))) > TOL.membership:
            raise LieGeometryError("contact element plane is not totally isotropic")

    @property
    def basis(self) -> np.ndarray:
        return self.space.basis

    def contains(self, v: LieVec, tol: Optional[float] = None) -> bool:
        return self.space.contains(v, tol)

    def point_sphere(self) -> LieVec:
        """The unique direction orthogonal to the point sphere complex."""
        b1, b2 = self.space.basis
        # (v, p) = -v[5]; combination with vanishing u6 coordinate
        v = b2[5] * b1 - b1[5] * b2
        n = np.linalg.norm(v)
        if n <= TOL.membership:
            raise LieGeometryError("contact element orthogonal to the point sphere complex")
        return canonical_sign(v / n)

    def plane_lift(self) -> LieVec:
        """The unique direction with vanishing e0 coordinate (tangent plane lift)."""
        b1, b2 = self.space.basis
        v = b2[3] * b1 - b1[3] * b2
        n = np.linalg.norm(v)
        if n <= TOL.membership:
            raise LieGeometryError("contact element has no plane representative")
        return canonical_sign(v / n)


def contact_from_point_normal(x: Sequence[float], n: Sequence[float]) -> ContactElement:
    """Contact element of a point with unit normal: <point lift, tangent plane lift>."""
    nv = np.asarray(n, dtype=float)
    if abs(np.linalg.norm(nv) - 1.0) > 1e-9:
        raise LieGeometryError("normal must have unit length")
    xv = np.asarray(x, dtype=float)
    return ContactElement(space=span([lift_point(xv), lift_plane(nv, float(nv @ xv))]))


def contact_from_vectors(a: LieVec, b: LieVec) -> ContactElement:
    return ContactElement(space=span([a, b]))


def curvature_sphere(f_i: ContactElement, f_j: ContactElement) -> LieVec:
    """Common null direction of two contact elements (projective representative)."""
    meet = lc.intersect(f_i.space, f_j.space)
    if meet.dim >= 2:
        raise IdenticalContactElementsError("identical contact elements")
    if meet.dim == 0:
        raise NotInContactError("not in contact: contact elements do not intersect")
    return canonical_sign(meet.basis[0].copy())


@dataclass
class LegendreNet:
    """Contact element per vertex of a quad complex; edge spheres cached."""

    complex: QuadComplex
    elements: Tuple[ContactElement, ...]
    _edge_spheres: Dict[Tuple[int, int], LieVec] = field(default_factory=dict, repr=False)

    def element(self, v: int) -> ContactElement:
        return self.elements[v]

    def edge_sphere(self, i: int, j: int) -> LieVec:
        k = edge_key(i, j)
        s = self._edge_spheres.get(k)
        if s is None:
            s = curvature_sphere(self.elements[k[0]], self.elements[k[1]])
            self._edge_spheres[k] = s
        return s

    def vertex_point(self, v: int) -> np.ndarray:
        """Euclidean position of the vertex point sphere."""
        d = lc.unlift(self.elements[v].point_sphere())
        if d.kind != "point":
            raise LieGeometryError(f"vertex {v} has no finite Euclidean position")
        return d.center

    def vertex_points(self) -> np.ndarray:
        return np.array([self.vertex_point(v) for v in range(self.complex.n_vertices)])


@dataclass
class LegendreDiagnostics:
    ok: bool
    failed_edges: List[Tuple[int, int, str]]


def is_legendre(net: LegendreNet) -> LegendreDiagnostics:
    """Check every edge for a shared curvature sphere; caches the spheres."""
    failed = []
    for i, j, _lab in net.complex.edges:
        try:
            net.edge_sphere(i, j)
        except LieGeometryError as exc:
            failed.append((i, j, str(exc)))
    return LegendreDiagnostics(ok=not failed, failed_edges=failed)


def net_from_edge_spheres(c: QuadComplex, spheres: Dict[Tuple[int, int], LieVec]) -> LegendreNet:
    """Reconstruct a Legendre net from null vectors on edges.

    The spheres of each vertex star must span a contact element.
    """
    for k, s in spheres.items():
        if not lc.is_null(s):
            raise LieGeometryError(f"edge sphere on {k} is not null")
    elements: List[ContactElement] = []
    for v in range(c.n_vertices):
        star = [spheres[e] for e in c.vertex_edges(v)]
        if len(star) < 2:
            raise LieGeometryError(f"vertex-star does not span a contact element (vertex {v})")
        sp = span(star)
        if sp.dim != 2:
            raise LieGeometryError(f"vertex-star does not span a contact element (vertex {v})")
        try:
            elements.append(ContactElement(space=sp))
        except LieGeometryError as exc:
            raise LieGeometryError(
                f"vertex-star does not span a contact element (vertex {v}): {exc}"
            ) from exc
    net = LegendreNet(complex=c, elements=tuple(elements))
    for (i, j), s in spheres.items():
        got = net.edge_sphere(i, j)
        if lc.projective_distance(got, s) > math.sqrt(TOL.membership):
            raise LieGeometryError(f"edge sphere on ({i},{j}) not reproduced by the net")
    return net


def net_from_points_normals(c: QuadComplex, points: np.ndarray, normals: np.ndarray) -> LegendreNet:
    elements = tuple(contact_from_point_normal(points[v], normals[v]) for v in range(c.n_vertices))
    return LegendreNet(complex=c, elements=elements)


# ---------------------------------------------------------------------------
# Dupin cyclides and face-cyclide families


@dataclass(frozen=True)
class DupinCyclide:
    """Orthogonal (2,1)+(2,1) splitting of R^{4,2}."""

    dplus: Subspace
    dminus: Subspace

    def validate(self, tol: Optional[float] = None) -> None:
        t = TOL.membership if tol is None else tol
        if self.dplus.dim != 3 or self.dminus.dim != 3:
            raise LieGeometryError("Dupin cyclide components must be 3-dimensional")
        for s in (self.dplus, self.dminus):
            if signature(s).triple != (2, 1, 0):
                raise LieGeometryError("Dupin cyclide components must have signature (2,1)")
        g = lc.inner_matrix(self.dplus.basis, self.dminus.basis)
        if float(np.max(np.abs(g))) > t:
            raise LieGeometryError("Dupin cyclide components are not orthogonal")

    def swapped(self) -> "DupinCyclide":
        return DupinCyclide(dplus=self.dminus, dminus=self.dplus)


def face_spheres_of(net: LegendreNet, face: Sequence[int]) -> Tuple[List[LieVec], List[LieVec]]:
    """([s+ on (j,k), s+ on (l,i)], [s- on (i,j), s- on (k,l)]) of a face."""
    plus, minus = [], []
    for a, b, lab in face_edge_labels(face):
        s = net.edge_sphere(a, b)
        (plus if lab == PLUS else minus).append(s)
    return plus, minus


@dataclass(frozen=True)
class FaceCyclideFamily:
    """All Dupin cyclides sharing the four curvature spheres of one face.

    Calling the family at a parameter value returns one member; the
    parameter is periodic with period pi.
    """

    u: Subspace   # span of the two '+' curvature spheres, signature (1,1)
    v: Subspace   # span of the two '-' curvature spheres, signature (1,1)
    w1: LieVec    # spacelike unit
    w2: LieVec    # spacelike unit, orthogonal to w1

    def __call__(self, t: float) -> DupinCyclide:
        a = math.cos(t) * self.w1 + math.sin(t) * self.w2
        b = -math.sin(t) * self.w1 + math.cos(t) * self.w2
        return DupinCyclide(
            dplus=span(list(self.u.basis) + [a]),
            dminus=span(list(self.v.basis) + [b]),
        )

    def parameter_of(self, cy: DupinCyclide) -> float:
        """Parameter whose member matches the given cyclide (mod pi)."""
        best = None
        for vec in cy.dplus.basis:
            # w1, w2 are spacelike unit and orthogonal, so the Gram projection
            # onto their plane has coefficients (vec, w1), (vec, w2)
            c1, c2 = inner(vec, self.w1), inner(vec, self.w2)
            amp = math.hypot(c1, c2)
            if best is None or amp > best[0]:
                best = (amp, math.atan2(c2, c1))
        if best is None or best[0] <= TOL.membership:
            raise LieGeometryError("cyclide has no component in the family plane")
        return best[1] % math.pi


def face_cyclide_family(net: LegendreNet, face: Sequence[int]) -> FaceCyclideFamily:
    plus, minus = face_spheres_of(net, face)
    u = span(plus)
    v = span(minus)
    if u.dim != 2 or signature(u).triple != (1, 1, 0):
        raise DegenerateFaceError("degenerate face: '+' spheres do not span a (1,1)-plane")
    if v.dim != 2 or signature(v).triple != (1, 1, 0):
        raise DegenerateFaceError("degenerate face: '-' spheres do not span a (1,1)-plane")
    w = orthocomplement(span(list(u.basis) + list(v.basis)))
    if w.dim != 2 or signature(w).triple != (2, 0, 0):
        raise DegenerateFaceError("degenerate face: complement of the sphere spans is not definite")
    g = w.restricted_gram()
    eig, vecs = np.linalg.eigh(g)
    w1 = w.basis.T @ vecs[:, 0] / math.sqrt(eig[0])
    w2 = w.basis.T @ vecs[:, 1] / math.sqrt(eig[1])
    return FaceCyclideFamily(u=u, v=v, w1=w1, w2=w2)


def is_face_cyclide(net: LegendreNet, face: Sequence[int], cy: DupinCyclide,
                    tol: Optional[float] = None) -> bool:
    """True iff the face's s+ spheres lie in dplus and s- spheres in dminus."""
    t = TOL.membership if tol is None else tol
    plus, minus = face_spheres_of(net, face)
    return all(cy.dplus.contains(s, t) for s in plus) and \
        all(cy.dminus.contains(s, t) for s in minus)
