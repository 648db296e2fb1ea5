#!/usr/bin/env python3
"""Blending through two parallel discrete lines.

Smoothly, the channel surfaces with two parallel lines as curvature lines
are just the cylinders through them. Discretely there is more freedom:
this script sweeps the initial face-cyclide parameter and reports, for
each resulting surface, whether it is a Dupin cyclide (the cylinder case)
and how its generating circles tilt.
"""

import math

import numpy as np

import liechannel as L
from liechannel.liecore import span, orthocomplement


def strip_family(c1, c2, f0):
    from liechannel.builder import _extend_element
    from liechannel.legendre import curvature_sphere, FaceCyclideFamily
    from liechannel.liecore import oriented_representative
    x1 = [L.lift_point(p) for p in c1.points]
    x2 = [L.lift_point(p) for p in c2.points]
    f11, s1 = _extend_element(f0, x1[1])
    f20, _ = _extend_element(f0, x2[0])
    f21, s2 = _extend_element(f20, x2[1])
    u = span([oriented_representative(curvature_sphere(f0, f20)),
              oriented_representative(curvature_sphere(f11, f21))])
    v = span([s1, s2])
    w = orthocomplement(span(list(u.basis) + list(v.basis)))
    eig, vecs = np.linalg.eigh(w.restricted_gram())
    return FaceCyclideFamily(u=u, v=v,
                             w1=w.basis.T @ vecs[:, 0] / math.sqrt(eig[0]),
                             w2=w.basis.T @ vecs[:, 1] / math.sqrt(eig[1]))


if __name__ == "__main__":
    h, n, dist = 0.6, 6, 2.0
    c1 = L.DiscreteCurve3D(points=np.array([[0.0, 0, k * h] for k in range(n)]))
    c2 = L.DiscreteCurve3D(points=np.array([[dist, 0, k * h] for k in range(n)]))
    f0 = L.contact_from_point_normal([0, 0, 0], [-1.0, 0, 0])

    # cylinder member of the initial face family
    mid = np.array([dist / 2, 0, 0])
    planes = [L.lift_plane(nu, float(nu @ (mid + dist / 2 * nu)))
              for nu in (np.array([math.cos(t), math.sin(t), 0.0])
                         for t in (0.0, 1.2, 2.3))]
    dminus = span(planes)
    cyl = L.DupinCyclide(dplus=orthocomplement(dminus), dminus=dminus)
    fam = strip_family(c1, c2, f0)
    t_cyl = fam.parameter_of(cyl)
    print(f"cylinder member of the initial family at t = {t_cyl:.4f}\n")

    for dt in (0.0, 0.3, 0.8, 1.3):
        res = L.blend_channel(c1, c2, f0, t0=t_cyl + dt, samples_per_circle=10)
        ok, _, _ = L.is_dupin_cyclide(res.net)
        kind = L.vessiot_classify(res.certificate).kind
        tilts = []
        for circle in res.certificate.circles:
            _, _, normal = L.circle_euclidean(circle.dplus)
            tilts.append(math.degrees(math.acos(min(1.0, abs(normal[2])))))
        print(f"t0 = t_cyl + {dt:<4}: dupin={str(ok):5s} class={kind:10s} "
              f"circle tilt range = {min(tilts):5.1f}..{max(tilts):5.1f} deg")
