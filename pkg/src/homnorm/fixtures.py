"""Curated complexes exhibiting the phenomena the experiment harness probes.

* triangle_circle: the hollow triangle, H_1 = Z; a totally unimodular
  graph, so no coefficient ring ever beats the integers on it.
* torus7: the 7-vertex cyclic triangulation of the torus (b_1 = 2).
* rp2_6: the 6-vertex projective plane (H_1 = Z/2, trivial integral H_2,
  but a nonzero mod-2 fundamental class that reduces from nothing).
* klein8: an 8-vertex Klein bottle (H_1 = Z + Z/2); torsion with a free
  part, the home of the kernel-witness lemma.
* mobius_band(eps): a 5-vertex Moebius band whose boundary pentagon
  represents twice the core class.  Interior edges weigh 1, boundary edges
  weigh eps, so twice the generator has a representative of total mass
  5*eps while the generator itself must spend interior mass: the parametric
  Lavrentiev-gap complex.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Sequence

from .complexes import Simplex, WeightedComplex


def _surface(name: str, faces: Sequence[Simplex],
             weights_by_degree=None) -> WeightedComplex:
    faces = sorted(tuple(sorted(f)) for f in faces)
    verts = sorted({v for f in faces for v in f})
    edges = sorted({e for f in faces for e in itertools.combinations(f, 2)})
    simplices = [[(v,) for v in verts], edges, faces]
    return WeightedComplex(name, simplices, weights_by_degree)


def triangle_circle() -> WeightedComplex:
    """Three vertices, three unit-weight edges, no triangles: H_1 = Z."""
    return WeightedComplex("triangle-circle",
                           [[(0,), (1,), (2,)], [(0, 1), (0, 2), (1, 2)]])


TORUS7_FACES = sorted(
    [tuple(sorted(((i + a) % 7, (i + b) % 7, (i + c) % 7)))
     for i in range(7) for (a, b, c) in ((0, 1, 3), (0, 2, 3))])


def torus7() -> WeightedComplex:
    """The 7-vertex torus: every vertex pair is an edge, 14 triangles."""
    return _surface("torus-7", TORUS7_FACES)


RP2_6_FACES = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6),
]


def rp2_6() -> WeightedComplex:
    """The 6-vertex projective plane (antipodal icosahedron quotient)."""
    return _surface("rp2-6", RP2_6_FACES)


KLEIN8_FACES = [
    (0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 6), (0, 5, 7),
    (0, 6, 7), (1, 2, 5), (1, 3, 4), (1, 4, 7), (1, 5, 6), (1, 6, 7),
    (2, 3, 4), (2, 3, 5), (4, 5, 6), (4, 5, 7),
]


def klein8() -> WeightedComplex:
    """An 8-vertex Klein bottle: b_1 = 1 with a Z/2 torsion factor."""
    return _surface("klein-8", KLEIN8_FACES)


MOBIUS_FACES = [(0, 1, 2), (1, 2, 3), (2, 3, 4), (0, 3, 4), (0, 1, 4)]

# Boundary pentagon of the 5-vertex band: the edges in exactly one face.
MOBIUS_BOUNDARY_EDGES = [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]
MOBIUS_CORE_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]


def mobius_band(eps: Fraction = Fraction(1, 4)) -> WeightedComplex:
    """The parametric Lavrentiev-gap complex.

    Interior (core-side) edges weigh 1; the five boundary-pentagon edges
    weigh ``eps`` each.  H_1 = Z, generated by the core circle; the
    boundary pentagon is homologous to twice the core.
    """
    eps = Fraction(eps)
    faces = sorted(MOBIUS_FACES)
    edges = sorted({e for f in faces for e in itertools.combinations(f, 2)})
    boundary = set(MOBIUS_BOUNDARY_EDGES)
    weights = [
        [Fraction(1)] * 5,
        [eps if e in boundary else Fraction(1) for e in edges],
        [Fraction(1)] * len(faces),
    ]
    verts = [(v,) for v in range(5)]
    return WeightedComplex("mobius-gap", [verts, edges, faces], weights)


def mobius_boundary_indices(K: WeightedComplex) -> list[int]:
    """Degree-1 indices of the boundary-pentagon edges of the band fixture."""
    return [K.index_of(1, e) for e in MOBIUS_BOUNDARY_EDGES]


SUITE: dict[str, Callable[[], WeightedComplex]] = {
    "triangle-circle": triangle_circle,
    "torus-7": torus7,
    "rp2-6": rp2_6,
    "klein-8": klein8,
    "mobius-gap": mobius_band,
}
