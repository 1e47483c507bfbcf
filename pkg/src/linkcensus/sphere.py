"""Central projection of K33 onto a sphere around the degree-6 vertex.

Sphere points are kept as unnormalized rational rays from the centre.
Every question asked here (does a minor arc contain a ray, do two arcs
cross, which preimage is nearer the centre) is invariant under positive
scaling, so no square root is ever taken.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact import DegenerateInput, Vec3Q, det3, segments_cross_2d
from .graphs import CensusReport, Edge, Embedding, TheoremViolation, census, edge

EdgePair = frozenset  # frozenset of two edges


class NotInHemisphere(ValueError):
    pass


@dataclass(frozen=True)
class SphericalImmersion:
    center_vertex: int
    rays: Mapping[int, Vec3Q]
    edges: tuple[Edge, ...]
    classes: tuple[frozenset[int], ...] | None = None

    def __post_init__(self):
        rays = {v: Vec3Q.parse(r) for v, r in self.rays.items()}
        object.__setattr__(self, "rays", rays)
        object.__setattr__(self, "edges", tuple(sorted(edge(*e) for e in self.edges)))
        for v, r in rays.items():
            if r.is_zero():
                raise DegenerateInput(f"vertex {v} sits on the centre")
        for (u, ru), (v, rv) in itertools.combinations(rays.items(), 2):
            if ru.cross(rv).is_zero():
                raise DegenerateInput(f"rays of {u} and {v} are parallel")
        for (u, ru), (v, rv), (w, rw) in itertools.combinations(rays.items(), 3):
            if det3(ru, rv, rw) == 0:
                raise DegenerateInput(f"vertices {u}, {v}, {w} lie on one great circle")

    def to_json(self) -> dict:
        return {
            "center": self.center_vertex,
            "rays": {str(v): r.to_json() for v, r in sorted(self.rays.items())},
            "edges": [list(e) for e in self.edges],
        }


def project(emb: Embedding, center: int = 7) -> SphericalImmersion:
    """Rays from ``center`` to the other vertices; edges are those avoiding it."""
    g = emb.graph
    if center not in g.vertices:
        raise ValueError(f"no vertex {center}")
    others = [v for v in g.vertices if v != center]
    if g.degree(center) != len(others):
        raise ValueError(f"vertex {center} is not adjacent to every other vertex")
    o = emb.coords[center]
    rays = {v: emb.coords[v] - o for v in others}
    edges = tuple(e for e in sorted(g.edges) if center not in e)
    classes = None
    if g.partition is not None:
        classes = tuple(c for c in g.partition if center not in c)
    return SphericalImmersion(center, rays, edges, classes)


# -- arc predicates ----------------------------------------------------------


def inside_arc(p: Vec3Q, a: Vec3Q, b: Vec3Q) -> bool:
    """Is ray ``p`` strictly inside the minor arc from ``a`` to ``b``?"""
    n = a.cross(b)
    if p.dot(n) != 0:
        return False
    return a.cross(p).dot(n) > 0 and p.cross(b).dot(n) > 0


def arc_crossing(v: Vec3Q, w: Vec3Q, x: Vec3Q, y: Vec3Q) -> Vec3Q | None:
    """Ray where minor arcs ``vw`` and ``xy`` cross, or ``None``."""
    d = v.cross(w).cross(x.cross(y))
    if d.is_zero():
        raise DegenerateInput("arcs lie on one great circle")
    for cand in (d, -d):
        if inside_arc(cand, v, w) and inside_arc(cand, x, y):
            return cand
    return None


def arcs_cross(a: Edge, b: Edge, imm: SphericalImmersion) -> Vec3Q | None:
    if len({*a, *b}) != 4:
        raise ValueError(f"arcs {a} and {b} share an endpoint")
    r = imm.rays
    return arc_crossing(r[a[0]], r[a[1]], r[b[0]], r[b[1]])


def arc_parameter(a: Vec3Q, b: Vec3Q, d: Vec3Q) -> tuple[Fraction, Fraction]:
    """Locate ray ``d`` (inside arc ab) on the straight segment from ``a`` to ``b``.

    Returns ``(t, s)`` with ``a + t (b - a) == s d``: ``t`` orders points
    along the edge, ``s`` measures distance from the centre along ``d``.
    """
    n = a.cross(b)
    alpha = d.cross(b).dot(n)
    beta = a.cross(d).dot(n)
    total = alpha + beta
    return Fraction(beta, total), Fraction(n.dot(n), total)


# -- crossings ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Crossing:
    over_edge: Edge
    under_edge: Edge
    direction: Vec3Q
    position_keys: dict = field(default_factory=dict)

    @property
    def pair(self) -> EdgePair:
        return frozenset((self.over_edge, self.under_edge))

    def key_on(self, e: Edge) -> Fraction:
        return self.position_keys[edge(*e)]

    def to_json(self) -> dict:
        return {
            "over": list(self.over_edge),
            "under": list(self.under_edge),
            "direction": self.direction.to_json(),
            "order_keys": {
                f"{e[0]}-{e[1]}": str(k) for e, k in sorted(self.position_keys.items())
            },
        }

    def __eq__(self, other):
        if not isinstance(other, Crossing):
            return NotImplemented
        return (
            self.over_edge == other.over_edge
            and self.under_edge == other.under_edge
            and self.position_keys == other.position_keys
        )

    def __repr__(self):
        return f"Crossing({_label(self.over_edge)}//{_label(self.under_edge)})"


def _label(e: Edge) -> str:
    return f"{e[0]}{e[1]}"


def crossing_set(imm: SphericalImmersion, emb: Embedding | None = None) -> list[Crossing]:
    """Every crossing among disjoint edges with over/under resolved.

    The rays are the actual displacement vectors from the centre, so the
    immersion alone determines which preimage is nearer; ``emb`` is
    accepted for symmetry with :func:`project` and only cross-checked.
    """
    if emb is not None:
        o = emb.coords[imm.center_vertex]
        for v, r in imm.rays.items():
            if emb.coords[v] - o != r:
                raise ValueError("immersion was not projected from this embedding")
    rays = imm.rays
    out = []
    for e1, e2 in itertools.combinations(imm.edges, 2):
        if set(e1) & set(e2):
            continue
        d = arcs_cross(e1, e2, imm)
        if d is None:
            continue
        t1, s1 = arc_parameter(rays[e1[0]], rays[e1[1]], d)
        t2, s2 = arc_parameter(rays[e2[0]], rays[e2[1]], d)
        if s1 == s2:
            raise DegenerateInput(f"edges {e1} and {e2} intersect in space")
        over, under = (e1, e2) if s1 < s2 else (e2, e1)
        out.append(Crossing(over, under, d, {e1: t1, e2: t2}))
    return out


def crossing_pattern(crossings: Iterable[Crossing]) -> frozenset:
    return frozenset(c.pair for c in crossings)


def crossings_on(e: Edge, crossings: Iterable[Crossing]) -> list[Crossing]:
    """Crossings on edge ``e`` ordered from its smaller to its larger endpoint."""
    e = edge(*e)
    hits = [c for c in crossings if e in (c.over_edge, c.under_edge)]
    return sorted(hits, key=lambda c: c.position_keys[e])


def alternates(e: Edge, crossings: Iterable[Crossing]) -> bool:
    """Do consecutive crossings along ``e`` alternate between over and under?"""
    e = edge(*e)
    roles = [c.over_edge == e for c in crossings_on(e, crossings)]
    return all(r1 != r2 for r1, r2 in zip(roles, roles[1:]))


def crossing_free_edges(imm: SphericalImmersion, crossings: Iterable[Crossing]) -> list[Edge]:
    used = {e for c in crossings for e in (c.over_edge, c.under_edge)}
    return [e for e in imm.edges if e not in used]


# -- nine-crossing pattern ---------------------------------------------------

_ODD = (1, 3, 5)
_EVEN = (2, 4, 6)


def _pairs(*items: str) -> frozenset:
    return frozenset(
        frozenset(edge(int(s[0]), int(s[1])) for s in pair.split(",")) for pair in items
    )


CANONICAL_NINE = _pairs(
    "14,32", "16,32", "14,52", "16,52", "14,36", "14,56", "32,54", "32,56", "36,54"
)


def k33_automorphisms() -> list[dict[int, int]]:
    """The 72 relabelings of K33 on {1..6}, identity first."""
    out = []
    for swap in (False, True):
        for so in itertools.permutations(_ODD):
            for se in itertools.permutations(_EVEN):
                if swap:
                    m = {**dict(zip(_ODD, se)), **dict(zip(_EVEN, so))}
                else:
                    m = {**dict(zip(_ODD, so)), **dict(zip(_EVEN, se))}
                out.append(m)
    return out


def relabel_pattern(pattern: Iterable, mapping: Mapping[int, int]) -> frozenset:
    return frozenset(
        frozenset(edge(mapping[u], mapping[v]) for u, v in pair) for pair in pattern
    )


def match_nine_crossing_pattern(pattern: Iterable) -> dict[int, int] | None:
    """Relabeling taking a 9-crossing pattern onto :data:`CANONICAL_NINE`."""
    pattern = frozenset(frozenset(edge(*e) for e in pair) for pair in pattern)
    if len(pattern) != 9:
        return None
    for mapping in k33_automorphisms():
        if relabel_pattern(pattern, mapping) == CANONICAL_NINE:
            return mapping
    return None


# -- non-realizability detectors --------------------------------------------


def _over_relation(crossings: Iterable[Crossing]):
    overs = set()
    adj: dict[int, set[int]] = {}
    for c in crossings:
        overs.add((c.over_edge, c.under_edge))
        for u, v in (c.over_edge, c.under_edge):
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
    return overs, adj


def _paths3(adj) -> list[tuple[int, int, int]]:
    return [
        (a, b, c)
        for b in sorted(adj)
        for a in sorted(adj[b])
        for c in sorted(adj[b])
        if a != c
    ]


def detect_nonrealizable_triangles(crossings: Sequence[Crossing]) -> list[tuple[int, ...]]:
    """Every (A, B, C, X, Y, Z) with AB//XY, XY//BC, BC//YZ and YZ//AB."""
    overs, adj = _over_relation(crossings)
    found = []
    paths = _paths3(adj)
    for a, b, c in paths:
        ab, bc = edge(a, b), edge(b, c)
        for x, y, z in paths:
            if len({a, b, c, x, y, z}) != 6:
                continue
            xy, yz = edge(x, y), edge(y, z)
            if (
                (ab, xy) in overs
                and (xy, bc) in overs
                and (bc, yz) in overs
                and (yz, ab) in overs
            ):
                found.append((a, b, c, x, y, z))
    return found


def detect_nonrealizable_path(crossings: Sequence[Crossing]) -> list[tuple[int, ...]]:
    """Every path (A, B, P, Y, X) with YP//AB, AB//XY and XY//BP."""
    overs, adj = _over_relation(crossings)
    found = []
    for ab, xy in sorted(overs):
        for a, b in (ab, ab[::-1]):
            for x, y in (xy, xy[::-1]):
                for p in sorted(adj.get(b, ())):
                    if p in (a, x, y):
                        continue
                    if (xy, edge(b, p)) in overs and (edge(y, p), ab) in overs:
                        found.append((a, b, p, y, x))
    return found


# -- alternation consistency -------------------------------------------------


@dataclass(frozen=True)
class ConsistencyReport:
    configurations: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return all(c["ok"] for c in self.configurations)

    def to_json(self) -> dict:
        return {"ok": self.ok, "configurations": list(self.configurations)}


def check_alternation_consistency(
    emb: Embedding,
    crossings: Sequence[Crossing] | None = None,
    report: CensusReport | None = None,
    center: int = 7,
) -> ConsistencyReport:
    """Look at every pair of paths ABC, XYZ where AB and BC both cross XY and YZ.

    An edge of the four qualifies if it has no other crossings and its
    triangle with the centre links, or its triangle has linking number 2.
    At most two edges may qualify in a realized configuration.
    """
    imm = project(emb, center)
    if crossings is None:
        crossings = crossing_set(imm, emb)
    if report is None:
        report = census(emb)
        if isinstance(report, TheoremViolation):
            report = report.report
    lk = {edge(*e.triangle[1:]): e.linking_number for e in report.entries}
    partners: dict[Edge, set[Edge]] = {e: set() for e in imm.edges}
    for c in crossings:
        partners[c.over_edge].add(c.under_edge)
        partners[c.under_edge].add(c.over_edge)

    cls_a, cls_b = imm.classes or (frozenset(_ODD), frozenset(_EVEN))
    configs = []
    for b in sorted(cls_b):
        for y in sorted(cls_a):
            a, c = sorted(v for v in cls_a if v != y)
            x, z = sorted(v for v in cls_b if v != b)
            path1 = (edge(a, b), edge(b, c))
            path2 = (edge(x, y), edge(y, z))
            if not all(e2 in partners[e1] for e1 in path1 for e2 in path2):
                continue
            satisfying = []
            for e, others in ((path1[0], path2), (path1[1], path2), (path2[0], path1), (path2[1], path1)):
                cond_i = partners[e] == set(others) and lk[e] >= 1
                cond_ii = lk[e] == 2
                if cond_i or cond_ii:
                    satisfying.append(e)
            configs.append(
                {
                    "paths": [[a, b, c], [x, y, z]],
                    "satisfying": [list(e) for e in satisfying],
                    "alternating": [list(e) for e in (*path1, *path2) if alternates(e, crossings)],
                    "ok": len(satisfying) < 3,
                }
            )
    return ConsistencyReport(tuple(configs))


# -- gnomonic projection -----------------------------------------------------


@dataclass(frozen=True)
class PlanarDrawing:
    points: Mapping[int, tuple]
    edges: tuple[Edge, ...]

    def crossing_pairs(self) -> frozenset:
        pairs = set()
        for e1, e2 in itertools.combinations(self.edges, 2):
            if set(e1) & set(e2):
                continue
            p = self.points
            if segments_cross_2d(p[e1[0]], p[e1[1]], p[e2[0]], p[e2[1]]):
                pairs.add(frozenset((e1, e2)))
        return frozenset(pairs)


def gnomonic_project(imm: SphericalImmersion, hemisphere_pole) -> PlanarDrawing:
    """Send each ray to where it meets the tangent plane {x : x . pole = |pole|^2}.

    Minor arcs inside the open hemisphere become straight segments, so
    crossing pairs are preserved.
    """
    pole = Vec3Q.parse(hemisphere_pole)
    for v, r in imm.rays.items():
        if r.dot(pole) <= 0:
            raise NotInHemisphere(f"ray of vertex {v} is not in the open hemisphere")
    for axis in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        u = pole.cross(Vec3Q(*axis))
        if not u.is_zero():
            break
    w = pole.cross(u)
    norm2 = pole.dot(pole)
    pts = {}
    for v, r in imm.rays.items():
        k = Fraction(norm2) / r.dot(pole)
        x = r.scale(k)
        pts[v] = (Fraction(x.dot(u)), Fraction(x.dot(w)))
    return PlanarDrawing(pts, imm.edges)


# -- structural invariants --------------------------------------------------


def immersion_checks(imm: SphericalImmersion, crossings: Sequence[Crossing]) -> list[str]:
    """Structural facts every projected K33 must satisfy; returns breaches."""
    problems = []
    n = len(crossings)
    if n > 9:
        problems.append(f"{n} crossings exceeds 9")
    if n % 2 == 0:
        problems.append(f"even crossing count {n}")
    free = crossing_free_edges(imm, crossings)
    if len(free) < 2:
        problems.append(f"only {len(free)} crossing-free edges")
    pattern = crossing_pattern(crossings)
    cls_a, cls_b = imm.classes or (frozenset(_ODD), frozenset(_EVEN))
    for a1, a2 in itertools.combinations(sorted(cls_a), 2):
        for b1, b2 in itertools.combinations(sorted(cls_b), 2):
            quad = (edge(a1, b1), edge(b1, a2), edge(a2, b2), edge(b2, a1))
            inner = sum(
                1 for i in range(2) if frozenset((quad[i], quad[i + 2])) in pattern
            )
            if inner > 1:
                problems.append(f"quadrilateral {a1}{b1}{a2}{b2} crosses itself twice")
    if n == 9 and match_nine_crossing_pattern(pattern) is None:
        problems.append("9 crossings in a non-canonical pattern")
    if n == 7:
        problems.extend(seven_crossing_breaches(imm, free))
    return problems


def seven_crossing_breaches(imm: SphericalImmersion, free: Sequence[Edge]) -> list[str]:
    """With 7 crossings and crossing-free edges va, vb, one of uc, wc must be free.

    Here c is the third vertex of a's class and u, w the other two of v's.
    """
    free = set(free)
    classes = imm.classes or (frozenset(_ODD), frozenset(_EVEN))
    out = []
    for v in sorted(imm.rays):
        own = next(c for c in classes if v in c)
        other = next(c for c in classes if v not in c)
        for a, b in itertools.combinations(sorted(other), 2):
            if edge(v, a) not in free or edge(v, b) not in free:
                continue
            (c,) = other - {a, b}
            u, w = sorted(own - {v})
            if edge(u, c) not in free and edge(w, c) not in free:
                out.append(f"free edges {v}{a}, {v}{b} but neither {u}{c} nor {w}{c} is free")
    return out
