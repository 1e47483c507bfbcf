"""Small graphs, straight-edge embeddings, linking numbers and the link census."""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exact import (
    DegenerateInput,
    Vec3Q,
    general_position,
    orient2d_value,
    segment_pierces_triangle,
)

Edge = tuple[int, int]
Cycle = tuple[int, ...]

ODD = (1, 3, 5)
EVEN = (2, 4, 6)
APEX = 7


class MalformedGraph(ValueError):
    pass


class UnsupportedLink(ValueError):
    """Link outside the triangle-plus-quadrilateral classification."""


class NoGenericDirection(RuntimeError):
    pass


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[int, ...]
    edges: frozenset[Edge]
    partition: tuple[frozenset[int], ...] | None = None
    name: str | None = None

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise MalformedGraph("duplicate vertex ids")
        for u, v in self.edges:
            if u == v:
                raise MalformedGraph(f"self-loop at {u}")
            if u not in vs or v not in vs:
                raise MalformedGraph(f"edge {u}-{v} uses an undeclared vertex")
            if u > v:
                raise MalformedGraph(f"edge {u}-{v} is not normalized")
        if self.partition is not None:
            seen = [v for cls in self.partition for v in cls]
            if sorted(seen) != sorted(vs):
                raise MalformedGraph("partition must cover every vertex exactly once")

    def has_edge(self, u: int, v: int) -> bool:
        return edge(u, v) in self.edges

    def neighbors(self, v: int) -> list[int]:
        return sorted({b if a == v else a for a, b in self.edges if v in (a, b)})

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def class_of(self, v: int) -> frozenset[int] | None:
        if self.partition is None:
            return None
        for cls in self.partition:
            if v in cls:
                return cls
        return None

    def to_json(self):
        if self.name in _BUILTIN:
            return self.name
        return {"vertices": list(self.vertices), "edges": [list(e) for e in sorted(self.edges)]}


def _multipartite(classes: Sequence[Sequence[int]], name: str) -> Graph:
    verts = tuple(sorted(v for cls in classes for v in cls))
    edges = frozenset(
        edge(u, v)
        for ca, cb in itertools.combinations(classes, 2)
        for u in ca
        for v in cb
    )
    return Graph(verts, edges, tuple(frozenset(c) for c in classes), name)


_BUILTIN = {
    "K331": lambda: _multipartite([ODD, EVEN, (APEX,)], "K331"),
    "K33": lambda: _multipartite([ODD, EVEN], "K33"),
    "K6": lambda: _multipartite([[v] for v in range(1, 7)], "K6"),
}


def build_graph(spec, vertices: Iterable[int] | None = None) -> Graph:
    """Build ``"K331"``, ``"K33"``, ``"K6"`` or a graph from an edge list.

    Custom graphs take an iterable of ``(u, v)`` pairs; vertices default to
    the endpoints that appear.
    """
    if isinstance(spec, str):
        try:
            return _BUILTIN[spec]()
        except KeyError:
            raise MalformedGraph(f"unknown graph name {spec!r}") from None
    pairs = []
    for item in spec:
        try:
            u, v = item
        except (TypeError, ValueError):
            raise MalformedGraph(f"edge {item!r} is not a pair") from None
        if not isinstance(u, int) or not isinstance(v, int):
            raise MalformedGraph(f"edge {item!r} must use integer ids")
        if u == v:
            raise MalformedGraph(f"self-loop at {u}")
        pairs.append(edge(u, v))
    if len(set(pairs)) != len(pairs):
        raise MalformedGraph("duplicate edge")
    verts = set(vertices) if vertices is not None else {x for e in pairs for x in e}
    return Graph(tuple(sorted(verts)), frozenset(pairs))


@dataclass(frozen=True)
class Embedding:
    graph: Graph
    coords: Mapping[int, Vec3Q]
    check: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        missing = [v for v in self.graph.vertices if v not in self.coords]
        if missing:
            raise ValueError(f"no coordinates for vertices {missing}")
        coords = {v: Vec3Q.parse(self.coords[v]) for v in self.graph.vertices}
        object.__setattr__(self, "coords", coords)
        if self.check:
            bad = self.coplanar_quadruples()
            if bad:
                raise DegenerateInput(f"coplanar vertex quadruples: {bad}")

    def coplanar_quadruples(self) -> list[tuple[int, ...]]:
        order = list(self.graph.vertices)
        report = general_position([self.coords[v] for v in order])
        return [tuple(order[i] for i in quad) for quad in report.violations]

    def __getitem__(self, v: int) -> Vec3Q:
        return self.coords[v]

    def __hash__(self):
        return hash((self.graph, tuple(sorted(self.coords.items()))))


# -- cycles ------------------------------------------------------------------


def simple_cycles(g: Graph) -> list[Cycle]:
    """Every simple cycle once, starting at its smallest vertex."""
    adj = {v: g.neighbors(v) for v in g.vertices}
    found: list[Cycle] = []

    def extend(path: list[int], on_path: set[int]):
        start, last = path[0], path[-1]
        for w in adj[last]:
            if w == start and len(path) >= 3 and path[1] < path[-1]:
                found.append(tuple(path))
            elif w > start and w not in on_path:
                path.append(w)
                on_path.add(w)
                extend(path, on_path)
                on_path.remove(w)
                path.pop()

    for s in g.vertices:
        extend([s], {s})
    return found


def cycle_edges(cycle: Cycle) -> list[tuple[int, int]]:
    """Directed edges of a cycle in traversal order."""
    return [(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))]


def k331_link_pairs() -> list[tuple[Cycle, Cycle]]:
    """The nine (triangle 7ab, complementary quadrilateral) pairs of K331.

    Quadrilaterals alternate between the odd and even classes, smallest
    odd vertex first, e.g. triangle 752 pairs with 1-4-3-6.
    """
    pairs = []
    for a in ODD:
        for b in EVEN:
            a1, a2 = (x for x in ODD if x != a)
            b1, b2 = (x for x in EVEN if x != b)
            pairs.append(((APEX, a, b), (a1, b1, a2, b2)))
    return pairs


def disjoint_cycle_pairs(g: Graph) -> list[tuple[Cycle, Cycle]]:
    """All unordered pairs of vertex-disjoint cycles, shorter cycle first."""
    if g.name == "K331":
        return k331_link_pairs()
    cycles = simple_cycles(g)
    pairs = []
    for c1, c2 in itertools.combinations(cycles, 2):
        if set(c1).isdisjoint(c2):
            pairs.append((c1, c2) if len(c1) <= len(c2) else (c2, c1))
    return pairs


def triangle_label(tri: Cycle) -> str:
    return "".join(str(v) for v in tri)


# -- linking numbers ---------------------------------------------------------


def signed_piercings(tri: Cycle, other: Cycle, emb: Embedding) -> int:
    """Signed count of edges of ``other`` crossing the flat disk of ``tri``."""
    a, b, c = (emb.coords[v] for v in tri)
    total = 0
    for u, v in cycle_edges(other):
        s = segment_pierces_triangle(emb.coords[u], emb.coords[v], a, b, c)
        if s is not None:
            total += int(s)
    return total


def linking_number_disk(tri: Cycle, other: Cycle, emb: Embedding) -> int:
    """Absolute linking number by counting piercings of the triangle's disk."""
    if len(tri) != 3:
        raise ValueError("the disk method needs a triangle as first cycle")
    if not set(tri).isdisjoint(other):
        raise ValueError("cycles share a vertex")
    return abs(signed_piercings(tri, other, emb))


DIRECTION_SCHEDULE: tuple[tuple[int, int, int], ...] = (
    (0, 0, 1), (0, 1, 1), (1, 1, 1), (1, 2, 3),
    (3, 1, 2), (2, 3, 1), (1, 3, 2), (3, 2, 1),
    (2, 1, 3), (1, 2, 5), (5, 1, 2), (2, 5, 1),
    (1, 5, 7), (7, 1, 5), (5, 7, 1), (3, 5, 7),
)


def _frame(d: Vec3Q) -> tuple[Vec3Q, Vec3Q]:
    # (u, v, d) is right handed: u x v = |u|^2 d
    for axis in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        u = d.cross(Vec3Q(*axis))
        if not u.is_zero():
            return u, d.cross(u)
    raise ValueError("zero projection direction")


def _project(points: Mapping[int, Vec3Q], d: Vec3Q):
    u, v = _frame(d)
    return {k: (p.dot(u), p.dot(v), p.dot(d)) for k, p in points.items()}


def _generic(proj, c1: Cycle, c2: Cycle) -> bool:
    flat = [(p[0], p[1]) for p in proj.values()]
    if len(set(flat)) != len(flat):
        return False
    for p0, p1 in cycle_edges(c1):
        for q0, q1 in cycle_edges(c2):
            P0, P1, Q0, Q1 = proj[p0], proj[p1], proj[q0], proj[q1]
            if (
                orient2d_value(P0, P1, Q0) == 0
                or orient2d_value(P0, P1, Q1) == 0
                or orient2d_value(Q0, Q1, P0) == 0
                or orient2d_value(Q0, Q1, P1) == 0
            ):
                return False
    return True


def gauss_crossing_sum(c1: Cycle, c2: Cycle, emb: Embedding, direction=None) -> int:
    """Sum of signed crossings between projected ``c1`` and ``c2``.

    Twice the signed linking number.  The first direction of
    :data:`DIRECTION_SCHEDULE` that is generic for this pair is used
    unless ``direction`` is given.
    """
    pts = {v: emb.coords[v] for v in (*c1, *c2)}
    candidates = [direction] if direction is not None else DIRECTION_SCHEDULE
    for cand in candidates:
        d = Vec3Q.parse(cand)
        proj = _project(pts, d)
        if _generic(proj, c1, c2):
            break
    else:
        raise NoGenericDirection(f"no generic projection for {c1} / {c2}")

    total = 0
    for p0, p1 in cycle_edges(c1):
        P0, P1 = proj[p0], proj[p1]
        rx, ry = P1[0] - P0[0], P1[1] - P0[1]
        for q0, q1 in cycle_edges(c2):
            Q0, Q1 = proj[q0], proj[q1]
            if (orient2d_value(P0, P1, Q0) > 0) == (orient2d_value(P0, P1, Q1) > 0):
                continue
            if (orient2d_value(Q0, Q1, P0) > 0) == (orient2d_value(Q0, Q1, P1) > 0):
                continue
            sx, sy = Q1[0] - Q0[0], Q1[1] - Q0[1]
            den = rx * sy - ry * sx
            wx, wy = Q0[0] - P0[0], Q0[1] - P0[1]
            s_num = wx * sy - wy * sx
            t_num = wx * ry - wy * rx
            # heights scaled by den; compare without division
            h1 = P0[2] * den + s_num * (P1[2] - P0[2])
            h2 = Q0[2] * den + t_num * (Q1[2] - Q0[2])
            gap = (h1 - h2) * (1 if den > 0 else -1)
            if gap == 0:
                raise DegenerateInput(f"edges {p0}{p1} and {q0}{q1} meet in space")
            # crossing sign from (over direction) x (under direction)
            turn = 1 if den > 0 else -1
            total += turn if gap > 0 else -turn
    return total


def linking_number_gauss(c1: Cycle, c2: Cycle, emb: Embedding, direction=None) -> int:
    """Absolute linking number from a generic parallel projection."""
    if not set(c1).isdisjoint(c2):
        raise ValueError("cycles share a vertex")
    total = gauss_crossing_sum(c1, c2, emb, direction)
    if total % 2:
        raise DegenerateInput("odd crossing sum; projection was not generic")
    return abs(total) // 2


# -- classification and census -----------------------------------------------


class LinkType(str, enum.Enum):
    TRIVIAL = "Trivial"
    HOPF = "Hopf"
    TORUS24 = "Torus24"


def classify_link(lk: int, total_edges: int) -> LinkType:
    """Link type of a triangle plus quadrilateral from its linking number.

    Zero is trivial because a seven-edge linear link with vanishing
    linking number unlinks; one and two are the Hopf and (2,4)-torus links.
    """
    if total_edges != 7:
        raise UnsupportedLink(f"only 7-edge links are classified, got {total_edges}")
    if lk < 0 or lk > 2:
        raise UnsupportedLink(f"linking number {lk} is impossible for a linear 7-edge link")
    return (LinkType.TRIVIAL, LinkType.HOPF, LinkType.TORUS24)[lk]


@dataclass(frozen=True)
class LinkEntry:
    triangle: Cycle
    quadrilateral: Cycle
    linking_number: int
    link_type: LinkType | None

    @property
    def label(self) -> str:
        return triangle_label(self.triangle)

    def to_json(self):
        return {
            "triangle": list(self.triangle),
            "quadrilateral": list(self.quadrilateral),
            "linking_number": self.linking_number,
            "link_type": None if self.link_type is None else self.link_type.value,
        }


@dataclass(frozen=True)
class CensusReport:
    entries: tuple[LinkEntry, ...]
    nontrivial_count: int
    total_linking: int
    torus24_count: int

    @property
    def linked_triangles(self) -> list[str]:
        return [e.label for e in self.entries if e.linking_number]

    def to_json(self):
        return {
            "entries": [e.to_json() for e in self.entries],
            "nontrivial_count": self.nontrivial_count,
            "total_linking": self.total_linking,
            "torus24_count": self.torus24_count,
        }

    @classmethod
    def from_json(cls, data) -> "CensusReport":
        entries = tuple(
            LinkEntry(
                tuple(e["triangle"]),
                tuple(e["quadrilateral"]),
                int(e["linking_number"]),
                None if e["link_type"] is None else LinkType(e["link_type"]),
            )
            for e in data["entries"]
        )
        return cls(entries, data["nontrivial_count"], data["total_linking"], data["torus24_count"])


@dataclass(frozen=True)
class TheoremViolation:
    """A census that contradicts the K331 link theorems; a counterexample."""

    embedding: Embedding
    reasons: tuple[str, ...]
    report: CensusReport

    def to_json(self):
        from .io import embedding_to_json

        return {
            "reasons": list(self.reasons),
            "embedding": embedding_to_json(self.embedding),
            "census": self.report.to_json(),
        }


def theorem_checks(report: CensusReport) -> list[str]:
    """Return a description of every K331 link invariant the report breaks."""
    problems = []
    if len(report.entries) != 9:
        problems.append(f"expected 9 links, got {len(report.entries)}")
    if any(e.link_type is None for e in report.entries):
        problems.append("linking number above 2")
    if report.total_linking % 2 == 0:
        problems.append(f"total linking {report.total_linking} is even")
    if report.torus24_count > 1:
        problems.append(f"{report.torus24_count} links with linking number 2")
    if not 1 <= report.nontrivial_count <= 5:
        problems.append(f"{report.nontrivial_count} nontrivial links")
    expected_torus = 0 if report.nontrivial_count % 2 else 1
    if report.torus24_count != expected_torus:
        problems.append(
            f"{report.torus24_count} torus links with {report.nontrivial_count} nontrivial links"
        )
    return problems


def census(emb: Embedding) -> CensusReport | TheoremViolation:
    """Linking numbers of all nine K331 links, with aggregate counts.

    Returns a :class:`TheoremViolation` instead of a report if the result
    breaks any of the known invariants.
    """
    if emb.graph.name != "K331":
        raise ValueError("census is defined for K331 embeddings")
    entries = []
    for tri, quad in k331_link_pairs():
        lk = linking_number_disk(tri, quad, emb)
        kind = classify_link(lk, 7) if lk <= 2 else None
        entries.append(LinkEntry(tri, quad, lk, kind))
    report = CensusReport(
        tuple(entries),
        nontrivial_count=sum(1 for e in entries if e.linking_number),
        total_linking=sum(e.linking_number for e in entries),
        torus24_count=sum(1 for e in entries if e.linking_number == 2),
    )
    problems = theorem_checks(report)
    if problems:
        return TheoremViolation(emb, tuple(problems), report)
    return report

