"""Rank-4 oriented matroid of an embedded point configuration.

Circuits are written ``(712, 56)``: positive part first, then negative.
The stored representative of each opposite pair has its smallest element
in the positive part.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .exact import (
    DegenerateInput,
    Sign,
    orient3d,
    orient3d_value,
    point_in_tetrahedron,
    segment_pierces_triangle,
)
from .graphs import Embedding, cycle_edges, k331_link_pairs, linking_number_disk, triangle_label


@dataclass(frozen=True)
class Chirotope:
    ground_set: tuple[int, ...]
    signs: Mapping[tuple[int, int, int, int], Sign]

    def __call__(self, i: int, j: int, k: int, l: int) -> Sign:
        return self.signs[(i, j, k, l)]


def _parity(perm: Sequence[int]) -> int:
    perm = list(perm)
    flips = 0
    for i in range(len(perm)):
        while perm[i] != i:
            j = perm[i]
            perm[i], perm[j] = perm[j], perm[i]
            flips += 1
    return -1 if flips % 2 else 1


_PERMS4 = [(p, _parity(p)) for p in itertools.permutations(range(4))]


def chirotope(emb: Embedding) -> Chirotope:
    """orient3d of every ordered 4-tuple of distinct vertices."""
    ground = tuple(emb.graph.vertices)
    signs = {}
    for base in itertools.combinations(ground, 4):
        s = orient3d(*(emb.coords[v] for v in base))
        if s is Sign.ZERO:
            raise DegenerateInput(f"coplanar vertices {base}")
        for perm, par in _PERMS4:
            signs[tuple(base[i] for i in perm)] = s if par > 0 else -s
    return Chirotope(ground, signs)


@dataclass(frozen=True)
class SignedCircuit:
    positive: frozenset[int]
    negative: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "positive", frozenset(self.positive))
        object.__setattr__(self, "negative", frozenset(self.negative))
        if self.positive & self.negative:
            raise ValueError("positive and negative parts overlap")

    def __neg__(self) -> "SignedCircuit":
        return SignedCircuit(self.negative, self.positive)

    @property
    def support(self) -> frozenset[int]:
        return self.positive | self.negative

    @property
    def split(self) -> tuple[int, int]:
        return tuple(sorted((len(self.positive), len(self.negative)), reverse=True))

    def canonical(self) -> "SignedCircuit":
        return self if min(self.support) in self.positive else -self

    @classmethod
    def parse(cls, text: str) -> "SignedCircuit":
        """Read ``"(712, 56)"``; single-digit vertex ids only."""
        body = text.strip().strip("()")
        pos, _, neg = body.partition(",")
        return cls(frozenset(int(ch) for ch in pos.strip()), frozenset(int(ch) for ch in neg.strip()))

    def __str__(self) -> str:
        return "({}, {})".format(
            "".join(map(str, sorted(self.positive))), "".join(map(str, sorted(self.negative)))
        )

    def to_json(self) -> dict:
        return {"pos": sorted(self.positive), "neg": sorted(self.negative)}

    @classmethod
    def from_json(cls, data) -> "SignedCircuit":
        return cls(frozenset(data["pos"]), frozenset(data["neg"]))


def radon_coefficients(ids: Sequence[int], emb: Embedding) -> dict[int, int]:
    """Affine dependency of five points: sum l_m = 0 and sum l_m p_m = 0."""
    ids = sorted(ids)
    if len(set(ids)) != 5:
        raise ValueError("a rank-4 circuit needs five distinct points")
    pts = [emb.coords[v] for v in ids]
    lam = {}
    for m, v in enumerate(ids):
        rest = pts[:m] + pts[m + 1:]
        value = orient3d_value(*rest)
        if value == 0:
            raise DegenerateInput(f"coplanar points among {ids}")
        lam[v] = value if m % 2 == 0 else -value
    return lam


def radon_circuit(ids: Sequence[int], emb: Embedding) -> SignedCircuit:
    lam = radon_coefficients(ids, emb)
    pos = frozenset(v for v, c in lam.items() if c > 0)
    neg = frozenset(v for v, c in lam.items() if c < 0)
    return SignedCircuit(pos, neg).canonical()


def all_circuits(emb: Embedding) -> list[SignedCircuit]:
    return [radon_circuit(s, emb) for s in itertools.combinations(emb.graph.vertices, 5)]


# -- weak elimination --------------------------------------------------------


@dataclass
class WitnessReport:
    instances: int = 0
    witnesses: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self, limit: int | None = None) -> dict:
        shown = self.witnesses if limit is None else self.witnesses[:limit]
        return {
            "ok": self.ok,
            "instances": self.instances,
            "witnesses": [
                {"c1": str(c1), "c2": str(c2), "e": e, "c3": str(c3)} for c1, c2, e, c3 in shown
            ],
            "failures": [{"c1": str(c1), "c2": str(c2), "e": e} for c1, c2, e in self.failures],
        }


def _closure(circuits: Iterable[SignedCircuit]) -> list[SignedCircuit]:
    seen = {}
    for c in circuits:
        for s in (c, -c):
            seen.setdefault((s.positive, s.negative), s)
    return sorted(seen.values(), key=lambda c: (sorted(c.support), sorted(c.positive)))


def eliminate(
    c1: SignedCircuit, c2: SignedCircuit, e: int, circuits: Iterable[SignedCircuit]
) -> SignedCircuit | None:
    """A circuit inside (C1 and C2 combined) with ``e`` removed, signs respected."""
    pos = (c1.positive | c2.positive) - {e}
    neg = (c1.negative | c2.negative) - {e}
    for c3 in _closure(circuits):
        if c3.positive <= pos and c3.negative <= neg:
            return c3
    return None


def verify_weak_elimination(circuits: Iterable[SignedCircuit], collect: bool = True) -> WitnessReport:
    """Check the weak circuit-elimination axiom on every eligible instance.

    For C1 != -C2 and e in C1+ and C2-, some C3 must have
    C3+ within (C1+ | C2+) - e and C3- within (C1- | C2-) - e.
    The input is closed under negation first.
    """
    signed = _closure(circuits)
    ground = sorted(set().union(*(c.support for c in signed))) if signed else []
    bit = {v: 1 << i for i, v in enumerate(ground)}

    def mask(s):
        m = 0
        for v in s:
            m |= bit[v]
        return m

    masks = [(mask(c.positive), mask(c.negative)) for c in signed]
    report = WitnessReport()
    for i, (p1, n1) in enumerate(masks):
        for j, (p2, n2) in enumerate(masks):
            if p1 == n2 and n1 == p2:
                continue
            common = p1 & n2
            if not common:
                continue
            for v in ground:
                b = bit[v]
                if not common & b:
                    continue
                report.instances += 1
                allow_p = (p1 | p2) & ~b
                allow_n = (n1 | n2) & ~b
                for k, (p3, n3) in enumerate(masks):
                    if not (p3 & ~allow_p) and not (n3 & ~allow_n):
                        if collect:
                            report.witnesses.append((signed[i], signed[j], v, signed[k]))
                        break
                else:
                    report.failures.append((signed[i], signed[j], v))
    return report


# -- geometry versus circuits -----------------------------------------------


@dataclass
class CorrespondenceReport:
    subsets_checked: int = 0
    mismatches: list[str] = field(default_factory=list)
    linking_from_circuits: dict[str, int] = field(default_factory=dict)
    linking_mismatches: list[str] = field(default_factory=list)

    @property
    def triangles_with_linking_two(self) -> int:
        return sum(1 for lk in self.linking_from_circuits.values() if lk == 2)

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.linking_mismatches

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "subsets_checked": self.subsets_checked,
            "mismatches": self.mismatches,
            "linking_from_circuits": self.linking_from_circuits,
            "linking_mismatches": self.linking_mismatches,
        }


def circuit_geometry_correspondence(
    emb: Embedding, circuits: Sequence[SignedCircuit] | None = None
) -> CorrespondenceReport:
    """Match every circuit against piercing and point-in-tetrahedron tests.

    A 3/2 circuit (abc, de) must be the only way to split its five points
    into a triangle pierced by a segment; a 4/1 circuit (abcd, e) must be
    the only way to split them into a tetrahedron containing a point.
    For K331 the linking numbers are also recomputed from circuits and
    chirotope signs alone.
    """
    if circuits is None:
        circuits = all_circuits(emb)
    by_support = {c.support: c for c in circuits}
    report = CorrespondenceReport()
    P = emb.coords
    for five in itertools.combinations(emb.graph.vertices, 5):
        circ = by_support[frozenset(five)]
        report.subsets_checked += 1
        sides = {circ.positive, circ.negative}
        for tri in itertools.combinations(five, 3):
            seg = [v for v in five if v not in tri]
            pierced = segment_pierces_triangle(P[seg[0]], P[seg[1]], *(P[v] for v in tri)) is not None
            expected = frozenset(tri) in sides
            if pierced != expected:
                report.mismatches.append(
                    f"segment {seg[0]}{seg[1]} vs triangle {triangle_label(tri)}: "
                    f"pierced={pierced}, circuit {circ}"
                )
        for tet in itertools.combinations(five, 4):
            (pt,) = [v for v in five if v not in tet]
            inside = point_in_tetrahedron(P[pt], *(P[v] for v in tet))
            expected = frozenset(tet) in sides
            if inside != expected:
                report.mismatches.append(
                    f"point {pt} vs tetrahedron {triangle_label(tet)}: inside={inside}, circuit {circ}"
                )

    if emb.graph.name == "K331":
        chi = chirotope(emb)
        for tri, quad in k331_link_pairs():
            t = frozenset(tri)
            signed = 0
            for u, v in cycle_edges(quad):
                circ = by_support[t | {u, v}]
                if t in (circ.positive, circ.negative):
                    signed += int(chi(*tri, u))
            label = triangle_label(tri)
            report.linking_from_circuits[label] = abs(signed)
            disk = linking_number_disk(tri, quad, emb)
            if abs(signed) != disk:
                report.linking_mismatches.append(
                    f"triangle {label}: circuits give {abs(signed)}, disk gives {disk}"
                )
    return report
