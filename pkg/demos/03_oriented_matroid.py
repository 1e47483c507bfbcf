"""The rank-4 oriented matroid behind an embedding.

Every five of the seven points have one Radon partition, written as a
signed circuit (positive part, negative part).  A 3/2 circuit says a
segment pierces a triangle; a 4/1 circuit says a point sits inside a
tetrahedron.  Circuits from real points satisfy weak elimination.

    python demos/03_oriented_matroid.py
"""
from linkcensus.graphs import census
from linkcensus.harness import bundled_fixture
from linkcensus.matroid import (
    all_circuits,
    circuit_geometry_correspondence,
    verify_weak_elimination,
)

emb = bundled_fixture("links2").embedding
circuits = all_circuits(emb)
print("circuits:", " ".join(str(c) for c in circuits))

torus = [e for e in census(emb).entries if e.linking_number == 2][0]
tri = frozenset(torus.triangle)
print(f"\ntriangle {torus.label} has linking number 2; circuits with it as one side:")
for c in circuits:
    if tri in (c.positive, c.negative):
        print("  ", c)

corr = circuit_geometry_correspondence(emb, circuits)
print("\ncircuits agree with piercing and containment tests:", corr.ok)
print("linking numbers recovered from circuits:", corr.linking_from_circuits)

c3 = verify_weak_elimination(circuits)
print(f"\nweak elimination: {c3.instances} instances, all witnessed: {c3.ok}")
for c1, c2, e, w in c3.witnesses[:3]:
    print(f"   eliminate {e} from {c1} and {c2}: {w}")
