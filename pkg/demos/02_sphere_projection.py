"""Project K33 onto a sphere around vertex 7 and read off the crossings.

Each crossing records which edge passes nearer the centre ("over").  The
crossing count is always odd and at most nine; a triangle 7ab can only
link when some quadrilateral edge passes over ab.

    python demos/02_sphere_projection.py
"""
from linkcensus.harness import bundled_fixture
from linkcensus.sphere import (
    crossing_free_edges,
    crossing_set,
    crossings_on,
    gnomonic_project,
    project,
)
from linkcensus.exact import Vec3Q

for name in ("links1", "links5"):
    emb = bundled_fixture(name).embedding
    imm = project(emb)
    cs = crossing_set(imm, emb)
    print(f"{name}: {len(cs)} crossing(s)")
    for c in cs:
        print(f"   {c!r}")
    print("   crossing-free edges:", crossing_free_edges(imm, cs))
    for e in imm.edges:
        order = [repr(c) for c in crossings_on(e, cs)]
        if len(order) > 1:
            print(f"   along {e}: {' then '.join(order)}")

    # when every ray lies in one open hemisphere the picture flattens to a
    # straight-line drawing with the same crossing pairs
    pole = sum(imm.rays.values(), Vec3Q(0, 0, 0))
    if all(r.dot(pole) > 0 for r in imm.rays.values()):
        flat = gnomonic_project(imm, pole)
        print("   planar drawing keeps the crossings:", flat.crossing_pairs() == {c.pair for c in cs})
    print()
