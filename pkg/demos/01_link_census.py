"""Link census of the five bundled K331 embeddings.

K331 is K33 plus a seventh vertex joined to everything.  Each of its nine
triangles through vertex 7 has a disjoint 4-cycle, and every straight-edge
embedding links an odd number of these pairs in total.  The bundled
embeddings realize 1 through 5 nontrivial links.

    python demos/01_link_census.py
"""
from linkcensus.graphs import census, linking_number_gauss
from linkcensus.harness import reference_fixtures

for name, ef in reference_fixtures().items():
    emb = ef.embedding
    rep = census(emb)
    print(f"{name}: {rep.nontrivial_count} nontrivial link(s)")
    for e in rep.entries:
        if not e.linking_number:
            continue
        # the disk count is the census value; a projection count agrees
        gauss = linking_number_gauss(e.triangle, e.quadrilateral, emb)
        quad = "".join(map(str, e.quadrilateral))
        print(f"   triangle {e.label} with {quad}: lk={e.linking_number} (gauss {gauss}), {e.link_type.value}")
    print(f"   total linking {rep.total_linking}\n")
