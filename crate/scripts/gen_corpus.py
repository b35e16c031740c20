#!/usr/bin/env python3
"""Regenerate the bundled knot-complement corpus.

Requires the `regina` Python package. Knots are built from
Dowker-Thistlethwaite codes, converted to triangulations with real torus
boundary, and written in the gluing-table text format. Run from the repo root:

    python3 scripts/gen_corpus.py crates/core/data/corpus
"""
import os
import sys

import regina
from regina import Example3, ExampleLink, Link, Triangulation3

DT_CODES = {
    "trefoil": ([4, 6, 2], "3_1"),
    "figure-eight": ([4, 6, 8, 2], "4_1"),
    "knot-5-1": ([6, 8, 10, 2, 4], "5_1"),
    "knot-5-2": ([4, 8, 10, 2, 6], "5_2"),
    "knot-6-1": ([4, 8, 12, 10, 2, 6], "6_1"),
}


def to_table(tri, comment):
    lines = ["# " + c for c in comment]
    lines.append(str(tri.size()))
    for i in range(tri.size()):
        tet = tri.tetrahedron(i)
        entries = []
        for f in range(4):
            adj = tet.adjacentTetrahedron(f)
            if adj is None:
                entries.append("-")
            else:
                p = tet.adjacentGluing(f)
                entries.append("%d:%s" % (adj.index(), "".join(str(p[v]) for v in range(4))))
        lines.append("%d %s" % (i, " ".join(entries)))
    return "\n".join(lines) + "\n"


def complement(link, simplify):
    t = link.complement()
    t.idealToFinite()
    if simplify:
        t.simplify()
    return t


def cone_boundary(t):
    for tet in t.tetrahedra():
        for f in range(4):
            if tet.adjacentTetrahedron(f) is None:
                new = t.newTetrahedron()
                verts = [v for v in range(4) if v != f]
                # new tetrahedron vertices 0,1,2 onto the boundary face, 3 onto f
                p = regina.Perm4(verts[0], verts[1], verts[2], f)
                new.join(3, tet, p)
                return t
    raise ValueError("no boundary face")


def check(t, name):
    assert t.isValid(), name
    assert t.countBoundaryComponents() == 1, name
    assert t.boundaryComponent(0).eulerChar() == 0, name
    assert str(t.homology()) == "Z", name


def main(out):
    entries = []

    def emit(name, tri, verdict, note):
        check(tri, name)
        # ground truth: the unknot complement is exactly the solid torus
        assert tri.isSolidTorus() == (verdict == "Trivial"), name
        path = os.path.join(out, name + ".tri")
        with open(path, "w") as fh:
            fh.write(to_table(tri, [name, note]))
        entries.append((name, name + ".tri", verdict, tri.size(), tri.countVertices()))

    for name, (dt, ident) in DT_CODES.items():
        link = Link.fromDT(dt)
        emit(name, complement(link, True), "NonTrivial",
             "complement of %s (Jones %s)" % (ident, link.jones()))

    emit("trefoil-raw", complement(Link.fromDT([4, 6, 2]), False), "NonTrivial",
         "unsimplified multi-vertex complement of 3_1")

    emit("solid-torus", Example3.lst(1, 2), "Trivial",
         "one-tetrahedron solid torus LST(1,2,3)")
    for a, b in [(2, 3), (3, 5)]:
        emit("lst-%d-%d" % (a, b), Example3.lst(a, b), "Trivial",
             "layered solid torus LST(%d,%d,%d)" % (a, b, a + b))

    # Synthetic variants exercising one-vertex conversion and simplification.
    st = Example3.lst(1, 2)
    t = Triangulation3(st)
    t.pachner(t.tetrahedron(0))
    emit("solid-torus-1-4", t, "Trivial", "solid torus after a 1-4 move (internal vertex)")
    t = complement(Link.fromDT([4, 6, 2]), True)
    t.pachner(t.tetrahedron(0))
    emit("trefoil-1-4", t, "NonTrivial", "trefoil complement after a 1-4 move (internal vertex)")
    emit("solid-torus-cone", cone_boundary(Triangulation3(st)), "Trivial",
         "solid torus with a tetrahedron coned onto a boundary face (two boundary vertices)")
    emit("trefoil-cone", cone_boundary(complement(Link.fromDT([4, 6, 2]), True)), "NonTrivial",
         "trefoil complement with a coned boundary face (two boundary vertices)")
    t = Example3.lst(2, 3)
    tri = [f for f in t.triangles() if not f.isBoundary()
           and f.embedding(0).tetrahedron() != f.embedding(1).tetrahedron()][0]
    assert t.pachner(tri)
    emit("lst-2-3-expanded", t, "Trivial", "LST(2,3,5) after a 2-3 move")

    monster = complement(ExampleLink.monster(), False)
    emit("unknot-monster-raw", monster, "Trivial",
         "unsimplified complement of a 10-crossing unknot diagram")

    with open(os.path.join(out, "manifest.csv"), "w") as fh:
        fh.write("name,file,expected,n,vertices\n")
        for e in entries:
            fh.write("%s,%s,%s,%d,%d\n" % e)


if __name__ == "__main__":
    main(sys.argv[1])
