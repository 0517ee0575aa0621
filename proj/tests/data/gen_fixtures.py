#!/usr/bin/env python3
"""Regenerates the mesh fixtures in this directory."""
import json
from pathlib import Path

HERE = Path(__file__).parent


def tri_surface(vertices, triangles):
    """Build a genhyp-tri/1 document, pairing sides by unordered endpoint sets."""
    sides = {}  # frozenset endpoints -> list of (tri index, side)
    for ti, (_, corners) in enumerate(triangles):
        for s in range(3):
            ends = frozenset((corners[(s + 1) % 3], corners[(s + 2) % 3]))
            sides.setdefault(ends, []).append((ti, s))
    gluings = []
    for ends in sorted(sides, key=lambda e: sorted(e)):
        slots = sides[ends]
        assert len(slots) == 2, (ends, slots)
        (ta, sa), (tb, sb) = slots
        gluings.append({"left": [triangles[ta][0], sa], "right": [triangles[tb][0], sb]})
    return {
        "format": "genhyp-tri/1",
        "vertices": vertices,
        "triangles": [{"id": tid, "corners": list(c)} for tid, c in triangles],
        "gluings": gluings,
    }


def cell_surface(vertices, faces):
    """Build a genhyp-cell/1 document; each unordered boundary pair must occur twice."""
    inc = {}
    for fid, boundary in faces:
        n = len(boundary)
        for i in range(n):
            ends = frozenset((boundary[i], boundary[(i + 1) % n]))
            inc.setdefault(ends, []).append(fid)
    edges = []
    for k, ends in enumerate(sorted(inc, key=lambda e: sorted(e))):
        fids = inc[ends]
        assert len(fids) == 2, (ends, fids)
        edges.append({"id": f"e{k}", "ends": sorted(ends), "faces": fids})
    return {
        "format": "genhyp-cell/1",
        "vertices": vertices,
        "faces": [{"id": fid, "boundary": list(b)} for fid, b in faces],
        "edges": edges,
    }


def write(name, doc):
    (HERE / name).write_text(json.dumps(doc, indent=1) + "\n")


# Ideal triangulation of the once-punctured torus: 2 triangles, 3 edges, 1 vertex.
write("punctured_torus.json", {
    "format": "genhyp-tri/1",
    "vertices": ["v0"],
    "triangles": [
        {"id": "t0", "corners": ["v0", "v0", "v0"]},
        {"id": "t1", "corners": ["v0", "v0", "v0"]},
    ],
    "gluings": [
        {"left": ["t0", 0], "right": ["t1", 0]},
        {"left": ["t0", 1], "right": ["t1", 1]},
        {"left": ["t0", 2], "right": ["t1", 2]},
    ],
})

# Thrice-punctured sphere: two triangles glued along all three edges.
write("thrice_punctured_sphere.json", tri_surface(
    ["v0", "v1", "v2"],
    [("t0", ["v0", "v1", "v2"]), ("t1", ["v0", "v1", "v2"])],
))

write("tetrahedron.json", tri_surface(
    ["v0", "v1", "v2", "v3"],
    [("t0", ["v1", "v2", "v3"]),
     ("t1", ["v0", "v3", "v2"]),
     ("t2", ["v0", "v1", "v3"]),
     ("t3", ["v0", "v2", "v1"])],
))

write("octahedron.json", tri_surface(
    [f"v{i}" for i in range(6)],
    # 0..3 equatorial cycle, 4 = north, 5 = south
    [("t0", ["v0", "v1", "v4"]), ("t1", ["v1", "v2", "v4"]),
     ("t2", ["v2", "v3", "v4"]), ("t3", ["v3", "v0", "v4"]),
     ("t4", ["v1", "v0", "v5"]), ("t5", ["v2", "v1", "v5"]),
     ("t6", ["v3", "v2", "v5"]), ("t7", ["v0", "v3", "v5"])],
))

ICO_FACES = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 6, 2), (2, 6, 7), (2, 7, 3), (3, 7, 8), (3, 8, 4),
    (4, 8, 9), (4, 9, 5), (5, 9, 10), (5, 10, 1), (1, 10, 6),
    (6, 11, 7), (7, 11, 8), (8, 11, 9), (9, 11, 10), (10, 11, 6),
]
write("icosahedron.json", tri_surface(
    [f"v{i}" for i in range(12)],
    [(f"t{i}", [f"v{a}", f"v{b}", f"v{c}"]) for i, (a, b, c) in enumerate(ICO_FACES)],
))

# Cube graph on the sphere: 8 vertices, 12 edges, 6 quadrilateral faces.
write("cube_cell.json", cell_surface(
    [f"v{i}" for i in range(8)],
    # bottom 0123, top 4567 (v(i+4) above vi)
    [("f0", ["v0", "v1", "v2", "v3"]),
     ("f1", ["v7", "v6", "v5", "v4"]),
     ("f2", ["v0", "v4", "v5", "v1"]),
     ("f3", ["v1", "v5", "v6", "v2"]),
     ("f4", ["v2", "v6", "v7", "v3"]),
     ("f5", ["v3", "v7", "v4", "v0"])],
))

# Sphere as two digons: 2 vertices, 2 parallel edges, 2 faces.
write("digon_pair.json", {
    "format": "genhyp-cell/1",
    "vertices": ["a", "b"],
    "faces": [
        {"id": "f0", "boundary": ["a", "b"]},
        {"id": "f1", "boundary": ["a", "b"]},
    ],
    "edges": [
        {"id": "e0", "ends": ["a", "b"], "faces": ["f0", "f1"]},
        {"id": "e1", "ends": ["a", "b"], "faces": ["f0", "f1"]},
    ],
})

print("fixtures written to", HERE)
