"""Triangulated genus-g surfaces, a meridian cycle C, a circle-valued
retraction r : S_g -> C with r restricted to C the identity, and a family
of rotated section maps that are pairwise coincidence-free.

The surface is the regular 4g-gon with sides identified in the pattern
alpha_1 beta_1 alpha_1^-1 beta_1^-1 alpha_2 ...  The mesh is built on the
polygon (a disk), and boundary identifications are tracked by a
union-find whose edges carry integer offsets: the circle map theta, in
units of turns, lifts to a real-valued function u on the disk such that
identified points differ by a fixed integer per side pair.  C is the
image of side alpha_1; the lift u restricted to side alpha_1 runs from 0
to 1, so theta winds exactly once along C.  Away from C, u solves a
graph-uniform discrete Laplace equation with hard Dirichlet values on C,
giving a piecewise-linear map whose triangle spreads stay below half a
turn at reasonable resolutions.

For g = 1 the polygon is meshed as a regular R x R grid with parallel
diagonals; the exact solution u = x is graph-harmonic there, which gives
an analytic oracle for the solver.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction


class _OffsetUnionFind:
    """Union-find where u(x) = u(root) + offset(x); merging with an
    inconsistent offset raises."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.offset = [0] * n

    def lookup(self, x):
        """Root of x's class and u(x) - u(root)."""
        path = []
        root = x
        while self.parent[root] != root:
            path.append(root)
            root = self.parent[root]
        # compress: rewrite offsets relative to the root, deepest first
        total = 0
        for node in reversed(path):
            total += self.offset[node]
            self.parent[node] = root
            self.offset[node] = total
        return root, (self.offset[x] if x != root else 0)

    def union(self, x, y, delta):
        """Impose u(y) = u(x) + delta."""
        rx, ox = self.lookup(x)
        ry, oy = self.lookup(y)
        if rx == ry:
            if oy - ox != delta:
                raise ValueError("inconsistent boundary identification offsets")
            return
        self.parent[ry] = rx
        self.offset[ry] = delta + ox - oy


@dataclass
class MeridianCycle:
    vertices: list  # surface vertex ids, in cycle order
    angles: list  # exact angle of each cycle vertex, in turns (Fraction)

    def __len__(self):
        return len(self.vertices)


@dataclass
class TriangulatedSurface:
    g: int
    resolution: int
    nvertices: int
    triangles: list  # oriented triples of surface vertex ids
    disk_triangles: list  # same triangles, in disk vertex ids
    class_of: list  # disk vertex id -> surface vertex id
    lift_offset: list  # disk vertex id -> integer offset of the u lift
    edges: list  # deduplicated surface edges: (v, w, jump) with jump = u(w)-u(v) offset part
    cycle: MeridianCycle
    cycle_edge_set: set
    dirichlet: dict  # surface vertex id -> exact u value in turns (Fraction)

    def euler_characteristic(self):
        return self.nvertices - len(self.edges) + len(self.triangles)

    def check_closed(self):
        """Every directed edge of the oriented triangles appears exactly
        once, so each undirected edge has two triangles with opposite
        orientations."""
        seen = {}
        for tri in self.triangles:
            for k in range(3):
                e = (tri[k], tri[(k + 1) % 3])
                seen[e] = seen.get(e, 0) + 1
        return all(
            count == 1 and seen.get((b, a), 0) == 1 for (a, b), count in seen.items()
        )


def _assemble(g, resolution, ndisk, disk_triangles, point, sides_to_skip):
    """Shared assembly: identify boundary points, dedupe edges, build the
    surface structure.  `point(s, j)` gives the disk id of the j-th point
    of polygon side s (j in 0..R, side s in 0..4g-1)."""
    r = resolution
    uf = _OffsetUnionFind(ndisk)
    for h in range(g):
        # u offsets: 0 on every side pair except beta_1, which carries -1
        # so that u runs 0..1 along alpha_1 and drops back across beta_1
        delta_a = 0
        delta_b = -1 if h == 0 else 0
        for j in range(r + 1):
            uf.union(point(4 * h, j), point(4 * h + 2, r - j), delta_a)
        for j in range(r + 1):
            uf.union(point(4 * h + 1, j), point(4 * h + 3, r - j), delta_b)

    roots = {}
    class_of = [0] * ndisk
    lift_offset = [0] * ndisk
    for v in range(ndisk):
        root, off = uf.lookup(v)
        if root not in roots:
            roots[root] = len(roots)
        class_of[v] = roots[root]
        lift_offset[v] = off
    nclasses = len(roots)

    triangles = [tuple(class_of[v] for v in tri) for tri in disk_triangles]

    edge_keys = set()
    for tri in disk_triangles:
        for k in range(3):
            a, b = tri[k], tri[(k + 1) % 3]
            edge_keys.add((min(a, b), max(a, b)))
    # each identified boundary side pair contributes one set of surface
    # edges: drop the duplicate copies living on the primed sides
    for s in sides_to_skip:
        for j in range(r):
            a, b = point(s, j), point(s, j + 1)
            edge_keys.discard((min(a, b), max(a, b)))
    edges = []
    for a, b in sorted(edge_keys):
        edges.append((class_of[a], class_of[b], lift_offset[b] - lift_offset[a]))

    cycle_disk = [point(0, j) for j in range(r)]
    cycle_vertices = [class_of[v] for v in cycle_disk]
    if len(set(cycle_vertices)) != len(cycle_vertices):
        raise ValueError(
            f"meridian cycle is not simple at resolution {r}; use resolution >= 3"
        )
    angles = [Fraction(j, r) for j in range(r)]
    cycle = MeridianCycle(cycle_vertices, angles)
    cycle_edge_set = set()
    for j in range(r):
        a, b = cycle_vertices[j], cycle_vertices[(j + 1) % r]
        cycle_edge_set.add((min(a, b), max(a, b)))

    dirichlet = {}
    for j in range(r + 1):
        v = point(0, j)
        value = Fraction(j, r) - lift_offset[v]
        prev = dirichlet.get(class_of[v])
        if prev is not None and prev != value:
            raise ValueError("inconsistent Dirichlet data along the meridian")
        dirichlet[class_of[v]] = value

    surf = TriangulatedSurface(
        g, r, nclasses, triangles, disk_triangles, class_of, lift_offset,
        edges, cycle, cycle_edge_set, dirichlet,
    )
    if surf.euler_characteristic() != 2 - 2 * g:
        raise AssertionError("Euler characteristic check failed")
    if not surf.check_closed():
        raise AssertionError("mesh is not a closed oriented surface")
    return surf


def _grid_mesh(resolution):
    """Unit-square mesh for the torus, R x R cells, parallel diagonals."""
    r = resolution

    def vid(i, j):
        return j * (r + 1) + i

    ndisk = (r + 1) * (r + 1)
    tris = []
    for j in range(r):
        for i in range(r):
            tris.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            tris.append((vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)))

    def point(s, j):
        if s == 0:
            return vid(j, 0)
        if s == 1:
            return vid(r, j)
        if s == 2:
            return vid(r - j, r)
        return vid(0, r - j)

    return ndisk, tris, point


def _polar_mesh(g, resolution):
    """Concentric-ring mesh of the regular 4g-gon: a center vertex, rings
    of 4g*R vertices, and the boundary ring carrying the side subdivision."""
    r = resolution
    k = 4 * g * r

    def rid(ring, pos):
        return 1 + (ring - 1) * k + pos % k

    ndisk = 1 + r * k
    tris = []
    for pos in range(k):
        tris.append((0, rid(1, pos), rid(1, pos + 1)))
    for ring in range(1, r):
        for pos in range(k):
            tris.append((rid(ring, pos), rid(ring + 1, pos), rid(ring + 1, pos + 1)))
            tris.append((rid(ring, pos), rid(ring + 1, pos + 1), rid(ring, pos + 1)))

    def point(s, j):
        return rid(r, s * r + j)

    return ndisk, tris, point


def triangulate(g: int, resolution: int) -> TriangulatedSurface:
    """Closed oriented genus-g surface from the identified 4g-gon."""
    if g < 1:
        raise ValueError("genus must be >= 1")
    if resolution < 3:
        raise ValueError("resolution must be >= 3 to keep the meridian simple")
    if g == 1:
        ndisk, tris, point = _grid_mesh(resolution)
        skip = (2, 3)
    else:
        ndisk, tris, point = _polar_mesh(g, resolution)
        skip = tuple(4 * h + 2 for h in range(g)) + tuple(4 * h + 3 for h in range(g))
    return _assemble(g, resolution, ndisk, tris, point, skip)


def meridian(surface: TriangulatedSurface) -> MeridianCycle:
    """The image of polygon side alpha_1: a simple non-separating cycle."""
    cycle = surface.cycle
    # consecutive cycle vertices must be mesh neighbors
    edge_set = {(min(v, w), max(v, w)) for v, w, _ in surface.edges}
    n = len(cycle)
    for i in range(n):
        a, b = cycle.vertices[i], cycle.vertices[(i + 1) % n]
        if (min(a, b), max(a, b)) not in edge_set:
            raise AssertionError("meridian is not an edge cycle")
    # non-separating: removing C's edges keeps the 1-skeleton connected
    adjacency = {}
    for v, w, _ in surface.edges:
        if (min(v, w), max(v, w)) in surface.cycle_edge_set:
            continue
        adjacency.setdefault(v, []).append(w)
        adjacency.setdefault(w, []).append(v)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adjacency.get(v, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != surface.nvertices:
        raise AssertionError("meridian cycle separates the surface")
    return cycle


@dataclass
class RetractionMap:
    surface: TriangulatedSurface
    cycle: MeridianCycle
    u: list  # lift value in turns per surface vertex; Fraction on C, float off C
    tri_lifts: list = field(default=None)  # per disk triangle: three lifted corner values

    def __post_init__(self):
        if self.tri_lifts is None:
            s = self.surface
            self.tri_lifts = []
            for tri in s.disk_triangles:
                self.tri_lifts.append(
                    tuple(float(self.u[s.class_of[v]]) + s.lift_offset[v] for v in tri)
                )

    def theta_turns(self, vertex):
        """Angle of vertex in turns, in [0, 1); exact Fraction on C."""
        val = self.u[vertex]
        return val % 1

    def theta(self, vertex):
        return 2 * math.pi * float(self.theta_turns(vertex))

    def theta_at(self, triangle_id, bary):
        """Angle in turns at a barycentric point of a disk triangle."""
        lifts = self.tri_lifts[triangle_id]
        return sum(w * l for w, l in zip(bary, lifts)) % 1.0

    def max_triangle_spread(self):
        return max(max(l) - min(l) for l in self.tri_lifts)

    def winding(self):
        """Total increase of u along C, in turns (exact)."""
        n = len(self.cycle)
        total = Fraction(0)
        for i in range(n):
            a = self.cycle.angles[i]
            b = self.cycle.angles[(i + 1) % n]
            total += (b - a) % 1
        return total


def build_retraction(surface: TriangulatedSurface, cycle: MeridianCycle) -> RetractionMap:
    """Solve the graph-uniform Laplace equation for the lift u with hard
    Dirichlet values on C; the jump data of the identified sides makes the
    reduction mod 1 a well-defined circle map."""
    import numpy as np
    from scipy.sparse import coo_matrix
    from scipy.sparse.linalg import spsolve

    fixed = surface.dirichlet
    free = [v for v in range(surface.nvertices) if v not in fixed]
    if not free:
        u = [None] * surface.nvertices
        for v, val in fixed.items():
            u[v] = val
        return RetractionMap(surface, cycle, u)
    pos = {v: i for i, v in enumerate(free)}

    neighbors = {}
    for v, w, jump in surface.edges:
        neighbors.setdefault(v, []).append((w, jump))
        neighbors.setdefault(w, []).append((v, -jump))

    rows, cols, vals = [], [], []
    rhs = [0.0] * len(free)
    for v in free:
        i = pos[v]
        deg = len(neighbors.get(v, ()))
        rows.append(i)
        cols.append(i)
        vals.append(float(deg))
        for w, jump in neighbors.get(v, ()):
            # sum_w [(u_w + jump) - u_v] = 0
            rhs[i] += jump
            if w in pos:
                rows.append(i)
                cols.append(pos[w])
                vals.append(-1.0)
            else:
                rhs[i] += float(fixed[w])
    mat = coo_matrix((vals, (rows, cols)), shape=(len(free), len(free))).tocsr()
    sol = spsolve(mat, np.array(rhs))
    residual = abs(mat @ sol - np.array(rhs)).max()
    if residual > 1e-10:
        raise ArithmeticError(f"harmonic solve residual {residual:.2e} exceeds 1e-10")

    u = [None] * surface.nvertices
    for v, val in fixed.items():
        u[v] = val
    for v, i in pos.items():
        u[v] = float(sol[i])
    ret = RetractionMap(surface, cycle, u)
    spread = ret.max_triangle_spread()
    if spread >= 0.5:
        raise ValueError(
            f"branch condition fails (max triangle spread {spread:.3f} turns); "
            f"increase the resolution beyond {surface.resolution}"
        )
    if ret.winding() != 1:
        raise AssertionError("retraction does not wind once along the meridian")
    return ret


@dataclass
class SectionMap:
    """x -> point of C at angle theta(x) + 2*pi*i/(n+1)."""

    index: int
    slots: int
    retraction: RetractionMap

    @property
    def offset_turns(self) -> Fraction:
        return Fraction(self.index, self.slots)

    def image_turns(self, vertex):
        return (self.retraction.theta_turns(vertex) + self.offset_turns) % 1

    def image_turns_at(self, triangle_id, bary):
        return (self.retraction.theta_at(triangle_id, bary) + float(self.offset_turns)) % 1.0


def section_maps(retraction: RetractionMap, n: int):
    if n < 1:
        raise ValueError("need n >= 1 section maps")
    return [SectionMap(i, n + 1, retraction) for i in range(1, n + 1)]


@dataclass
class VerificationReport:
    g: int
    n: int
    resolution: int
    checks: dict
    min_separation: float
    vertex_samples: int
    midpoint_samples: int

    @property
    def passed(self):
        return all(self.checks.values())

    def summary(self):
        lines = [
            f"genus {self.g}, n = {self.n}, resolution {self.resolution}:",
        ]
        for name, ok in self.checks.items():
            lines.append(f"  {name}: {'pass' if ok else 'FAIL'}")
        lines.append(
            f"  samples: {self.vertex_samples} vertices, {self.midpoint_samples} edge midpoints"
        )
        lines.append(f"  min angular separation: {self.min_separation}")
        return "\n".join(lines)


def verify_sections(surface, cycle, maps, n) -> VerificationReport:
    """Exact checks on the PL model: r restricted to C is the identity,
    the branch condition holds, and the n maps plus the identity are
    pairwise coincidence-free at every vertex and edge midpoint."""
    ret = maps[0].retraction
    checks = {}

    k = len(cycle)
    checks["retract_id_on_C"] = all(
        ret.u[cycle.vertices[i]] % 1 == Fraction(i, k) for i in range(k)
    ) and all(isinstance(ret.u[v], Fraction) for v in cycle.vertices)

    checks["branch_condition"] = ret.max_triangle_spread() < 0.5
    checks["winding_one"] = ret.winding() == 1

    offsets = [m.offset_turns for m in maps]
    nonzero = all(0 < off < 1 for off in offsets)
    pairwise = all(
        offsets[i] != offsets[j] for i in range(len(offsets)) for j in range(i + 1, len(offsets))
    )

    cycle_set = set(cycle.vertices)
    on_c = off_c = 0
    images_in_c = True
    for v in range(surface.nvertices):
        imgs = [m.image_turns(v) for m in maps]
        if any(not 0 <= float(t) < 1 for t in imgs):
            images_in_c = False
        if v in cycle_set:
            on_c += 1
            # f_i(x) = x + offset differs from x since the offset is not integral
            if any((img - ret.theta_turns(v)) % 1 == 0 for img in imgs):
                nonzero = False
        else:
            off_c += 1  # f_i(x) lies on C, x does not: distinct by construction
    midpoints = 0
    for tri_id, tri in enumerate(surface.disk_triangles):
        lifts = ret.tri_lifts[tri_id]
        for a in range(3):
            b = (a + 1) % 3
            midpoints += 1
            base = ((lifts[a] + lifts[b]) / 2.0) % 1.0
            imgs = [(base + float(m.offset_turns)) % 1.0 for m in maps]
            if any(not 0 <= t < 1 for t in imgs):
                images_in_c = False
    midpoints //= 2  # every interior edge midpoint was visited twice

    checks["images_in_C"] = images_in_c
    checks["no_coincidence_with_identity"] = nonzero
    checks["pairwise_distinct_offsets"] = pairwise

    # smallest angular gap between any two of the maps, identity included
    all_offsets = [Fraction(0)] + offsets
    gap = min(
        abs(all_offsets[i] - all_offsets[j])
        for i in range(len(all_offsets))
        for j in range(i + 1, len(all_offsets))
    )

    return VerificationReport(
        surface.g,
        n,
        surface.resolution,
        checks,
        2 * math.pi / float(1 / gap),
        surface.nvertices,
        midpoints,
    )


def export_section_data(surface, maps, samples, path):
    """Plot-ready JSON: each sample is (triangle id, barycentric weights)."""
    ret = maps[0].retraction
    doc = {
        "g": surface.g,
        "n": len(maps),
        "resolution": surface.resolution,
        "cycle": list(surface.cycle.vertices),
        "samples": [],
    }
    for tri_id, bary in samples:
        theta = ret.theta_at(tri_id, bary)
        doc["samples"].append(
            {
                "point": [tri_id, list(bary)],
                "theta": 2 * math.pi * theta,
                "images": [2 * math.pi * m.image_turns_at(tri_id, bary) for m in maps],
            }
        )
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
    return path


def default_samples(surface, count=32):
    """Evenly spaced triangle centroids."""
    total = len(surface.disk_triangles)
    count = min(count, total)
    step = max(total // count, 1)
    bary = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
    return [(i, tuple(float(x) for x in bary)) for i in range(0, total, step)][:count]
