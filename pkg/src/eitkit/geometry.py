"""
Domains, meshes, phantoms and reconstruction pixel grids.

Everything lives in dimensionless unit-disc scale. The forward mesh is a
polar ring mesh of a star-shaped domain (unit disc or a deformed disc given
by a radial boundary function). The reconstruction grid is an independent
square lattice clipped to a margin-shrunken copy of the domain, with exact
triangle/pixel overlap areas obtained by convex polygon clipping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "TriMesh",
    "ElectrodeLayout",
    "DiscAnomaly",
    "PolygonAnomaly",
    "Phantom",
    "PixelGrid",
    "build_disc_mesh",
    "build_deformed_mesh",
    "place_electrodes",
    "rasterize_phantom",
    "build_pixel_grid",
    "polygon_area",
    "polygon_centroid",
    "clip_polygon",
    "points_in_polygon",
    "distance_to_polyline",
    "triangle_overlaps_for",
    "save_mesh",
    "load_mesh",
    "save_pixel_grid",
    "load_pixel_grid",
]


# ---------------------------------------------------------------------------
# polygon helpers

def polygon_area(poly) -> float:
    """Signed area of a polygon (positive for counterclockwise order)."""
    p = np.asarray(poly, dtype=float)
    if len(p) < 3:
        return 0.0
    x, y = p[:, 0], p[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    return 0.5 * float(np.sum(x * yn - xn * y))


def polygon_centroid(poly):
    """Area centroid of a simple polygon; falls back to vertex mean if degenerate."""
    p = np.asarray(poly, dtype=float)
    x, y = p[:, 0], p[:, 1]
    xn, yn = np.roll(x, -1), np.roll(y, -1)
    cross = x * yn - xn * y
    a = 0.5 * np.sum(cross)
    if abs(a) < 1e-300:
        return p.mean(axis=0)
    cx = np.sum((x + xn) * cross) / (6.0 * a)
    cy = np.sum((y + yn) * cross) / (6.0 * a)
    return np.array([cx, cy])


def clip_polygon(subject, clip):
    """Clip ``subject`` against a convex counterclockwise ``clip`` polygon.

    Sutherland-Hodgman with the clip polygon supplying the half-planes, so
    the subject polygon may be arbitrary as long as the intersection is a
    single piece. Returns a (k, 2) array, empty when disjoint.
    """
    out = np.asarray(subject, dtype=float)
    clip = np.asarray(clip, dtype=float)
    for i in range(len(clip)):
        if len(out) == 0:
            break
        a = clip[i]
        b = clip[(i + 1) % len(clip)]
        ex, ey = b[0] - a[0], b[1] - a[1]
        # signed distance to the edge line; >= 0 is the kept side
        s = ex * (out[:, 1] - a[1]) - ey * (out[:, 0] - a[0])
        if np.all(s >= 0.0):
            continue
        if np.all(s < 0.0):
            return np.empty((0, 2))
        pieces = []
        m = len(out)
        for k in range(m):
            j = (k + 1) % m
            if s[k] >= 0.0:
                pieces.append(out[k])
                if s[j] < 0.0:
                    t = s[k] / (s[k] - s[j])
                    pieces.append(out[k] + t * (out[j] - out[k]))
            elif s[j] >= 0.0:
                t = s[k] / (s[k] - s[j])
                pieces.append(out[k] + t * (out[j] - out[k]))
        out = np.array(pieces) if pieces else np.empty((0, 2))
    return out


def points_in_polygon(points, poly):
    """Ray-casting inside test, vectorized over ``points``."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    poly = np.asarray(poly, dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    inside = np.zeros(len(pts), dtype=bool)
    x1, y1 = poly[:, 0], poly[:, 1]
    x2, y2 = np.roll(x1, -1), np.roll(y1, -1)
    for k in range(len(poly)):
        cond = (y1[k] > y) != (y2[k] > y)
        if not np.any(cond):
            continue
        xi = (x2[k] - x1[k]) * (y - y1[k]) / (y2[k] - y1[k] + 1e-300) + x1[k]
        inside ^= cond & (x < xi)
    return inside


def distance_to_polyline(points, poly):
    """Distance from each point to a closed polyline (polygon boundary)."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    poly = np.asarray(poly, dtype=float)
    a = poly
    b = np.roll(poly, -1, axis=0)
    ab = b - a                                     # (m, 2)
    ab2 = np.maximum(np.einsum("ij,ij->i", ab, ab), 1e-300)
    ap = pts[:, None, :] - a[None, :, :]           # (n, m, 2)
    t = np.clip(np.einsum("nmj,mj->nm", ap, ab) / ab2, 0.0, 1.0)
    proj = a[None, :, :] + t[:, :, None] * ab[None, :, :]
    d = np.linalg.norm(pts[:, None, :] - proj, axis=2)
    return d.min(axis=1)


# ---------------------------------------------------------------------------
# mesh

@dataclass(frozen=True)
class TriMesh:
    """Conforming triangular mesh with an ordered boundary loop.

    nodes : (n_nodes, 2) float array
    triangles : (n_tri, 3) int array, counterclockwise vertex order
    boundary_nodes : (n_bnd,) int array tracing the boundary counterclockwise
    """

    nodes: np.ndarray
    triangles: np.ndarray
    boundary_nodes: np.ndarray

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def triangle_areas(self):
        p = self.nodes[self.triangles]
        return 0.5 * ((p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1])
                      - (p[:, 2, 0] - p[:, 0, 0]) * (p[:, 1, 1] - p[:, 0, 1]))

    def triangle_centroids(self):
        return self.nodes[self.triangles].mean(axis=1)

    def boundary_polygon(self):
        return self.nodes[self.boundary_nodes]

    def boundary_edge_lengths(self):
        p = self.boundary_polygon()
        return np.linalg.norm(np.roll(p, -1, axis=0) - p, axis=1)

    def validate(self) -> None:
        """Raise ValueError if any mesh invariant is violated."""
        areas = self.triangle_areas()
        if np.any(areas <= 0.0):
            raise ValueError("mesh has %d non-positively oriented triangles"
                             % int(np.sum(areas <= 0.0)))
        edge_count: dict[tuple[int, int], int] = {}
        for tri in self.triangles:
            for i in range(3):
                e = (int(tri[i]), int(tri[(i + 1) % 3]))
                key = (min(e), max(e))
                edge_count[key] = edge_count.get(key, 0) + 1
        if any(c > 2 for c in edge_count.values()):
            raise ValueError("mesh is non-conforming: an edge is shared by >2 triangles")
        bset = set()
        nb = len(self.boundary_nodes)
        for k in range(nb):
            e = (int(self.boundary_nodes[k]), int(self.boundary_nodes[(k + 1) % nb]))
            key = (min(e), max(e))
            if edge_count.get(key, 0) != 1:
                raise ValueError("boundary edge %s not on exactly one triangle" % (key,))
            bset.add(key)
        exterior = {k for k, c in edge_count.items() if c == 1}
        if exterior != bset:
            raise ValueError("boundary loop does not account for all exterior edges")


@dataclass(frozen=True)
class ElectrodeLayout:
    """Point electrodes as boundary node indices, counterclockwise order."""

    n_electrodes: int
    electrode_nodes: np.ndarray

    def __post_init__(self):
        if len(self.electrode_nodes) != self.n_electrodes:
            raise ValueError("electrode count mismatch")
        if len(set(int(i) for i in self.electrode_nodes)) != self.n_electrodes:
            raise ValueError("electrode nodes must be distinct")


def _resample_by_arclength(radius_fn, n_samples: int = 4096):
    """Tabulate the boundary and the inverse arclength parameterization."""
    theta = np.linspace(0.0, 2.0 * math.pi, n_samples + 1)
    rho = np.array([float(radius_fn(t)) for t in theta])
    if np.min(rho) <= 0.0:
        raise ValueError("boundary radius function must be strictly positive")
    if abs(rho[0] - rho[-1]) > 1e-9 * max(1.0, abs(rho[0])):
        raise ValueError("boundary radius function must be 2*pi periodic")
    drho = np.gradient(rho, theta)
    ds = np.sqrt(rho**2 + drho**2)
    s = np.concatenate([[0.0], np.cumsum(0.5 * (ds[1:] + ds[:-1]) * np.diff(theta))])
    return theta, s


def _polar_mesh(radius_fn, target_elements: int) -> TriMesh:
    if target_elements < 16:
        raise ValueError("target_elements must be at least 16")
    theta_tab, s_tab = _resample_by_arclength(radius_fn)
    total_len = s_tab[-1]

    n_rings = max(2, int(round(math.sqrt(target_elements / (2.0 * math.pi)))))
    c = target_elements / n_rings**2
    ring_counts = [max(3, int(round(c * i))) for i in range(1, n_rings + 1)]

    nodes = [np.zeros(2)]
    ring_nodes = []      # node indices per ring
    ring_params = []     # arc parameter in [0, 1) per ring node
    for i, m in enumerate(ring_counts, start=1):
        frac = i / n_rings
        stagger = 0.5 if i % 2 == 1 else 0.0
        t = (np.arange(m) + stagger) / m
        ang = np.interp(t * total_len, s_tab, theta_tab)
        rho = np.array([float(radius_fn(a)) for a in ang])
        idx = np.arange(len(nodes), len(nodes) + m)
        for a, r in zip(ang, rho):
            nodes.append(frac * r * np.array([math.cos(a), math.sin(a)]))
        ring_nodes.append(idx)
        ring_params.append(t)

    tris = []
    first = ring_nodes[0]
    for k in range(len(first)):
        tris.append((0, first[k], first[(k + 1) % len(first)]))
    for i in range(1, n_rings):
        inner, outer = ring_nodes[i - 1], ring_nodes[i]
        ti = np.append(ring_params[i - 1], ring_params[i - 1][0] + 1.0)
        to = np.append(ring_params[i], ring_params[i][0] + 1.0)
        mi, mo = len(inner), len(outer)
        a = b = 0
        while a < mi or b < mo:
            take_outer = b < mo and (a == mi or to[b + 1] <= ti[a + 1])
            if take_outer:
                tris.append((inner[a % mi], outer[b % mo], outer[(b + 1) % mo]))
                b += 1
            else:
                tris.append((inner[a % mi], outer[b % mo], inner[(a + 1) % mi]))
                a += 1

    mesh_nodes = np.array(nodes)
    mesh_tris = np.array(tris, dtype=np.int64)
    # enforce counterclockwise orientation
    p = mesh_nodes[mesh_tris]
    areas = 0.5 * ((p[:, 1, 0] - p[:, 0, 0]) * (p[:, 2, 1] - p[:, 0, 1])
                   - (p[:, 2, 0] - p[:, 0, 0]) * (p[:, 1, 1] - p[:, 0, 1]))
    flip = areas < 0.0
    mesh_tris[flip] = mesh_tris[flip][:, ::-1]
    mesh = TriMesh(mesh_nodes, mesh_tris, ring_nodes[-1].copy())
    mesh.validate()
    return mesh


def build_disc_mesh(radius: float, target_elements: int) -> TriMesh:
    """Build a triangular mesh of a disc of the given radius.

    Nodes sit on concentric rings; the element count lands within a few
    percent of ``target_elements`` and the boundary nodes are equispaced
    in arc length.
    """
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    return _polar_mesh(lambda t: radius, target_elements)


def build_deformed_mesh(boundary_radius_fn, target_elements: int) -> TriMesh:
    """Build a mesh of a star-shaped domain with boundary r = f(theta).

    ``boundary_radius_fn`` must be strictly positive, smooth and 2*pi
    periodic. Boundary nodes are placed equispaced in boundary arc length;
    interior rings are scaled copies of the boundary.
    """
    return _polar_mesh(boundary_radius_fn, target_elements)


def default_deformation(amplitude: float = 0.15, frequency: int = 2):
    """Radial boundary function 1 + amplitude*cos(frequency*theta)."""
    return lambda t: 1.0 + amplitude * math.cos(frequency * t)


def place_electrodes(mesh: TriMesh, n_electrodes: int) -> ElectrodeLayout:
    """Pick boundary nodes nearest to equispaced arc-length targets.

    Raises ValueError when two targets snap to the same node or when the
    boundary has fewer nodes than requested electrodes.
    """
    nb = len(mesh.boundary_nodes)
    if n_electrodes > nb:
        raise ValueError("more electrodes than boundary nodes")
    seglen = mesh.boundary_edge_lengths()
    cum = np.concatenate([[0.0], np.cumsum(seglen)])[:-1]
    total = float(np.sum(seglen))
    chosen = []
    for j in range(n_electrodes):
        target = total * j / n_electrodes
        d = np.abs(cum - target)
        d = np.minimum(d, total - d)
        chosen.append(int(np.argmin(d)))
    if len(set(chosen)) != n_electrodes:
        raise ValueError("electrode targets snapped to duplicate boundary nodes")
    return ElectrodeLayout(n_electrodes, mesh.boundary_nodes[np.array(chosen)])


# ---------------------------------------------------------------------------
# phantoms

@dataclass(frozen=True)
class DiscAnomaly:
    center: tuple[float, float]
    radius: float
    contrast: float

    def contains(self, points):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        d = np.linalg.norm(pts - np.asarray(self.center, dtype=float), axis=1)
        return d <= self.radius

    def boundary_samples(self, n=64):
        t = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
        c = np.asarray(self.center, dtype=float)
        return c + self.radius * np.column_stack([np.cos(t), np.sin(t)])


@dataclass(frozen=True)
class PolygonAnomaly:
    vertices: np.ndarray
    contrast: float

    def contains(self, points):
        return points_in_polygon(points, self.vertices)

    def boundary_samples(self, n=64):
        v = np.asarray(self.vertices, dtype=float)
        mids = 0.5 * (v + np.roll(v, -1, axis=0))
        return np.vstack([v, mids])


@dataclass(frozen=True)
class Phantom:
    """Reference conductivity plus anomaly regions with additive contrasts."""

    sigma0: float = 1.0
    anomalies: tuple = ()
    interior_margin: float = 0.05

    def validate(self, mesh: TriMesh) -> None:
        boundary = mesh.boundary_polygon()
        for k, an in enumerate(self.anomalies):
            samples = an.boundary_samples()
            d = distance_to_polyline(samples, boundary)
            inside = points_in_polygon(samples, boundary)
            if not np.all(inside) or np.min(d) < self.interior_margin:
                raise ValueError("anomaly %d closer than %g to the boundary"
                                 % (k, self.interior_margin))
        sigma = rasterize_phantom(self, mesh, validate=False)
        if np.min(sigma) <= 0.0:
            raise ValueError("anomaly contrasts drive conductivity non-positive")


def rasterize_phantom(phantom: Phantom, mesh: TriMesh, validate: bool = True):
    """Per-triangle conductivity: sigma0 plus contrast where the centroid
    falls inside an anomaly."""
    if validate:
        phantom.validate(mesh)
    sigma = np.full(mesh.n_triangles, float(phantom.sigma0))
    cent = mesh.triangle_centroids()
    for an in phantom.anomalies:
        sigma[an.contains(cent)] += an.contrast
    return sigma


# ---------------------------------------------------------------------------
# pixel grid

@dataclass
class PixelGrid:
    """Square-lattice pixelization of the margin-shrunken domain.

    Cells are lattice squares clipped to the shrunken region; ``lattice``
    holds each cell's integer (ix, iy) lattice coordinates, ``overlaps``
    the forward-mesh triangles intersecting each cell with exact overlap
    areas.
    """

    pixels: list
    lattice: np.ndarray
    pitch: float
    origin: np.ndarray
    region: np.ndarray
    margin: float
    areas: np.ndarray = field(default=None)
    centroids: np.ndarray = field(default=None)
    overlaps: list = field(default=None)

    def __post_init__(self):
        if self.areas is None:
            self.areas = np.array([abs(polygon_area(p)) for p in self.pixels])
        if self.centroids is None:
            self.centroids = np.array([polygon_centroid(p) for p in self.pixels])

    @property
    def n_pixels(self) -> int:
        return len(self.pixels)

    def validate(self, mesh: TriMesh | None = None) -> None:
        keys = {(int(i), int(j)) for i, j in self.lattice}
        if len(keys) != self.n_pixels:
            raise ValueError("pixel cells are not disjoint lattice squares")
        region_area = abs(polygon_area(self.region))
        if abs(self.areas.sum() - region_area) > 1e-6 * region_area:
            raise ValueError("pixel areas do not add up to the region area")
        if self.overlaps is not None:
            for n, (tri_idx, a) in enumerate(self.overlaps):
                if abs(a.sum() - self.areas[n]) > 1e-8 * self.areas[n]:
                    raise ValueError("overlap areas of pixel %d do not cover it" % n)
        if mesh is not None:
            boundary = mesh.boundary_polygon()
            verts = np.vstack(self.pixels)
            if np.min(distance_to_polyline(verts, boundary)) < self.margin * (1 - 1e-9):
                raise ValueError("a pixel violates the boundary margin")


def _shrink_polygon(poly, margin):
    """Offset a counterclockwise polygon inward by ``margin`` (mitered)."""
    p = np.asarray(poly, dtype=float)
    prev = np.roll(p, 1, axis=0)
    nxt = np.roll(p, -1, axis=0)
    d1 = p - prev
    d2 = nxt - p
    n1 = np.column_stack([-d1[:, 1], d1[:, 0]])
    n2 = np.column_stack([-d2[:, 1], d2[:, 0]])
    n1 /= np.linalg.norm(n1, axis=1, keepdims=True)
    n2 /= np.linalg.norm(n2, axis=1, keepdims=True)
    bis = n1 + n2
    norm = np.linalg.norm(bis, axis=1, keepdims=True)
    bis /= np.maximum(norm, 1e-300)
    cos_half = np.maximum(np.einsum("ij,ij->i", bis, n1), 0.5)
    return p + bis * (margin / cos_half)[:, None]


def _triangle_boxes(mesh: TriMesh):
    tp = mesh.nodes[mesh.triangles]
    return tp, tp.min(axis=1), tp.max(axis=1)


def triangle_overlaps_for(mesh: TriMesh, polygon, boxes=None):
    """Forward-mesh triangles intersecting a polygon, with overlap areas.

    Returns (indices, areas); areas come from exact convex clipping of the
    polygon against each candidate triangle.
    """
    poly = np.asarray(polygon, dtype=float)
    lo = poly.min(axis=0)
    hi = poly.max(axis=0)
    tp, tlo, thi = boxes if boxes is not None else _triangle_boxes(mesh)
    cand = np.nonzero((tlo[:, 0] <= hi[0]) & (thi[:, 0] >= lo[0])
                      & (tlo[:, 1] <= hi[1]) & (thi[:, 1] >= lo[1]))[0]
    idx, areas = [], []
    for t in cand:
        piece = clip_polygon(poly, tp[t])
        a = abs(polygon_area(piece))
        if a > 0.0:
            idx.append(int(t))
            areas.append(a)
    return np.array(idx, dtype=np.int64), np.array(areas)


def build_pixel_grid(mesh: TriMesh, target_np: int, boundary_margin: float) -> PixelGrid:
    """Build the reconstruction pixel grid on a mesh's domain.

    The region is the domain shrunken inward by ``boundary_margin``; a
    square lattice is clipped to it and the pitch is searched so the cell
    count lands near ``target_np``.
    """
    if target_np < 1:
        raise ValueError("target_np must be at least 1")
    if boundary_margin <= 0.0:
        raise ValueError("boundary_margin must be positive")
    boundary = mesh.boundary_polygon()
    region = _shrink_polygon(boundary, boundary_margin)
    region_area = polygon_area(region)
    radii = np.linalg.norm(region - polygon_centroid(region), axis=1)
    if region_area <= 0.0 or np.min(
            distance_to_polyline(region, boundary)) < 0.5 * boundary_margin:
        raise ValueError("boundary margin leaves no reconstruction region")

    center = polygon_centroid(region)

    def cells_at(pitch):
        # anchor the lattice so the region centroid is a cell center
        origin = center - 0.5 * pitch
        lo = region.min(axis=0)
        hi = region.max(axis=0)
        i0 = math.floor((lo[0] - origin[0]) / pitch) - 1
        i1 = math.ceil((hi[0] - origin[0]) / pitch) + 1
        j0 = math.floor((lo[1] - origin[1]) / pitch) - 1
        j1 = math.ceil((hi[1] - origin[1]) / pitch) + 1
        ii, jj = np.meshgrid(np.arange(i0, i1), np.arange(j0, j1), indexing="ij")
        ii, jj = ii.ravel(), jj.ravel()
        x0 = origin[0] + ii * pitch
        y0 = origin[1] + jj * pitch
        corners = np.empty((len(ii), 4, 2))
        corners[:, 0] = np.column_stack([x0, y0])
        corners[:, 1] = np.column_stack([x0 + pitch, y0])
        corners[:, 2] = np.column_stack([x0 + pitch, y0 + pitch])
        corners[:, 3] = np.column_stack([x0, y0 + pitch])
        inside = points_in_polygon(corners.reshape(-1, 2), region).reshape(-1, 4)
        n_in = inside.sum(axis=1)
        cells = []
        for k in range(len(ii)):
            if n_in[k] == 4:
                cells.append((int(ii[k]), int(jj[k]), corners[k]))
            else:
                piece = clip_polygon(region, corners[k])
                if abs(polygon_area(piece)) > 1e-12 * pitch**2:
                    cells.append((int(ii[k]), int(jj[k]), piece))
        return origin, cells

    pitch = math.sqrt(abs(region_area) / target_np)
    if target_np == 1:
        pitch = 2.1 * float(np.max(radii))
    origin, cells = cells_at(pitch)
    for _ in range(8):
        if len(cells) == target_np:
            break
        nxt_pitch = pitch * math.sqrt(len(cells) / target_np)
        nxt_origin, nxt = cells_at(nxt_pitch)
        if abs(len(nxt) - target_np) >= abs(len(cells) - target_np):
            break
        pitch, origin, cells = nxt_pitch, nxt_origin, nxt

    lattice = np.array([(i, j) for i, j, _ in cells], dtype=np.int64)
    pixels = [np.asarray(sq, dtype=float) for _, _, sq in cells]
    boxes = _triangle_boxes(mesh)
    overlaps = [triangle_overlaps_for(mesh, p, boxes) for p in pixels]
    grid = PixelGrid(pixels=pixels, lattice=lattice, pitch=pitch,
                     origin=np.asarray(origin, dtype=float), region=region,
                     margin=boundary_margin, overlaps=overlaps)
    grid.validate(mesh)
    return grid


# ---------------------------------------------------------------------------
# plain-text serialization

def save_mesh(path, mesh: TriMesh, layout: ElectrodeLayout | None = None) -> None:
    """Write mesh (and optional electrode layout) as whitespace-separated text."""
    ne = layout.n_electrodes if layout is not None else 0
    lines = ["%d %d %d %d" % (mesh.n_nodes, mesh.n_triangles,
                              len(mesh.boundary_nodes), ne)]
    for i, (x, y) in enumerate(mesh.nodes):
        lines.append("%d %.17g %.17g" % (i, x, y))
    for i, (a, b, c) in enumerate(mesh.triangles):
        lines.append("%d %d %d %d" % (i, a, b, c))
    for b in mesh.boundary_nodes:
        lines.append("%d" % b)
    if layout is not None:
        for e in layout.electrode_nodes:
            lines.append("%d" % e)
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_mesh(path):
    """Read a mesh written by :func:`save_mesh`; returns (mesh, layout_or_None)."""
    with open(path) as fh:
        tokens = fh.read().split("\n")
    nn, nt, nb, ne = (int(v) for v in tokens[0].split())
    pos = 1
    nodes = np.array([[float(v) for v in tokens[pos + i].split()[1:]]
                      for i in range(nn)])
    pos += nn
    tris = np.array([[int(v) for v in tokens[pos + i].split()[1:]]
                     for i in range(nt)], dtype=np.int64)
    pos += nt
    bnd = np.array([int(tokens[pos + i]) for i in range(nb)], dtype=np.int64)
    pos += nb
    layout = None
    if ne:
        enodes = np.array([int(tokens[pos + i]) for i in range(ne)], dtype=np.int64)
        layout = ElectrodeLayout(ne, enodes)
    return TriMesh(nodes, tris, bnd), layout


def save_pixel_grid(path, grid: PixelGrid) -> None:
    """Write a pixel grid (cells, region, overlaps) as plain text."""
    lines = ["%d %d %.17g %.17g" % (grid.n_pixels, len(grid.region),
                                    grid.pitch, grid.margin)]
    lines.append(" ".join("%.17g %.17g" % (x, y) for x, y in grid.region))
    for n in range(grid.n_pixels):
        poly = grid.pixels[n]
        lines.append("%d %d %d %d " % (n, grid.lattice[n, 0], grid.lattice[n, 1],
                                       len(poly))
                     + " ".join("%.17g %.17g" % (x, y) for x, y in poly))
    for n, (idx, areas) in enumerate(grid.overlaps):
        lines.append("%d %d " % (n, len(idx))
                     + " ".join("%d %.17g" % (t, a) for t, a in zip(idx, areas)))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def load_pixel_grid(path) -> PixelGrid:
    with open(path) as fh:
        lines = fh.read().splitlines()
    np_, nr, pitch, margin = lines[0].split()
    n_pixels, pitch, margin = int(np_), float(pitch), float(margin)
    region = np.array([float(v) for v in lines[1].split()]).reshape(-1, 2)
    assert len(region) == int(nr)
    pixels, lattice = [], []
    for n in range(n_pixels):
        parts = lines[2 + n].split()
        lattice.append((int(parts[1]), int(parts[2])))
        k = int(parts[3])
        pixels.append(np.array([float(v) for v in parts[4:4 + 2 * k]]).reshape(k, 2))
    overlaps = []
    for n in range(n_pixels):
        parts = lines[2 + n_pixels + n].split()
        k = int(parts[1])
        vals = parts[2:2 + 2 * k]
        idx = np.array([int(v) for v in vals[0::2]], dtype=np.int64)
        areas = np.array([float(v) for v in vals[1::2]])
        overlaps.append((idx, areas))
    return PixelGrid(pixels=pixels, lattice=np.array(lattice, dtype=np.int64),
                     pitch=pitch, origin=np.zeros(2), region=region,
                     margin=margin, overlaps=overlaps)
