"""Numerical hyperboloid-model geometry: polyhedron realizations, regular
ideal drums and Platonic cells, horoball data, and canonical-decomposition
spot checks.

Conventions.  R^4 carries the bilinear form <x,y> = x1 y1 + x2 y2 + x3 y3
- x4 y4; hyperbolic space is the sheet q(x) = -1, x4 > 0.  A plane is the
orthogonal complement of a unit spacelike normal e (q(e) = 1); for outward
normals of adjacent faces the interior dihedral angle satisfies
cos(angle) = -<e_i, e_j>, and disjoint planes have cosh(dist) = -<e_i, e_j>.
A horoball is encoded by a future null vector w scaled so its boundary is
{x : <x, w> = -1}; then d(x, H_w) = log(-<x, w>) for unit x (signed inside).
The formula is validated against an independent upper-half-space computation
in the test suite.

Everything this module computes is floating point at tolerance 1e-9; the
exact layers live elsewhere.  Geometry objects are immutable after
construction, and the sampling verifier only reads shared state, so all of
this is safe under concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import atan, cos, pi, sin, sqrt, tan
from typing import Optional

import numpy as np

from .coxeter import CoxeterPresentation, geometry_of, validate_presentation
from .errors import GeometryError, VerificationError

TOL = 1e-9
WALL_SKIP_TOL = 1e-8
J = np.diag([1.0, 1.0, 1.0, -1.0])


def mdot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3]


def classify_point(v, tol=TOL):
    """'finite' (q<0), 'ideal' (q~0) or 'ultra_ideal' (q>0) after unit-norm
    scaling."""
    v = np.asarray(v, float)
    nv = v / np.linalg.norm(v)
    q = mdot(nv, nv)
    if q < -tol:
        return "finite"
    if q > tol:
        return "ultra_ideal"
    return "ideal"


@dataclass(frozen=True)
class LorentzVector:
    coords: tuple[float, float, float, float]
    kind: str

    @staticmethod
    def of(v) -> "LorentzVector":
        return LorentzVector(tuple(float(c) for c in v), classify_point(v))


def horoball_distance(x, w):
    """Distance from unit point x to the horoball of w (negative inside)."""
    return float(np.log(-mdot(x, w)))


def ball_to_hyperboloid(p):
    p = np.asarray(p, float)
    r2 = p @ p
    return np.array([*(2 * p / (1 - r2)), (1 + r2) / (1 - r2)])


def normalize_point(x):
    x = np.asarray(x, float)
    q = mdot(x, x)
    if q >= 0:
        raise GeometryError("not a timelike vector")
    x = x / sqrt(-q)
    return x if x[3] > 0 else -x


# -- tiling angles -----------------------------------------------------------

def tiling_angles(m: int, n: int) -> tuple[float, float]:
    """Interior angles (alpha_m, alpha_n) of the two regular polygons in the
    [m,n,m,n] tiling: equal edge lengths and alpha_m + alpha_n = pi force
    tan(alpha_m / 2) = cos(pi/m) / cos(pi/n)."""
    if geometry_of(m, n) != "Hyperbolic":
        raise GeometryError(f"({m},{n}) is not hyperbolic")
    if m == n:
        return pi / 2, pi / 2
    if m < n:  # evaluate on the normalized order so swapping is exact
        an, am = tiling_angles(n, m)
        return am, an
    am = 2 * atan(cos(pi / m) / cos(pi / n))
    return am, pi - am


def regular_polygon_vertices(p: int, alpha: float) -> np.ndarray:
    """Vertices of the regular hyperbolic p-gon with interior angle alpha,
    centered on the axis in the x1x2-plane."""
    prod = cos(pi / p) / tan(alpha / 2) / sin(pi / p)  # cot(pi/p) cot(alpha/2)
    if prod <= 1:
        raise GeometryError("no hyperbolic polygon with this angle")
    R = np.arccosh(prod)
    return np.array([[np.sinh(R) * cos(2 * pi * k / p),
                      np.sinh(R) * sin(2 * pi * k / p), 0.0, np.cosh(R)]
                     for k in range(p)])


def polygon_edge_and_angle(p: int, alpha: float) -> tuple[float, float]:
    """Edge length and measured vertex angle of the constructed p-gon."""
    vs = regular_polygon_vertices(p, alpha)
    edge = np.arccosh(-mdot(vs[0], vs[1]))

    def unit_tangent(x, y):
        u = y + mdot(x, y) * x
        return u / sqrt(mdot(u, u))

    t1 = unit_tangent(vs[0], vs[1])
    t2 = unit_tangent(vs[0], vs[-1])
    ang = np.arccos(np.clip(mdot(t1, t2), -1, 1))
    return float(edge), float(ang)


def tiling_angle_oracle(m: int, n: int, iters: int = 80) -> float:
    """Independent derivation of alpha_m: bisect for the angle at which the
    constructed regular m-gon and n-gon (angles summing to pi) share an edge
    length.  Uses polygon construction only, not the closed form."""
    if geometry_of(m, n) != "Hyperbolic":
        raise GeometryError(f"({m},{n}) is not hyperbolic")
    lo = 2 * pi / n + 1e-12   # n-gon with angle pi-a exists iff a > 2*pi/n
    hi = pi - 2 * pi / m - 1e-12

    def gap(a):
        em, am_meas = polygon_edge_and_angle(m, a)
        en, _ = polygon_edge_and_angle(n, pi - a)
        return em - en

    # edge of the m-gon shrinks as its angle grows, edge of the n-gon grows
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0:
            lo = mid
        else:
            hi = mid
    alpha = 0.5 * (lo + hi)
    _, measured = polygon_edge_and_angle(m, alpha)
    if abs(measured - alpha) > 1e-9:
        raise VerificationError("constructed polygon angle drifted")
    return alpha


# -- polyhedron realization --------------------------------------------------

@dataclass(frozen=True)
class PolyhedronRealization:
    presentation: CoxeterPresentation
    normals: np.ndarray                 # one outward unit normal per face
    vertices: tuple[LorentzVector, ...]
    incidence: tuple[tuple[int, ...], ...]  # faces through each vertex

    def recomputed_gram(self) -> np.ndarray:
        E = self.normals
        return 2 * (E @ J @ E.T)


def realize(p: CoxeterPresentation) -> PolyhedronRealization:
    """Factor gram/2 = N J N^T through the nonzero eigenpairs; rows of N are
    the face normals.  Vertices come from triples of face planes."""
    validate_presentation(p)
    A = p.gram_float() / 2
    s = A.shape[0]
    evals, evecs = np.linalg.eigh(A)
    order = np.argsort(evals)
    neg, zero, pos = order[0], order[1:s - 3], order[s - 3:]
    if evals[neg] >= -TOL or any(abs(evals[z]) > 1e-7 for z in zero) \
            or any(evals[q] <= TOL for q in pos):
        raise GeometryError("gram/2 does not have signature (3,1) plus kernel")
    cols = list(pos) + [neg]
    N = np.zeros((s, 4))
    for out_col, col in enumerate(cols):
        N[:, out_col] = evecs[:, col] * sqrt(abs(evals[col]))
    # interior reference point: least-squares solve <x, e_i> = -1
    x0, *_ = np.linalg.lstsq(N @ J, -np.ones(s), rcond=None)
    if mdot(x0, x0) >= 0 or any((N @ J @ x0) > -1e-9):
        raise VerificationError("no interior reference point found")
    if x0[3] < 0:  # fix global time orientation (T J T = J keeps products)
        N[:, 3] *= -1
    err = np.max(np.abs(2 * (N @ J @ N.T) - p.gram_float()))
    if err > 1e-8:
        raise VerificationError(f"normals fail to reproduce the Gram matrix ({err})")

    verts, incid = _find_vertices(N)
    return PolyhedronRealization(p, N, verts, incid)


def _find_vertices(N):
    """Vertex census from the face normals.

    Ideal vertices arise where two planes meet at infinity (<e_i,e_j> = -1);
    then e_i + e_j is the null direction.  Finite vertices are triple-plane
    intersections with q < 0 on the correct side of every face.  An
    ultra-ideal vertex is a triple intersection with q > 0 whose three
    planes pairwise intersect in H^3 and which is the pole of some face
    (the truncation face), again on the correct side of the others.
    """
    s = len(N)
    gram2 = N @ J @ N.T  # <e_i, e_j>
    cands = []  # (vector, polar_face | None)
    for i in range(s):
        for j in range(i + 1, s):
            if abs(gram2[i, j] + 1) < 1e-9:
                u = N[i] + N[j]
                u = u / np.linalg.norm(u)
                if u[3] < 0:
                    u = -u
                if np.max(N @ J @ u) <= 1e-8:
                    cands.append((u, None))
    for triple in _triples(s):
        M = np.array([N[i] @ J for i in triple])
        if np.linalg.matrix_rank(M, tol=1e-9) < 3:
            continue
        _, _, vt = np.linalg.svd(M)
        v = vt[-1]
        v = v / np.linalg.norm(v)
        q = mdot(v, v)
        if q < -TOL:
            if v[3] < 0:
                v = -v
            if np.max(N @ J @ v) <= 1e-8:
                cands.append((v, None))
        elif q > TOL:
            if any(abs(gram2[a, b]) >= 1 - 1e-9
                   for a in triple for b in triple if a < b):
                continue  # two defining planes do not cross in H^3
            polar = next((f for f in range(s)
                          if min(np.linalg.norm(v - N[f] / np.linalg.norm(N[f])),
                                 np.linalg.norm(v + N[f] / np.linalg.norm(N[f])))
                          < 1e-7), None)
            if polar is None:
                continue
            if mdot(v, N[polar]) < 0:
                v = -v
            sides = N @ J @ v
            if all(sides[f] <= 1e-8 for f in range(s) if f != polar):
                cands.append((v, polar))
    verts, incid = [], []
    for v, polar in cands:
        if any(abs(abs(v @ np.asarray(x.coords))) > 1 - 1e-8 for x in verts):
            continue
        faces = [f for f in range(s) if abs(mdot(v, N[f])) < 1e-7]
        if polar is not None:
            faces.append(polar)
        verts.append(LorentzVector.of(v))
        incid.append(tuple(sorted(faces)))
    return tuple(verts), tuple(incid)


def _triples(s):
    for i in range(s):
        for j in range(i + 1, s):
            for k in range(j + 1, s):
                yield (i, j, k)


def realized_angles(r: PolyhedronRealization):
    """(i, j, kind, value): dihedral angles of intersecting face pairs
    (right angles included) and cosh-distances of ultraparallel pairs, from
    the realized normals."""
    out = []
    s = len(r.normals)
    for i in range(s):
        for j in range(i + 1, s):
            c = -mdot(r.normals[i], r.normals[j])
            if c < 1 - 1e-9:
                out.append((i + 1, j + 1, "angle", float(np.arccos(np.clip(c, -1, 1)))))
            elif abs(c - 1) <= 1e-9:
                out.append((i + 1, j + 1, "ideal", 0.0))
            else:
                out.append((i + 1, j + 1, "ultraparallel", float(c)))
    return out


def random_lorentz_transform(seed: int) -> np.ndarray:
    """Random orthochronous Lorentz matrix by Gram-Schmidt for the form."""
    rng = np.random.default_rng(seed)
    while True:
        B = rng.normal(size=(4, 4))
        cols = []
        t = B[:, 0]
        if mdot(t, t) >= -1e-6:
            continue
        t = t / sqrt(-mdot(t, t))
        if t[3] < 0:
            t = -t
        cols.append(t)
        ok = True
        for k in range(1, 4):
            v = B[:, k]
            v = v + mdot(v, cols[0]) * cols[0]  # timelike: add projection
            for u in cols[1:]:
                v = v - mdot(v, u) * u
            qq = mdot(v, v)
            if qq <= 1e-9:
                ok = False
                break
            cols.append(v / sqrt(qq))
        if ok:
            return np.column_stack([cols[1], cols[2], cols[3], cols[0]])


# -- ideal cells: drums and Platonic solids ---------------------------------

@dataclass(frozen=True)
class IdealCell:
    """A regular ideal cell with equivariant horoballs.

    vertices are null rows; horoballs are the same rows rescaled to the
    chosen cusp normalization; reflections are unit spacelike normals of the
    symmetry planes used to cut basins; adjacency lists the edges.
    """
    kind: str
    vertices: np.ndarray
    normals: np.ndarray
    horoballs: np.ndarray
    reflections: np.ndarray
    adjacency: tuple[tuple[int, int], ...]
    isometries: tuple[np.ndarray, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class DrumGeometry:
    cell: IdealCell
    m: int
    n: int
    side: int                      # number of base edges
    tiling_angles: tuple[float, float]
    base_lateral: float
    lateral_lateral: float

    @property
    def base_vertices(self) -> np.ndarray:
        return self.cell.vertices

    @property
    def horoballs(self) -> np.ndarray:
        return self.cell.horoballs


def build_drum(m: int, n: int, side: Optional[int] = None) -> DrumGeometry:
    """Regular ideal drum over the side-gon of the hyperbolic [m,n,m,n]
    tiling.

    The lateral-lateral dihedral equals the tiling angle of the drum's own
    polygon and the base-lateral dihedral is half the opposite polygon's
    angle; with alpha_side in (2*pi/side, pi - 2*pi/side) this is the unique
    regular ideal drum, and that window is exactly the hyperbolic range.
    """
    am, an = tiling_angles(m, n)
    side = n if side is None else side
    if side == n:
        alpha_self, alpha_other = an, am
    elif side == m:
        alpha_self, alpha_other = am, an
    else:
        raise GeometryError(f"side must be {m} or {n}")
    th = 2 * pi / side
    t2 = (cos(th) + cos(alpha_self)) / (1 - cos(th))
    if t2 <= 0:
        raise GeometryError("drum does not exist: lateral tilt is imaginary")
    t, r = sqrt(t2), sqrt(1 + t2)
    beta = alpha_other / 2     # = (pi - alpha_self)/2, base-lateral dihedral
    c = cos(beta) / t
    a = sqrt(1 + c * c)
    lateral = np.array([[r * cos((k + 0.5) * th), r * sin((k + 0.5) * th), 0.0, t]
                        for k in range(side)])
    bases = np.array([[0.0, 0.0, a, c], [0.0, 0.0, -a, c]])
    normals = np.vstack([lateral, bases])

    verts = []
    for b in bases:
        for k in range(side):
            M = np.array([b @ J, lateral[k - 1] @ J, lateral[k] @ J])
            _, _, vt = np.linalg.svd(M)
            v = vt[-1]
            if v[3] < 0:
                v = -v
            q = mdot(v, v)
            if abs(q) > 1e-9 * (v @ v):
                raise VerificationError("drum vertex is not ideal")
            verts.append(v / v[3])
    verts = np.array(verts)

    adjacency = []
    for k in range(side):  # base edges
        adjacency.append((k, (k + 1) % side))
        adjacency.append((side + k, side + (k + 1) % side))
    for k in range(side):  # vertical edges
        adjacency.append((k, side + k))

    reflections = []
    for k in range(side):
        phi = pi * k / side
        reflections.append(np.array([-sin(phi), cos(phi), 0.0, 0.0]))
    reflections.append(np.array([0.0, 0.0, 1.0, 0.0]))

    isometries = []
    for k in range(side):
        for refl in (False, True):
            for flip in (1.0, -1.0):
                g = np.zeros((4, 4))
                ang = 2 * pi * k / side
                cA, sA = cos(ang), sin(ang)
                if refl:
                    g[:2, :2] = [[cA, sA], [sA, -cA]]
                else:
                    g[:2, :2] = [[cA, -sA], [sA, cA]]
                g[2, 2] = flip
                g[3, 3] = 1.0
                isometries.append(g)

    cell = IdealCell(f"drum({side})", verts, normals, verts.copy(),
                     np.array(reflections), tuple(adjacency),
                     tuple(isometries))
    bl = float(np.arccos(-mdot(bases[0], lateral[0])))
    ll = float(np.arccos(-mdot(lateral[0], lateral[1])))
    return DrumGeometry(cell, m, n, side, (am, an), bl, ll)


def build_platonic_cell(kind: str) -> IdealCell:
    """Regular ideal tetrahedron or octahedron with horoballs expanded to be
    pairwise tangent at edge midpoints (<w_i, w_j> = -2 on edges)."""
    if kind == "tetrahedron":
        dirs = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]],
                        float) / sqrt(3)
        verts = np.hstack([dirs, np.ones((4, 1))])
        face_triples = [tuple(j for j in range(4) if j != i) for i in range(4)]
        adjacency = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    elif kind == "octahedron":
        dirs = np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0],
                         [0, 0, 1], [0, 0, -1]], float)
        verts = np.hstack([dirs, np.ones((6, 1))])
        face_triples = [(0 if sx > 0 else 1, 2 if sy > 0 else 3, 4 if sz > 0 else 5)
                        for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)]
        adjacency = [(i, j) for i in range(6) for j in range(i + 1, 6)
                     if abs(dirs[i] @ dirs[j]) < 1e-12]
    else:
        raise GeometryError(f"unknown cell kind {kind!r}")

    i0, j0 = adjacency[0]
    lam = sqrt(2 / -mdot(verts[i0], verts[j0]))
    horo = verts * lam
    for (i, j) in adjacency:
        if abs(mdot(horo[i], horo[j]) + 2) > 1e-12:
            raise VerificationError("edge orbit is not equinormalized")

    normals = []
    center = np.array([0.0, 0.0, 0.0, 1.0])
    for tri in face_triples:
        M = np.array([verts[i] @ J for i in tri])
        _, _, vt = np.linalg.svd(M)
        nrm = vt[-1]
        nrm = nrm / sqrt(abs(mdot(nrm, nrm)))
        if mdot(center, nrm) > 0:
            nrm = -nrm
        normals.append(nrm)

    # vertex-pair bisectors; for these cells each one is a symmetry plane
    refl = []
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            u = horo[i] - horo[j]
            u = u / sqrt(mdot(u, u))
            if not any(abs(abs(mdot(u, v))) > 1 - 1e-9 for v in refl):
                refl.append(u)
    for u in refl:
        R = np.eye(4) - 2 * np.outer(u, J @ u)  # x -> x - 2<x,u>u
        image = (R @ verts.T).T
        for v in image:
            if not any(np.linalg.norm(v / v[3] - w / w[3]) < 1e-9 for w in verts):
                raise VerificationError("bisector plane is not a cell symmetry")

    return IdealCell(kind, verts, np.array(normals), horo,
                     np.array(refl), tuple(adjacency))


def edge_midpoint(cell: IdealCell, i: int, j: int) -> np.ndarray:
    """Midpoint of the edge (i, j): the unit point (w_i + w_j)/sqrt(-2<wi,wj>)."""
    w = cell.horoballs
    return (w[i] + w[j]) / sqrt(-2 * mdot(w[i], w[j]))


# -- sampling verification ---------------------------------------------------

def _halton(count, start, base):
    idx = np.arange(start, start + count, dtype=np.int64)
    out = np.zeros(count)
    f = 1.0
    while idx.any():
        f /= base
        out += f * (idx % base)
        idx //= base
    return out


@dataclass(frozen=True)
class CanonicalCheckReport:
    cell: str
    samples: int
    violations: int
    skipped: int
    tolerance: float
    seed: int
    max_margin_at_walls: float

    def json_dict(self):
        return {"cell": self.cell, "samples": self.samples,
                "violations": self.violations, "skipped": self.skipped,
                "tolerance": self.tolerance, "seed": self.seed,
                "max_margin_at_walls": self.max_margin_at_walls}


def verify_basins(cell: IdealCell, samples: int = 10000,
                  seed: int = 0) -> CanonicalCheckReport:
    """Check that the nearest horoball agrees with the basin cut out by the
    symmetry planes, over quasi-random interior points.

    Points come from a Halton sequence in a box containing the cell (in ball
    coordinates), rejection-filtered to the interior; `seed` offsets the
    sequence.  Samples within WALL_SKIP_TOL of a basin wall are skipped and
    counted; `max_margin_at_walls` records the largest top-two distance gap
    among skipped samples.
    """
    w = cell.horoballs
    signs = np.sign(np.round(cell.vertices @ J @ cell.reflections.T, 12))
    kept = viol = skipped = 0
    max_margin = 0.0
    start = 1 + seed * 1_000_003
    batch = max(4 * samples, 20000)
    while kept + skipped < samples:
        pts = np.stack([_halton(batch, start, 2), _halton(batch, start, 3),
                        _halton(batch, start, 5)], axis=1) * 2 - 1
        start += batch
        r2 = np.einsum("ij,ij->i", pts, pts)
        pts = pts[r2 < 0.96]
        r2 = np.einsum("ij,ij->i", pts, pts)
        X = np.hstack([2 * pts / (1 - r2)[:, None],
                       ((1 + r2) / (1 - r2))[:, None]])
        interior = np.all(X @ J @ cell.normals.T < -1e-12, axis=1)
        X = X[interior]
        prox = -(X @ J @ w.T)          # -<x, w_i>, monotone in distance
        side = X @ J @ cell.reflections.T
        for row in range(len(X)):
            if kept + skipped >= samples:
                break
            p = prox[row]
            order = np.argsort(p)
            gap = np.log(p[order[1]]) - np.log(p[order[0]])
            if gap < WALL_SKIP_TOL:
                skipped += 1
                max_margin = max(max_margin, gap)
                continue
            cands = []
            for i in range(len(w)):
                mask = signs[i] != 0
                if np.all(signs[i][mask] * side[row][mask] >= 0):
                    cands.append(i)
            if len(cands) != 1:
                skipped += 1
                continue
            kept += 1
            if cands[0] != order[0]:
                viol += 1
    return CanonicalCheckReport(cell.kind, kept + skipped, viol, skipped,
                                WALL_SKIP_TOL, seed, float(max_margin))


def drum_symmetries_ok(d: DrumGeometry, tol: float = TOL) -> bool:
    """All 4n candidate isometries permute the vertex set within tol."""
    V = d.cell.vertices
    for g in d.cell.isometries:
        img = (g @ V.T).T
        for v in img:
            if not any(np.linalg.norm(v - u) < tol * 10 for u in V):
                return False
    return True


def verify_gluing_angles(m: int, n: int, tol: float = TOL) -> bool:
    """Edge-class angle sums of the drum decomposition equal 2*pi.

    At crossing edges the four base-lateral wedges of the two drum types sum
    to pi per side of the checkerboard surfaces and double to 2*pi; around
    vertical edges the two lateral-lateral contributions per type double to
    2*pi as well.  Angles are measured from the constructed drums.
    """
    dm = build_drum(m, n, side=m)
    dn = build_drum(m, n, side=n)
    crossing = 2 * (2 * dm.base_lateral + 2 * dn.base_lateral)
    vertical = 2 * (dm.lateral_lateral + dn.lateral_lateral)
    return abs(crossing - 2 * pi) < tol and abs(vertical - 2 * pi) < tol
