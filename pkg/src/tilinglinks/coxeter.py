"""Coxeter diagrams and exact Gram matrices for right-angled tiling links.

For a vertex pattern [m,n,m,n] on a higher-genus surface, the reflection
quotient is bounded by six planes: F1 carries both angle edges (labels m and
n to F2 and F3), F4 and F5 meet F2 and F3 at ideal vertices, and F6 is the
truncation plane, ultraparallel to F4 and F5 at exact cosh-distances.  The
spherical patterns [3,3], [4,3], [5,3] use the five-plane analogue with
finite apexes and no truncation plane.

Gram convention: diagonal entries are exactly 2; an angle pi/k contributes
-2cos(pi/k), a shared ideal vertex contributes -2, and an ultraparallel pair
at distance l contributes -2cosh(l).

Everything in this module is pure and operates on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Optional, Sequence, Union

import numpy as np

from .errors import DomainError, GeometryError, VerificationError
from .fields import (AlgebraicNumber, FieldContext, adjoin_sqrt, as_json_dict,
                     embed_cos, make_context)

SPHERICAL_TYPES = {(3, 3), (4, 3), (5, 3)}
EUCLIDEAN_TYPES = {(4, 4), (6, 3)}


def geometry_of(m: int, n: int) -> str:
    """Spherical / Euclidean / Hyperbolic according to 1/m + 1/n vs 1/2."""
    if not (isinstance(m, int) and isinstance(n, int)) or m < 3 or n < 3:
        raise DomainError(f"tiling parameters must be integers >= 3, got ({m}, {n})")
    s = Fraction(1, m) + Fraction(1, n)
    if s > Fraction(1, 2):
        return "Spherical"
    if s == Fraction(1, 2):
        return "Euclidean"
    return "Hyperbolic"


@dataclass(frozen=True)
class TilingType:
    m: int
    n: int
    geometry: str

    @staticmethod
    def of(m: int, n: int) -> "TilingType":
        return TilingType(m, n, geometry_of(m, n))

    def unordered(self):
        return (max(self.m, self.n), min(self.m, self.n))


@dataclass(frozen=True)
class Edge:
    """Labeled Coxeter-diagram edge between faces i and j (1-based)."""
    i: int
    j: int
    kind: str  # "angle" | "ideal" | "ultraparallel"
    order: Optional[int] = None                 # angle pi/order
    cosh_dist: Optional[AlgebraicNumber] = None  # exact cosh of the distance


@dataclass(frozen=True)
class CoxeterPresentation:
    m: int
    n: int
    family: str  # "hyperbolic" | "spherical"
    faces: tuple[str, ...]
    edges: tuple[Edge, ...]
    gram: tuple[tuple[AlgebraicNumber, ...], ...]
    ctx: FieldContext

    @property
    def size(self) -> int:
        return len(self.faces)

    def gram_float(self) -> np.ndarray:
        return np.array([[e.approx() for e in row] for row in self.gram])


def _gram_from_edges(ctx, size, edges):
    two = AlgebraicNumber.rational(ctx, 2)
    zero = AlgebraicNumber.rational(ctx, 0)
    g = [[two if i == j else zero for j in range(size)] for i in range(size)]
    for e in edges:
        if e.kind == "angle":
            val = -embed_cos(ctx, e.order)
        elif e.kind == "ideal":
            val = AlgebraicNumber.rational(ctx, -2)
        else:
            val = -2 * e.cosh_dist
        g[e.i - 1][e.j - 1] = g[e.j - 1][e.i - 1] = val
    return tuple(tuple(row) for row in g)


@lru_cache(maxsize=None)
def _hyperbolic_cosh_data(m, n):
    """D = cos^2(pi/m) + cos^2(pi/n) - 1 and the pair
    (cosh l_46, cosh l_56) = (cos(pi/m), cos(pi/n)) / sqrt(D)."""
    ctx = make_context(lcm(m, n))
    cm = embed_cos(ctx, m) / 2
    cn = embed_cos(ctx, n) / 2
    D = cm * cm + cn * cn - 1
    if D.sign() <= 0:
        raise GeometryError(f"({m},{n}) is not hyperbolic: discriminant <= 0")
    root = adjoin_sqrt(ctx, D)
    Dinv = D.inverse()
    return ctx, cm, cn, D, cm * root * Dinv, cn * root * Dinv


@lru_cache(maxsize=None)
def build_hyperbolic_presentation(m: int, n: int) -> CoxeterPresentation:
    """Six-face presentation for the hyperbolic pattern [m,n,m,n]."""
    if geometry_of(m, n) != "Hyperbolic":
        raise GeometryError(f"({m},{n}) is not a hyperbolic tiling type")
    ctx, _, _, _, Cmn, Cnm = _hyperbolic_cosh_data(m, n)
    edges = (
        Edge(1, 2, "angle", order=m),
        Edge(1, 3, "angle", order=n),
        Edge(2, 4, "ideal"),
        Edge(3, 5, "ideal"),
        Edge(4, 6, "ultraparallel", cosh_dist=Cmn),
        Edge(5, 6, "ultraparallel", cosh_dist=Cnm),
    )
    faces = tuple(f"F{i}" for i in range(1, 7))
    return CoxeterPresentation(m, n, "hyperbolic", faces, edges,
                               _gram_from_edges(ctx, 6, edges), ctx)


@lru_cache(maxsize=None)
def build_spherical_presentation(m: int, n: int) -> CoxeterPresentation:
    """Five-face presentation for the spherical patterns (finite apexes)."""
    if geometry_of(m, n) != "Spherical":
        raise GeometryError(f"({m},{n}) is not a spherical tiling type")
    edges = (
        Edge(1, 2, "angle", order=m),
        Edge(1, 3, "angle", order=n),
        Edge(2, 4, "ideal"),
        Edge(3, 5, "ideal"),
    )
    ctx = make_context(lcm(m, n))
    faces = tuple(f"F{i}" for i in range(1, 6))
    return CoxeterPresentation(m, n, "spherical", faces, edges,
                               _gram_from_edges(ctx, 5, edges), ctx)


def build_presentation(m: int, n: int) -> CoxeterPresentation:
    geo = geometry_of(m, n)
    if geo == "Hyperbolic":
        return build_hyperbolic_presentation(m, n)
    if geo == "Spherical":
        return build_spherical_presentation(m, n)
    raise GeometryError(
        f"({m},{n}) is Euclidean; no Coxeter polyhedron is associated here "
        "(the classifier handles Euclidean types by lookup)")


# -- exact determinants ------------------------------------------------------

def exact_det(rows: Sequence[Sequence[AlgebraicNumber]]) -> AlgebraicNumber:
    """Determinant over the exact field, expansion over column subsets."""
    s = len(rows)
    ctx = rows[0][0].ctx
    one = AlgebraicNumber.rational(ctx, 1)
    table = {0: one}
    for r in range(s):
        nxt = {}
        for mask, val in table.items():
            if val.is_zero:
                continue
            sign_flip = 0
            for c in range(s):
                bit = 1 << c
                if mask & bit:
                    sign_flip += 1
                    continue
                a = rows[r][c]
                if a.is_zero:
                    continue
                term = val * a if sign_flip % 2 == 0 else -(val * a)
                key = mask | bit
                if key in nxt:
                    nxt[key] = nxt[key] + term
                else:
                    nxt[key] = term
        table = nxt
        if not table:
            return AlgebraicNumber.rational(ctx, 0)
    return table.get((1 << s) - 1, AlgebraicNumber.rational(ctx, 0))


def solve_ultraparallel_by_minor(m: int, n: int):
    """Solve for the two unknown ultraparallel entries from singular minors.

    The rank-4 constraint forces the 5x5 minor omitting row/column 5 (resp. 4)
    to be singular.  Each minor determinant is a quadratic A*x^2 + B*x + C in
    the unknown cosh-distance x with B = 0; we recover x^2 = -C/A exactly and
    certify that the positive root is cos(pi/m)/sqrt(D) (resp. n).
    """
    if geometry_of(m, n) != "Hyperbolic":
        raise GeometryError(f"({m},{n}) is not a hyperbolic tiling type")
    ctx, cm, cn, D, Cmn, Cnm = _hyperbolic_cosh_data(m, n)
    zero = AlgebraicNumber.rational(ctx, 0)
    two = AlgebraicNumber.rational(ctx, 2)
    mtwo = AlgebraicNumber.rational(ctx, -2)

    def minor_rows(keep, x_val):
        # full 6x6 gram with the surviving ultraparallel entry set to
        # -2*x_val; the other one sits in the removed row/column
        a12, a13 = -2 * cm, -2 * cn
        full = [[two, a12, a13, zero, zero, zero],
                [a12, two, zero, mtwo, zero, zero],
                [a13, zero, two, zero, mtwo, zero],
                [zero, mtwo, zero, two, zero, zero],
                [zero, zero, mtwo, zero, two, zero],
                [zero, zero, zero, zero, zero, two]]
        i = 3 if 3 in keep else 4
        v = -2 * x_val
        full[i][5] = full[5][i] = v
        return [[full[r][c] for c in keep] for r in keep]

    results = []
    for keep, cosval in (((0, 1, 2, 3, 5), cm), ((0, 1, 2, 4, 5), cn)):
        dets = {}
        for t in (0, 1, -1):
            x = AlgebraicNumber.rational(ctx, t)
            dets[t] = exact_det(minor_rows(keep, x))
        A = (dets[1] + dets[-1]) / 2 - dets[0]
        B = (dets[1] - dets[-1]) / 2
        if not B.is_zero:
            raise VerificationError("minor determinant has a linear term")
        if A.is_zero:
            raise VerificationError("minor determinant does not depend on the unknown")
        x_squared = -(dets[0] / A)
        candidate = cosval * adjoin_sqrt(ctx, D) * D.inverse()
        if candidate * candidate != x_squared:
            raise VerificationError(
                "closed-form cosh value does not satisfy the singular-minor equation")
        if candidate.sign() <= 0:
            raise VerificationError("cosh candidate not positive")
        results.append(candidate)
    return results[0], results[1]


# -- rank and signature ------------------------------------------------------

GramLike = Union[CoxeterPresentation, Sequence[Sequence[AlgebraicNumber]]]


def _charpoly(rows):
    """Exact characteristic polynomial via Faddeev-LeVerrier.

    Returns coefficients [1, c1, ..., cs] of lambda^s + c1 lambda^(s-1) + ...
    """
    s = len(rows)
    ctx = rows[0][0].ctx
    zero = AlgebraicNumber.rational(ctx, 0)

    def mat_mul(X, Y):
        out = []
        for i in range(s):
            row = []
            for j in range(s):
                acc = zero
                for k in range(s):
                    a, b = X[i][k], Y[k][j]
                    if not (a.is_zero or b.is_zero):
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return out

    def trace(X):
        acc = zero
        for i in range(s):
            acc = acc + X[i][i]
        return acc

    coeffs = [AlgebraicNumber.rational(ctx, 1)]
    M = [list(r) for r in rows]
    c = -trace(M)
    coeffs.append(c)
    for k in range(2, s + 1):
        for i in range(s):
            M[i][i] = M[i][i] + coeffs[-1]
        M = mat_mul([list(r) for r in rows], M)
        c = -(trace(M) / k)
        coeffs.append(c)
    return coeffs


def rank_and_signature(p: GramLike) -> tuple[int, int, int]:
    """(rank, n_positive, n_negative), rank exact, signature by Descartes
    on the exact characteristic polynomial, cross-checked numerically."""
    rows = p.gram if isinstance(p, CoxeterPresentation) else p
    s = len(rows)
    coeffs = _charpoly(rows)  # lambda^s .. constant term
    trailing = 0
    while trailing < s and coeffs[s - trailing].is_zero:
        trailing += 1
    rank = s - trailing
    reduced = coeffs[:s - trailing + 1]
    signs = [c.sign() for c in reduced if not c.is_zero]
    pos = sum(1 for a, b in zip(signs, signs[1:]) if a != b)
    alt = [c.sign() * (-1) ** (len(reduced) - 1 - i)
           for i, c in enumerate(reduced) if not c.is_zero]
    neg = sum(1 for a, b in zip(alt, alt[1:]) if a != b)
    if pos + neg != rank:
        raise VerificationError("Descartes counts inconsistent with exact rank")

    fl = np.array([[e.approx() for e in row] for row in rows])
    ev = np.linalg.eigvalsh(fl)
    num = (int((ev > 1e-9).sum()), int((ev < -1e-9).sum()),
           int((np.abs(ev) <= 1e-9).sum()))
    if num != (pos, neg, s - rank):
        raise VerificationError(
            f"exact signature ({pos},{neg},{s - rank}) disagrees with "
            f"numeric eigenvalues {num}")
    return rank, pos, neg


@lru_cache(maxsize=None)
def validate_presentation(p: CoxeterPresentation) -> tuple[int, int, int]:
    """Rank/signature gate: every polyhedral Gram matrix here must have
    rank 4 and signature (3,1)."""
    rank, pos, neg = rank_and_signature(p)
    if (rank, pos, neg) != (4, 3, 1):
        raise GeometryError(
            f"Gram matrix of ({p.m},{p.n}) has rank {rank}, signature "
            f"({pos},{neg}); expected rank 4, signature (3,1)")
    return rank, pos, neg


# -- cyclic products ---------------------------------------------------------

def enumerate_cyclic_products(p: CoxeterPresentation):
    """All cyclic products b_I over simple cycles of the diagram, including
    every 2-cycle a_ij * a_ji; deterministic order (by length, then faces)."""
    s = p.size
    adj = [[not p.gram[i][j].is_zero and i != j for j in range(s)]
           for i in range(s)]
    out = []
    for i in range(s):
        for j in range(i + 1, s):
            if adj[i][j]:
                out.append(((i + 1, j + 1), p.gram[i][j] * p.gram[j][i]))

    # simple cycles of length >= 3, canonical: starts at its minimum vertex,
    # second vertex smaller than last (kills reflections)
    def extend(path, visited):
        last = path[-1]
        for nxt in range(path[0] + 1, s):
            if nxt in visited or not adj[last][nxt]:
                continue
            if len(path) >= 2 and adj[nxt][path[0]] and path[1] < nxt:
                cycle = path + [nxt]
                val = p.gram[cycle[-1]][cycle[0]]
                for a, b in zip(cycle, cycle[1:]):
                    val = val * p.gram[a][b]
                cycles.append((tuple(c + 1 for c in cycle), val))
            extend(path + [nxt], visited | {nxt})

    cycles = []
    for start in range(s):
        extend([start], {start})
    cycles.sort(key=lambda t: (len(t[0]), t[0]))
    return out + cycles


# -- serialization -----------------------------------------------------------

def presentation_json_dict(p: CoxeterPresentation) -> dict:
    def edge_dict(e):
        d = {"i": e.i, "j": e.j, "kind": e.kind}
        if e.order is not None:
            d["order"] = e.order
        if e.cosh_dist is not None:
            d["cosh_dist"] = as_json_dict(e.cosh_dist)
        return d

    return {
        "m": p.m,
        "n": p.n,
        "family": p.family,
        "faces": list(p.faces),
        "edges": [edge_dict(e) for e in p.edges],
        "gram": [[as_json_dict(e) for e in row] for row in p.gram],
        "gram_approx": [[e.approx() for e in row] for row in p.gram],
    }
