"""Invariant trace fields from Gram matrices by the path-vector procedure.

Scale the outward normal of face r by the product of Gram entries along a
diagram path from F1; the resulting vectors span a 4-dimensional space over
the adjoint trace field, and the determinant of their inner-product matrix
determines the invariant trace field as k(P)(sqrt(det)).  Re-choosing paths
multiplies the determinant by a nonzero rational square, so the squarefree
output is path-independent.

Convention: the worksheet matrix entries are c_i * c_j * a_ij, i.e. the
pairing <e_i, e_j> is taken as a_ij rather than a_ij / 2.  The two choices
differ by the square factor 2^4 on the determinant, hence give the same
field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .coxeter import CoxeterPresentation, enumerate_cyclic_products, exact_det
from .errors import DomainError, VerificationError
from .fields import AlgebraicNumber, as_json_dict, is_rational


@dataclass(frozen=True)
class TraceFieldWorksheet:
    presentation: CoxeterPresentation
    paths: tuple[tuple[int, ...], ...]      # diagram path from F1 to each face
    coeffs: tuple[AlgebraicNumber, ...]     # c_r = product of entries on path
    basis: tuple[int, ...]                  # four face indices (1-based)
    gprime: tuple[tuple[AlgebraicNumber, ...], ...]
    det: AlgebraicNumber


@dataclass(frozen=True)
class FieldDescriptor:
    """Either an imaginary quadratic field Q(sqrt(d)) with d squarefree,
    or a symbolic extension of a non-rational adjoint trace field."""
    kind: str              # "quadratic" | "symbolic"
    d: Optional[int] = None
    label: str = ""


@dataclass(frozen=True)
class TraceFieldResult:
    adjoint_rational: bool
    adjoint_generators: tuple[AlgebraicNumber, ...]  # non-rational cyclic products
    discriminant_det: AlgebraicNumber
    invariant_field: FieldDescriptor


def _adjacency(p):
    return [[not p.gram[i][j].is_zero and i != j for j in range(p.size)]
            for i in range(p.size)]


def _bfs_paths(p):
    """Shortest paths from F1, lowest-index tie-breaking; 0-based lists."""
    adj = _adjacency(p)
    parent = {0: None}
    frontier = [0]
    while frontier:
        nxt = []
        for u in frontier:
            for v in range(p.size):
                if adj[u][v] and v not in parent:
                    parent[v] = u
                    nxt.append(v)
        frontier = sorted(nxt)
    if len(parent) != p.size:
        raise DomainError("Coxeter diagram is disconnected")
    paths = []
    for r in range(p.size):
        path, cur = [], r
        while cur is not None:
            path.append(cur)
            cur = parent[cur]
        paths.append(tuple(reversed(path)))
    return paths


def _random_paths(p, seed):
    """Random spanning-tree paths from F1 (randomized DFS)."""
    rng = random.Random(seed)
    adj = _adjacency(p)
    parent = {0: None}
    stack = [0]
    while stack:
        u = stack.pop()
        nbrs = [v for v in range(p.size) if adj[u][v] and v not in parent]
        rng.shuffle(nbrs)
        for v in nbrs:
            parent[v] = u
            stack.append(v)
    if len(parent) != p.size:
        raise DomainError("Coxeter diagram is disconnected")
    paths = []
    for r in range(p.size):
        path, cur = [], r
        while cur is not None:
            path.append(cur)
            cur = parent[cur]
        paths.append(tuple(reversed(path)))
    return paths


def build_worksheet(p: CoxeterPresentation, strategy: str = "bfs",
                    seed: int = 0) -> TraceFieldWorksheet:
    """Path coefficients, spanning basis, and the 4x4 inner-product matrix.

    strategy "bfs" uses breadth-first paths with lowest-index tie-breaking;
    "random" draws a random spanning tree (seeded), which exercises the
    square-class invariance of the determinant.
    """
    if strategy == "bfs":
        paths = _bfs_paths(p)
    elif strategy == "random":
        paths = _random_paths(p, seed)
    else:
        raise DomainError(f"unknown path strategy {strategy!r}")

    coeffs = []
    for path in paths:
        c = p.gram[0][0] if len(path) == 1 else None
        if c is None:
            c = p.gram[path[0]][path[1]]
            for a, b in zip(path[1:], path[2:]):
                c = c * p.gram[a][b]
        coeffs.append(c)

    def submatrix_nonsingular(idx):
        sub = [[p.gram[i][j] for j in idx] for i in idx]
        return not exact_det(sub).is_zero

    basis = None
    if p.size >= 4 and submatrix_nonsingular((0, 1, 2, 3)):
        basis = (0, 1, 2, 3)
    else:
        for idx in combinations(range(p.size), 4):
            if submatrix_nonsingular(idx):
                basis = idx
                break
    if basis is None:
        raise VerificationError("no nonsingular 4x4 Gram submatrix found")

    gp = tuple(tuple(coeffs[i] * coeffs[j] * p.gram[i][j] for j in basis)
               for i in basis)
    det = exact_det(gp)
    if det.is_zero:
        raise VerificationError("worksheet matrix is singular")
    return TraceFieldWorksheet(
        p, tuple(tuple(x + 1 for x in path) for path in paths),
        tuple(coeffs), tuple(b + 1 for b in basis), gp, det)


def gprime_determinant(w: TraceFieldWorksheet) -> AlgebraicNumber:
    return w.det


def squarefree_part(value: Fraction) -> tuple[Fraction, int]:
    """Write value = c^2 * d with c rational and d a squarefree integer."""
    if value == 0:
        raise DomainError("zero has no squarefree part")
    n = value.numerator * value.denominator
    sign = -1 if n < 0 else 1
    n = abs(n)
    d = 1
    c2 = 1
    f = 2
    while f * f <= n and f <= 10**6:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            if e % 2:
                d *= f
            c2 *= f ** (e // 2)
        f += 1 if f == 2 else 2
    if n > 1:
        if n > 10**12 and not _probable_prime(n):
            raise VerificationError(f"cannot certify squarefree reduction of {n}")
        d *= n
    c = Fraction(c2, value.denominator)
    assert c * c * sign * d == value
    return c, sign * d


def _probable_prime(n, bases=(2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)):
    if n < 2:
        return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def field_label(d: int) -> str:
    if d == 1:
        return "Q"
    if d == -1:
        return "Q(i)"
    if d < 0:
        return f"Q(i*sqrt({-d}))"
    return f"Q(sqrt({d}))"


def invariant_trace_field(p: CoxeterPresentation, strategy: str = "bfs",
                          seed: int = 0) -> TraceFieldResult:
    """k(P)(sqrt(det G')) in squarefree form when the adjoint trace field is
    Q, else a symbolic descriptor listing the irrational cyclic products."""
    w = build_worksheet(p, strategy, seed)
    nonrational = tuple(v for _, v in enumerate_cyclic_products(p)
                        if is_rational(v) is None)
    if not nonrational:
        q = is_rational(w.det)
        if q is None:
            raise VerificationError(
                "all cyclic products rational but det G' is not")
        _, d = squarefree_part(q)
        return TraceFieldResult(True, (), w.det,
                                FieldDescriptor("quadratic", d, field_label(d)))
    return TraceFieldResult(False, nonrational, w.det,
                            FieldDescriptor("symbolic", None,
                                            "k(P)(sqrt(det G'))"))


def trace_field_json_dict(res: TraceFieldResult) -> dict:
    return {
        "kP_rational": res.adjoint_rational,
        "kP_generators": [as_json_dict(v) for v in res.adjoint_generators],
        "det": as_json_dict(res.discriminant_det),
        "field": res.invariant_field.label,
        "d": res.invariant_field.d,
    }
