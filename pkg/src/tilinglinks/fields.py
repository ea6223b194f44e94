"""Exact arithmetic in K0 = Q(2cos(pi/L)) and quadratic extensions K0(sqrt(D)).

Elements are coordinate vectors on the power basis of the generator
g = 2cos(pi/L), stored as integer vectors with a common denominator, plus an
optional second vector carrying the coefficient of sqrt(D) for a single
adjoined square root.  All ring operations are exact; floating point enters
only through `approx`/`sign`, which evaluate the distinguished real embedding
at high precision for sign decisions.

All values are immutable after construction and every operation is a pure
function, so everything here is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Optional

import mpmath

from ._polys import content, cyclotomic, fold_palindromic, trim
from .errors import DomainError, VerificationError

_DEFAULT_PREC = 160
_SQUARE_DETECT_MAX_DEGREE = 8
_SQUARE_DETECT_MAX_DEN = 10**6


def _totient(n):
    out, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            out *= d - 1
            m //= d
            while m % d == 0:
                out *= d
                m //= d
        d += 1
    if m > 1:
        out *= m - 1
    return out


@dataclass(frozen=True)
class FieldContext:
    """The real cyclotomic field Q(2cos(pi/L)).

    `modulus` is the monic integer minimal polynomial of the generator,
    low degree first; `degree` is its degree, phi(2L)/2 for L >= 2.
    """

    L: int
    modulus: tuple[int, ...]
    degree: int

    def conjugate_indices(self):
        return tuple(k for k in range(1, self.L + 1) if gcd(k, 2 * self.L) == 1)

    @property
    def real_embedding(self) -> float:
        return float(_generator_values(self.L, 64)[0])

    def __repr__(self):
        return f"FieldContext(L={self.L}, degree={self.degree})"


@lru_cache(maxsize=None)
def make_context(L: int) -> FieldContext:
    """Field context for Q(2cos(pi/L)); degree 1 (plain Q) for L in {1, 2}."""
    if not isinstance(L, int) or L < 1:
        raise DomainError(f"L must be a positive integer, got {L!r}")
    if L == 1:
        modulus = (2, 1)  # x + 2, generator -2
    elif L == 2:
        modulus = (0, 1)  # x, generator 0
    else:
        modulus = fold_palindromic(cyclotomic(2 * L))
        expected = _totient(2 * L) // 2
        if len(modulus) - 1 != expected:
            raise VerificationError(
                f"modulus degree {len(modulus) - 1} != phi(2L)/2 = {expected}")
    return FieldContext(L=L, modulus=modulus, degree=len(modulus) - 1)


@lru_cache(maxsize=None)
def _generator_values(L, prec):
    """Real embeddings of the generator: 2cos(k*pi/L) over k coprime to 2L,
    principal embedding (k=1) first."""
    ctx = make_context(L)
    with mpmath.workprec(prec + 20):
        vals = tuple(2 * mpmath.cos(mpmath.pi * k / L)
                     for k in ctx.conjugate_indices())
    return vals


def _eval_vec(num, den, gval):
    acc = mpmath.mpf(0)
    for c in reversed(num):
        acc = acc * gval + c
    return acc / den


def _eval_vec_bounded(num, den, gval):
    """Horner value together with a magnitude bound sum(|c_i| |g|^i)/den;
    the rounding error of the evaluation is about the bound times 2^-prec.
    Large coefficient vectors (e.g. inverses in high-degree fields) cancel
    massively, so the bound is essential for trusting a sign or a float."""
    acc = mpmath.mpf(0)
    mag = mpmath.mpf(0)
    ag = abs(gval)
    for c in reversed(num):
        acc = acc * gval + c
        mag = mag * ag + abs(c)
    return acc / den, mag / den


def _normalize(num, den):
    if den < 0:
        num = tuple(-c for c in num)
        den = -den
    g = gcd(content(num), den)
    if g > 1:
        num = tuple(c // g for c in num)
        den //= g
    return num, den


def _reduce_mod(vec, modulus):
    d = len(modulus) - 1
    vec = list(vec)
    if len(vec) < d:
        vec += [0] * (d - len(vec))
    for i in range(len(vec) - 1, d - 1, -1):
        c = vec[i]
        if c:
            vec[i] = 0
            base = i - d
            for j in range(d):
                vec[base + j] -= c * modulus[j]
    return tuple(vec[:d])


def _vadd(a, da, b, db):
    m = da * db // gcd(da, db)
    fa, fb = m // da, m // db
    return _normalize(tuple(x * fa + y * fb for x, y in zip(a, b)), m)


def _vmul(a, da, b, db, ctx):
    out = [0] * (2 * len(a) - 1 if a else 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _normalize(_reduce_mod(out, ctx.modulus), da * db)


def _vscale(a, da, p, q):
    return _normalize(tuple(x * p for x in a), da * q)


@dataclass(frozen=True)
class AlgebraicNumber:
    """An exact element of K0 = Q(2cos(pi/L)), or of K0(sqrt(D)).

    The optional (`ext_num`, `ext_den`) vector is the coefficient of
    sqrt(radicand); at most one radicand may appear among elements that are
    combined arithmetically.
    """

    ctx: FieldContext
    num: tuple[int, ...]
    den: int
    ext_num: Optional[tuple[int, ...]] = None
    ext_den: int = 1
    radicand: Optional["AlgebraicNumber"] = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(ctx: FieldContext, value) -> "AlgebraicNumber":
        q = Fraction(value)
        num = (q.numerator,) + (0,) * (ctx.degree - 1)
        return AlgebraicNumber(ctx, *_normalize(num, q.denominator))

    @staticmethod
    def generator(ctx: FieldContext) -> "AlgebraicNumber":
        if ctx.degree == 1:
            return AlgebraicNumber.rational(ctx, -ctx.modulus[0])
        vec = (0, 1) + (0,) * (ctx.degree - 2)
        return AlgebraicNumber(ctx, vec, 1)

    @staticmethod
    def _make(ctx, num, den, ext_num=None, ext_den=1, radicand=None):
        num, den = _normalize(tuple(num), den)
        if ext_num is not None:
            ext_num, ext_den = _normalize(tuple(ext_num), ext_den)
            if not any(ext_num):
                ext_num, ext_den, radicand = None, 1, None
        if ext_num is None:
            radicand = None
        return AlgebraicNumber(ctx, num, den, ext_num, ext_den, radicand)

    # -- structure ---------------------------------------------------------

    @property
    def base_coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    @property
    def ext_coeffs(self) -> Optional[tuple[Fraction, ...]]:
        if self.ext_num is None:
            return None
        return tuple(Fraction(c, self.ext_den) for c in self.ext_num)

    @property
    def is_zero(self) -> bool:
        return not any(self.num) and self.ext_num is None

    def _merge_radicand(self, other):
        if self.radicand is None:
            return other.radicand
        if other.radicand is None or self.radicand == other.radicand:
            return self.radicand
        raise DomainError("cannot combine elements with different square roots")

    def _check_ctx(self, other):
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise DomainError("mismatched field contexts")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_ctx(other)
        rad = self._merge_radicand(other)
        num, den = _vadd(self.num, self.den, other.num, other.den)
        if self.ext_num is None and other.ext_num is None:
            return AlgebraicNumber._make(self.ctx, num, den)
        e1 = self.ext_num or (0,) * self.ctx.degree
        e2 = other.ext_num or (0,) * self.ctx.degree
        ext = _vadd(e1, self.ext_den, e2, other.ext_den)
        return AlgebraicNumber._make(self.ctx, num, den, *ext, rad)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return AlgebraicNumber._make(
            self.ctx, tuple(-c for c in self.num), self.den,
            None if self.ext_num is None else tuple(-c for c in self.ext_num),
            self.ext_den, self.radicand)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__add__(other.__neg__())

    def __rsub__(self, other):
        return self.__neg__().__add__(other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_ctx(other)
        rad = self._merge_radicand(other)
        ctx = self.ctx
        a, da = self.num, self.den
        b, db = self.ext_num, self.ext_den
        c, dc = other.num, other.den
        e, de = other.ext_num, other.ext_den
        num, den = _vmul(a, da, c, dc, ctx)
        if b is None and e is None:
            return AlgebraicNumber._make(ctx, num, den)
        ext_parts = []
        if e is not None:
            ext_parts.append(_vmul(a, da, e, de, ctx))
        if b is not None:
            ext_parts.append(_vmul(b, db, c, dc, ctx))
        ext = ext_parts[0]
        if len(ext_parts) == 2:
            ext = _vadd(*ext_parts[0], *ext_parts[1])
        if b is not None and e is not None:
            bd, dbd = _vmul(b, db, e, de, ctx)
            bdD = _vmul(bd, dbd, rad.num, rad.den, ctx)
            num, den = _vadd(num, den, *bdD)
        return AlgebraicNumber._make(ctx, num, den, *ext, rad)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inverse(self) -> "AlgebraicNumber":
        if self.is_zero:
            raise ArithmeticError("division by zero")
        ctx = self.ctx
        if self.ext_num is None:
            inv = _base_inverse(self.num, self.den, ctx)
            return AlgebraicNumber._make(ctx, *inv)
        # (a + b sqrt(D))^(-1) = (a - b sqrt(D)) / (a^2 - b^2 D)
        a2 = _vmul(self.num, self.den, self.num, self.den, ctx)
        b2 = _vmul(self.ext_num, self.ext_den, self.ext_num, self.ext_den, ctx)
        b2D = _vmul(*b2, self.radicand.num, self.radicand.den, ctx)
        norm = _vadd(*a2, *(tuple(-c for c in b2D[0]), b2D[1]))
        if not any(norm[0]):
            raise ArithmeticError("zero norm: radicand is a square in the base field")
        ninv = _base_inverse(*norm, ctx)
        num = _vmul(self.num, self.den, *ninv, ctx)
        ext = _vmul(tuple(-c for c in self.ext_num), self.ext_den, *ninv, ctx)
        return AlgebraicNumber._make(ctx, *num, *ext, self.radicand)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.__mul__(other.inverse())

    def __rtruediv__(self, other):
        return self.inverse().__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = AlgebraicNumber.rational(self.ctx, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber.rational(self.ctx, other)
        return NotImplemented

    # -- numeric embedding -------------------------------------------------

    def eval_embedding(self, index: int = 0, prec: int = _DEFAULT_PREC):
        """Value under the index-th real embedding (0 = principal)."""
        return self._eval_certified(index, prec)[0]

    def _eval_certified(self, index, prec):
        """(value, error bound) at the given working precision."""
        gvals = _generator_values(self.ctx.L, prec)
        with mpmath.workprec(prec):
            eps = mpmath.mpf(2) ** (-prec + 8)
            v, mag = _eval_vec_bounded(self.num, self.den, gvals[index])
            err = (mag + 1) * eps * (len(self.num) + 2)
            if self.ext_num is not None:
                rv, rerr = self.radicand._eval_certified(index, prec)
                if rv <= 2 * rerr:
                    if rv < -2 * rerr:
                        raise VerificationError(
                            "radicand negative in this embedding")
                    return v, mpmath.inf  # cannot certify, force escalation
                root = mpmath.sqrt(rv)
                root_err = rerr / (2 * root) + root * eps
                ev, emag = _eval_vec_bounded(self.ext_num, self.ext_den,
                                             gvals[index])
                eerr = (emag + 1) * eps * (len(self.ext_num) + 2)
                v += ev * root
                err += abs(ev) * root_err + eerr * (root + root_err) + abs(v) * eps
            return v, err

    def approx(self) -> float:
        """Principal real embedding as a float, certified to full double
        precision (the working precision escalates past any cancellation)."""
        if self.is_zero:
            return 0.0
        prec = _DEFAULT_PREC
        while True:
            v, err = self._eval_certified(0, prec)
            with mpmath.workprec(prec):
                if mpmath.isfinite(err) and err < abs(v) * mpmath.mpf(2) ** -60:
                    return float(v)
            prec *= 2
            if prec > 1 << 22:
                raise VerificationError("embedding did not stabilize")

    def sign(self) -> int:
        """Exact sign under the principal real embedding (certified: the
        evaluation error bound must separate the value from zero)."""
        if self.is_zero:
            return 0
        prec = _DEFAULT_PREC
        while True:
            v, err = self._eval_certified(0, prec)
            with mpmath.workprec(prec):
                if mpmath.isfinite(err) and abs(v) > 2 * err:
                    return 1 if v > 0 else -1
            prec *= 2
            if prec > 1 << 22:
                raise VerificationError(
                    "cannot certify sign; value too close to zero")

    def __float__(self):
        return self.approx()

    def __repr__(self):
        return f"<{self.approx():.12g} in Q(2cos(pi/{self.ctx.L}))" + \
            (" + sqrt ext>" if self.ext_num is not None else ">")


def _base_inverse(num, den, ctx):
    """Inverse of a base-field element via extended Euclid in Q[x]/(modulus)."""
    if not any(num):
        raise ArithmeticError("division by zero")
    if ctx.degree == 1:
        return _normalize((den,), num[0])
    a = [Fraction(c) for c in ctx.modulus]
    b = [Fraction(c, den) for c in num]
    # invariants: s*a0 + t*b0 = r  (we only track t)
    t_prev, t_cur = [], [Fraction(1)]
    r_prev, r_cur = a, _ftrim(b)
    while len(r_cur) > 1:
        q, rem = _fdivmod(r_prev, r_cur)
        t_next = _fsub(t_prev, _fmul(q, t_cur))
        r_prev, r_cur = r_cur, rem
        t_prev, t_cur = t_cur, t_next
        if not r_cur:
            raise ArithmeticError("element not invertible (modulus not coprime)")
    c = r_cur[0]
    coeffs = [t / c for t in t_cur]
    coeffs += [Fraction(0)] * (ctx.degree - len(coeffs))
    dd = 1
    for f in coeffs:
        dd = dd * f.denominator // gcd(dd, f.denominator)
    vec = tuple(int(f * dd) for f in coeffs[:ctx.degree])
    return _normalize(vec, dd)


def _ftrim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _fsub(p, q):
    out = [Fraction(0)] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] -= c
    return _ftrim(out)


def _fmul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _ftrim(out)


def _fdivmod(p, q):
    p = list(p)
    quot = [Fraction(0)] * max(1, len(p) - len(q) + 1)
    lead = q[-1]
    for k in range(len(p) - len(q), -1, -1):
        c = p[k + len(q) - 1] / lead
        quot[k] = c
        if c:
            for j, b in enumerate(q):
                p[k + j] -= c * b
    return _ftrim(quot), _ftrim(p)


# -- spec-level operations --------------------------------------------------

def embed_cos(ctx: FieldContext, k: int) -> AlgebraicNumber:
    """The exact element 2cos(pi/k) for k | L, via the Chebyshev-type
    recurrence t0 = 2, t1 = g, t_{j+1} = g*t_j - t_{j-1} at j = L/k."""
    if k < 1 or ctx.L % k != 0:
        raise DomainError(f"k={k} does not divide L={ctx.L}")
    j = ctx.L // k
    two = AlgebraicNumber.rational(ctx, 2)
    if j == 0:
        return two
    g = AlgebraicNumber.generator(ctx)
    t_prev, t_cur = two, g
    for _ in range(j - 1):
        t_prev, t_cur = t_cur, g * t_cur - t_prev
    return t_cur


def is_rational(x: AlgebraicNumber) -> Optional[Fraction]:
    """The rational value of x when x is in Q, else None."""
    if x.ext_num is not None:
        return None
    if any(x.num[1:]):
        return None
    return Fraction(x.num[0] if x.num else 0, x.den)


def adjoin_sqrt(ctx: FieldContext, D: AlgebraicNumber) -> AlgebraicNumber:
    """Positive square root of D > 0.

    Returns a base-field element when D is detected to be a perfect square
    (rational squares exactly; K0 squares via a numeric candidate verified
    exactly); otherwise an extension element with radicand D.
    """
    if D.ctx != ctx:
        raise DomainError("radicand from a different field context")
    if D.ext_num is not None:
        raise DomainError("radicand must lie in the base field")
    if D.is_zero or D.sign() <= 0:
        raise DomainError("radicand must be positive under the real embedding")
    q = is_rational(D)
    if q is not None:
        ad = q.numerator * q.denominator
        s = isqrt(ad)
        if s * s == ad:
            return AlgebraicNumber.rational(ctx, Fraction(s, q.denominator))
    elif ctx.degree <= _SQUARE_DETECT_MAX_DEGREE:
        r = _detect_square(ctx, D)
        if r is not None:
            return r
    unit = (1,) + (0,) * (ctx.degree - 1)
    zero = (0,) * ctx.degree
    return AlgebraicNumber._make(ctx, zero, 1, unit, 1, D)


def _detect_square(ctx, D):
    """Candidate sqrt(D) in K0 from the conjugate embeddings, then exact
    verification.  Returns None when no candidate verifies."""
    d = ctx.degree
    prec = 120
    gvals = _generator_values(ctx.L, prec)
    with mpmath.workprec(prec):
        conj = [_eval_vec(D.num, D.den, gv) for gv in gvals]
        if any(c <= mpmath.mpf(2) ** -40 for c in conj):
            return None  # not totally positive, cannot be a square
        roots = [mpmath.sqrt(c) for c in conj]
        V = mpmath.matrix(d, d)
        for i, gv in enumerate(gvals):
            p = mpmath.mpf(1)
            for j in range(d):
                V[i, j] = p
                p *= gv
        for bits in range(1 << (d - 1)):
            rhs = mpmath.matrix(
                [roots[0]] + [roots[i + 1] * (1 if bits >> i & 1 else -1)
                              for i in range(d - 1)])
            try:
                sol = mpmath.lu_solve(V, rhs)
            except ZeroDivisionError:
                return None
            scale = 1 << 96
            coeffs = [Fraction(int(mpmath.floor(s * scale + mpmath.mpf("0.5"))), scale)
                      .limit_denominator(_SQUARE_DETECT_MAX_DEN)
                      for s in sol]
            dd = 1
            for f in coeffs:
                dd = dd * f.denominator // gcd(dd, f.denominator)
            cand = AlgebraicNumber._make(
                ctx, tuple(int(f * dd) for f in coeffs), dd)
            if cand * cand == D:
                return cand if cand.sign() > 0 else -cand
    return None


def minimal_polynomial(x: AlgebraicNumber) -> tuple[Fraction, ...]:
    """Monic minimal polynomial of x over Q (low degree first), from the
    first linear dependence among the powers of x on the field basis."""
    ctx = x.ctx
    dim = ctx.degree * (2 if x.ext_num is not None else 1)

    def as_vec(el):
        v = [Fraction(c, el.den) for c in el.num]
        if dim == 2 * ctx.degree:
            if el.ext_num is not None:
                v += [Fraction(c, el.ext_den) for c in el.ext_num]
            else:
                v += [Fraction(0)] * ctx.degree
        return v

    # incremental echelon with combination tracking
    pivots = []  # (col, row_vec, combo)
    power = AlgebraicNumber.rational(ctx, 1)
    combo_len = dim + 1
    for k in range(dim + 1):
        vec = as_vec(power)
        combo = [Fraction(0)] * combo_len
        combo[k] = Fraction(1)
        for col, row, rc in pivots:
            f = vec[col]
            if f:
                vec = [a - f * b for a, b in zip(vec, row)]
                combo = [a - f * b for a, b in zip(combo, rc)]
        nz = next((i for i, c in enumerate(vec) if c), None)
        if nz is None:
            lead = combo[k]
            mono = tuple(c / lead for c in combo[:k + 1])
            return mono
        lead = vec[nz]
        vec = [c / lead for c in vec]
        combo = [c / lead for c in combo]
        pivots.append((nz, vec, combo))
        if k < dim:
            power = power * x
    raise VerificationError("no linear dependence found among powers")


def is_algebraic_integer(x: AlgebraicNumber) -> bool:
    """True iff the minimal polynomial of x has integer coefficients."""
    return all(c.denominator == 1 for c in minimal_polynomial(x))


# -- serialization -----------------------------------------------------------

def as_json_dict(x: AlgebraicNumber) -> dict:
    out = {
        "L": x.ctx.L,
        "base": [[f.numerator, f.denominator] for f in x.base_coeffs],
        "ext": None if x.ext_coeffs is None else
               [[f.numerator, f.denominator] for f in x.ext_coeffs],
        "radicand": None if x.radicand is None else as_json_dict(x.radicand),
        "approx": x.approx(),
    }
    return out


def from_json_dict(d: dict) -> AlgebraicNumber:
    ctx = make_context(d["L"])
    num, den = _frac_list_to_vec(d["base"], ctx.degree)
    if d["ext"] is None:
        return AlgebraicNumber._make(ctx, num, den)
    ext_num, ext_den = _frac_list_to_vec(d["ext"], ctx.degree)
    rad = from_json_dict(d["radicand"])
    return AlgebraicNumber._make(ctx, num, den, ext_num, ext_den, rad)


def _frac_list_to_vec(pairs, degree):
    fr = [Fraction(p, q) for p, q in pairs]
    fr += [Fraction(0)] * (degree - len(fr))
    dd = 1
    for f in fr:
        dd = dd * f.denominator // gcd(dd, f.denominator)
    return tuple(int(f * dd) for f in fr), dd
