"""Exact rational linear algebra and univariate polynomial machinery.

Everything here computes over Q using ``fractions.Fraction``; there is no
floating point in this module.  Determinants and ranks use fraction-free
(Bareiss) elimination on denominator-cleared integer matrices to keep
intermediate coefficients small.  Real-root counting uses Sturm chains with
content stripping at every remainder step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vec = tuple[Fraction, ...]

POSITIVE_DEFINITE = "positive_definite"
NEGATIVE_DEFINITE = "negative_definite"
NEITHER = "neither"


class DimensionError(ValueError):
    """Raised when operand shapes are incompatible."""


def rat(x) -> Fraction:
    """Coerce ints, strings like '3/4', and Fractions to Fraction.

    Floats are rejected: exactness is a module-wide invariant.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact value of type {type(x).__name__}: {x!r}")
    return Fraction(x)


def vec(values: Iterable) -> Vec:
    return tuple(rat(v) for v in values)


def vec_is_zero(v: Sequence[Fraction]) -> bool:
    return all(c == 0 for c in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise DimensionError(f"dot of lengths {len(u)} and {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def vec_scale(c: Fraction, v: Sequence[Fraction]) -> Vec:
    return tuple(c * a for a in v)


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    if len(u) != len(v):
        raise DimensionError(f"sum of lengths {len(u)} and {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return vec_add(u, vec_scale(Fraction(-1), v))


def basis_vector(n: int, i: int) -> Vec:
    if not 0 <= i < n:
        raise IndexError(f"basis index {i} out of range for dimension {n}")
    return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))


def normalize_primitive(v: Sequence[Fraction]) -> Vec:
    """Scale a nonzero rational vector to coprime integer entries.

    The first nonzero entry is made positive.  Used for display and golden
    fixtures; the feasibility problems themselves are scale-invariant.
    """
    if vec_is_zero(v):
        raise ValueError("cannot normalize the zero vector")
    denom_lcm = 1
    for c in v:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in v]
    g = 0
    for a in ints:
        g = math.gcd(g, abs(a))
    ints = [a // g for a in ints]
    lead = next(a for a in ints if a != 0)
    if lead < 0:
        ints = [-a for a in ints]
    return tuple(Fraction(a) for a in ints)


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    """Dense exact rational matrix, row-major immutable storage."""

    rows: int
    cols: int
    entries: Vec

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise DimensionError("ragged rows")
        return Matrix(r, c, tuple(rat(x) for row in rows for x in row))

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(n, n, tuple(Fraction(1) if i == j else Fraction(0)
                                  for i in range(n) for j in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, (Fraction(0),) * (rows * cols))

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vec:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vec:
        return tuple(self.at(i, j) for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      tuple(self.at(i, j) for j in range(self.cols) for i in range(self.rows)))

    def matvec(self, v: Sequence[Fraction]) -> Vec:
        if len(v) != self.cols:
            raise DimensionError(f"matvec: {self.rows}x{self.cols} with length {len(v)}")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionError("matmul shape mismatch")
        cols = [other.col(j) for j in range(other.cols)]
        return Matrix(self.rows, other.cols,
                      tuple(dot(self.row(i), cols[j])
                            for i in range(self.rows) for j in range(other.cols)))

    def add(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError("add shape mismatch")
        return Matrix(self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "Matrix":
        c = rat(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def is_symmetric(self) -> bool:
        return (self.rows == self.cols
                and all(self.at(i, j) == self.at(j, i)
                        for i in range(self.rows) for j in range(i)))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def leading_principal(self, k: int) -> "Matrix":
        return Matrix(k, k, tuple(self.at(i, j) for i in range(k) for j in range(k)))


def _integer_rows(m: Matrix) -> tuple[list[list[int]], Fraction]:
    """Clear denominators row by row; returns integer rows and the product of
    the row multipliers (the determinant scale factor)."""
    scale = Fraction(1)
    out = []
    for i in range(m.rows):
        row = m.row(i)
        l = 1
        for x in row:
            l = l * x.denominator // math.gcd(l, x.denominator)
        scale *= l
        out.append([int(x * l) for x in row])
    return out, scale


def det_exact(m: Matrix) -> Fraction:
    """Exact determinant by fraction-free Bareiss elimination."""
    if m.rows != m.cols:
        raise DimensionError(f"determinant of {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    a, scale = _integer_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                q, r = divmod(a[i][j] * a[k][k] - aik * a[k][j], prev)
                assert r == 0, "Bareiss division not exact"
                a[i][j] = q
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1]) / scale


def rank_exact(m: Matrix) -> int:
    """Exact rank over Q, fraction-free elimination with full pivoting."""
    if m.rows == 0 or m.cols == 0:
        return 0
    a, _ = _integer_rows(m)
    rows, cols = m.rows, m.cols
    rank = 0
    prev = 1
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            aic = a[i][c]
            for j in range(c + 1, cols):
                q, rem = divmod(a[i][j] * a[r][c] - aic * a[r][j], prev)
                assert rem == 0, "Bareiss division not exact"
                a[i][j] = q
            a[i][c] = 0
        prev = a[r][c]
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


def _rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    a = m.to_rows()
    rows, cols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def kernel_basis(m: Matrix) -> list[Vec]:
    """Exact rational basis of the right null space (empty iff trivial)."""
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [basis_vector(m.cols, j) for j in range(m.cols)]
    a, pivots = _rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivot_set:
            continue
        v = [Fraction(0)] * m.cols
        v[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][free]
        basis.append(tuple(v))
    return basis


def solve_linear(m: Matrix, rhs: Sequence[Fraction]) -> Optional[Vec]:
    """One exact solution of m @ x = rhs, or None if inconsistent."""
    if len(rhs) != m.rows:
        raise DimensionError("rhs length mismatch")
    aug = Matrix(m.rows, m.cols + 1,
                 tuple(x for i in range(m.rows) for x in (*m.row(i), rat(rhs[i]))))
    a, pivots = _rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = a[r][m.cols]
    return tuple(x)


def definiteness(q: Matrix) -> str:
    """Classify a symmetric matrix as positive/negative definite or neither.

    'neither' holds exactly when some nonzero u has u^T q u = 0 (the matrix is
    indefinite or singular).  Uses Sylvester's criterion on leading principal
    minors, all computed exactly.
    """
    if not q.is_symmetric():
        raise DimensionError("definiteness requires a symmetric matrix")
    minors = [det_exact(q.leading_principal(k)) for k in range(1, q.rows + 1)]
    if all(d > 0 for d in minors):
        return POSITIVE_DEFINITE
    if all((d < 0 if k % 2 == 0 else d > 0) for k, d in enumerate(minors)):
        return NEGATIVE_DEFINITE
    return NEITHER


def symmetric_diagonalize(q: Matrix) -> tuple[list[Vec], list[Fraction]]:
    """Congruence diagonalization of a symmetric form (Lagrange's method).

    Returns vectors v_0..v_{n-1} and values d_i with v_i^T q v_j = 0 for
    i != j and v_i^T q v_i = d_i.  The sign pattern of the d_i is the inertia.
    """
    if not q.is_symmetric():
        raise DimensionError("symmetric_diagonalize requires a symmetric matrix")
    n = q.rows

    def form(u: Vec, w: Vec) -> Fraction:
        return dot(u, q.matvec(w))

    active: list[Vec] = [basis_vector(n, i) for i in range(n)]
    vecs: list[Vec] = []
    vals: list[Fraction] = []
    while active:
        idx = next((i for i, v in enumerate(active) if form(v, v) != 0), None)
        if idx is None:
            hit = None
            for i in range(len(active)):
                for j in range(i + 1, len(active)):
                    if form(active[i], active[j]) != 0:
                        hit = (i, j)
                        break
                if hit:
                    break
            if hit is None:
                # form restricted to the remaining space is identically zero
                for v in active:
                    vecs.append(v)
                    vals.append(Fraction(0))
                break
            i, j = hit
            active[i] = vec_add(active[i], active[j])
            idx = i
        v = active.pop(idx)
        d = form(v, v)
        vecs.append(v)
        vals.append(d)
        active = [vec_sub(u, vec_scale(form(v, u) / d, v)) for u in active]
    return vecs, vals


# ---------------------------------------------------------------------------
# Univariate polynomials over Q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniPoly:
    """Univariate polynomial, coefficients lowest degree first.

    The zero polynomial is the empty coefficient tuple; otherwise the leading
    coefficient is nonzero.
    """

    coefficients: Vec

    def __post_init__(self):
        coeffs = tuple(rat(c) for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @staticmethod
    def of(*coeffs) -> "UniPoly":
        return UniPoly(tuple(rat(c) for c in coeffs))

    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly(())

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coefficients[-1]

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        return UniPoly(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero or other.is_zero:
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return UniPoly(tuple(out))

    def scale(self, c) -> "UniPoly":
        c = rat(c)
        return UniPoly(tuple(c * a for a in self.coefficients))

    def evaluate(self, x) -> Fraction:
        x = rat(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(tuple(c * i for i, c in enumerate(self.coefficients) if i > 0))

    def divmod(self, divisor: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dlead = divisor.leading
        ddeg = divisor.degree
        quot = [Fraction(0)] * max(0, len(rem) - ddeg)
        while len(rem) - 1 >= ddeg and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < ddeg:
                break
            shift = len(rem) - 1 - ddeg
            factor = rem[-1] / dlead
            quot[shift] = factor
            for i, dc in enumerate(divisor.coefficients):
                rem[shift + i] -= factor * dc
            rem.pop()
        return UniPoly(tuple(quot)), UniPoly(tuple(rem))

    def monic(self) -> "UniPoly":
        if self.is_zero:
            raise ValueError("cannot make the zero polynomial monic")
        return self.scale(1 / self.leading)

    def primitive(self) -> "UniPoly":
        """Divide out the positive content (sign preserved)."""
        if self.is_zero:
            return self
        denom_lcm = 1
        for c in self.coefficients:
            denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
        numer_gcd = 0
        for c in self.coefficients:
            numer_gcd = math.gcd(numer_gcd, abs(int(c * denom_lcm)))
        return self.scale(Fraction(denom_lcm, numer_gcd))

    def sign_at(self, x: Optional[Fraction], side: int = 0) -> int:
        """Sign at a finite point, or at -inf (x=None, side=-1) / +inf (side=+1)."""
        if self.is_zero:
            return 0
        if x is None:
            s = 1 if self.leading > 0 else -1
            if side < 0 and self.degree % 2 == 1:
                s = -s
            return s
        v = self.evaluate(x)
        return 0 if v == 0 else (1 if v > 0 else -1)


def gcd_poly(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q by the Euclidean algorithm."""
    if a.is_zero and b.is_zero:
        raise ValueError("gcd of two zero polynomials")
    while not b.is_zero:
        _, r = a.divmod(b)
        a, b = b, r.primitive() if not r.is_zero else r
    return a.monic()


def square_free_part(p: UniPoly) -> UniPoly:
    """p divided by gcd(p, p'); same real roots, all simple."""
    if p.is_zero:
        raise ValueError("square-free part of the zero polynomial")
    if p.degree == 0:
        return p.monic()
    g = gcd_poly(p, p.derivative())
    q, r = p.divmod(g)
    assert r.is_zero
    return q.primitive()


@dataclass(frozen=True)
class SturmChain:
    """Sturm sequence: input, derivative, then content-normalized negated
    remainders until a zero remainder."""

    polys: tuple[UniPoly, ...]


def sturm_chain(p: UniPoly) -> SturmChain:
    if p.is_zero:
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [p]
    d = p.derivative()
    if not d.is_zero:
        chain.append(d)
        while chain[-1].degree > 0:
            _, r = chain[-2].divmod(chain[-1])
            if r.is_zero:
                break
            chain.append((-r).primitive())
    return SturmChain(tuple(chain))


def _variations(chain: SturmChain, x: Optional[Fraction], side: int) -> int:
    signs = [q.sign_at(x, side) for q in chain.polys]
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_root_count(p: UniPoly,
                     lo: Optional[Fraction] = None,
                     hi: Optional[Fraction] = None) -> int:
    """Number of distinct real roots of p in (lo, hi].

    ``None`` endpoints mean -inf / +inf, handled by leading-coefficient sign
    limits.  Counting runs on the square-free part so that repeated roots are
    counted once and endpoints landing on a multiple root (where the raw
    chain vanishes entirely) are handled correctly.
    """
    if p.is_zero:
        raise ValueError("root count of the zero polynomial is undefined")
    if lo is not None and hi is not None and rat(lo) >= rat(hi):
        raise ValueError("empty interval: lo must be < hi")
    chain = sturm_chain(square_free_part(p))
    v_lo = _variations(chain, None if lo is None else rat(lo), -1)
    v_hi = _variations(chain, None if hi is None else rat(hi), +1)
    return v_lo - v_hi


def rational_roots(p: UniPoly) -> list[Fraction]:
    """All rational roots (each once, sorted) via the rational root theorem."""
    if p.is_zero:
        raise ValueError("every rational is a root of the zero polynomial")
    roots = []
    coeffs = list(p.primitive().coefficients)
    shift = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        shift += 1
    if shift:
        roots.append(Fraction(0))
    if len(coeffs) > 1:
        a0 = abs(int(coeffs[0]))
        an = abs(int(coeffs[-1]))
        q = UniPoly(tuple(coeffs))
        for pnum in _divisors(a0):
            for qden in _divisors(an):
                for cand in (Fraction(pnum, qden), Fraction(-pnum, qden)):
                    if cand not in roots and q.evaluate(cand) == 0:
                        roots.append(cand)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def cauchy_root_bound(p: UniPoly) -> Fraction:
    """All real roots of p lie in (-B, B)."""
    if p.is_zero or p.degree == 0:
        return Fraction(1)
    lead = abs(p.leading)
    return 1 + max(abs(c) / lead for c in p.coefficients[:-1])


def isolate_real_root(p: UniPoly):
    """Locate one real root of p exactly or by a sign-change bracket.

    Returns ('root', r) for a rational root r, or ('bracket', lo, hi) with
    p(lo) * p(hi) < 0, or None when p has no real root.  The bracket is found
    by Sturm bisection on the square-free part, so it always terminates.
    """
    if p.is_zero:
        raise ValueError("cannot isolate a root of the zero polynomial")
    q = square_free_part(p)
    if q.degree == 0:
        return None
    total = sturm_root_count(q)
    if total == 0:
        return None
    for r in rational_roots(q):
        return ("root", r)
    b = cauchy_root_bound(q)
    lo, hi = -b, b
    while True:
        if q.evaluate(lo) * q.evaluate(hi) < 0 and sturm_root_count(q, lo, hi) == 1:
            return ("bracket", lo, hi)
        mid = (lo + hi) / 2
        if q.evaluate(mid) == 0:
            return ("root", mid)  # unreachable after rational_roots, kept for safety
        if sturm_root_count(q, lo, mid) >= 1:
            hi = mid
        else:
            lo = mid
