"""Boundary-format detection and exact hyperdeterminant evaluation.

A 3-tensor format is *boundary* when, after a mode permutation, the leading
dimension equals the sum of the other two minus one.  In that regime a single
homogeneous polynomial in the entries (the hyperdeterminant) vanishes exactly
on the degenerate tensors, so a nonzero value is an exact infeasibility
certificate.

Supported exact evaluators:

* (n, n, 1) up to permutation, n <= 8: the hyperdeterminant is the ordinary
  determinant of the single slice.
* (3, 2, 2) up to permutation: determinant of a 6x6 elimination matrix built
  Dixon/Cayley style from the three bilinear forms f_i(y, z) = T(e_i, y, z).
  Multiplying each bidegree-(1,1) form by the two degree-one monomials in z
  gives six forms of bidegree (1, 2); expressing them in the six monomials
  y_a z_c z_d yields a square matrix whose entries are single tensor entries.
  Its determinant is degree six, multilinear in the slices, and vanishes
  precisely when the three forms share a projective zero, which is the
  degeneracy locus for this format.

Larger boundary formats are detected but not evaluated.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactmath import Matrix, Vec, det_exact, kernel_basis, vec_is_zero
from .instances import Tensor3, WitnessTriple, verify_tensor_witness

MATRIX_FORMAT_MAX = 8

METHOD_MATRIX = "matrix_determinant"
METHOD_322 = "resultant_322"
METHOD_INTERPOLATED = "interpolated"  # reserved for future evaluators


class UnsupportedFormat(ValueError):
    """Raised when no exact evaluator exists for a format."""


@dataclass(frozen=True)
class Format:
    """A 3-tensor format; k_i = n_i - 1 are the projective dimensions."""

    n1: int
    n2: int
    n3: int

    def __post_init__(self):
        if min(self.n1, self.n2, self.n3) < 1:
            raise ValueError("format dimensions must be >= 1")

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.n1, self.n2, self.n3)

    @property
    def ks(self) -> tuple[int, int, int]:
        return (self.n1 - 1, self.n2 - 1, self.n3 - 1)

    @property
    def cells(self) -> int:
        return self.n1 * self.n2 * self.n3

    @staticmethod
    def of_tensor(t: Tensor3) -> "Format":
        return Format(*t.dims)


@dataclass(frozen=True)
class HyperdetResult:
    value: Fraction
    method: str
    format_used: tuple[int, int, int]
    permutation: tuple[int, int, int]

    def to_json(self) -> dict:
        return {"value": str(self.value), "method": self.method,
                "format_used": list(self.format_used),
                "permutation": list(self.permutation)}


_PERMS = tuple(itertools.permutations((0, 1, 2)))


def boundary_permutation(f: Format) -> Optional[tuple[int, int, int]]:
    """First mode permutation (lexicographic) putting the largest dimension in
    front with n0 = n1 + n2 - 1, or None if the format is not boundary."""
    dims = f.dims
    for perm in _PERMS:
        d = tuple(dims[p] for p in perm)
        if d[0] == d[1] + d[2] - 1:
            return perm
    return None


def is_boundary(f: Format) -> bool:
    return boundary_permutation(f) is not None


def _matrix_format_n(f: Format) -> Optional[int]:
    """n if the dimension multiset is {n, n, 1}, else None."""
    s = sorted(f.dims, reverse=True)
    if s[2] == 1 and s[0] == s[1]:
        return s[0]
    return None


def is_supported(f: Format) -> bool:
    n = _matrix_format_n(f)
    if n is not None:
        return n <= MATRIX_FORMAT_MAX
    return sorted(f.dims, reverse=True) == [3, 2, 2]


def hyperdet_matrix(t: Tensor3) -> HyperdetResult:
    """Determinant of the single slice for formats (n, n, 1) up to permutation."""
    f = Format.of_tensor(t)
    n = _matrix_format_n(f)
    if n is None or n > MATRIX_FORMAT_MAX:
        raise UnsupportedFormat(f"{f.dims} is not a supported matrix-like format")
    perm = _move_axis_last(t.dims, t.dims.index(1) if n > 1 else 2)
    tt = t.transpose(perm)
    value = det_exact(tt.slice_matrix(0))
    return HyperdetResult(value, METHOD_MATRIX, tt.dims, perm)


def _move_axis_last(dims: tuple[int, int, int], axis: int) -> tuple[int, int, int]:
    rest = [a for a in range(3) if a != axis]
    return (rest[0], rest[1], axis)


def elimination_matrix_322(t: Tensor3) -> Matrix:
    """The 6x6 elimination matrix for a tensor already in format (3, 2, 2).

    Row (k, c) holds the coefficients of f_k * z_c in the monomial basis
    y_a * z^(2-m) z^m; column (a, m) with m in {0, 1, 2} counting z_2 factors.
    Each entry is a single tensor entry or zero.
    """
    if t.dims != (3, 2, 2):
        raise UnsupportedFormat(f"expected format (3, 2, 2), got {t.dims}")
    rows = []
    for k in range(3):
        for c in range(2):
            row = []
            for a in range(2):
                for m in range(3):
                    l = m - c
                    row.append(t.at(k, a, l) if l in (0, 1) else Fraction(0))
            rows.append(row)
    return Matrix.from_rows(rows)


def hyperdet_322(t: Tensor3) -> HyperdetResult:
    """Exact hyperdeterminant for formats (3, 2, 2) up to permutation.

    The overall sign/normalization is fixed by this construction (and pinned
    by a reference fixture), not calibrated against any external convention;
    only the vanishing locus and the homogeneity degree are contractual.
    """
    f = Format.of_tensor(t)
    if sorted(f.dims, reverse=True) != [3, 2, 2]:
        raise UnsupportedFormat(f"{f.dims} is not (3, 2, 2) up to permutation")
    perm = boundary_permutation(f)
    assert perm is not None
    tt = t.transpose(perm)
    value = det_exact(elimination_matrix_322(tt))
    return HyperdetResult(value, METHOD_322, tt.dims, perm)


def evaluate(t: Tensor3) -> HyperdetResult:
    """Dispatch to the exact evaluator for this format.

    Raises UnsupportedFormat for non-boundary formats and for boundary
    formats beyond the supported sizes.
    """
    f = Format.of_tensor(t)
    if _matrix_format_n(f) is not None:
        if _matrix_format_n(f) > MATRIX_FORMAT_MAX:
            raise UnsupportedFormat(
                f"matrix-like format {f.dims} exceeds the supported size")
        return hyperdet_matrix(t)
    if sorted(f.dims, reverse=True) == [3, 2, 2]:
        return hyperdet_322(t)
    if is_boundary(f):
        raise UnsupportedFormat(
            f"boundary format {f.dims} has no exact evaluator at this size")
    raise UnsupportedFormat(
        f"format {f.dims} is not boundary: no single-polynomial certificate")


def _random_tensor(f: Format, rng: random.Random, lo: int = -9, hi: int = 9) -> Tensor3:
    return Tensor3(*f.dims, tuple(Fraction(rng.randint(lo, hi))
                                  for _ in range(f.cells)))


def hyperdet_degree(f: Format, probes: int = 2) -> int:
    """Homogeneity degree, measured by the exact scaling oracle.

    Finds tensors T with nonzero value, compares value(2T) / value(T) to
    powers of two, and cross-checks the exponent across ``probes`` independent
    tensors.  The degree is measured, never transcribed.
    """
    if not is_supported(f):
        raise UnsupportedFormat(f"no evaluator for format {f.dims}")
    rng = random.Random(20240 + 31 * f.n1 + 7 * f.n2 + f.n3)
    degrees = []
    for _ in range(max(2, probes)):
        for _attempt in range(1000):
            t = _random_tensor(f, rng)
            v = evaluate(t).value
            if v != 0:
                break
        else:
            raise RuntimeError(f"could not find a nonzero-value probe for {f.dims}")
        ratio = evaluate(t.scale(2)).value / v
        d = 0
        while ratio > 1:
            ratio /= 2
            d += 1
        if ratio != 1:
            raise ArithmeticError(
                f"scaling ratio for {f.dims} is not a power of two")
        degrees.append(d)
    if len(set(degrees)) != 1:
        raise ArithmeticError(
            f"degree measurement disagrees across probes: {degrees}")
    return degrees[0]


def degeneracy_constraint_matrix(f: Format, w: WitnessTriple) -> Matrix:
    """The linear system on tensor entries that a fixed witness imposes.

    For fixed (x, y, z) the three contraction equations are linear in the
    n1*n2*n3 entries; rows are ordered: the n3 equations from T(x,y,.), the
    n2 from T(x,.,z), then the n1 from T(.,y,z).
    """
    n1, n2, n3 = f.dims
    if (len(w.x), len(w.y), len(w.z)) != (n1, n2, n3):
        raise ValueError("witness dimensions do not match format")

    def cell(i, j, k):
        return (i * n2 + j) * n3 + k

    rows = []
    for k in range(n3):
        row = [Fraction(0)] * f.cells
        for i in range(n1):
            for j in range(n2):
                row[cell(i, j, k)] = w.x[i] * w.y[j]
        rows.append(row)
    for j in range(n2):
        row = [Fraction(0)] * f.cells
        for i in range(n1):
            for k in range(n3):
                row[cell(i, j, k)] = w.x[i] * w.z[k]
        rows.append(row)
    for i in range(n1):
        row = [Fraction(0)] * f.cells
        for j in range(n2):
            for k in range(n3):
                row[cell(i, j, k)] = w.y[j] * w.z[k]
        rows.append(row)
    return Matrix.from_rows(rows)


def _random_nonzero_vec(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> Vec:
    while True:
        v = tuple(Fraction(rng.randint(lo, hi)) for _ in range(n))
        if not vec_is_zero(v):
            return v


def degenerate_generator(f: Format, seed: int) -> tuple[Tensor3, WitnessTriple]:
    """Witness-first construction of a provably degenerate tensor.

    Samples a nonzero rational witness triple, then draws a random rational
    point of the null space of the induced linear system on entries
    (resampling if the point is the zero tensor).  The output always passes
    exact verification.
    """
    rng = random.Random(seed)
    for _witness_attempt in range(200):
        w = WitnessTriple(_random_nonzero_vec(rng, f.n1),
                          _random_nonzero_vec(rng, f.n2),
                          _random_nonzero_vec(rng, f.n3))
        basis = kernel_basis(degeneracy_constraint_matrix(f, w))
        if not basis:
            continue  # witness admits only the zero tensor; resample
        for _attempt in range(50):
            coeffs = [Fraction(rng.randint(-3, 3)) for _ in basis]
            entries = [Fraction(0)] * f.cells
            for c, b in zip(coeffs, basis):
                if c != 0:
                    for idx, val in enumerate(b):
                        entries[idx] += c * val
            if any(e != 0 for e in entries):
                t = Tensor3(*f.dims, tuple(entries))
                assert verify_tensor_witness(t, w)
                return t, w
    # formats with two size-one modes admit no nonzero degenerate tensor
    raise ValueError(
        f"format {f.dims}: no nonzero degenerate tensor found; the zero "
        f"tensor is the only solution for every sampled witness")
