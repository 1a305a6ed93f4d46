"""Reduction chain: quadratic -> bilinear -> pencil -> 3-tensor.

Each stage is exact and comes with bidirectional witness transport:

* quadratic -> bilinear: keep the forms as bilinear constraints and append one
  antisymmetric minor matrix E_ij = e_i e_j^T - e_j e_i^T per index pair
  i < j, so x^T E_ij y = x_i y_j - x_j y_i.  The minors force x and y to be
  proportional, which makes the bilinear system equivalent to the quadratic
  one.  Witnesses: u lifts to (u, u); a bilinear witness (x, y) necessarily
  has y = lambda * x with lambda != 0, and x solves the quadratic system.
* bilinear -> pencil: prepend the zero matrix, so A_0 = 0 and A_l = M_l.
  Witnesses: (x, y) lifts with z = e_0, which kills the combination matrix;
  conversely any pencil witness already annihilates every M_l.
* pencil -> tensor: stack A_0..A_r as the slices of an n x n x (r+1) tensor.
  The degeneracy equations of the slice tensor are literally the pencil
  equations, so witnesses transport unchanged in both directions.

Every stage emits a trace recording where each output matrix or slice came
from, so a slice of the final tensor is attributable to a source constraint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactmath import Matrix, Vec, vec_is_zero
from .instances import (
    BilinearInstance,
    PencilInstance,
    QuadraticInstance,
    Tensor3,
    WitnessTriple,
    verify_pencil_witness,
)


class WitnessTransportError(ValueError):
    """Raised when a witness fails the preconditions of a lift/extract step."""


@dataclass(frozen=True)
class SliceOrigin:
    """Provenance of one output matrix/slice.

    source is one of 'quadratic_form' (index), 'minor_pair' (pair),
    'zero_matrix', 'bilinear_matrix' (index), 'pencil_matrix' (index).
    """

    slot: int
    source: str
    index: Optional[int] = None
    pair: Optional[tuple[int, int]] = None

    def to_json(self) -> dict:
        out: dict = {"slot": self.slot, "source": self.source}
        if self.index is not None:
            out["index"] = self.index
        if self.pair is not None:
            out["pair"] = list(self.pair)
        return out


@dataclass(frozen=True)
class StageTrace:
    stage: str
    sizes: tuple[tuple[str, int], ...]
    origins: tuple[SliceOrigin, ...]

    def to_json(self) -> dict:
        return {"stage": self.stage, "sizes": dict(self.sizes),
                "origins": [o.to_json() for o in self.origins]}


@dataclass(frozen=True)
class ReductionTrace:
    stages: tuple[StageTrace, ...]

    def extend(self, other: "ReductionTrace") -> "ReductionTrace":
        return ReductionTrace(self.stages + other.stages)

    def to_json(self) -> list:
        return [s.to_json() for s in self.stages]


def minor_matrix(n: int, i: int, j: int) -> Matrix:
    """E_ij = e_i e_j^T - e_j e_i^T (0-based i < j)."""
    if not 0 <= i < j < n:
        raise ValueError(f"need 0 <= i < j < n, got ({i}, {j}) with n={n}")
    return Matrix.from_rows([
        [Fraction(1) if (a, b) == (i, j) else Fraction(-1) if (a, b) == (j, i)
         else Fraction(0) for b in range(n)] for a in range(n)])


def quad_to_bilinear(q: QuadraticInstance) -> tuple[BilinearInstance, ReductionTrace]:
    """Forms first, then the n(n-1)/2 minor matrices in lexicographic pair order."""
    ms: list[Matrix] = list(q.qs)
    origins = [SliceOrigin(t, "quadratic_form", index=t) for t in range(q.m)]
    for i in range(q.n):
        for j in range(i + 1, q.n):
            origins.append(SliceOrigin(len(ms), "minor_pair", pair=(i, j)))
            ms.append(minor_matrix(q.n, i, j))
    b = BilinearInstance(q.n, tuple(ms))
    trace = ReductionTrace((StageTrace(
        "quadratic_to_bilinear",
        (("n", q.n), ("m", q.m), ("r", b.r)),
        tuple(origins)), ))
    return b, trace


def lift_quad_witness(u: Sequence[Fraction]) -> tuple[Vec, Vec]:
    """u becomes (x, y) = (u, u)."""
    if vec_is_zero(u):
        raise WitnessTransportError("cannot lift the zero vector")
    u = tuple(u)
    return u, u


def extract_quad_witness(x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
    """Return x, after checking that (x, y) is a proportional nonzero pair.

    The minor constraints of the lifted system say exactly that the n x 2
    matrix [x y] has rank at most one; verifying bilinear witnesses always
    satisfy them, so extraction never fails on those.
    """
    if vec_is_zero(x) or vec_is_zero(y):
        raise WitnessTransportError("witness vectors must be nonzero")
    if len(x) != len(y):
        raise WitnessTransportError("witness vectors must have equal length")
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            if x[i] * y[j] - x[j] * y[i] != 0:
                raise WitnessTransportError(
                    "proportionality violated: minor constraints do not hold")
    return tuple(x)


def bilinear_to_pencil(b: BilinearInstance) -> tuple[PencilInstance, ReductionTrace]:
    """Prepend the zero matrix: output matrices are [0, M_1, ..., M_r]."""
    mats = (Matrix.zero(b.n, b.n),) + tuple(b.ms)
    origins = [SliceOrigin(0, "zero_matrix")] + [
        SliceOrigin(l + 1, "bilinear_matrix", index=l) for l in range(b.r)]
    p = PencilInstance(b.n, mats)
    trace = ReductionTrace((StageTrace(
        "bilinear_to_pencil",
        (("n", b.n), ("r_in", b.r), ("r_out", p.r)),
        tuple(origins)), ))
    return p, trace


def lift_bilinear_witness(x: Sequence[Fraction], y: Sequence[Fraction],
                          r: int) -> WitnessTriple:
    """(x, y) becomes (x, y, e_0) with z of length r+1."""
    if vec_is_zero(x) or vec_is_zero(y):
        raise WitnessTransportError("cannot lift a zero witness vector")
    z = (Fraction(1),) + (Fraction(0),) * r
    return WitnessTriple(tuple(x), tuple(y), z)


def extract_bilinear_witness(inst: PencilInstance, w: WitnessTriple) -> tuple[Vec, Vec]:
    """(x, y) of a verifying pencil witness solves the source bilinear system."""
    if not verify_pencil_witness(inst, w):
        raise WitnessTransportError("witness does not verify the pencil instance")
    return w.x, w.y


def pencil_to_tensor(p: PencilInstance) -> tuple[Tensor3, ReductionTrace]:
    """Slice k of the output tensor is matrix k of the pencil."""
    t = Tensor3.from_slices(p.mats)
    origins = tuple(SliceOrigin(k, "pencil_matrix", index=k)
                    for k in range(len(p.mats)))
    trace = ReductionTrace((StageTrace(
        "pencil_to_tensor",
        (("n1", t.n1), ("n2", t.n2), ("n3", t.n3)),
        origins), ))
    return t, trace


def tensor_to_pencil(t: Tensor3) -> PencilInstance:
    """Inverse of pencil_to_tensor for square-slice tensors (test utility)."""
    if t.n1 != t.n2:
        raise ValueError("slice tensor must have square slices")
    return PencilInstance(t.n1, tuple(t.slice_matrix(k) for k in range(t.n3)))


def quad_to_tensor(q: QuadraticInstance) -> tuple[Tensor3, ReductionTrace]:
    """Full composition; output format n x n x (m + n(n-1)/2 + 1)."""
    b, tr1 = quad_to_bilinear(q)
    p, tr2 = bilinear_to_pencil(b)
    t, tr3 = pencil_to_tensor(p)
    return t, tr1.extend(tr2).extend(tr3)


def lift_quad_witness_to_tensor(u: Sequence[Fraction], q: QuadraticInstance) -> WitnessTriple:
    """Transport a quadratic witness through all three stages."""
    x, y = lift_quad_witness(u)
    b, _ = quad_to_bilinear(q)
    return lift_bilinear_witness(x, y, b.r)


def extract_quad_witness_from_tensor(w: WitnessTriple,
                                     q: QuadraticInstance) -> Vec:
    """Transport a tensor witness back to a quadratic witness.

    The slice tensor's degeneracy equations coincide with the pencil
    equations, so the triple is checked against the intermediate pencil and
    then unwound stage by stage.
    """
    b, _ = quad_to_bilinear(q)
    p, _ = bilinear_to_pencil(b)
    x, y = extract_bilinear_witness(p, w)
    return extract_quad_witness(x, y)
