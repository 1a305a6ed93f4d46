"""Problem instances, witnesses, contraction semantics, and JSON encoding.

Four feasibility problems share this module:

* quadratic:  nonzero u with u^T Q_t u = 0 for every symmetric Q_t;
* bilinear:   nonzero x, y with x^T M_l y = 0 for every M_l;
* pencil:     nonzero x, y, z with x^T A_l y = 0 for all l and M(z) y = 0,
              M(z)^T x = 0 where M(z) = sum_l z_l A_l;
* tensor degeneracy: nonzero x, y, z whose three modewise contractions with a
  3-tensor all vanish.

All verification is exact; a witness with any zero component vector never
verifies.  JSON files carry every number as a string in "p/q" form so that no
precision is lost in transit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactmath import (
    DimensionError,
    Matrix,
    Vec,
    dot,
    rat,
    vec,
    vec_is_zero,
)


@dataclass(frozen=True)
class QuadraticInstance:
    """Symmetric forms Q_1..Q_m on R^n."""

    n: int
    qs: tuple[Matrix, ...]

    def __post_init__(self):
        if not self.qs:
            raise ValueError("quadratic instance needs at least one form")
        for k, q in enumerate(self.qs):
            if (q.rows, q.cols) != (self.n, self.n):
                raise DimensionError(f"form {k} is {q.rows}x{q.cols}, expected {self.n}x{self.n}")
            if not q.is_symmetric():
                raise ValueError(f"form {k} is not symmetric")

    @property
    def m(self) -> int:
        return len(self.qs)


@dataclass(frozen=True)
class BilinearInstance:
    """Matrices M_1..M_r defining bilinear constraints on R^n x R^n."""

    n: int
    ms: tuple[Matrix, ...]

    def __post_init__(self):
        if not self.ms:
            raise ValueError("bilinear instance needs at least one matrix")
        for k, m in enumerate(self.ms):
            if (m.rows, m.cols) != (self.n, self.n):
                raise DimensionError(f"matrix {k} is {m.rows}x{m.cols}, expected {self.n}x{self.n}")

    @property
    def r(self) -> int:
        return len(self.ms)


@dataclass(frozen=True)
class PencilInstance:
    """Matrices A_0..A_r; feasibility asks for simultaneous left/right kernel
    vectors of the combination M(z) plus bilinear annihilation."""

    n: int
    mats: tuple[Matrix, ...]

    def __post_init__(self):
        if not self.mats:
            raise ValueError("pencil instance needs at least one matrix")
        for k, m in enumerate(self.mats):
            if (m.rows, m.cols) != (self.n, self.n):
                raise DimensionError(f"matrix {k} is {m.rows}x{m.cols}, expected {self.n}x{self.n}")

    @property
    def r(self) -> int:
        return len(self.mats) - 1

    def combine(self, z: Sequence[Fraction]) -> Matrix:
        """M(z) = sum_l z_l A_l."""
        if len(z) != len(self.mats):
            raise DimensionError(f"z has length {len(z)}, expected {len(self.mats)}")
        acc = Matrix.zero(self.n, self.n)
        for zl, a in zip(z, self.mats):
            if zl != 0:
                acc = acc.add(a.scale(zl))
        return acc


@dataclass(frozen=True)
class Tensor3:
    """Dense rational 3-tensor, entries indexed (i, j, k) row-major."""

    n1: int
    n2: int
    n3: int
    entries: Vec

    def __post_init__(self):
        if min(self.n1, self.n2, self.n3) < 1:
            raise DimensionError("tensor dimensions must be >= 1")
        if len(self.entries) != self.n1 * self.n2 * self.n3:
            raise DimensionError(
                f"{self.n1}x{self.n2}x{self.n3} tensor needs "
                f"{self.n1 * self.n2 * self.n3} entries, got {len(self.entries)}"
            )

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.n1, self.n2, self.n3)

    def at(self, i: int, j: int, k: int) -> Fraction:
        return self.entries[(i * self.n2 + j) * self.n3 + k]

    @staticmethod
    def from_entries(n1: int, n2: int, n3: int, get) -> "Tensor3":
        return Tensor3(n1, n2, n3, tuple(
            rat(get(i, j, k))
            for i in range(n1) for j in range(n2) for k in range(n3)))

    @staticmethod
    def from_nested(nested: Sequence[Sequence[Sequence]]) -> "Tensor3":
        n1 = len(nested)
        n2 = len(nested[0])
        n3 = len(nested[0][0])
        return Tensor3.from_entries(n1, n2, n3, lambda i, j, k: nested[i][j][k])

    @staticmethod
    def from_slices(slices: Sequence[Matrix]) -> "Tensor3":
        """Stack n x n matrices along the third mode: slice k holds matrix k."""
        n = slices[0].rows
        n3 = len(slices)
        return Tensor3.from_entries(n, slices[0].cols, n3,
                                    lambda i, j, k: slices[k].at(i, j))

    @staticmethod
    def zero(n1: int, n2: int, n3: int) -> "Tensor3":
        return Tensor3(n1, n2, n3, (Fraction(0),) * (n1 * n2 * n3))

    def slice_matrix(self, k: int) -> Matrix:
        """The n1 x n2 matrix T[:, :, k]."""
        return Matrix(self.n1, self.n2,
                      tuple(self.at(i, j, k) for i in range(self.n1) for j in range(self.n2)))

    def to_nested(self) -> list[list[list[Fraction]]]:
        return [[[self.at(i, j, k) for k in range(self.n3)]
                 for j in range(self.n2)] for i in range(self.n1)]

    def transpose(self, axes: tuple[int, int, int]) -> "Tensor3":
        """Mode permutation with numpy semantics: result dim i is input dim
        axes[i], and result[idx] = self[orig] with orig[axes[i]] = idx[i]."""
        if sorted(axes) != [0, 1, 2]:
            raise ValueError(f"not a mode permutation: {axes}")
        dims = self.dims
        new_dims = (dims[axes[0]], dims[axes[1]], dims[axes[2]])

        def get(i, j, k):
            orig = [0, 0, 0]
            for pos, idx in zip(axes, (i, j, k)):
                orig[pos] = idx
            return self.at(*orig)

        return Tensor3.from_entries(*new_dims, get)

    def scale(self, c) -> "Tensor3":
        c = rat(c)
        return Tensor3(self.n1, self.n2, self.n3, tuple(c * e for e in self.entries))

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)


@dataclass(frozen=True)
class WitnessTriple:
    """Candidate witness vectors (x, y, z) for pencil or tensor feasibility.

    Construction accepts arbitrary vectors so that non-verifying candidates
    (including ones with a zero component) can be represented and rejected by
    the verifiers; a *verifying* witness always has all three vectors nonzero.
    """

    x: Vec
    y: Vec
    z: Vec

    @staticmethod
    def of(x: Sequence, y: Sequence, z: Sequence) -> "WitnessTriple":
        return WitnessTriple(vec(x), vec(y), vec(z))

    def all_nonzero(self) -> bool:
        return not (vec_is_zero(self.x) or vec_is_zero(self.y) or vec_is_zero(self.z))


# ---------------------------------------------------------------------------
# Contractions
# ---------------------------------------------------------------------------


def contract_xy(t: Tensor3, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
    """Vector of length n3 with k-th entry sum_ij T(i,j,k) x_i y_j."""
    if len(x) != t.n1 or len(y) != t.n2:
        raise DimensionError("contract_xy dimension mismatch")
    out = []
    for k in range(t.n3):
        acc = Fraction(0)
        for i in range(t.n1):
            if x[i] == 0:
                continue
            for j in range(t.n2):
                acc += t.at(i, j, k) * x[i] * y[j]
        out.append(acc)
    return tuple(out)


def contract_xz(t: Tensor3, x: Sequence[Fraction], z: Sequence[Fraction]) -> Vec:
    """Vector of length n2 with j-th entry sum_ik T(i,j,k) x_i z_k."""
    if len(x) != t.n1 or len(z) != t.n3:
        raise DimensionError("contract_xz dimension mismatch")
    out = []
    for j in range(t.n2):
        acc = Fraction(0)
        for i in range(t.n1):
            if x[i] == 0:
                continue
            for k in range(t.n3):
                acc += t.at(i, j, k) * x[i] * z[k]
        out.append(acc)
    return tuple(out)


def contract_yz(t: Tensor3, y: Sequence[Fraction], z: Sequence[Fraction]) -> Vec:
    """Vector of length n1 with i-th entry sum_jk T(i,j,k) y_j z_k."""
    if len(y) != t.n2 or len(z) != t.n3:
        raise DimensionError("contract_yz dimension mismatch")
    out = []
    for i in range(t.n1):
        acc = Fraction(0)
        for j in range(t.n2):
            if y[j] == 0:
                continue
            for k in range(t.n3):
                acc += t.at(i, j, k) * y[j] * z[k]
        out.append(acc)
    return tuple(out)


# ---------------------------------------------------------------------------
# Witness verification (always exact)
# ---------------------------------------------------------------------------


def verify_tensor_witness(t: Tensor3, w: WitnessTriple) -> bool:
    """True iff all three contractions vanish and x, y, z are each nonzero."""
    if len(w.x) != t.n1 or len(w.y) != t.n2 or len(w.z) != t.n3:
        raise DimensionError("witness dimensions do not match tensor")
    if not w.all_nonzero():
        return False
    return (vec_is_zero(contract_xy(t, w.x, w.y))
            and vec_is_zero(contract_xz(t, w.x, w.z))
            and vec_is_zero(contract_yz(t, w.y, w.z)))


def verify_quadratic_witness(inst: QuadraticInstance, u: Sequence[Fraction]) -> bool:
    if len(u) != inst.n:
        raise DimensionError("witness length does not match instance")
    if vec_is_zero(u):
        return False
    return all(dot(u, q.matvec(u)) == 0 for q in inst.qs)


def verify_bilinear_witness(inst: BilinearInstance,
                            x: Sequence[Fraction],
                            y: Sequence[Fraction]) -> bool:
    if len(x) != inst.n or len(y) != inst.n:
        raise DimensionError("witness length does not match instance")
    if vec_is_zero(x) or vec_is_zero(y):
        return False
    return all(dot(x, m.matvec(y)) == 0 for m in inst.ms)


def verify_pencil_witness(inst: PencilInstance, w: WitnessTriple) -> bool:
    if len(w.x) != inst.n or len(w.y) != inst.n or len(w.z) != len(inst.mats):
        raise DimensionError("witness dimensions do not match pencil")
    if not w.all_nonzero():
        return False
    if any(dot(w.x, a.matvec(w.y)) != 0 for a in inst.mats):
        return False
    mz = inst.combine(w.z)
    return vec_is_zero(mz.matvec(w.y)) and vec_is_zero(mz.transpose().matvec(w.x))


# ---------------------------------------------------------------------------
# JSON encoding: numbers as "p/q" strings, never floats
# ---------------------------------------------------------------------------

KINDS = ("quadratic", "bilinear", "pencil", "tensor")


class MalformedInstance(ValueError):
    """Raised on schema violations in instance or witness JSON."""


def _num_to_json(x: Fraction) -> str:
    return str(x)


def _num_from_json(v) -> Fraction:
    if isinstance(v, float):
        raise MalformedInstance(f"float {v!r} not allowed; encode rationals as strings")
    if isinstance(v, bool):
        raise MalformedInstance("booleans are not numbers")
    if isinstance(v, (int, str)):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as e:
            raise MalformedInstance(f"bad rational {v!r}: {e}") from None
    raise MalformedInstance(f"bad rational value {v!r}")


def _matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[_num_to_json(x) for x in m.row(i)] for i in range(m.rows)]


def _matrix_from_json(obj, n: int) -> Matrix:
    if (not isinstance(obj, list) or len(obj) != n
            or any(not isinstance(row, list) or len(row) != n for row in obj)):
        raise MalformedInstance(f"expected an {n}x{n} array of rationals")
    return Matrix.from_rows([[_num_from_json(x) for x in row] for row in obj])


def vector_to_json(v: Sequence[Fraction]) -> list[str]:
    return [_num_to_json(x) for x in v]


def vector_from_json(obj) -> Vec:
    if not isinstance(obj, list) or not obj:
        raise MalformedInstance("expected a nonempty array of rationals")
    return tuple(_num_from_json(x) for x in obj)


def instance_to_json(inst) -> dict:
    if isinstance(inst, QuadraticInstance):
        return {"kind": "quadratic", "n": inst.n,
                "matrices": [_matrix_to_json(q) for q in inst.qs]}
    if isinstance(inst, BilinearInstance):
        return {"kind": "bilinear", "n": inst.n,
                "matrices": [_matrix_to_json(m) for m in inst.ms]}
    if isinstance(inst, PencilInstance):
        return {"kind": "pencil", "n": inst.n,
                "matrices": [_matrix_to_json(a) for a in inst.mats]}
    if isinstance(inst, Tensor3):
        return {"kind": "tensor", "n1": inst.n1, "n2": inst.n2, "n3": inst.n3,
                "entries": [[[_num_to_json(inst.at(i, j, k)) for k in range(inst.n3)]
                             for j in range(inst.n2)] for i in range(inst.n1)]}
    raise TypeError(f"not an instance: {type(inst).__name__}")


def instance_from_json(obj):
    if not isinstance(obj, dict):
        raise MalformedInstance("instance file must contain a JSON object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise MalformedInstance(f"unknown kind {kind!r}; expected one of {KINDS}")
    try:
        if kind == "tensor":
            n1, n2, n3 = (obj.get(k) for k in ("n1", "n2", "n3"))
            if not all(isinstance(d, int) and d >= 1 for d in (n1, n2, n3)):
                raise MalformedInstance("tensor needs integer dimensions n1, n2, n3")
            nested = obj.get("entries")
            if (not isinstance(nested, list) or len(nested) != n1
                    or any(len(p) != n2 for p in nested)
                    or any(len(row) != n3 for p in nested for row in p)):
                raise MalformedInstance("entries must be an n1 x n2 x n3 nested array")
            return Tensor3.from_entries(n1, n2, n3,
                                        lambda i, j, k: _num_from_json(nested[i][j][k]))
        n = obj.get("n")
        if not isinstance(n, int) or n < 1:
            raise MalformedInstance("instance needs a positive integer dimension n")
        mats = obj.get("matrices")
        if not isinstance(mats, list) or not mats:
            raise MalformedInstance("instance needs a nonempty 'matrices' array")
        matrices = tuple(_matrix_from_json(m, n) for m in mats)
        if kind == "quadratic":
            return QuadraticInstance(n, matrices)
        if kind == "bilinear":
            return BilinearInstance(n, matrices)
        return PencilInstance(n, matrices)
    except (DimensionError, ValueError) as e:
        if isinstance(e, MalformedInstance):
            raise
        raise MalformedInstance(str(e)) from None


def witness_to_json(w) -> dict:
    if isinstance(w, WitnessTriple):
        return {"x": vector_to_json(w.x), "y": vector_to_json(w.y),
                "z": vector_to_json(w.z)}
    if isinstance(w, tuple) and len(w) == 2:
        return {"x": vector_to_json(w[0]), "y": vector_to_json(w[1])}
    return {"x": vector_to_json(w)}


def witness_vectors_from_json(obj) -> dict[str, Vec]:
    """Decode whichever of x, y, z a witness file provides ('u' aliases 'x')."""
    if not isinstance(obj, dict):
        raise MalformedInstance("witness file must contain a JSON object")
    out: dict[str, Vec] = {}
    for key in ("x", "y", "z"):
        if key in obj:
            out[key] = vector_from_json(obj[key])
    if "u" in obj and "x" not in out:
        out["x"] = vector_from_json(obj["u"])
    if "x" not in out:
        raise MalformedInstance("witness file needs at least an 'x' (or 'u') vector")
    return out


def witness_for_kind(kind: str, fields: dict[str, Vec]):
    """Assemble the witness object a given instance kind expects."""
    if kind == "quadratic":
        return fields["x"]
    if kind == "bilinear":
        if "y" not in fields:
            raise MalformedInstance("bilinear witness needs x and y")
        return fields["x"], fields["y"]
    if kind in ("pencil", "tensor"):
        if "y" not in fields or "z" not in fields:
            raise MalformedInstance(f"{kind} witness needs x, y and z")
        return WitnessTriple(fields["x"], fields["y"], fields["z"])
    raise MalformedInstance(f"unknown kind {kind!r}")


def verify_witness(inst, fields: dict[str, Vec]) -> bool:
    """Dispatch verification for any instance type."""
    if isinstance(inst, QuadraticInstance):
        return verify_quadratic_witness(inst, witness_for_kind("quadratic", fields))
    if isinstance(inst, BilinearInstance):
        x, y = witness_for_kind("bilinear", fields)
        return verify_bilinear_witness(inst, x, y)
    if isinstance(inst, PencilInstance):
        return verify_pencil_witness(inst, witness_for_kind("pencil", fields))
    if isinstance(inst, Tensor3):
        return verify_tensor_witness(inst, witness_for_kind("tensor", fields))
    raise TypeError(f"not an instance: {type(inst).__name__}")


def kind_of(inst) -> str:
    for cls, kind in ((QuadraticInstance, "quadratic"), (BilinearInstance, "bilinear"),
                      (PencilInstance, "pencil"), (Tensor3, "tensor")):
        if isinstance(inst, cls):
            return kind
    raise TypeError(f"not an instance: {type(inst).__name__}")


def enumerate_symmetric_matrices(n: int, values: Sequence) -> list[Matrix]:
    """All symmetric n x n matrices with upper-triangle entries drawn from
    ``values`` (each symmetric matrix appears exactly once)."""
    positions = [(i, j) for i in range(n) for j in range(i, n)]
    out = []
    for combo in itertools.product([rat(v) for v in values], repeat=len(positions)):
        vals = dict(zip(positions, combo))
        out.append(Matrix.from_rows(
            [[vals[(min(i, j), max(i, j))] for j in range(n)] for i in range(n)]))
    return out
