"""Executable counterexamples against naive deterministic boundary embeddings.

Three constructions, each packaged with machine-checked conclusions:

* direct_sum: placing a nondegenerate tensor next to a degenerate one on
  disjoint index blocks yields a degenerate sum, witnessed entirely inside
  the second block, so the direct sum cannot preserve nondegeneracy.
* disjoint_support: basis vectors on three distinct coordinates have every
  pairwise coordinate product zero while all three vectors are nonzero, so
  no system of pairwise polynomial constraints can confine witnesses to a
  designated block.
* vandermonde: the same triple also satisfies full coordinatewise
  annihilation (x_i y_i = x_i z_i = y_i z_i = 0 for every i), so weighted
  pairwise constraint families fare no better.

Every demo re-verifies its asserted conclusion through the instance
operations before it is returned; construction alone is never trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random
from typing import Optional, Sequence

from . import hyperdet
from .exactmath import basis_vector, vec_is_zero
from .instances import Tensor3, WitnessTriple, verify_tensor_witness

DIRECT_SUM = "direct_sum"
PAIRWISE = "pairwise"
VANDERMONDE = "vandermonde"


@dataclass(frozen=True)
class FailureDemo:
    """A constructed counterexample with machine-checkable conclusions.

    ``checks`` maps conclusion names to booleans; every value is True for a
    demo that was allowed to exist (construction re-verifies before return).
    """

    proposition: str
    instances: dict
    witnesses: dict
    checks: dict

    def to_json(self) -> dict:
        from .instances import instance_to_json, witness_to_json
        return {
            "proposition": self.proposition,
            "instances": {k: instance_to_json(v) for k, v in self.instances.items()},
            "witnesses": {k: witness_to_json(v) for k, v in self.witnesses.items()},
            "checks": dict(self.checks),
        }


def direct_sum(t: Tensor3, s: Tensor3) -> Tensor3:
    """Block tensor with t and s on disjoint index sets, cross entries zero."""
    def get(i, j, k):
        if i < t.n1 and j < t.n2 and k < t.n3:
            return t.at(i, j, k)
        if i >= t.n1 and j >= t.n2 and k >= t.n3:
            return s.at(i - t.n1, j - t.n2, k - t.n3)
        return Fraction(0)

    return Tensor3.from_entries(t.n1 + s.n1, t.n2 + s.n2, t.n3 + s.n3, get)


def pad_witness_to_second_block(t: Tensor3, w: WitnessTriple) -> WitnessTriple:
    """Zero-pad a witness of the second summand onto the direct-sum indices."""
    return WitnessTriple(
        (Fraction(0),) * t.n1 + w.x,
        (Fraction(0),) * t.n2 + w.y,
        (Fraction(0),) * t.n3 + w.z)


def demo_direct_sum_failure(seed: int) -> FailureDemo:
    """Nondegenerate T, degenerate S: T + S is degenerate anyway.

    T is a random (3,2,2) tensor with nonzero hyperdeterminant (so provably
    nondegenerate); S comes from the witness-first generator.  The padded
    witness lives entirely in the S block, demonstrating that the direct sum
    admits auxiliary witnesses independent of T.
    """
    rng = random.Random(seed)
    fmt = hyperdet.Format(3, 2, 2)
    while True:
        t = Tensor3(3, 2, 2, tuple(Fraction(rng.randint(-3, 3)) for _ in range(12)))
        hd = hyperdet.hyperdet_322(t)
        if hd.value != 0:
            break
    s, w = hyperdet.degenerate_generator(fmt, seed=rng.randrange(1 << 30))
    combined = direct_sum(t, s)
    padded = pad_witness_to_second_block(t, w)
    checks = {
        "first_summand_hyperdet_nonzero": hd.value != 0,
        "second_summand_witness_verifies": verify_tensor_witness(s, w),
        "padded_witness_verifies_sum": verify_tensor_witness(combined, padded),
        "padded_x_supported_in_second_block": all(c == 0 for c in padded.x[:t.n1]),
        "padded_y_supported_in_second_block": all(c == 0 for c in padded.y[:t.n2]),
        "padded_z_supported_in_second_block": all(c == 0 for c in padded.z[:t.n3]),
    }
    assert all(checks.values()), f"direct-sum demo failed self-check: {checks}"
    return FailureDemo(DIRECT_SUM,
                       instances={"nondegenerate": t, "degenerate": s,
                                  "sum": combined},
                       witnesses={"block_witness": w, "padded_witness": padded},
                       checks=checks)


def pairwise_products_vanish(x: Sequence[Fraction], y: Sequence[Fraction],
                             z: Sequence[Fraction]) -> bool:
    """Coordinatewise annihilation: x_i y_i = x_i z_i = y_i z_i = 0 for all i."""
    return all(x[i] * y[i] == 0 and x[i] * z[i] == 0 and y[i] * z[i] == 0
               for i in range(len(x)))


def demo_disjoint_support(n: int,
                          support: Optional[tuple[int, int, int]] = None) -> FailureDemo:
    """Basis vectors on three distinct coordinates defeat pairwise constraints.

    Needs n >= 3; ``support`` picks the distinct coordinates (0-based),
    defaulting to (0, 1, 2).
    """
    if n < 3:
        raise ValueError("need dimension >= 3 for three distinct support indices")
    i, j, k = support if support is not None else (0, 1, 2)
    if len({i, j, k}) != 3:
        raise ValueError("support indices must be distinct")
    x, y, z = basis_vector(n, i), basis_vector(n, j), basis_vector(n, k)
    checks = {
        "all_vectors_nonzero": not (vec_is_zero(x) or vec_is_zero(y) or vec_is_zero(z)),
        "pairwise_products_vanish": pairwise_products_vanish(x, y, z),
    }
    assert all(checks.values())
    return FailureDemo(PAIRWISE, instances={},
                       witnesses={"triple": WitnessTriple(x, y, z)},
                       checks=checks)


def demo_vandermonde_failure(n: int,
                             support: Optional[tuple[int, int, int]] = None) -> FailureDemo:
    """Coordinatewise annihilation still admits distributed-support triples.

    Wraps demo_disjoint_support and re-checks annihilation coordinate by
    coordinate: weighted pairwise constraint families enforce exactly these
    products, so the same triple defeats them.
    """
    base = demo_disjoint_support(n, support)
    w = base.witnesses["triple"]
    annihilates = pairwise_products_vanish(w.x, w.y, w.z)
    checks = dict(base.checks)
    checks["coordinatewise_annihilation"] = annihilates
    assert annihilates
    return FailureDemo(VANDERMONDE, instances={}, witnesses=dict(base.witnesses),
                       checks=checks)
