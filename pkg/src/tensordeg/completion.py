"""Boundary-format completion templates and the randomized degeneracy test.

A completion template places an input tensor inside a larger boundary-format
tensor whose remaining cells are free variables U; the completion polynomial
P(U) is the hyperdeterminant of the completed tensor.  Evaluating P at random
integer points is a one-sided identity test (Schwartz-Zippel): a nonzero value
certifies P is not identically zero, while all-zero outcomes are only evidence
bounded by the trial budget, never a proof.

The v1 template is the deterministic corner placement with every non-input
cell free.  Whether corner placement preserves the degenerate/identically-zero
correspondence is *not* asserted here; the test suite validates it empirically
per input family and records violations as template-contract findings.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import hyperdet
from .exactmath import rat
from .instances import Tensor3

Cell = tuple[int, int, int]

ALL_ZERO = "all_zero"
HITTING_FOUND = "hitting_point_found"

PIT_ZERO = "identically_zero_up_to_budget"
PIT_NONZERO = "nonzero_with_point"

STRATEGIES = ("zeros", "unit_points", "coordinate_ramp")


class TemplateError(ValueError):
    """Raised when no supported boundary target fits the input format."""


@dataclass(frozen=True)
class PolynomialFamilyTag:
    """Identifier of a completion-polynomial family."""

    identifier: str


@dataclass(frozen=True)
class CompletionTemplate:
    """Placement of an input format inside a supported boundary target.

    ``placement`` maps input cells to target cells injectively; ``free_cells``
    are the coordinates of U; ``fixed_cells`` carry constants (none in the v1
    corner template).  The three groups partition the target tensor.
    """

    input_format: tuple[int, int, int]
    target: tuple[int, int, int]
    placement: tuple[tuple[Cell, Cell], ...]
    free_cells: tuple[Cell, ...]
    fixed_cells: tuple[tuple[Cell, Fraction], ...] = ()

    def __post_init__(self):
        tgt = hyperdet.Format(*self.target)
        if hyperdet.boundary_permutation(tgt) is None:
            raise TemplateError(f"target {self.target} is not boundary format")
        targets = [c for _, c in self.placement]
        frees = list(self.free_cells)
        fixeds = [c for c, _ in self.fixed_cells]
        combined = targets + frees + fixeds
        if len(set(targets)) != len(targets):
            raise TemplateError("placement is not injective")
        all_cells = {(i, j, k) for i in range(self.target[0])
                     for j in range(self.target[1]) for k in range(self.target[2])}
        if len(combined) != len(all_cells) or set(combined) != all_cells:
            raise TemplateError("placed, free and fixed cells must partition the target")

    @property
    def num_free(self) -> int:
        return len(self.free_cells)

    def family_tag(self) -> PolynomialFamilyTag:
        fi = "x".join(map(str, self.input_format))
        ft = "x".join(map(str, self.target))
        return PolynomialFamilyTag(f"corner-v1:{fi}->{ft}")

    def to_json(self) -> dict:
        return {"input_format": list(self.input_format),
                "target": list(self.target),
                "free_cells": [list(c) for c in self.free_cells],
                "fixed_cells": [[list(c), str(v)] for c, v in self.fixed_cells],
                "family": self.family_tag().identifier}


def supported_targets() -> list[tuple[int, int, int]]:
    """Exactly evaluable boundary formats, smallest cell count first."""
    targets = [(n, n, 1) for n in range(1, hyperdet.MATRIX_FORMAT_MAX + 1)]
    targets.append((3, 2, 2))
    return sorted(targets, key=lambda d: (d[0] * d[1] * d[2], d))


def build_template(input_format: hyperdet.Format) -> CompletionTemplate:
    """Deterministic v1 template for an input format.

    Inputs that are already supported boundary formats get the identity
    template (no free cells).  Otherwise the input block is placed at the
    origin corner of the smallest supported target that contains it
    componentwise, and every remaining cell is free.
    """
    dims = input_format.dims
    if hyperdet.is_supported(input_format) and hyperdet.is_boundary(input_format):
        placement = tuple((c, c) for c in _cells(dims))
        return CompletionTemplate(dims, dims, placement, ())
    for target in supported_targets():
        if all(d <= s for d, s in zip(dims, target)):
            placed = tuple((c, c) for c in _cells(dims))
            inside = {c for _, c in placed}
            free = tuple(c for c in _cells(target) if c not in inside)
            return CompletionTemplate(dims, target, placed, free)
    raise TemplateError(f"no supported boundary target contains format {dims}")


def _cells(dims: tuple[int, int, int]) -> list[Cell]:
    return [(i, j, k) for i in range(dims[0])
            for j in range(dims[1]) for k in range(dims[2])]


def assemble(t: Tensor3, tpl: CompletionTemplate,
             point: Sequence[Fraction]) -> Tensor3:
    """Fill the template with the input tensor and a point for U."""
    if t.dims != tpl.input_format:
        raise TemplateError(f"tensor format {t.dims} does not match template "
                            f"input {tpl.input_format}")
    if len(point) != tpl.num_free:
        raise TemplateError(f"point has {len(point)} coordinates, template has "
                            f"{tpl.num_free} free cells")
    entries = {}
    for src, dst in tpl.placement:
        entries[dst] = t.at(*src)
    for cell, value in tpl.fixed_cells:
        entries[cell] = value
    for cell, value in zip(tpl.free_cells, point):
        entries[cell] = rat(value)
    return Tensor3.from_entries(*tpl.target, lambda i, j, k: entries[(i, j, k)])


def eval_completion(t: Tensor3, tpl: CompletionTemplate,
                    point: Sequence[Fraction]) -> Fraction:
    """The completion polynomial at a point: hyperdeterminant of the filling."""
    return hyperdet.evaluate(assemble(t, tpl, point)).value


def _point_digest(point: Sequence[Fraction]) -> str:
    payload = ",".join(str(c) for c in point)
    return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class SZReport:
    """Outcome of a randomized evaluation run.

    ``evaluations`` records (point digest, value-is-zero) per trial in trial
    order; a hitting point is a point with exactly nonzero value, certifying
    that the completion polynomial is not identically zero.
    """

    trials: int
    sample_bound: int
    seed: int
    evaluations: tuple[tuple[str, bool], ...]
    verdict: str
    hitting_point: Optional[tuple[Fraction, ...]] = None

    def to_json(self) -> dict:
        out = {"trials": self.trials, "sample_bound": self.sample_bound,
               "seed": self.seed,
               "evaluations": [{"digest": d, "zero": z} for d, z in self.evaluations],
               "verdict": self.verdict}
        if self.hitting_point is not None:
            out["hitting_point"] = [str(c) for c in self.hitting_point]
        return out


def min_sample_bound(tpl: CompletionTemplate) -> int:
    """Conservative lower bound for the sample space: twice the target
    format's hyperdeterminant degree bounds twice the completion-polynomial
    degree from above."""
    return 2 * hyperdet.hyperdet_degree(hyperdet.Format(*tpl.target))


def sz_test(t: Tensor3, tpl: CompletionTemplate, trials: int,
            sample_bound: int, seed: int) -> SZReport:
    """Evaluate the completion polynomial at seeded uniform integer points.

    Stops at the first nonzero value (a hitting point); otherwise reports
    all_zero, which is evidence up to the trial budget, not a proof.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    if sample_bound < min_sample_bound(tpl):
        raise ValueError(f"sample_bound {sample_bound} is below twice the "
                         f"completion-polynomial degree bound {min_sample_bound(tpl)}")
    rng = random.Random(seed)
    evaluations = []
    for _ in range(trials):
        point = tuple(Fraction(rng.randrange(sample_bound))
                      for _ in range(tpl.num_free))
        value = eval_completion(t, tpl, point)
        evaluations.append((_point_digest(point), value == 0))
        if value != 0:
            return SZReport(trials, sample_bound, seed, tuple(evaluations),
                            HITTING_FOUND, point)
    return SZReport(trials, sample_bound, seed, tuple(evaluations), ALL_ZERO)


def _strategy_points(tpl: CompletionTemplate, strategy: str):
    n = tpl.num_free
    if strategy == "zeros":
        yield (Fraction(0),) * n
    elif strategy == "unit_points":
        if n == 0:
            yield ()
        for i in range(n):
            yield tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
    elif strategy == "coordinate_ramp":
        yield tuple(Fraction(i + 1) for i in range(n))
    else:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")


def hitting_attempt(t: Tensor3, tpl: CompletionTemplate,
                    strategy: str) -> Optional[tuple[Fraction, ...]]:
    """Try a deterministic point family; return the first hitting point.

    These are probes, not guaranteed procedures: any fixed point family can
    land inside the zero set for some inputs.  Outcomes are data.
    """
    for point in _strategy_points(tpl, strategy):
        if eval_completion(t, tpl, point) != 0:
            return point
    return None


@dataclass(frozen=True)
class PitBudget:
    trials: int
    seed: int
    sample_bound: int = 1 << 20


@dataclass(frozen=True)
class PitResult:
    verdict: str
    point: Optional[tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None
    strategy: Optional[str] = None
    sz_report: Optional[SZReport] = None

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.point is not None:
            out["point"] = [str(c) for c in self.point]
        if self.value is not None:
            out["value"] = str(self.value)
        if self.strategy is not None:
            out["strategy"] = self.strategy
        if self.sz_report is not None:
            out["sz_report"] = self.sz_report.to_json()
        return out


def completion_pit(t: Tensor3, tpl: CompletionTemplate,
                   budget: PitBudget) -> PitResult:
    """One-sided identity test: deterministic probes, then seeded random
    evaluation.  A nonzero outcome carries an exact certificate point; the
    zero outcome is explicitly only 'up to budget'."""
    for strategy in STRATEGIES:
        point = hitting_attempt(t, tpl, strategy)
        if point is not None:
            return PitResult(PIT_NONZERO, point=point,
                             value=eval_completion(t, tpl, point),
                             strategy=strategy)
    report = sz_test(t, tpl, budget.trials, budget.sample_bound, budget.seed)
    if report.verdict == HITTING_FOUND:
        return PitResult(PIT_NONZERO, point=report.hitting_point,
                         value=eval_completion(t, tpl, report.hitting_point),
                         strategy="schwartz_zippel", sz_report=report)
    return PitResult(PIT_ZERO, sz_report=report)
