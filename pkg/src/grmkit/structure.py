"""Structure of minimum-weight codewords and the checks that certify it.

``verify_theorem`` runs every check for one parameter cell:

* forward: each minimum-weight word has support equal to ``q - s`` parallel
  flats of codimension ``t + 1`` inside a flat of codimension ``t``;
* converse: each affine image of a canonical word is a codeword of weight
  ``w_min``, and those images are exactly the minimum-weight words;
* the hyperplane dichotomy for minimum-weight supports (``check_lemma5``);
* the avoiding-hyperplane property of those supports (``check_lemma4``).

A failure on a verified input is reported as a theorem contradiction, which
at this scale means a bug; the report keeps the witness data.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .code import (
    DEFAULT_BUDGET,
    Codeword,
    GrmParams,
    contains,
    enumerate_min_words,
    exhaustive_scan,
)
from .geometry import (
    AffineSpace,
    AvoidanceResult,
    Flat,
    FlatUnion,
    Hyperplane,
    find_avoiding_hyperplane,
    flats_union_classify,
)

__all__ = [
    "NotMinimalError",
    "NotACodewordError",
    "Branch",
    "ClassificationReport",
    "Lemma5Report",
    "Lemma4Report",
    "VerificationReport",
    "classify_min_word",
    "check_lemma5",
    "check_lemma4",
    "lemma5_sweep",
    "verify_theorem",
]


class NotMinimalError(ValueError):
    pass


class NotACodewordError(ValueError):
    pass


@dataclass(frozen=True)
class ClassificationReport:
    params: GrmParams
    word: Codeword
    structure: FlatUnion | None

    @property
    def matches(self) -> bool:
        return self.structure is not None

    @property
    def verdict(self) -> str:
        return "Matches" if self.matches else "Fails"

    @property
    def ambient(self) -> Flat | None:
        return self.structure.ambient if self.structure else None

    @property
    def components(self) -> tuple[Flat, ...]:
        return self.structure.components if self.structure else ()

    def to_dict(self) -> dict:
        out = {"verdict": self.verdict, "table": self.word.values.tolist()}
        if self.structure:
            st = self.structure
            out.update(
                ambient=str(st.ambient),
                direction=list(st.direction),
                offsets=list(st.offsets),
                components=[str(c) for c in st.components],
            )
        return out


def classify_min_word(word: Codeword, params: GrmParams, check_membership: bool = True) -> ClassificationReport:
    if not params.in_theorem_range:
        raise ValueError(f"classification needs r < m(q-1); got {params}")
    if word.weight != params.w_min:
        raise NotMinimalError(f"weight {word.weight} is not the minimum weight {params.w_min} of {params}")
    if check_membership and not contains(params, word):
        raise NotACodewordError(f"not a codeword of {params}")
    space = params.space
    st = flats_union_classify(space, word.support, params.t, params.s)
    if st is not None:
        # the union of components must reproduce the support exactly
        pts = np.sort(np.concatenate([c.points(space) for c in st.components]))
        assert np.array_equal(pts, word.support), "components do not reproduce the support"
        assert all(np.isin(c.points(space), st.ambient.points(space)).all() for c in st.components)
    return ClassificationReport(params, word, st)


class Branch(enum.Enum):
    ALL_MEET = "AllMeet"
    EXACTLY_Q_MINUS_S = "ExactlyQminusS"
    VIOLATION = "Violation"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class Lemma5Report:
    hyperplane: Hyperplane
    counts: tuple[int, ...]  # |S n H_c| for offsets c = 0..q-1
    branch: Branch

    def to_dict(self) -> dict:
        return {"hyperplane": str(self.hyperplane), "counts": list(self.counts), "branch": self.branch.value}


def _lemma5_branch(counts: np.ndarray, offset: int, params: GrmParams) -> Branch:
    q, s = params.q, params.s
    here, total = int(counts[offset]), int(counts.sum())
    if here == 0 or here == total:
        return Branch.NOT_APPLICABLE
    nz = counts[counts > 0]
    # for s = 0 both branches can hold; the sharper one is reported
    if nz.size == q - s and np.all(nz == q ** (params.m - params.t - 1)):
        return Branch.EXACTLY_Q_MINUS_S
    if nz.size == q:
        return Branch.ALL_MEET
    return Branch.VIOLATION


def check_lemma5(word: Codeword, params: GrmParams, H: Hyperplane) -> Lemma5Report:
    if word.weight != params.w_min:
        raise NotMinimalError(f"weight {word.weight} is not {params.w_min}")
    vals = params.space.dot(H.normal)
    counts = np.bincount(vals[word.support], minlength=params.q)
    return Lemma5Report(H, tuple(counts.tolist()), _lemma5_branch(counts, H.offset, params))


@dataclass
class Lemma5Sweep:
    pairs_checked: int = 0
    not_applicable: int = 0
    branches: dict = field(default_factory=lambda: {b.value: 0 for b in Branch})
    violations: list = field(default_factory=list)


def lemma5_sweep(words: Iterable[Codeword], params: GrmParams, sweep: Lemma5Sweep | None = None) -> Lemma5Sweep:
    """Every (word, hyperplane) pair; each parallel class is counted once per word."""
    sweep = sweep or Lemma5Sweep()
    space = params.space
    forms = list(space.normal_values())
    for w in words:
        if w.weight != params.w_min:
            raise NotMinimalError(f"weight {w.weight} is not {params.w_min}")
        for normal, vals in forms:
            counts = np.bincount(vals[w.support], minlength=params.q)
            for c in range(params.q):
                branch = _lemma5_branch(counts, c, params)
                sweep.branches[branch.value] += 1
                if branch is Branch.NOT_APPLICABLE:
                    sweep.not_applicable += 1
                    continue
                sweep.pairs_checked += 1
                if branch is Branch.VIOLATION:
                    H = Hyperplane(params.field, normal, c)
                    sweep.violations.append(
                        {"table": w.values.tolist(), **Lemma5Report(H, tuple(counts.tolist()), branch).to_dict()}
                    )
    return sweep


@dataclass(frozen=True)
class Lemma4Report:
    t: int
    n: int
    result: AvoidanceResult

    @property
    def hypothesis_holds(self) -> bool:
        return self.result.hypothesis_holds

    @property
    def hyperplane(self) -> Hyperplane | None:
        return self.result.hyperplane

    @property
    def contradiction(self) -> bool:
        """Hypothesis holds yet no hyperplane misses S."""
        return self.result.hypothesis_holds and self.result.hyperplane is None

    def to_dict(self) -> dict:
        v = self.result.violation
        return {
            "t": self.t,
            "n": self.n,
            "hypothesis_holds": self.hypothesis_holds,
            "avoiding": str(self.hyperplane) if self.hyperplane else None,
            "violation": {"hyperplane": str(v[0]), "count": v[1]} if v else None,
            "contradiction": self.contradiction,
        }


def check_lemma4(space: AffineSpace, S: Iterable[int], t: int, n: int) -> Lemma4Report:
    return Lemma4Report(t, n, find_avoiding_hyperplane(space, S, t, n))


def lemma4_parameters(params: GrmParams) -> tuple[int, int]:
    """``(q - s, m - t - 1)``: the factorization of w_min fed to check_lemma4."""
    return params.q - params.s, params.m - params.t - 1


# -- full verification -------------------------------------------------------------


@dataclass
class VerificationReport:
    params: GrmParams
    mode: str
    min_nonzero_weight: int | None = None
    forward_count: int = 0
    forward_matches: int = 0
    forward_failures: list = field(default_factory=list)
    converse_count: int = 0
    converse_pass: int = 0
    converse_failures: list = field(default_factory=list)
    sets_equal: bool | None = None
    lemma5: Lemma5Sweep = field(default_factory=Lemma5Sweep)
    lemma4_checked: int = 0
    lemma4_found: int = 0
    lemma4_failures: list = field(default_factory=list)
    runtime_ms: int = 0

    @property
    def contradictions(self) -> int:
        bad = len(self.forward_failures) + len(self.converse_failures) + len(self.lemma5.violations)
        bad += len(self.lemma4_failures)
        if self.min_nonzero_weight is not None and self.min_nonzero_weight != self.params.w_min:
            bad += 1
        if self.sets_equal is False:
            bad += 1
        return bad

    @property
    def ok(self) -> bool:
        return self.contradictions == 0

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "mode": self.mode,
            "min_nonzero_weight": self.min_nonzero_weight,
            "forward": {
                "count": self.forward_count,
                "matches": self.forward_matches,
                "failures": self.forward_failures,
            },
            "converse": {
                "count": self.converse_count,
                "pass": self.converse_pass,
                "failures": self.converse_failures,
                "equals_min_words": self.sets_equal,
            },
            "lemma5": {
                "pairs_checked": self.lemma5.pairs_checked,
                "not_applicable": self.lemma5.not_applicable,
                "branches": self.lemma5.branches,
                "violations": self.lemma5.violations,
            },
            "lemma4": {
                "supports_checked": self.lemma4_checked,
                "avoiding_found": self.lemma4_found,
                "failures": self.lemma4_failures,
            },
            "runtime_ms": self.runtime_ms,
        }


def verify_theorem(
    params: GrmParams, mode: str = "exhaustive", budget: int = DEFAULT_BUDGET, jobs: int = 1
) -> VerificationReport:
    """Forward classification, converse construction and lemma sweeps for one cell."""
    if not params.in_theorem_range:
        raise ValueError(f"verification needs r < m(q-1); got {params}")
    start = time.perf_counter()
    rep = VerificationReport(params, mode)

    if mode == "exhaustive":
        scan = exhaustive_scan(params, budget, jobs)
        rep.min_nonzero_weight = scan.min_nonzero_weight
        words = [Codeword(params.field, params.m, row) for row in scan.words]
    else:
        words = enumerate_min_words(params, mode, budget, jobs)

    # forward: words come from the code itself, so membership is known
    rep.forward_count = len(words)
    for w in words:
        cr = classify_min_word(w, params, check_membership=(mode != "exhaustive"))
        if cr.matches:
            rep.forward_matches += 1
        else:
            rep.forward_failures.append({"kind": "theorem-contradiction", **cr.to_dict()})

    # converse: affine images of canonical words
    orbit = words if mode == "orbit" else enumerate_min_words(params, "orbit", budget, jobs)
    rep.converse_count = len(orbit)
    for w in orbit:
        good_weight = w.weight == params.w_min
        member = contains(params, w)
        if good_weight and member:
            rep.converse_pass += 1
        else:
            rep.converse_failures.append(
                {"kind": "theorem-contradiction", "table": w.values.tolist(), "weight": w.weight, "member": member}
            )
    if mode == "exhaustive":
        rep.sets_equal = [w.key() for w in words] == [w.key() for w in orbit]

    lemma5_sweep(words, params, rep.lemma5)

    if params.s >= 1:
        t4, n4 = lemma4_parameters(params)
        space = params.space
        for w in words:
            r4 = check_lemma4(space, w.support, t4, n4)
            rep.lemma4_checked += 1
            if r4.hyperplane is not None:
                rep.lemma4_found += 1
            else:
                rep.lemma4_failures.append({"kind": "theorem-contradiction", "table": w.values.tolist(), **r4.to_dict()})

    rep.runtime_ms = round((time.perf_counter() - start) * 1000)
    return rep
