"""Deciders for the four error-detection conditions of a regular code.

c1  no two distinct codewords are within distance ``k`` (the code is independent);
c2  the radius-``k`` balls around distinct codewords are disjoint;
c3  c1 holds and the code is complete (maximal among independent codes);
c4  the radius-``k`` ball around the whole code is itself a code.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import automata as fa
from . import codes
from . import relations as rel
from .automata import DEFAULT_STATE_CAP, Nfa
from .relations import FACTOR_K_CAP, RelationSpec
from .words import Alphabet, Word, theta_apply

CONDITIONS = ("c1", "c2", "c3", "c4")


class NotACodeError(ValueError):
    pass


@dataclass(frozen=True)
class Witness:
    """Two distinct codewords ``x``, ``y`` at distance ``distance``.

    ``common`` (c2 only) is a word within radius ``k`` of both.
    """

    x: Word
    y: Word
    distance: int
    common: Word | None = None

    def to_dict(self, alphabet: Alphabet) -> dict:
        out = {"x": alphabet.format(self.x), "y": alphabet.format(self.y), "distance": self.distance}
        if self.common is not None:
            out["common"] = alphabet.format(self.common)
        return out


@dataclass
class Verdict:
    holds: bool | None
    witness: Witness | None = None
    reason: str = ""
    chain: codes.SpChain | None = None

    def to_dict(self, alphabet: Alphabet) -> dict:
        out: dict = {"holds": self.holds}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict(alphabet)
        if self.reason:
            out["reason"] = self.reason
        if self.chain is not None:
            out["sp_sets"] = len(self.chain.sets)
        return out


NOT_APPLICABLE = "not-applicable: input is not a code"


@dataclass
class Report:
    relation: RelationSpec
    alphabet: Alphabet
    is_code: bool
    conditions: dict[str, Verdict] = field(default_factory=dict)
    measure: object = None
    complete: bool | None = None
    input: str = ""

    def holds(self, name: str) -> bool | None:
        return self.conditions[name].holds

    def to_dict(self) -> dict:
        return {
            "input": self.input,
            "is_code": self.is_code,
            "relation": self.relation.to_dict(),
            "conditions": {c: v.to_dict(self.alphabet) for c, v in self.conditions.items()},
            "measure": None if self.measure is None else codes.format_measure(self.measure),
            "complete": self.complete,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _require_code(x: Nfa, cap: int) -> None:
    if not codes.is_code(x, cap):
        raise NotACodeError("the input set is not a code")


def _single(x: Nfa, w: Word) -> Nfa:
    return fa.from_word(x.alphabet, w)


def _metric_pair(x: Nfa, spec: RelationSpec, cap: int, max_k: int) -> Witness | None:
    hit = fa.intersection(rel.underline_image(x, spec, max_k), x)
    # every metric family here is symmetric, so a hit is also a source
    xw = fa.shortest_word(hit)
    if xw is None:
        return None
    near = fa.intersection(rel.underline_image(_single(x, xw), spec, max_k), x)
    y = fa.shortest_word(near)
    return Witness(xw, y, spec.distance(xw, y))


def _theta_pair(x: Nfa, spec: RelationSpec) -> Witness | None:
    theta = spec.theta
    candidates = fa.intersection(x, rel.theta_image(theta, x, "inverse"))
    w = rel.theta_fixed_witness(candidates, theta)
    if w is None:
        return None
    return Witness(w, theta_apply(theta, w), 1)


def _c1(x: Nfa, spec: RelationSpec, cap: int, max_k: int) -> Verdict:
    if spec.family == "theta":
        wit = _theta_pair(x, spec)
    else:
        wit = _metric_pair(x, spec, cap, max_k)
    return Verdict(wit is None, wit)


def _c2(x: Nfa, spec: RelationSpec, cap: int, max_k: int) -> Verdict:
    wide = spec.with_k(2 * spec.k)
    v = _c1(x, wide, cap, max_k)
    if v.holds:
        return v
    wit = v.witness
    common = fa.intersection(
        rel.hat_image(_single(x, wit.x), spec, max_k), rel.hat_image(_single(x, wit.y), spec, max_k)
    )
    return Verdict(False, Witness(wit.x, wit.y, wit.distance, fa.shortest_word(common)))


def _c3(x: Nfa, spec: RelationSpec, cap: int, max_k: int, c1: Verdict | None = None, complete: bool | None = None) -> Verdict:
    c1 = c1 or _c1(x, spec, cap, max_k)
    if not c1.holds:
        return Verdict(False, c1.witness, "not independent")
    if complete is None:
        complete = codes.is_complete(x, cap)
    if not complete:
        return Verdict(False, reason="not complete")
    return Verdict(True)


def _c4(x: Nfa, spec: RelationSpec, cap: int, max_k: int) -> Verdict:
    chain = codes.sardinas_patterson(rel.hat_image(x, spec, max_k), cap)
    return Verdict(chain.is_code, reason="" if chain.is_code else chain.reason, chain=chain)


def check_c1(x: Nfa, spec: RelationSpec, cap: int = DEFAULT_STATE_CAP, max_k: int = FACTOR_K_CAP) -> Verdict:
    _require_code(x, cap)
    return _c1(x, spec, cap, max_k)


def check_c2(x: Nfa, spec: RelationSpec, cap: int = DEFAULT_STATE_CAP, max_k: int = FACTOR_K_CAP) -> Verdict:
    _require_code(x, cap)
    return _c2(x, spec, cap, max_k)


def check_c3(x: Nfa, spec: RelationSpec, cap: int = DEFAULT_STATE_CAP, max_k: int = FACTOR_K_CAP) -> Verdict:
    _require_code(x, cap)
    return _c3(x, spec, cap, max_k)


def check_c4(x: Nfa, spec: RelationSpec, cap: int = DEFAULT_STATE_CAP, max_k: int = FACTOR_K_CAP) -> Verdict:
    _require_code(x, cap)
    return _c4(x, spec, cap, max_k)


def analyze(
    x: Nfa,
    spec: RelationSpec,
    conditions=CONDITIONS,
    cap: int = DEFAULT_STATE_CAP,
    max_k: int = FACTOR_K_CAP,
    input_text: str = "",
) -> Report:
    """Code check, measure, completeness, then each requested condition.

    On a non-code every requested condition is reported with ``holds=None``.
    """
    unknown = set(conditions) - set(CONDITIONS)
    if unknown:
        raise ValueError(f"unknown conditions: {', '.join(sorted(unknown))}")
    chain = codes.sardinas_patterson(x, cap)
    report = Report(spec, x.alphabet, chain.is_code, input=input_text)
    report.measure = codes.measure(x, cap)
    report.complete = codes.is_complete(x, cap)
    if not chain.is_code:
        for c in CONDITIONS:
            if c in conditions:
                report.conditions[c] = Verdict(None, reason=NOT_APPLICABLE)
        return report
    c1 = None
    for c in CONDITIONS:
        if c not in conditions:
            continue
        if c == "c1":
            c1 = _c1(x, spec, cap, max_k)
            report.conditions[c] = c1
        elif c == "c2":
            report.conditions[c] = _c2(x, spec, cap, max_k)
        elif c == "c3":
            report.conditions[c] = _c3(x, spec, cap, max_k, c1, report.complete)
        else:
            report.conditions[c] = _c4(x, spec, cap, max_k)
    return report


def measure_value(report: Report):
    m = report.measure
    return m if m == math.inf else Fraction(m)
