"""Embedding a non-complete code into a complete one while keeping it
independent for a chosen relation.

All constructions share one shape: pick an anchor word ``z`` that is not a
factor of ``X*`` and has no proper border, let ``U`` be the words that avoid
both ``X*`` and ``z`` as a factor, and add a set ``Y`` of words built from
``z`` and ``U``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import automata as fa
from . import codes
from . import conditions as cond
from . import regex as rx
from .automata import DEFAULT_STATE_CAP, Nfa
from .relations import FACTOR_K_CAP, RelationSpec
from .words import ThetaSpec, Word, companion_letter, make_overlapping_free, theta_apply


class EmbeddingError(ValueError):
    """Precondition failure; ``kind`` is one of ``not-code``, ``not-independent``, ``already-complete``."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


@dataclass
class EmbeddingResult:
    x: Nfa
    z0: Word
    z: Word
    u: Nfa
    y: Nfa
    z_code: Nfa
    spec: RelationSpec | None = None
    checks: dict = field(default_factory=dict)

    @property
    def alphabet(self):
        return self.x.alphabet

    def regex(self, cap: int = DEFAULT_STATE_CAP) -> str:
        return rx.to_text(fa.to_regex(self.z_code, cap), self.alphabet)

    def verify(self, cap: int = DEFAULT_STATE_CAP, max_k: int = FACTOR_K_CAP) -> dict:
        """Re-check the guarantees of the construction on the output."""
        checks = {
            "contains_input": fa.is_subset(self.x, self.z_code, cap),
            "code": codes.is_code(self.z_code, cap),
            "complete": codes.is_complete(self.z_code, cap),
        }
        if self.spec is not None and checks["code"]:
            checks["c1"] = bool(cond.check_c1(self.z_code, self.spec, cap, max_k).holds)
            checks["c3"] = checks["c1"] and checks["complete"]
        self.checks = checks
        return checks

    def to_dict(self, cap: int = DEFAULT_STATE_CAP) -> dict:
        al = self.alphabet
        return {
            "z0": al.format(self.z0),
            "z": al.format(self.z),
            "regex": self.regex(cap),
            "relation": None if self.spec is None else self.spec.to_dict(),
            "checks": dict(self.checks),
        }

    def to_json(self, cap: int = DEFAULT_STATE_CAP) -> str:
        return json.dumps(self.to_dict(cap), sort_keys=True, indent=2)


def _avoiding(x: Nfa, z: Word, cap: int) -> Nfa:
    """Words that are neither in ``x*`` nor contain ``z``."""
    al = x.alphabet
    bad = fa.union(fa.star(x), fa.contains_factor(al, z))
    return fa.minimal_nfa(fa.complement(bad, cap), cap)


def _check_inputs(x: Nfa, spec: RelationSpec | None, cap: int, max_k: int) -> None:
    if not codes.is_code(x, cap):
        raise EmbeddingError("not-code", "the input set is not a code")
    if spec is not None and not cond.check_c1(x, spec, cap, max_k).holds:
        raise EmbeddingError("not-independent", f"the input code is not independent for {spec.family} k={spec.k}")
    if codes.is_complete(x, cap):
        raise EmbeddingError("already-complete", "the input code is already complete")


def _result(x, z0, z, u, y, spec, cap) -> EmbeddingResult:
    y = fa.minimal_nfa(y, cap)
    return EmbeddingResult(x, z0, z, u, y, fa.minimal_nfa(fa.union(x, y), cap), spec)


def _star_anchor(x: Nfa, z0: Word, z: Word, spec, cap: int) -> EmbeddingResult:
    al = x.alphabet
    u = _avoiding(x, z, cap)
    zw = fa.from_word(al, z)
    y = fa.concat(fa.star(fa.concat(zw, u)), zw)
    return _result(x, z0, z, u, y, spec, cap)


def embed_generic(x: Nfa, cap: int = DEFAULT_STATE_CAP, spec: RelationSpec | None = None) -> EmbeddingResult:
    """Complete code containing ``x``; no independence requirement."""
    _check_inputs(x, None, cap, FACTOR_K_CAP)
    z0 = codes.find_non_factor(x, 1, cap)
    return _star_anchor(x, z0, make_overlapping_free(z0), spec, cap)


def embed_prefix(x: Nfa, k: int, cap: int = DEFAULT_STATE_CAP) -> EmbeddingResult:
    spec = RelationSpec("prefix", k)
    _check_inputs(x, spec, cap, FACTOR_K_CAP)
    z0 = codes.find_non_factor(x, k, cap)
    return _star_anchor(x, z0, make_overlapping_free(z0), spec, cap)


def embed_suffix(x: Nfa, k: int, cap: int = DEFAULT_STATE_CAP) -> EmbeddingResult:
    """Mirror image of :func:`embed_prefix`."""
    spec = RelationSpec("suffix", k)
    _check_inputs(x, spec, cap, FACTOR_K_CAP)
    rev = fa.reverse(x)
    z0 = codes.find_non_factor(rev, k, cap)
    mirrored = _star_anchor(rev, z0, make_overlapping_free(z0), spec, cap)
    y = fa.reverse(mirrored.y)
    return _result(x, z0[::-1], mirrored.z[::-1], fa.reverse(mirrored.u), y, spec, cap)


def embed_factor(x: Nfa, k: int, cap: int = DEFAULT_STATE_CAP, max_k: int = FACTOR_K_CAP) -> EmbeddingResult:
    spec = RelationSpec("factor", k)
    _check_inputs(x, spec, cap, max_k)
    al = x.alphabet
    z0 = codes.find_non_factor(x, k, cap)
    z = make_overlapping_free(z0)
    a = z0[0]
    z1 = (a,) * len(z) + (companion_letter(a),) + z
    u = _avoiding(x, z1, cap)
    zw = fa.from_word(al, z1)
    y = fa.concat(zw, fa.star(fa.concat(u, zw)))
    return _result(x, z0, z1, u, y, spec, cap)


def theta_anchor(z0: Word, theta: ThetaSpec) -> Word:
    """``z0 theta(z0) ... theta^(n-1)(z0) a b^(n|z0|)`` where ``theta^n`` is the identity."""
    n = theta.order
    parts = []
    w = z0
    for _ in range(n):
        parts.extend(w)
        w = theta_apply(theta, w)
    a = z0[0]
    return tuple(parts) + (a,) + (companion_letter(a),) * (n * len(z0))


def embed_theta(x: Nfa, theta: ThetaSpec, cap: int = DEFAULT_STATE_CAP) -> EmbeddingResult:
    spec = RelationSpec("theta", 1, theta)
    if not theta.is_anti:
        _check_inputs(x, spec, cap, FACTOR_K_CAP)
        return embed_generic(x, cap, spec)
    _check_inputs(x, spec, cap, FACTOR_K_CAP)
    z0 = codes.find_non_factor(x, 1, cap)
    if len(z0) < 2 or len(set(z0)) == 1:
        z0 = z0 + (companion_letter(z0[0]),)
    z2 = theta_anchor(z0, theta)
    return _star_anchor(x, z0, z2, spec, cap)


def embed(x: Nfa, spec: RelationSpec, cap: int = DEFAULT_STATE_CAP, max_k: int = FACTOR_K_CAP) -> EmbeddingResult:
    if spec.family == "prefix":
        return embed_prefix(x, spec.k, cap)
    if spec.family == "suffix":
        return embed_suffix(x, spec.k, cap)
    if spec.family == "factor":
        return embed_factor(x, spec.k, cap, max_k)
    return embed_theta(x, spec.theta, cap)
