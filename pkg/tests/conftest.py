import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from qmcodes import automata as fa  # noqa: E402
from qmcodes.words import Alphabet  # noqa: E402

AB = Alphabet("ab")

_ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    _ACCEPTANCE.setdefault(number, []).append((bool(ok), detail))


@pytest.fixture
def acceptance():
    return record_acceptance


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        parts = _ACCEPTANCE[number]
        ok = all(p for p, _ in parts)
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def words_nfa(text: str, alphabet: Alphabet = AB) -> fa.Nfa:
    return fa.from_words(alphabet, [alphabet.parse(w) for w in text.split(",")])


def lang(nfa: fa.Nfa, max_len: int) -> set:
    return set(fa.words(nfa, max_len))


def fmt(words, alphabet: Alphabet = AB) -> set:
    return {alphabet.format(w) for w in words}
