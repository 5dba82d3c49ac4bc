"""Decide L = L1·L2 for finite languages given as DFAs."""

from __future__ import annotations

from dataclasses import dataclass

from . import automata as fa
from .errors import AlphabetMismatchError

MISSING_FROM_L = "missing-from-L"
MISSING_FROM_PRODUCT = "missing-from-product"


@dataclass(frozen=True)
class ConcatEqVerdict:
    equal: bool
    counterexample: tuple | None = None
    direction: str | None = None

    def __post_init__(self):
        if self.equal != (self.counterexample is None):
            raise ValueError("a counterexample is present exactly when the languages differ")
        if self.direction not in (None, MISSING_FROM_L, MISSING_FROM_PRODUCT):
            raise ValueError(f"bad direction {self.direction!r}")


def concat_equiv(lang, left, right) -> ConcatEqVerdict:
    """Compare L(lang) with L(left)·L(right).

    The counterexample, if any, is the shortlex-least word of the symmetric
    difference; ``direction`` says which side is missing it.
    """
    if not (lang.alphabet == left.alphabet == right.alphabet):
        raise AlphabetMismatchError("all three automata must share one alphabet")
    for name, d in (("L", lang), ("L1", left), ("L2", right)):
        fa.require_finite(d, name)
    product = fa.determinize(fa.concat(left, right))
    equal, word = fa.equivalent(lang, product)
    if equal:
        return ConcatEqVerdict(True)
    direction = MISSING_FROM_PRODUCT if lang.accepts(word) else MISSING_FROM_L
    return ConcatEqVerdict(False, word, direction)
