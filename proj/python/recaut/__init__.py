"""Exact linear recurrences, weighted automata and threshold emptiness."""

from fractions import Fraction
import json

from recaut._core import (
    ConversionError,
    FormatError,
    InvalidProblemError,
    Model,
    RecautError,
    canonicalize,
)
from recaut import _core

__all__ = [
    "ConversionError",
    "FormatError",
    "InvalidProblemError",
    "Model",
    "RecautError",
    "canonicalize",
    "convert",
    "decide",
    "evaluate",
    "lr_minimize",
    "lr_terms",
]


def _text(x):
    return str(Fraction(x)) if not isinstance(x, str) else x


def evaluate(model, word):
    """Exact value of model on word as a Fraction."""
    return Fraction(model.eval(word))


def decide(model, problem, relation=None, cutpoint=0, bound=1000, include_empty_word=True):
    """Verdict as a dict with status, answer, certificate and witness keys."""
    return json.loads(_core.decide(model, problem, relation, _text(cutpoint), bound, include_empty_word))


def convert(model, to, cutpoint=None):
    """Returns (model, certificate chain, cutpoint or None)."""
    out, certs, cut = _core.convert(model, to, None if cutpoint is None else _text(cutpoint))
    chain = json.loads(certs)
    if isinstance(chain, dict):
        chain = [chain]
    return out, chain, None if cut is None else Fraction(cut)


def lr_terms(initials, coeffs, count):
    return [Fraction(t) for t in _core.lr_terms([_text(x) for x in initials], [_text(x) for x in coeffs], count)]


def lr_minimize(initials, coeffs):
    i, c = _core.lr_minimize([_text(x) for x in initials], [_text(x) for x in coeffs])
    return [Fraction(x) for x in i], [Fraction(x) for x in c]
