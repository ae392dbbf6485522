"""Words in the free monoid on the arrows of a finite category.

A word is a tuple of arrow names in diagrammatic order, with no
composability requirement.  A word is *reduced* when it contains no
identity and no adjacent composable pair; every word is congruent to
exactly one reduced word under the congruence generated by composing
adjacent composable pairs and deleting identities.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ._unionfind import UnionFind
from .errors import BudgetExceeded, PreconditionError, SkelcatError, budget as default_budget
from .fincat import FinCat

Word = tuple[str, ...]

EMPTY = "()"


def parse_word(text: str) -> Word:
    """Parse CLI word syntax: ``"f,f,g"``; ``""`` or ``"()"`` is the empty word."""
    text = text.strip()
    if text in ("", EMPTY):
        return ()
    parts = tuple(p.strip() for p in text.split(","))
    if any(not p for p in parts):
        raise SkelcatError(f"malformed word {text!r}")
    return parts


def format_word(word: Sequence[str]) -> str:
    return ",".join(word) if word else EMPTY


def check_word(c: FinCat, word: Iterable[str]) -> Word:
    word = tuple(word)
    for name in word:
        c.arrow(name)
    return word


def is_reduced(c: FinCat, word: Sequence[str]) -> bool:
    word = check_word(c, word)
    if any(c.is_identity(f) for f in word):
        return False
    return not any(c.composable(f, g) for f, g in zip(word, word[1:]))


def _phi(c: FinCat, a: str, beta: Word) -> Word:
    while True:
        if beta and c.composable(a, beta[0]):
            a, beta = c.compose(a, beta[0]), beta[1:]
        elif c.is_identity(a):
            return beta
        else:
            return (a,) + beta


def phi(c: FinCat, a: str, beta: Sequence[str]) -> Word:
    """Prepend arrow ``a`` to the reduced word ``beta`` and re-reduce.

    Three cases, tried in order: if ``beta = (b, *nu)`` with ``a ▷ b``
    defined, continue with ``(a ▷ b, nu)``; else if ``a`` is an identity the
    result is ``beta``; else it is ``(a, *beta)``.

    The recursion is evaluated for any ``beta``, but the result is only
    guaranteed reduced when ``beta`` is.
    """
    c.arrow(a)
    return _phi(c, a, check_word(c, beta))


def star(c: FinCat, alpha: Sequence[str], nu: Sequence[str]) -> Word:
    """``() ⋆ nu = nu`` and ``(a, *beta) ⋆ nu = phi(a, beta ⋆ nu)``."""
    alpha = check_word(c, alpha)
    nu = check_word(c, nu)
    if not is_reduced(c, nu):
        raise PreconditionError(f"star expects a reduced right argument, got {format_word(nu)}")
    result = nu
    for a in reversed(alpha):
        result = _phi(c, a, result)
    return result


def reduce(c: FinCat, alpha: Iterable[str]) -> Word:
    """The unique reduced word congruent to ``alpha``."""
    k = c.kernel
    return k.decode(k.impl.reduce(k.encode(alpha)))


def reduce_many(c: FinCat, words: Iterable[Sequence[str]]) -> list[Word]:
    k = c.kernel
    return [k.decode(r) for r in k.impl.reduce_many([k.encode(w) for w in words])]


def all_words(c: FinCat, max_len: int, letters: Sequence[str] | None = None) -> Iterable[Word]:
    letters = list(c.arrows) if letters is None else list(letters)
    for n in range(max_len + 1):
        yield from itertools.product(letters, repeat=n)


def universe_size(n_letters: int, max_len: int) -> int:
    return sum(n_letters**k for k in range(max_len + 1))


@dataclass
class ClosureClasses:
    """Partition of all words of length ≤ ``max_len`` into congruence classes."""

    category: FinCat
    max_len: int
    classes: list[list[Word]]
    class_of: dict[Word, int] = field(repr=False)

    def same_class(self, a: Sequence[str], b: Sequence[str]) -> bool:
        return self.class_of[tuple(a)] == self.class_of[tuple(b)]


def closure_oracle(c: FinCat, max_len: int, budget: int | None = None) -> ClosureClasses:
    """Brute-force congruence classes of bounded words, for testing.

    Saturates the universe of words of length ≤ ``max_len`` under the
    generating identifications applied in every context: an adjacent
    composable pair against its composite, and a word containing an
    identity against the word with it deleted.  Each identification is a
    union of two in-bounds words, so reverse rewrites come for free.  This
    does not use :func:`reduce` or :func:`phi`.
    """
    limit = default_budget() if budget is None else budget
    size = universe_size(len(c.arrows), max_len)
    if size > limit:
        raise BudgetExceeded(f"closure universe has {size} words, budget is {limit}")
    words = list(all_words(c, max_len))
    index = {w: i for i, w in enumerate(words)}
    uf = UnionFind(range(len(words)))
    ident = {f for f in c.arrows if c.is_identity(f)}
    table = c.table
    for i, w in enumerate(words):
        for p, f in enumerate(w):
            if f in ident:
                uf.union(i, index[w[:p] + w[p + 1 :]])
            if p + 1 < len(w):
                h = table.get((f, w[p + 1]))
                if h is not None:
                    uf.union(i, index[w[:p] + (h,) + w[p + 2 :]])
    groups = uf.groups()
    classes = sorted(
        (sorted((words[i] for i in members), key=lambda w: (len(w), w)) for members in groups.values()),
        key=lambda cls: (len(cls[0]), cls[0]),
    )
    class_of = {w: n for n, cls in enumerate(classes) for w in cls}
    return ClosureClasses(c, max_len, classes, class_of)
