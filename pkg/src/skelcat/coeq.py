"""Coequalizers in Cat of functor pairs out of a discrete category.

Such a pair amounts to a list of object pairs ``(d0, d1)`` in the base
category ``B``.  The coequalizer ``Q`` has the generated object classes as
objects; an arrow of ``Q`` is a triple ``(src, word, tgt)`` where ``word``
is a reduced word of ``B`` forming a chain in the quotient graph.  Reduced
forms are unique, so arrow equality is syntactic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from ._unionfind import UnionFind
from .errors import BudgetExceeded, NotComposableError, SkelcatError, budget as default_budget
from .fincat import FinCat, FunctorBase
from .words import Word, format_word, reduce


@dataclass(frozen=True)
class IdentificationSpec:
    base: FinCat
    pairs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        pairs = tuple((a, b) for a, b in self.pairs)
        for a, b in pairs:
            for x in (a, b):
                if x not in self.base.objects:
                    raise SkelcatError(f"identification names unknown object {x!r}")
        object.__setattr__(self, "pairs", pairs)


@dataclass(frozen=True, order=True)
class QArrow:
    src: str
    word: Word
    tgt: str

    def __str__(self) -> str:
        return f"[{self.src}] -> [{self.tgt}]: {format_word(self.word)}"

    @property
    def length(self) -> int:
        return len(self.word)


def sort_key(a: QArrow):
    return (len(a.word), a.word, a.src, a.tgt)


class QuotientCat:
    """The coequalizer category; hom-sets may be infinite and are never stored."""

    def __init__(self, spec: IdentificationSpec):
        self.spec = spec
        self.base = base = spec.base
        uf = UnionFind(base.objects)
        for a, b in spec.pairs:
            uf.union(a, b)
        groups = uf.groups()
        self.class_of: dict[str, str] = {}
        self.members: dict[str, tuple[str, ...]] = {}
        for members in groups.values():
            rep = min(members)
            self.members[rep] = tuple(x for x in base.objects if x in members)
            for x in members:
                self.class_of[x] = rep
        seen = dict.fromkeys(self.class_of[x] for x in base.objects)
        self.objects: tuple[str, ...] = tuple(seen)
        self._out = {cls: [] for cls in self.objects}
        for f in base.nonidentity:
            self._out[self.class_of[base.dom(f)]].append(f)

    def __repr__(self) -> str:
        return f"<QuotientCat classes={ {c: list(m) for c, m in self.members.items()} }>"

    def cls(self, x: str) -> str:
        try:
            return self.class_of[x]
        except KeyError:
            raise SkelcatError(f"no object named {x!r}") from None

    def identity(self, cls: str) -> QArrow:
        self._check_class(cls)
        return QArrow(cls, (), cls)

    def _check_class(self, cls: str) -> None:
        if cls not in self.members:
            raise SkelcatError(f"{cls!r} is not a class representative")

    def q_map(self, f: str) -> QArrow:
        a = self.base.arrow(f)
        return QArrow(self.class_of[a.dom], reduce(self.base, (f,)), self.class_of[a.cod])

    def compose(self, a: QArrow, b: QArrow) -> QArrow:
        """``a`` then ``b``: concatenate the chains and reduce."""
        if a.tgt != b.src:
            raise NotComposableError(f"cannot compose {a} with {b}: [{a.tgt}] ≠ [{b.src}]")
        return QArrow(a.src, reduce(self.base, a.word + b.word), b.tgt)

    def problems(self, a: QArrow) -> list[str]:
        """Invariant violations of a candidate arrow (empty when valid)."""
        base = self.base
        out = []
        if a.src not in self.members or a.tgt not in self.members:
            return [f"{a}: endpoints must be class representatives"]
        if not a.word:
            if a.src != a.tgt:
                out.append(f"{a}: empty word must be an identity")
            return out
        for f in a.word:
            if f not in base.arrows:
                return [f"{a}: unknown arrow {f!r}"]
            if base.is_identity(f):
                out.append(f"{a}: contains identity {f}")
        w = a.word
        if self.class_of[base.dom(w[0])] != a.src or self.class_of[base.cod(w[-1])] != a.tgt:
            out.append(f"{a}: endpoints do not match the chain")
        for f, g in zip(w, w[1:]):
            if self.class_of[base.cod(f)] != self.class_of[base.dom(g)]:
                out.append(f"{a}: {f}, {g} is not a chain in the quotient graph")
            elif base.composable(f, g):
                out.append(f"{a}: {f}, {g} is composable in the base, word not reduced")
        return out

    def is_iso(self, a: QArrow) -> bool:
        """Empty, or made of isomorphisms of the base."""
        return all(self.base.is_iso(f) for f in a.word)

    def is_automorphism(self, a: QArrow) -> bool:
        return a.src == a.tgt and self.is_iso(a)

    def inverse(self, a: QArrow) -> QArrow | None:
        if not self.is_iso(a):
            return None
        word = tuple(self.base.inverse(f) for f in reversed(a.word))
        return QArrow(a.tgt, reduce(self.base, word), a.src)

    def iter_arrows(self, src: str, tgt: str, max_len: int, budget: int | None = None) -> Iterator[QArrow]:
        """Arrows ``src → tgt`` with word length ≤ ``max_len``.

        Only reduced chains are generated, so no two results are equal.
        """
        self._check_class(src)
        self._check_class(tgt)
        limit = default_budget() if budget is None else budget
        base, class_of, out = self.base, self.class_of, self._out
        nodes = 0
        if src == tgt:
            yield QArrow(src, (), tgt)
        stack: list[tuple[str, Word]] = [(src, ())]
        while stack:
            here, word = stack.pop()
            if len(word) == max_len:
                continue
            last = word[-1] if word else None
            for f in out[here]:
                if last is not None and base.composable(last, f):
                    continue
                nodes += 1
                if nodes > limit:
                    raise BudgetExceeded(f"arrow enumeration exceeded budget of {limit}")
                nxt = class_of[base.cod(f)]
                w = word + (f,)
                if nxt == tgt:
                    yield QArrow(src, w, tgt)
                stack.append((nxt, w))

    def arrows(self, src: str, tgt: str, max_len: int, budget: int | None = None) -> list[QArrow]:
        return sorted(self.iter_arrows(src, tgt, max_len, budget), key=sort_key)

    def all_arrows(self, max_len: int, budget: int | None = None) -> list[QArrow]:
        out = []
        for s in self.objects:
            for t in self.objects:
                out.extend(self.iter_arrows(s, t, max_len, budget))
        return sorted(out, key=sort_key)


class QuotientFunctor(FunctorBase):
    """The quotient functor ``B → Q``."""

    def __init__(self, quotient: QuotientCat):
        self.source = quotient.base
        self.target = quotient

    def on_object(self, x: str) -> str:
        return self.target.cls(x)

    def on_arrow(self, f: str) -> QArrow:
        return self.target.q_map(f)


def coequalize(spec: IdentificationSpec) -> tuple[QuotientCat, QuotientFunctor]:
    q = QuotientCat(spec)
    return q, QuotientFunctor(q)


def identify(base: FinCat, pairs: Iterable[tuple[str, str]]) -> tuple[QuotientCat, QuotientFunctor]:
    return coequalize(IdentificationSpec(base, tuple(pairs)))
