"""Finitely presented categories and bounded word equality.

Used for Z-cokernels: the Z-cokernel of ``id_A`` is the skeletal
reflection of the groupoid of fractions of ``A``, and the Z-cokernel of a
functor ``F: A → B`` is its pushout along ``F``.  Word problems in such
presentations are not decidable in general, so equality questions get a
three-valued answer: Equal (with a replayable trace), Distinct (only from
sound invariants) or Unknown.

A letter is ``(generator, +1)`` or ``(generator, -1)``; the latter is the
formal inverse and needs an invertible generator.  Words are read in
diagrammatic order.
"""
from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from ._unionfind import UnionFind
from .errors import BudgetExceeded, FormatError, InconsistencyError, SkelcatError, budget as default_budget
from .fincat import FinCat, Functor

Letter = tuple[str, int]
PWord = tuple[Letter, ...]

DEFAULT_MAX_LEN = 12
DEFAULT_MAX_STEPS = 8
DEFAULT_NODES = 200_000


def inverse_word(word: Sequence[Letter]) -> PWord:
    return tuple((g, -e) for g, e in reversed(word))


def format_letter(letter: Letter) -> str:
    g, e = letter
    return g if e == 1 else f"{g}^-1"


def format_pword(word: Sequence[Letter]) -> str:
    return ",".join(map(format_letter, word)) if word else "()"


def parse_pword(text: str) -> PWord:
    """``"u,u^-1"`` → ``(("u", 1), ("u", -1))``; ``""``/``"()"`` is empty."""
    text = text.strip()
    if text in ("", "()"):
        return ()
    out = []
    for token in text.split(","):
        token = token.strip()
        name, exp = (token[:-3], -1) if token.endswith("^-1") else (token, 1)
        if not name or "^" in name:
            raise FormatError(f"malformed letter {token!r} in {text!r}")
        out.append((name, exp))
    return tuple(out)


def shortlex(word: Sequence[Letter]):
    return (len(word), sum(e < 0 for _, e in word), tuple((g, e < 0) for g, e in word))


@dataclass(frozen=True)
class Generator:
    name: str
    dom: str
    cod: str
    invertible: bool = False


@dataclass(frozen=True)
class Relation:
    lhs: PWord
    rhs: PWord
    dom: str
    cod: str

    def __str__(self) -> str:
        return f"{format_pword(self.lhs)} = {format_pword(self.rhs)}  ({self.dom} -> {self.cod})"


@dataclass(frozen=True, eq=False)
class Presentation:
    objects: tuple[str, ...]
    generators: tuple[Generator, ...]
    relations: tuple[Relation, ...]

    def __post_init__(self):
        if len(set(self.objects)) != len(self.objects):
            raise SkelcatError("duplicate objects in presentation")
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise SkelcatError("duplicate generator names in presentation")
        for g in self.generators:
            if g.dom not in self.objects or g.cod not in self.objects:
                raise SkelcatError(f"generator {g.name} has unknown endpoints")
        for r in self.relations:
            for side in (r.lhs, r.rhs):
                ends = self.endpoints(side, at=r.dom)
                if ends != (r.dom, r.cod):
                    raise SkelcatError(f"relation side {format_pword(side)} does not run {r.dom} -> {r.cod}")

    @cached_property
    def gen(self) -> dict[str, Generator]:
        return {g.name: g for g in self.generators}

    @cached_property
    def letters(self) -> tuple[Letter, ...]:
        out = []
        for g in self.generators:
            out.append((g.name, 1))
            if g.invertible:
                out.append((g.name, -1))
        return tuple(out)

    def letter_ends(self, letter: Letter) -> tuple[str, str]:
        name, e = letter
        try:
            g = self.gen[name]
        except KeyError:
            raise SkelcatError(f"unknown generator {name!r}") from None
        if e == 1:
            return g.dom, g.cod
        if e == -1 and g.invertible:
            return g.cod, g.dom
        raise SkelcatError(f"generator {name!r} is not invertible")

    def endpoints(self, word: Sequence[Letter], at: str | None = None) -> tuple[str, str]:
        """``(dom, cod)`` of a composable word; empty words need ``at``."""
        if not word:
            if at is None:
                raise SkelcatError("the empty word needs an object")
            if at not in self.objects:
                raise SkelcatError(f"unknown object {at!r}")
            return at, at
        dom, here = self.letter_ends(word[0])
        for letter in word[1:]:
            d, c = self.letter_ends(letter)
            if d != here:
                raise SkelcatError(f"{format_pword(word)} is not composable at {format_letter(letter)}")
            here = c
        if at is not None and at != dom:
            raise SkelcatError(f"{format_pword(word)} does not start at {at}")
        return dom, here

    @cached_property
    def _rules(self) -> "_Rules":
        return _Rules(self)

    @cached_property
    def _lattice(self) -> "_Lattice":
        index = {g.name: i for i, g in enumerate(self.generators)}
        rows = [_abelian(r.lhs, index) for r in self.relations]
        rows = [[a - b for a, b in zip(row, _abelian(r.rhs, index))] for row, r in zip(rows, self.relations)]
        return _Lattice(rows, index)

    def listing(self) -> list[str]:
        lines = ["objects: " + " ".join(self.objects), "generators:"]
        for g in self.generators:
            flag = " (invertible)" if g.invertible else ""
            lines.append(f"  {g.name}: {g.dom} -> {g.cod}{flag}")
        lines.append("relations:")
        lines.extend(f"  {r}" for r in self.relations)
        return lines


def free_reduce(p: Presentation, word: Sequence[Letter]) -> PWord:
    """Cancel adjacent ``x, x^-1`` and ``x^-1, x`` for invertible ``x``."""
    stack: list[Letter] = []
    for letter in word:
        if stack and stack[-1][0] == letter[0] and stack[-1][1] == -letter[1]:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


# -- rewriting moves -------------------------------------------------------------


class _Rules:
    """Substitutions ``s → t`` and insertions derived from the relations.

    A relation whose letters are all invertible yields a relator loop
    ``lhs · rhs⁻¹``; any prefix of a rotation of the loop (or its inverse)
    may be replaced by the inverse of the remaining suffix.  Other
    relations are applied as written in both directions, and a relation
    with an empty side may insert its other side at a matching object.
    """

    def __init__(self, p: Presentation):
        self.p = p
        subs: set[tuple[PWord, PWord]] = set()
        inserts: set[tuple[str, PWord]] = set()
        for r in p.relations:
            if all(p.gen[g].invertible for g, _ in r.lhs + r.rhs):
                loop = r.lhs + inverse_word(r.rhs)
                for rel in (loop, inverse_word(loop)):
                    for k in range(len(rel)):
                        rot = rel[k:] + rel[:k]
                        for n in range(1, len(rot) + 1):
                            s, t = rot[:n], inverse_word(rot[n:])
                            if s != t:
                                subs.add((s, t))
            else:
                for s, t in ((r.lhs, r.rhs), (r.rhs, r.lhs)):
                    if s:
                        subs.add((s, t))
                    elif t:
                        inserts.add((r.dom, t))
        self.by_first: dict[Letter, list[tuple[PWord, PWord]]] = {}
        for s, t in sorted(subs, key=lambda st: (shortlex(st[0]), shortlex(st[1]))):
            self.by_first.setdefault(s[0], []).append((s, t))
        self.inserts = sorted(inserts, key=lambda ot: (ot[0], shortlex(ot[1])))

    def neighbors(self, word: PWord, dom: str, max_len: int) -> Iterator[PWord]:
        p = self.p
        n = len(word)
        for i, letter in enumerate(word):
            for s, t in self.by_first.get(letter, ()):
                m = len(s)
                if word[i : i + m] == s and n - m + len(t) <= max_len + 2:
                    new = free_reduce(p, word[:i] + t + word[i + m :])
                    if len(new) <= max_len:
                        yield new
        if self.inserts:
            objs = [dom] + [p.letter_ends(x)[1] for x in word]
            for obj, t in self.inserts:
                if n + len(t) > max_len + 2 * len(t):
                    continue
                for i in range(n + 1):
                    if objs[i] == obj:
                        new = free_reduce(p, word[:i] + t + word[i:])
                        if len(new) <= max_len:
                            yield new


def descend(p: Presentation, word: Sequence[Letter], at: str | None = None, max_len: int = DEFAULT_MAX_LEN):
    """Greedy shortlex descent; returns ``(final word, trace)``.

    Each step moves to the shortlex-least neighbour when it is smaller than
    the current word.  Deterministic but not a normal form in general.
    """
    word = tuple(word)
    dom = p.endpoints(word, at)[0]
    trace = [word]
    current = free_reduce(p, word)
    if current != word:
        trace.append(current)
    rules = p._rules
    while True:
        best = min(rules.neighbors(current, dom, max(max_len, len(current))), key=shortlex, default=None)
        if best is None or shortlex(best) >= shortlex(current):
            return current, trace
        current = best
        trace.append(current)


# -- invariants -------------------------------------------------------------------


def _abelian(word: Sequence[Letter], index: Mapping[str, int]) -> list[int]:
    v = [0] * len(index)
    for g, e in word:
        v[index[g]] += e
    return v


class _Lattice:
    """Integer row-echelon basis of the abelianized relation lattice."""

    def __init__(self, rows: list[list[int]], index: Mapping[str, int]):
        self.index = index
        rows = [list(r) for r in rows if any(r)]
        basis = []
        ncols = len(index)
        for col in range(ncols):
            active = [r for r in rows if r[col] != 0]
            rows = [r for r in rows if r[col] == 0]
            while len(active) > 1:
                active.sort(key=lambda r: abs(r[col]))
                pivot = active[0]
                nxt = [pivot]
                for r in active[1:]:
                    q = r[col] // pivot[col]
                    r = [a - q * b for a, b in zip(r, pivot)]
                    (nxt if r[col] != 0 else rows).append(r)
                active = nxt
            if active:
                basis.append((col, active[0]))
            rows = [r for r in rows if any(r)]
        self.basis = basis

    def contains(self, v: list[int]) -> bool:
        v = list(v)
        for col, row in self.basis:
            if v[col] % row[col]:
                return False
            q = v[col] // row[col]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)


class Model:
    """An interpretation of a presentation in a concrete category.

    ``target`` provides ``compose(a, b)``, ``identity(obj)`` and
    ``inverse(a)``; :class:`FinCat` and :class:`~skelcat.coeq.QuotientCat`
    both qualify.  Use :func:`model_problems` to confirm that the relations
    hold before relying on the model as an invariant.
    """

    def __init__(self, p: Presentation, target, objects: Mapping[str, str], arrows: Mapping[str, object]):
        self.p = p
        self.target = target
        self.objects = dict(objects)
        self.letter_values: dict[Letter, object] = {}
        for g in p.generators:
            if g.name not in arrows:
                raise SkelcatError(f"model does not interpret generator {g.name}")
            value = arrows[g.name]
            self.letter_values[g.name, 1] = value
            if g.invertible:
                inv = target.inverse(value)
                if inv is None:
                    raise SkelcatError(f"model sends invertible {g.name} to a non-isomorphism")
                self.letter_values[g.name, -1] = inv

    def evaluate(self, word: Sequence[Letter], at: str | None = None):
        dom, _ = self.p.endpoints(word, at)
        out = self.target.identity(self.objects[dom])
        for letter in word:
            out = self.target.compose(out, self.letter_values[letter])
        return out


def model_problems(model: Model) -> list[str]:
    """Relations that fail in ``model`` (checked one by one)."""
    p, out = model.p, []
    for g in p.generators:
        try:
            model.evaluate(((g.name, 1),))
        except SkelcatError as exc:
            out.append(f"generator {g.name}: {exc}")
    for r in p.relations:
        try:
            lhs, rhs = model.evaluate(r.lhs, r.dom), model.evaluate(r.rhs, r.dom)
        except SkelcatError as exc:
            out.append(f"{r}: {exc}")
            continue
        if lhs != rhs:
            out.append(f"{r}: {lhs} ≠ {rhs}")
    return out


# -- bounded equality ---------------------------------------------------------------


class Verdict(enum.Enum):
    EQUAL = "equal"
    DISTINCT = "distinct"
    UNKNOWN = "unknown"


@dataclass
class BoundedVerdict:
    status: Verdict
    reason: str = ""
    trace: tuple[PWord, ...] = ()
    bound: dict = field(default_factory=dict)

    @property
    def equal(self) -> bool:
        return self.status is Verdict.EQUAL

    @property
    def distinct(self) -> bool:
        return self.status is Verdict.DISTINCT

    @property
    def unknown(self) -> bool:
        return self.status is Verdict.UNKNOWN


def _empty_at(p, w1, w2, at):
    if at is not None:
        return at
    for w in (w1, w2):
        if w:
            return p.endpoints(w)[0]
    raise SkelcatError("comparing two empty words needs an object")


def word_equal_bounded(
    p: Presentation,
    w1: Sequence[Letter],
    w2: Sequence[Letter],
    bound: int = DEFAULT_MAX_LEN,
    *,
    at: str | None = None,
    max_steps: int = DEFAULT_MAX_STEPS,
    models: Iterable[Model] = (),
    budget: int | None = None,
) -> BoundedVerdict:
    """Decide ``w1 = w2`` where the bounded search can.

    Order of attempts: syntactic equality after free reduction, greedy
    descent of both words to a common form, sound invariants (endpoints,
    abelianized exponents, the supplied models), then a bidirectional
    breadth-first search of at most ``max_steps`` moves through words of
    length ≤ ``bound``.
    """
    w1, w2 = tuple(w1), tuple(w2)
    limits = {"max_len": bound, "max_steps": max_steps}
    dom_obj = _empty_at(p, w1, w2, at)
    e1 = p.endpoints(w1, None if w1 else dom_obj)
    e2 = p.endpoints(w2, None if w2 else dom_obj)
    if e1 != e2:
        return BoundedVerdict(Verdict.DISTINCT, f"endpoints differ: {e1} vs {e2}", bound=limits)
    dom = e1[0]
    if w1 == w2:
        return BoundedVerdict(Verdict.EQUAL, "identical", (w1,), limits)

    d1, t1 = descend(p, w1, dom, bound)
    d2, t2 = descend(p, w2, dom, bound)
    if d1 == d2:
        return BoundedVerdict(Verdict.EQUAL, "common descent", _join(t1, t2), limits)

    lattice = p._lattice
    diff = [a - b for a, b in zip(_abelian(w1, lattice.index), _abelian(w2, lattice.index))]
    if not lattice.contains(diff):
        return BoundedVerdict(Verdict.DISTINCT, "abelianized exponents differ", bound=limits)
    for m in models:
        v1, v2 = m.evaluate(w1, dom), m.evaluate(w2, dom)
        if v1 != v2:
            return BoundedVerdict(Verdict.DISTINCT, f"model separates them: {v1} vs {v2}", bound=limits)

    path = _bidirectional(p, d1, d2, dom, max_steps, bound, budget or DEFAULT_NODES)
    if path is not None:
        trace = tuple(t1) + tuple(path[1:-1]) + tuple(reversed(t2))
        return BoundedVerdict(Verdict.EQUAL, "bounded search", _dedupe(trace), limits)
    return BoundedVerdict(Verdict.UNKNOWN, "search bound exhausted", bound=limits)


def _join(t1, t2) -> tuple[PWord, ...]:
    return _dedupe(tuple(t1) + tuple(reversed(t2)))


def _dedupe(trace) -> tuple[PWord, ...]:
    out = []
    for w in trace:
        if not out or out[-1] != w:
            out.append(w)
    return tuple(out)


def _bidirectional(p, start, goal, dom, max_steps, max_len, max_nodes):
    if start == goal:
        return [start]
    rules = p._rules
    parents = ({start: None}, {goal: None})
    frontiers = ([start], [goal])
    depth = [0, 0]
    nodes = 0
    while depth[0] + depth[1] < max_steps:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        if not frontiers[side]:
            side = 1 - side
            if not frontiers[side]:
                return None
        mine, theirs = parents[side], parents[1 - side]
        nxt = []
        for w in frontiers[side]:
            for v in rules.neighbors(w, dom, max_len):
                if v in mine:
                    continue
                mine[v] = w
                if v in theirs:
                    left = _walk(parents[0], v)
                    right = _walk(parents[1], v)
                    return list(reversed(left)) + right[1:]
                nodes += 1
                if nodes > max_nodes:
                    return None
                nxt.append(v)
        frontiers[side][:] = nxt
        depth[side] += 1
    return None


def _walk(parents, w):
    out = [w]
    while parents[w] is not None:
        w = parents[w]
        out.append(w)
    return out


def replay(p: Presentation, trace: Sequence[PWord], at: str | None = None) -> bool:
    """Check that consecutive words of a trace differ by one move.

    A move is one substitution/insertion followed by free reduction, in
    either direction, or a free reduction on its own.
    """
    if not trace:
        return False
    dom = p.endpoints(trace[0], at)[0]
    rules = p._rules
    for a, b in zip(trace, trace[1:]):
        if free_reduce(p, a) == free_reduce(p, b):
            continue
        n = max(len(a), len(b)) + 2
        fa, fb = free_reduce(p, a), free_reduce(p, b)
        if fb in set(rules.neighbors(fa, dom, n)) or fa in set(rules.neighbors(fb, dom, n)):
            continue
        return False
    return True


# -- enumeration ----------------------------------------------------------------------


def enumerate_words(p: Presentation, dom: str, max_len: int, cod: str | None = None) -> Iterator[PWord]:
    """Freely reduced composable words from ``dom`` of length ≤ ``max_len``."""
    out_letters: dict[str, list[Letter]] = {x: [] for x in p.objects}
    for letter in p.letters:
        out_letters[p.letter_ends(letter)[0]].append(letter)
    stack: list[tuple[str, PWord]] = [(dom, ())]
    while stack:
        here, word = stack.pop()
        if cod is None or here == cod:
            yield word
        if len(word) == max_len:
            continue
        for letter in reversed(out_letters[here]):
            if word and word[-1] == (letter[0], -letter[1]):
                continue
            stack.append((p.letter_ends(letter)[1], word + (letter,)))


def bounded_normal_forms(
    p: Presentation, max_len: int, budget: int | None = None, search_bound: int = DEFAULT_MAX_LEN
) -> dict[tuple[str, str], list[PWord]]:
    """Shortlex-least representatives of the words of length ≤ ``max_len``.

    Every freely reduced word is descended greedily; descent forms that the
    bounded search proves Equal are merged.  Keys are ``(dom, cod)``.
    Representatives are pairwise not proven Equal; whether they are proven
    Distinct is up to :func:`word_equal_bounded`.
    """
    limit = default_budget() if budget is None else budget
    forms: dict[tuple[str, str], set[PWord]] = {}
    count = 0
    for dom in p.objects:
        for w in enumerate_words(p, dom, max_len):
            count += 1
            if count > limit:
                raise BudgetExceeded(f"word enumeration exceeded budget of {limit}")
            cod = p.endpoints(w, dom)[1]
            d, _ = descend(p, w, dom, max_len)
            forms.setdefault((dom, cod), set()).add(d)
    out = {}
    for (dom, cod), found in sorted(forms.items()):
        ordered = sorted(found, key=shortlex)
        uf = UnionFind(ordered)
        for x, y in itertools.combinations(ordered, 2):
            if uf.find(x) != uf.find(y) and word_equal_bounded(p, x, y, search_bound, at=dom).equal:
                uf.union(x, y)
        out[dom, cod] = sorted({min(m, key=shortlex) for m in uf.groups().values()}, key=shortlex)
    return out


# -- Z-cokernels ----------------------------------------------------------------------


@dataclass
class ZCokernel:
    """A Z-cokernel as a presentation plus the quotient functor's action.

    ``object_map``/``arrow_map`` send objects and arrows of the codomain of
    the original functor to presentation objects and words; ``bound`` is
    the default search bound for equality questions.
    """

    presentation: Presentation
    object_map: dict[str, str]
    arrow_map: dict[str, PWord]
    bound: int = DEFAULT_MAX_LEN
    functor: Functor | None = None
    source_map: dict[str, PWord] = field(default_factory=dict)


def _composition_relations(c: FinCat, rename, objmap) -> list[Relation]:
    out = []
    for f in c.nonidentity:
        for g in c.nonidentity:
            if not c.composable(f, g):
                continue
            h = c.compose(f, g)
            rhs = () if c.is_identity(h) else ((rename(h), 1),)
            out.append(Relation(((rename(f), 1), (rename(g), 1)), rhs, objmap[c.dom(f)], objmap[c.cod(g)]))
    return out


def _localization(c: FinCat, rename, objmap, objects) -> Presentation:
    gens = [Generator(rename(f), objmap[c.dom(f)], objmap[c.cod(f)], True) for f in c.nonidentity]
    rels = _composition_relations(c, rename, objmap)
    for f in c.nonidentity:
        g = rename(f)
        rels.append(Relation(((g, 1), (g, -1)), (), objmap[c.dom(f)], objmap[c.dom(f)]))
        rels.append(Relation(((g, -1), (g, 1)), (), objmap[c.cod(f)], objmap[c.cod(f)]))
    return Presentation(tuple(objects), tuple(gens), tuple(rels))


def localization_presentation(a: FinCat) -> Presentation:
    """The category of fractions of ``a`` inverting every arrow."""
    return _localization(a, lambda f: f, {x: x for x in a.objects}, a.objects)


def components(a: FinCat) -> dict[str, str]:
    """Object → least object of its zigzag-connected component."""
    uf = UnionFind(a.objects)
    for f in a.nonidentity:
        uf.union(a.dom(f), a.cod(f))
    reps = {}
    for members in uf.groups().values():
        rep = min(members)
        for x in members:
            reps[x] = rep
    return {x: reps[x] for x in a.objects}


def _arrow_words(c: FinCat, rename) -> dict[str, PWord]:
    return {f: () if c.is_identity(f) else ((rename(f), 1),) for f in c.arrows}


def z_cokernel_of_identity(a: FinCat, bound: int = DEFAULT_MAX_LEN) -> ZCokernel:
    """Skeletal reflection of the groupoid of fractions of ``a``.

    One object per connected component; the arrows of ``a`` become
    invertible generators subject to the composition table.
    """
    objmap = components(a)
    objects = tuple(dict.fromkeys(objmap[x] for x in a.objects))
    pres = _localization(a, lambda f: f, objmap, objects)
    words = _arrow_words(a, lambda f: f)
    return ZCokernel(pres, dict(objmap), words, bound, None, dict(words))


def quotient_letter(name: str) -> str:
    return f"qp({name})"


def z_cokernel(f: Functor, bound: int = DEFAULT_MAX_LEN) -> ZCokernel:
    """Pushout of the Z-cokernel of ``id_A`` along ``f: A → B``."""
    a, b = f.source, f.target
    clash = {quotient_letter(x) for x in a.nonidentity} & set(b.nonidentity)
    if clash:
        raise SkelcatError(f"generator names clash: {sorted(clash)}")
    comp = components(a)
    uf = UnionFind(b.objects)
    for x in a.objects:
        uf.union(f.on_object(comp[x]), f.on_object(x))
    rep = {}
    for members in uf.groups().values():
        m = min(members)
        for x in members:
            rep[x] = m
    objects = tuple(dict.fromkeys(rep[x] for x in b.objects))
    a_obj = {x: rep[f.on_object(x)] for x in a.objects}

    gens = [Generator(g, rep[b.dom(g)], rep[b.cod(g)], False) for g in b.nonidentity]
    gens += [Generator(quotient_letter(x), a_obj[a.dom(x)], a_obj[a.cod(x)], True) for x in a.nonidentity]
    rels = _composition_relations(b, lambda g: g, rep)
    rels += _localization(a, quotient_letter, a_obj, objects).relations
    for x in a.nonidentity:
        image = f.on_arrow(x)
        rhs = () if b.is_identity(image) else ((image, 1),)
        rels.append(Relation(((quotient_letter(x), 1),), rhs, a_obj[a.dom(x)], a_obj[a.cod(x)]))
    pres = Presentation(objects, tuple(gens), tuple(rels))
    return ZCokernel(
        pres,
        {x: rep[x] for x in b.objects},
        _arrow_words(b, lambda g: g),
        bound,
        f,
        _arrow_words(a, quotient_letter),
    )


def induced_model(zc: ZCokernel, w: Functor) -> Model:
    """Interpret the pushout presentation via ``W: B → Y`` with ``W ∘ F`` trivial."""
    f = zc.functor
    if f is None or w.source != f.target:
        raise SkelcatError("induced_model needs the Z-cokernel of a functor F and W out of F's target")
    objects: dict[str, str] = {}
    for x, cls in zc.object_map.items():
        y = w.on_object(x)
        if objects.setdefault(cls, y) != y:
            raise InconsistencyError(f"W does not glue the objects of class {cls}")
    arrows = {g: w.on_arrow(g) for g in f.target.nonidentity}
    for x in f.source.nonidentity:
        arrows[quotient_letter(x)] = w.on_arrow(f.on_arrow(x))
    return Model(zc.presentation, w.target, objects, arrows)


def map_word(word: Sequence[Letter], gen_map: Mapping[str, PWord]) -> PWord:
    out: list[Letter] = []
    for g, e in word:
        image = gen_map[g]
        out.extend(image if e == 1 else inverse_word(image))
    return tuple(out)


def equivalence_failures(
    p1: Presentation,
    p2: Presentation,
    gens12: Mapping[str, PWord],
    gens21: Mapping[str, PWord],
    objs12: Mapping[str, str],
    objs21: Mapping[str, str],
    bound: int = DEFAULT_MAX_LEN,
) -> list[str]:
    """Check two presentations are isomorphic via the given generator maps.

    Both maps must send relations to bounded-Equal pairs and compose to
    the identity on generators up to bounded equality.  Any answer other
    than Equal is reported.
    """
    failures = []
    for src, dst, fwd, back, ofwd, oback in (
        (p1, p2, gens12, gens21, objs12, objs21),
        (p2, p1, gens21, gens12, objs21, objs12),
    ):
        for r in src.relations:
            v = word_equal_bounded(dst, map_word(r.lhs, fwd), map_word(r.rhs, fwd), bound, at=ofwd[r.dom])
            if not v.equal:
                failures.append(f"relation {r} maps to a pair that is {v.status.value} ({v.reason})")
        for g in src.generators:
            w = ((g.name, 1),)
            v = word_equal_bounded(src, map_word(map_word(w, fwd), back), w, bound)
            if not v.equal:
                failures.append(f"round trip of {g.name} is {v.status.value} ({v.reason})")
        for x in src.objects:
            if oback[ofwd[x]] != x:
                failures.append(f"object {x} does not round-trip")
    return failures


def identity_zcok_equivalence(a: FinCat, bound: int = DEFAULT_MAX_LEN) -> list[str]:
    """Compare ``z_cokernel(id_A)`` with ``z_cokernel_of_identity(A)``."""
    from .fincat import identity_functor

    push = z_cokernel(identity_functor(a), bound)
    zc = z_cokernel_of_identity(a, bound)
    p1, p2 = push.presentation, zc.presentation
    g12 = {g: ((g, 1),) for g in a.nonidentity}
    g12.update({quotient_letter(g): ((g, 1),) for g in a.nonidentity})
    g21 = {g: ((quotient_letter(g), 1),) for g in a.nonidentity}
    o12 = {x: x for x in p1.objects}
    return equivalence_failures(p1, p2, g12, g21, o12, dict(o12), bound)


def groupoid_consistency(a: FinCat, max_len: int = 4) -> list[str]:
    """Compare bounded normal forms of ``z_cokernel_of_identity(a)`` with the skeletal reflection.

    For a groupoid both describe the same category.  Every arrow of the
    reflection with a word of length ≤ ``max_len`` must be a presentation
    word, distinct arrows must stay distinct (the reflection itself is a
    model), and every presentation word of length ≤ ``max_len`` must be
    bounded-Equal to one of them.
    """
    from .fincat import classify
    from .pretorsion import torsionfree_reflection

    if not classify(a).is_groupoid:
        raise SkelcatError("groupoid_consistency needs a groupoid")
    seq = torsionfree_reflection(a)
    q = seq.quotient
    zc = z_cokernel_of_identity(a)
    p = zc.presentation
    failures = []
    if set(p.objects) != set(q.objects):
        return [f"objects differ: {p.objects} vs {q.objects}"]
    model = Model(p, q, {x: x for x in p.objects}, {g: q.q_map(g) for g in a.nonidentity})
    failures.extend(f"model: {m}" for m in model_problems(model))
    q_arrows = q.all_arrows(max_len)
    for arr in q_arrows:
        w = tuple((f, 1) for f in arr.word)
        if model.evaluate(w, arr.src) != arr:
            failures.append(f"{arr} does not evaluate to itself")
    reached = set()
    for dom in p.objects:
        for w in enumerate_words(p, dom, max_len):
            value = model.evaluate(w, dom)
            if len(value.word) > max_len:
                failures.append(f"{format_pword(w)} evaluates beyond the bound: {value}")
                continue
            target = tuple((f, 1) for f in value.word)
            v = word_equal_bounded(p, w, target, at=dom, models=())
            if not v.equal:
                failures.append(f"{format_pword(w)} vs {format_pword(target)}: {v.status.value}")
            reached.add(value)
    missing = set(q_arrows) - reached
    failures.extend(f"{arr} is not reached" for arr in sorted(missing))
    return failures
