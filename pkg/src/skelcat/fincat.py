"""Finite categories, functors between them, and their classification.

Composition is written in diagrammatic order: ``C.compose(f, g)`` is
"first f, then g" and requires ``cod(f) == dom(g)``.  Identity arrows are
implicit in the input format and are named ``id:<object>``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import (
    BudgetExceeded,
    CategoryError,
    FormatError,
    NotComposableError,
    SkelcatError,
    budget as default_budget,
)

ID_PREFIX = "id:"


def identity_name(obj: str) -> str:
    return ID_PREFIX + obj


def _bad_name(name) -> str | None:
    if not isinstance(name, str) or not name:
        return "must be a nonempty string"
    if ID_PREFIX in name:
        return f"must not contain the reserved prefix {ID_PREFIX!r}"
    if "," in name or any(ch.isspace() for ch in name):
        return "must not contain commas or whitespace"
    if name == "()":
        return "'()' is reserved for the empty word"
    return None


@dataclass(frozen=True)
class Arrow:
    name: str
    dom: str
    cod: str
    is_identity: bool = False


@dataclass(frozen=True)
class Problem:
    """One violated law in candidate category or functor data."""

    kind: str
    message: str
    arrows: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class Classification:
    is_groupoid: bool
    is_skeletal: bool

    @property
    def is_trivial(self) -> bool:
        return self.is_groupoid and self.is_skeletal


@dataclass(frozen=True)
class FinCat:
    """A validated finite category.

    ``arrows`` maps every arrow name (identities included) to its
    :class:`Arrow`; ``table`` maps every composable pair to the composite.
    Build instances with :func:`validate_category` or :func:`make_category`
    rather than directly.
    """

    objects: tuple[str, ...]
    arrows: Mapping[str, Arrow]
    table: Mapping[tuple[str, str], str]

    def __hash__(self) -> int:
        return hash((self.objects, frozenset(self.arrows)))

    def __repr__(self) -> str:
        return f"<FinCat objects={list(self.objects)} arrows={list(self.nonidentity)}>"

    @cached_property
    def nonidentity(self) -> tuple[str, ...]:
        return tuple(n for n, a in self.arrows.items() if not a.is_identity)

    @cached_property
    def _homs(self) -> dict[tuple[str, str], tuple[str, ...]]:
        homs: dict[tuple[str, str], list[str]] = {}
        for a in self.arrows.values():
            homs.setdefault((a.dom, a.cod), []).append(a.name)
        return {k: tuple(v) for k, v in homs.items()}

    @cached_property
    def _inverses(self) -> dict[str, str | None]:
        inv = {}
        for f in self.arrows:
            a = self.arrows[f]
            inv[f] = next(
                (
                    g
                    for g in self.hom(a.cod, a.dom)
                    if self.table[f, g] == identity_name(a.dom)
                    and self.table[g, f] == identity_name(a.cod)
                ),
                None,
            )
        return inv

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrows[name]
        except KeyError:
            raise SkelcatError(f"no arrow named {name!r}") from None

    def dom(self, f: str) -> str:
        return self.arrow(f).dom

    def cod(self, f: str) -> str:
        return self.arrow(f).cod

    def identity(self, obj: str) -> str:
        name = identity_name(obj)
        if name not in self.arrows:
            raise SkelcatError(f"no object named {obj!r}")
        return name

    def is_identity(self, f: str) -> bool:
        return self.arrow(f).is_identity

    def hom(self, x: str, y: str) -> tuple[str, ...]:
        return self._homs.get((x, y), ())

    def composable(self, f: str, g: str) -> bool:
        return self.arrow(f).cod == self.arrow(g).dom

    def compose(self, f: str, g: str) -> str:
        """Return ``f ▷ g`` (first f, then g)."""
        try:
            return self.table[f, g]
        except KeyError:
            if f in self.arrows and g in self.arrows:
                raise NotComposableError(
                    f"{f} and {g} are not composable: cod({f}) = {self.cod(f)} "
                    f"but dom({g}) = {self.dom(g)}"
                ) from None
            raise SkelcatError(f"unknown arrow in ({f}, {g})") from None

    def compose_path(self, arrows: Iterable[str], start: str) -> str:
        """Composite of a composable sequence; the identity at ``start`` if empty."""
        out = self.identity(start)
        for f in arrows:
            out = self.compose(out, f)
        return out

    def inverse(self, f: str) -> str | None:
        self.arrow(f)
        return self._inverses[f]

    def is_iso(self, f: str) -> bool:
        return self.inverse(f) is not None

    def is_endo(self, f: str) -> bool:
        a = self.arrow(f)
        return a.dom == a.cod

    def is_automorphism(self, f: str) -> bool:
        return self.is_endo(f) and self.is_iso(f)

    def isos(self) -> tuple[str, ...]:
        return tuple(f for f in self.arrows if self.is_iso(f))

    def subcategory(self, names: Iterable[str]) -> "FinCat":
        """Wide subcategory on all objects containing ``names`` and all identities.

        Raises :class:`CategoryError` if the arrows are not closed under
        composition.
        """
        keep = set(names) | {identity_name(x) for x in self.objects}
        for n in keep:
            self.arrow(n)
        problems = []
        table = {}
        for (f, g), h in self.table.items():
            if f in keep and g in keep:
                if h not in keep:
                    problems.append(
                        Problem("closure", f"{f} ▷ {g} = {h} is not in the subcategory", (f, g, h))
                    )
                table[f, g] = h
        if problems:
            raise CategoryError(problems)
        arrows = {n: a for n, a in self.arrows.items() if n in keep}
        return FinCat(self.objects, arrows, table)

    @cached_property
    def kernel(self):
        """Integer-coded word-reduction kernel for this category's arrows."""
        from .kernel import WordKernel

        names = list(self.arrows)
        index = {n: i for i, n in enumerate(names)}
        table = [[-1] * len(names) for _ in names]
        for (f, g), h in self.table.items():
            table[index[f]][index[g]] = index[h]
        ident = [self.arrows[n].is_identity for n in names]
        return _CodedKernel(names, index, WordKernel(table, ident))

    def to_dict(self) -> dict:
        """Canonical file representation (identities omitted)."""
        arrows = [self.arrows[n] for n in self.nonidentity]
        return {
            "objects": list(self.objects),
            "arrows": [{"name": a.name, "dom": a.dom, "cod": a.cod} for a in arrows],
            "compose": [
                {"first": f.name, "then": g.name, "equals": self.table[f.name, g.name]}
                for f in arrows
                for g in arrows
                if f.cod == g.dom
            ],
        }

    @classmethod
    def from_dict(cls, raw) -> "FinCat":
        return validate_category(raw)


class _CodedKernel:
    __slots__ = ("names", "index", "impl")

    def __init__(self, names, index, impl):
        self.names = names
        self.index = index
        self.impl = impl

    def encode(self, word) -> list[int]:
        try:
            return [self.index[n] for n in word]
        except KeyError as exc:
            raise SkelcatError(f"no arrow named {exc.args[0]!r}") from None

    def decode(self, codes) -> tuple[str, ...]:
        names = self.names
        return tuple(names[i] for i in codes)


# -- construction and validation ---------------------------------------------


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise FormatError(message)


def _build(raw) -> tuple[FinCat | None, list[Problem]]:
    _require(isinstance(raw, Mapping), "category data must be an object")
    unknown = set(raw) - {"objects", "arrows", "compose", "name", "description"}
    _require(not unknown, f"unknown keys: {sorted(unknown)}")
    objects = raw.get("objects", [])
    arrows_raw = raw.get("arrows", [])
    compose_raw = raw.get("compose", [])
    _require(isinstance(objects, list), "'objects' must be a list")
    _require(isinstance(arrows_raw, list), "'arrows' must be a list")
    _require(isinstance(compose_raw, list), "'compose' must be a list")

    problems: list[Problem] = []
    seen_obj: set[str] = set()
    for x in objects:
        why = _bad_name(x)
        if why:
            problems.append(Problem("name", f"object name {x!r} {why}"))
        elif x in seen_obj:
            problems.append(Problem("duplicate", f"object {x!r} listed twice"))
        else:
            seen_obj.add(x)
    objects = tuple(x for x in dict.fromkeys(objects) if isinstance(x, str) and x in seen_obj)

    arrows: dict[str, Arrow] = {identity_name(x): Arrow(identity_name(x), x, x, True) for x in objects}
    for entry in arrows_raw:
        _require(
            isinstance(entry, Mapping) and {"name", "dom", "cod"} <= set(entry),
            f"arrow entry {entry!r} needs 'name', 'dom' and 'cod'",
        )
        name, dom, cod = entry["name"], entry["dom"], entry["cod"]
        why = _bad_name(name)
        if why:
            problems.append(Problem("name", f"arrow name {name!r} {why}"))
            continue
        if name in arrows:
            problems.append(Problem("duplicate", f"arrow {name!r} listed twice", (name,)))
            continue
        dangling = [e for e in (dom, cod) if e not in seen_obj]
        if dangling:
            problems.append(
                Problem("dangling", f"arrow {name!r} refers to unknown object(s) {dangling}", (name,))
            )
            continue
        arrows[name] = Arrow(name, dom, cod)

    table: dict[tuple[str, str], str] = {}
    for a in arrows.values():
        table[identity_name(a.dom), a.name] = a.name
        table[a.name, identity_name(a.cod)] = a.name

    given: dict[tuple[str, str], str] = {}
    for entry in compose_raw:
        _require(
            isinstance(entry, Mapping) and {"first", "then", "equals"} <= set(entry),
            f"compose entry {entry!r} needs 'first', 'then' and 'equals'",
        )
        f, g, h = entry["first"], entry["then"], entry["equals"]
        missing = [n for n in (f, g, h) if n not in arrows]
        if missing:
            problems.append(Problem("unknown-arrow", f"{f} ▷ {g} = {h} names unknown arrow(s) {missing}", (f, g, h)))
            continue
        af, ag, ah = arrows[f], arrows[g], arrows[h]
        if af.cod != ag.dom:
            problems.append(
                Problem("not-composable", f"{f} ▷ {g} listed but cod({f}) = {af.cod} ≠ {ag.dom} = dom({g})", (f, g))
            )
            continue
        if (f, g) in given:
            problems.append(Problem("duplicate", f"composite {f} ▷ {g} listed twice", (f, g)))
            continue
        given[f, g] = h
        if ah.dom != af.dom or ah.cod != ag.cod:
            problems.append(
                Problem(
                    "endpoint",
                    f"{f} ▷ {g} = {h} but {h}: {ah.dom}→{ah.cod} should be {af.dom}→{ag.cod}",
                    (f, g, h),
                )
            )
            continue
        if af.is_identity or ag.is_identity:
            expected = g if af.is_identity else f
            if h != expected:
                problems.append(
                    Problem("identity-law", f"{f} ▷ {g} = {h} but the identity law forces {expected}", (f, g, h))
                )
            continue
        table[f, g] = h

    for a in arrows.values():
        if a.is_identity:
            continue
        for b in arrows.values():
            if not b.is_identity and a.cod == b.dom and (a.name, b.name) not in table:
                if (a.name, b.name) not in given:
                    problems.append(
                        Problem("missing", f"no composite given for composable pair ({a.name}, {b.name})", (a.name, b.name))
                    )
    if problems:
        return None, problems

    # associativity over all composable triples
    for (f, g), fg in table.items():
        for h in arrows:
            gh = table.get((g, h))
            if gh is None:
                continue
            left, right = table[fg, h], table[f, gh]
            if left != right:
                problems.append(
                    Problem(
                        "associativity",
                        f"({f} ▷ {g}) ▷ {h} = {left} but {f} ▷ ({g} ▷ {h}) = {right}",
                        (f, g, h),
                    )
                )
    if problems:
        return None, problems
    return FinCat(objects, arrows, table), []


def check_category(raw) -> list[Problem]:
    """Every violated law in ``raw``; empty when it is a valid category."""
    return _build(raw)[1]


def validate_category(raw) -> FinCat:
    cat, problems = _build(raw)
    if problems:
        raise CategoryError(problems)
    return cat


def make_category(objects, arrows=(), compose=None) -> FinCat:
    """Build a category from Python data.

    ``arrows`` is an iterable of ``(name, dom, cod)`` and ``compose`` maps
    pairs ``(first, then)`` to the composite name.
    """
    return validate_category(
        {
            "objects": list(objects),
            "arrows": [{"name": n, "dom": d, "cod": c} for n, d, c in arrows],
            "compose": [{"first": f, "then": g, "equals": h} for (f, g), h in (compose or {}).items()],
        }
    )


def discrete(objects: Iterable[str]) -> FinCat:
    return make_category(objects)


def terminal(name: str = "pt") -> FinCat:
    return discrete([name])


def disjoint_union(*cats: FinCat) -> FinCat:
    objects: list[str] = []
    arrows: dict[str, Arrow] = {}
    table: dict[tuple[str, str], str] = {}
    for c in cats:
        clash = set(objects) & set(c.objects) or set(arrows) & set(c.arrows)
        if clash:
            raise SkelcatError(f"disjoint union needs distinct names, shared: {sorted(clash)}")
        objects.extend(c.objects)
        arrows.update(c.arrows)
        table.update(c.table)
    return FinCat(tuple(objects), arrows, table)


def classify(c: FinCat) -> Classification:
    isos = [f for f in c.arrows if c.is_iso(f)]
    return Classification(
        is_groupoid=len(isos) == len(c.arrows),
        is_skeletal=all(c.is_endo(f) for f in isos),
    )


def subgroupoid(c: FinCat, mode: str = "iso") -> tuple[FinCat, "Functor"]:
    """Iso(C) (``mode="iso"``) or Aut(C) (``mode="aut"``) with its inclusion."""
    if mode == "iso":
        keep = [f for f in c.arrows if c.is_iso(f)]
    elif mode == "aut":
        keep = [f for f in c.arrows if c.is_automorphism(f)]
    else:
        raise ValueError(f"mode must be 'iso' or 'aut', not {mode!r}")
    sub = c.subcategory(keep)
    return sub, inclusion(sub, c)


# -- functors -----------------------------------------------------------------


class FunctorBase:
    """Shared behaviour of anything with ``on_object``/``on_arrow``."""

    source: FinCat

    def then(self, other) -> "FunctorBase":
        """The composite functor: first ``self``, then ``other``."""
        if isinstance(self, Functor) and isinstance(other, Functor):
            if other.source != self.target:
                raise SkelcatError("functors are not composable")
            return Functor(
                self.source,
                other.target,
                {x: other.object_map[y] for x, y in self.object_map.items()},
                {f: other.arrow_map[g] for f, g in self.arrow_map.items()},
            )
        return ComposedFunctor(self, other)


@dataclass(frozen=True, eq=False)
class Functor(FunctorBase):
    """A functor between finite categories, stored as total object/arrow maps.

    Equality is extensional.
    """

    source: FinCat
    target: FinCat
    object_map: Mapping[str, str]
    arrow_map: Mapping[str, str]

    def on_object(self, x: str) -> str:
        return self.object_map[x]

    def on_arrow(self, f: str) -> str:
        return self.arrow_map[f]

    def key(self) -> tuple:
        return (
            tuple(self.object_map[x] for x in self.source.objects),
            tuple(self.arrow_map[f] for f in self.source.arrows),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and dict(self.object_map) == dict(other.object_map)
            and dict(self.arrow_map) == dict(other.arrow_map)
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        arrows = {f: g for f, g in self.arrow_map.items() if not self.source.is_identity(f)}
        return f"<Functor objects={dict(self.object_map)} arrows={arrows}>"

    def to_dict(self) -> dict:
        return {
            "objects": dict(self.object_map),
            "arrows": {f: self.arrow_map[f] for f in self.source.nonidentity},
        }


class ComposedFunctor(FunctorBase):
    def __init__(self, first, second):
        self.first = first
        self.second = second
        self.source = first.source
        self.target = second.target

    def on_object(self, x):
        return self.second.on_object(self.first.on_object(x))

    def on_arrow(self, f):
        return self.second.on_arrow(self.first.on_arrow(f))


def functor_problems(source: FinCat, target: FinCat, objects: Mapping, arrows: Mapping) -> list[Problem]:
    problems = []
    for x in source.objects:
        if x not in objects:
            problems.append(Problem("missing", f"object {x!r} is not mapped"))
        elif objects[x] not in target.objects:
            problems.append(Problem("dangling", f"object {x!r} maps to unknown object {objects[x]!r}"))
    for x in objects:
        if x not in source.objects:
            problems.append(Problem("dangling", f"unknown source object {x!r}"))
    for f in arrows:
        if f not in source.arrows:
            problems.append(Problem("dangling", f"unknown source arrow {f!r}", (f,)))
        elif arrows[f] not in target.arrows:
            problems.append(Problem("dangling", f"arrow {f!r} maps to unknown arrow {arrows[f]!r}", (f,)))
    if problems:
        return problems
    full = {}
    for name, a in source.arrows.items():
        if a.is_identity:
            image = identity_name(objects[a.dom])
            if name in arrows and arrows[name] != image:
                problems.append(Problem("identity-law", f"{name} must map to {image}", (name,)))
            full[name] = image
        elif name not in arrows:
            problems.append(Problem("missing", f"arrow {name!r} is not mapped", (name,)))
        else:
            full[name] = arrows[name]
            b = target.arrows[arrows[name]]
            if (b.dom, b.cod) != (objects[a.dom], objects[a.cod]):
                problems.append(
                    Problem(
                        "endpoint",
                        f"{name}: {a.dom}→{a.cod} maps to {b.name}: {b.dom}→{b.cod}, "
                        f"expected {objects[a.dom]}→{objects[a.cod]}",
                        (name,),
                    )
                )
    if problems:
        return problems
    for (f, g), h in source.table.items():
        if target.table[full[f], full[g]] != full[h]:
            problems.append(
                Problem(
                    "composition",
                    f"F({f}) ▷ F({g}) = {target.table[full[f], full[g]]} but F({h}) = {full[h]}",
                    (f, g),
                )
            )
    return problems


def make_functor(source: FinCat, target: FinCat, objects: Mapping, arrows: Mapping | None = None) -> Functor:
    """Validated functor; identity arrows are mapped implicitly."""
    arrows = dict(arrows or {})
    problems = functor_problems(source, target, objects, arrows)
    if problems:
        raise CategoryError(problems)
    full = {
        name: identity_name(objects[a.dom]) if a.is_identity else arrows[name]
        for name, a in source.arrows.items()
    }
    return Functor(source, target, dict(objects), full)


def identity_functor(c: FinCat) -> Functor:
    return Functor(c, c, {x: x for x in c.objects}, {f: f for f in c.arrows})


def inclusion(sub: FinCat, c: FinCat) -> Functor:
    return Functor(sub, c, {x: x for x in sub.objects}, {f: f for f in sub.arrows})


def constant(source: FinCat, target: FinCat, obj: str) -> Functor:
    ident = target.identity(obj)
    return Functor(source, target, {x: obj for x in source.objects}, {f: ident for f in source.arrows})


def enumerate_functors(a: FinCat, b: FinCat, budget: int | None = None) -> list[Functor]:
    """All functors ``a → b`` by backtracking, guarded by a node budget."""
    limit = default_budget() if budget is None else budget
    arrows = list(a.nonidentity)
    position = {f: i for i, f in enumerate(arrows)}
    # composition constraints become checkable once their last arrow is assigned
    checks: list[list[tuple[str, str, str]]] = [[] for _ in arrows]
    for (f, g), h in a.table.items():
        if a.is_identity(f) or a.is_identity(g):
            continue
        last = max(position[f], position[g], position.get(h, -1))
        checks[last].append((f, g, h))

    found: list[Functor] = []
    nodes = 0
    for images in itertools.product(b.objects, repeat=len(a.objects)):
        nodes += 1
        if nodes > limit:
            raise BudgetExceeded(f"functor enumeration exceeded budget of {limit} nodes")
        omap = dict(zip(a.objects, images))
        amap = {identity_name(x): identity_name(omap[x]) for x in a.objects}
        candidates = [b.hom(omap[a.dom(f)], omap[a.cod(f)]) for f in arrows]
        if any(not c for c in candidates):
            continue

        def extend(i: int):
            nonlocal nodes
            if i == len(arrows):
                found.append(Functor(a, b, dict(omap), dict(amap)))
                return
            f = arrows[i]
            for g in candidates[i]:
                nodes += 1
                if nodes > limit:
                    raise BudgetExceeded(f"functor enumeration exceeded budget of {limit} nodes")
                amap[f] = g
                if all(b.table[amap[x], amap[y]] == amap[z] for x, y, z in checks[i]):
                    extend(i + 1)
            amap.pop(f, None)

        extend(0)
    return found
