"""The pretorsion theory (groupoids, skeletal categories) on Cat.

A functor is *trivial* when every arrow lands on an automorphism, i.e. it
factors through the skeletal groupoid ``Aut`` of its target.  Every finite
category ``C`` sits in a short Z-exact sequence ``Iso(C) → C → Q`` where
``Q`` is the coequalizer identifying the endpoints of every isomorphism.

Universal properties are checked against a finite family of probe
categories: every functor into or out of the sequence from a probe is
enumerated, so a reported failure is a genuine counterexample.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace

from .coeq import IdentificationSpec, QArrow, QuotientCat, QuotientFunctor, coequalize
from .errors import InconsistencyError, NotComposableError, PreconditionError, SkelcatError
from .fincat import FinCat, Functor, FunctorBase, classify, enumerate_functors, inclusion, subgroupoid


@dataclass
class ZExactSequence:
    kernel: FinCat
    inclusion: Functor
    category: FinCat
    quotient_functor: QuotientFunctor
    quotient: QuotientCat

    @property
    def spec(self) -> IdentificationSpec:
        return self.quotient.spec


@dataclass
class ProbeFamily:
    categories: dict[str, FinCat]
    budget: int | None = None

    def __iter__(self):
        return iter(self.categories.items())


@dataclass
class Report:
    title: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def check(self, cond: bool, message) -> bool:
        self.checks += 1
        if not cond:
            self.failures.append(message() if callable(message) else message)
        return cond

    def extend(self, other: "Report") -> None:
        self.checks += other.checks
        self.failures.extend(f"{other.title}: {m}" for m in other.failures)


def is_trivial_functor(f: FunctorBase) -> bool:
    target = f.target
    return all(target.is_automorphism(f.on_arrow(a)) for a in f.source.arrows)


def torsion_coreflection(c: FinCat) -> tuple[FinCat, Functor]:
    return subgroupoid(c, "iso")


def iso_pairs(c: FinCat) -> tuple[tuple[str, str], ...]:
    """One pair (dom σ, cod σ) per isomorphism σ, identities included."""
    return tuple((c.dom(s), c.cod(s)) for s in c.isos())


def torsionfree_reflection(c: FinCat) -> ZExactSequence:
    kernel, i = torsion_coreflection(c)
    q_cat, q = coequalize(IdentificationSpec(c, iso_pairs(c)))
    return ZExactSequence(kernel, i, c, q, q_cat)


def drop_identification(seq: ZExactSequence, a: str, b: str) -> ZExactSequence:
    """A corrupted copy of ``seq`` whose coequalizer no longer glues ``a`` and ``b`` directly."""
    pairs = tuple(p for p in seq.spec.pairs if set(p) != {a, b})
    q_cat, q = coequalize(IdentificationSpec(seq.category, pairs))
    return replace(seq, quotient_functor=q, quotient=q_cat)


def z_kernel(f: FunctorBase) -> tuple[FinCat, Functor]:
    """Wide subcategory of the source on arrows sent to automorphisms."""
    source, target = f.source, f.target
    keep = [a for a in source.arrows if target.is_automorphism(f.on_arrow(a))]
    try:
        sub = source.subcategory(keep)
    except SkelcatError as exc:
        raise InconsistencyError(f"Z-kernel is not closed under composition: {exc}") from exc
    return sub, inclusion(sub, source)


def factor_through_coreflection(g: Functor, seq: ZExactSequence) -> Functor:
    """Corestrict ``g: X → C`` to ``Iso(C)``; requires ``q ∘ g`` trivial."""
    if g.target != seq.category:
        raise PreconditionError("functor does not land in the sequence's category")
    if not is_trivial_functor(g.then(seq.quotient_functor)):
        raise PreconditionError("q ∘ G is not trivial, so G does not factor through Iso(C)")
    bad = [a for a in g.source.arrows if g.arrow_map[a] not in seq.kernel.arrows]
    if bad:
        raise InconsistencyError(f"q ∘ G is trivial but G sends {bad} to non-isomorphisms")
    return Functor(g.source, seq.kernel, dict(g.object_map), dict(g.arrow_map))


class InducedFunctor(FunctorBase):
    """The functor ``Q → S`` induced by ``H: C → S`` that glues identified objects."""

    def __init__(self, h: Functor, seq: ZExactSequence):
        self.h = h
        self.seq = seq
        self.source = seq.quotient
        self.target = h.target

    def on_object(self, cls: str) -> str:
        return self.h.on_object(cls)

    def on_arrow(self, a: QArrow) -> str:
        h, s = self.h, self.target
        out = s.identity(h.on_object(a.src))
        try:
            for f in a.word:
                out = s.compose(out, h.on_arrow(f))
        except NotComposableError as exc:
            raise InconsistencyError(f"induced functor undefined on {a}: {exc}") from exc
        return out


def coequalizer_defects(h: Functor, seq: ZExactSequence) -> list[str]:
    return [
        f"H({a}) = {h.on_object(a)} but H({b}) = {h.on_object(b)}"
        for a, b in seq.spec.pairs
        if h.on_object(a) != h.on_object(b)
    ]


def factor_through_reflection(h: Functor, seq: ZExactSequence) -> InducedFunctor:
    """The unique ``L: Q → S`` with ``L ∘ q = H``, for skeletal ``S``."""
    if h.source != seq.category:
        raise PreconditionError("functor does not start at the sequence's category")
    if not classify(h.target).is_skeletal:
        raise PreconditionError("target category is not skeletal")
    defects = coequalizer_defects(h, seq)
    if defects:
        raise InconsistencyError("; ".join(defects))
    return InducedFunctor(h, seq)


def _count_lifts(g: Functor, lifts: dict[tuple, int]) -> int:
    return lifts.get(g.key(), 0)


def _lift_index(x: FinCat, sub: FinCat, budget) -> dict[tuple, int]:
    # functors into a wide subcategory keep their names, so keys compare directly
    out: dict[tuple, int] = {}
    for h in enumerate_functors(x, sub, budget):
        out[h.key()] = out.get(h.key(), 0) + 1
    return out


def verify_z_kernel(f: FunctorBase, probes: ProbeFamily) -> Report:
    """``G: X → A`` factors through the Z-kernel iff ``F ∘ G`` is trivial, uniquely."""
    report = Report("Z-kernel")
    k_cat, k = z_kernel(f)
    report.check(is_trivial_functor(k.then(f)), "F ∘ k is not trivial")
    for name, x in probes:
        lifts = _lift_index(x, k_cat, probes.budget)
        for g in enumerate_functors(x, f.source, probes.budget):
            trivial = is_trivial_functor(g.then(f))
            n = _count_lifts(g, lifts)
            report.check(
                n == (1 if trivial else 0),
                lambda: f"probe {name}: {g} has {n} factorizations (F ∘ G trivial: {trivial})",
            )
    return report


def verify_short_z_exact(seq: ZExactSequence, probes: ProbeFamily, max_len: int = 4) -> Report:
    report = Report("short Z-exact sequence")
    c, k_cat, i, q, q_cat = seq.category, seq.kernel, seq.inclusion, seq.quotient_functor, seq.quotient

    for s in k_cat.arrows:
        report.check(q_cat.is_automorphism(q.on_arrow(s)), lambda: f"q sends iso {s} to {q.on_arrow(s)}")
    arrows = q_cat.all_arrows(max_len, probes.budget)
    for a in arrows:
        report.check(not q_cat.is_iso(a) or a.src == a.tgt, lambda: f"quotient is not skeletal: {a} is an iso")

    # k is the Z-kernel of q
    for name, x in probes:
        lifts = _lift_index(x, k_cat, probes.budget)
        for g in enumerate_functors(x, c, probes.budget):
            trivial = is_trivial_functor(g.then(q))
            n = _count_lifts(g, lifts)
            report.check(
                n == (1 if trivial else 0),
                lambda: f"probe {name}: {g} has {n} factorizations through Iso (q ∘ G trivial: {trivial})",
            )

    # q is the Z-cokernel of k; Q is generated by images of base arrows, which gives uniqueness
    for a in arrows:
        rebuilt = q_cat.identity(a.src)
        for f in a.word:
            rebuilt = q_cat.compose(rebuilt, q.on_arrow(f))
        report.check(rebuilt == a, lambda: f"{a} is not the composite of the images of its letters")
    for name, y in probes:
        for h in enumerate_functors(c, y, probes.budget):
            if not is_trivial_functor(i.then(h)):
                continue
            defects = coequalizer_defects(h, seq)
            if not report.check(not defects, lambda: f"probe {name}: {h} kills Iso(C) but {defects[0]}"):
                continue
            ind = InducedFunctor(h, seq)
            for f in c.arrows:
                report.check(
                    ind.on_arrow(q.on_arrow(f)) == h.on_arrow(f),
                    lambda: f"probe {name}: L(q({f})) ≠ H({f}) for {h}",
                )
            for a in arrows:
                la = ind.on_arrow(a)
                for f in c.nonidentity:
                    if q_cat.cls(c.dom(f)) != a.tgt:
                        continue
                    lhs = ind.on_arrow(q_cat.compose(a, q.on_arrow(f)))
                    report.check(
                        lhs == y.compose(la, h.on_arrow(f)),
                        lambda: f"probe {name}: induced functor not functorial at {a} then {f}",
                    )
    return report


def pt1_check(t: FinCat, f: FinCat, budget: int | None = None) -> Report:
    """Every functor from the groupoid ``t`` to the skeletal category ``f`` is trivial."""
    if not classify(t).is_groupoid:
        raise PreconditionError("first category must be a groupoid")
    if not classify(f).is_skeletal:
        raise PreconditionError("second category must be skeletal")
    report = Report("PT1")
    for g in enumerate_functors(t, f, budget):
        report.check(is_trivial_functor(g), lambda: f"{g} is not trivial")
    return report


def default_probes(budget: int | None = None) -> ProbeFamily:
    """Bundled corpus categories with ≤ 2 objects and ≤ 4 non-identity arrows."""
    from .fileio import load_corpus

    cats = {n: c for n, c in load_corpus().items() if len(c.objects) <= 2 and len(c.nonidentity) <= 4}
    return ProbeFamily(cats, budget)


def check_pretorsion(c: FinCat, probes: ProbeFamily, max_len: int = 4) -> Report:
    """Every check the CLI's ``check-pretorsion`` runs for one category."""
    report = Report("pretorsion")
    seq = torsionfree_reflection(c)
    report.check(classify(seq.kernel).is_groupoid, "Iso(C) is not a groupoid")
    report.extend(verify_short_z_exact(seq, probes, max_len))
    zk, _ = z_kernel(seq.quotient_functor)
    report.check(
        set(zk.arrows) == set(seq.kernel.arrows),
        lambda: f"Z-kernel of q has arrows {sorted(zk.arrows)}, Iso(C) has {sorted(seq.kernel.arrows)}",
    )
    for name, x in probes:
        if classify(x).is_groupoid and classify(c).is_skeletal:
            report.extend(pt1_check(x, c, probes.budget))
        if classify(c).is_groupoid and classify(x).is_skeletal:
            report.extend(pt1_check(c, x, probes.budget))
    return report
