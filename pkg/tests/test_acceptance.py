"""Acceptance suite: one test per criterion, summarised as PASS/FAIL lines.

Run ``pytest tests/test_acceptance.py`` (or this file directly) to see the
summary; the lines are printed by the terminal-summary hook in conftest.
"""
import io
import itertools
import json
import time
from contextlib import redirect_stdout

import pytest

from skelcat.cli import main as cli_main
from skelcat.coeq import IdentificationSpec, QArrow, coequalize
from skelcat.fileio import corpus_path
from skelcat.fincat import classify, enumerate_functors, identity_functor, subgroupoid
from skelcat.presentation import (
    bounded_normal_forms,
    groupoid_consistency,
    identity_zcok_equivalence,
    word_equal_bounded,
    z_cokernel_of_identity,
)
from skelcat.pretorsion import (
    drop_identification,
    is_trivial_functor,
    pt1_check,
    torsionfree_reflection,
    verify_short_z_exact,
    verify_z_kernel,
    z_kernel,
)
from skelcat.words import all_words, closure_oracle, reduce
from conftest import CORPUS


def test_corpus_shape():
    assert len(CORPUS) >= 10
    for c in CORPUS.values():
        assert len(c.objects) <= 3 and len(c.nonidentity) <= 6


@pytest.mark.criterion(1, "normal forms agree with the closure oracle on words of length <= 4")
def test_criterion_1_normal_forms():
    start = time.perf_counter()
    discrepancies = []
    for name, c in CORPUS.items():
        classes = closure_oracle(c, 4)
        form_of_class = {}
        for w in all_words(c, 4):
            r = reduce(c, w)
            k = classes.class_of[w]
            if form_of_class.setdefault(k, r) != r:
                discrepancies.append(f"{name}: {w} and {classes.classes[k][0]} share a class but reduce differently")
        if len(set(form_of_class.values())) != len(form_of_class):
            discrepancies.append(f"{name}: two oracle classes share a reduced form")
    elapsed = time.perf_counter() - start
    assert discrepancies == []
    assert elapsed < 60, f"took {elapsed:.1f}s"


def _exp_word(n):
    return ("f",) * n if n >= 0 else ("g",) * -n


@pytest.mark.criterion(2, "skeletal reflection of I reproduces (Z, +)")
def test_criterion_2_integers():
    seq = torsionfree_reflection(CORPUS["I"])
    q = seq.quotient
    for k in range(6):
        arrows = q.all_arrows(k)
        assert len(arrows) == 2 * k + 1
        assert {a.word for a in arrows} == {_exp_word(n) for n in range(-k, k + 1)}
    for a, b in itertools.product(range(-5, 6), repeat=2):
        x, y = QArrow("X", _exp_word(a), "X"), QArrow("X", _exp_word(b), "X")
        assert q.compose(x, y) == QArrow("X", _exp_word(a + b), "X")


def _iso_subset_specs(c):
    isos = [s for s in c.nonidentity if c.is_iso(s)]
    for r in range(len(isos) + 1):
        for subset in itertools.combinations(isos, r):
            yield IdentificationSpec(c, tuple((c.dom(s), c.cod(s)) for s in subset))


@pytest.mark.criterion(3, "q is faithful and reflects isomorphisms for every iso-generated identification")
def test_criterion_3_faithful_and_reflects_isos():
    violations = []
    specs = 0
    for name, c in CORPUS.items():
        for spec in _iso_subset_specs(c):
            specs += 1
            q, qf = coequalize(spec)
            image = {f: qf.on_arrow(f) for f in c.arrows}
            for f, g in itertools.combinations(c.arrows, 2):
                if c.dom(f) == c.dom(g) and c.cod(f) == c.cod(g) and image[f] == image[g]:
                    violations.append(f"{name} {spec.pairs}: q({f}) = q({g})")
            for f in c.arrows:
                if q.is_iso(image[f]) and not c.is_iso(f):
                    violations.append(f"{name} {spec.pairs}: q({f}) is iso but {f} is not")
    assert specs > len(CORPUS)
    assert violations == []


def _has_inverse(q, qf, a, max_len=8):
    """Exhaustive search for b of length <= max_len with a,b = id and b,a = id.

    Appending one letter shortens a reduced word by at most one letter, so a
    partial word whose composite with ``a`` is longer than the letters still
    available can be abandoned.
    """
    base = q.base
    target = q.identity(a.src)

    def dfs(b, current):
        if current == target and q.compose(b, a) == q.identity(a.tgt):
            return True
        if len(b.word) == max_len:
            return False
        for f in base.nonidentity:
            if q.cls(base.dom(f)) != b.tgt or (b.word and base.cod(b.word[-1]) == base.dom(f)):
                continue
            nb = QArrow(b.src, b.word + (f,), q.cls(base.cod(f)))
            nxt = q.compose(current, qf.on_arrow(f))
            if len(nxt.word) <= max_len - len(nb.word) and dfs(nb, nxt):
                return True
        return False

    return dfs(q.identity(a.tgt), a)


@pytest.mark.criterion(4, "quotient isomorphisms are exactly the arrows with an inverse of length <= 8")
def test_criterion_4_inverses():
    discrepancies = []
    for name, c in CORPUS.items():
        seq = torsionfree_reflection(c)
        q, qf = seq.quotient, seq.quotient_functor
        for a in q.all_arrows(4):
            if q.is_iso(a) != _has_inverse(q, qf, a):
                discrepancies.append(f"{name}: {a}")
    assert discrepancies == []


@pytest.mark.criterion(5, "short Z-exact sequence verified on the corpus, mutation detected")
def test_criterion_5_short_z_exact(probes):
    failures = {}
    for name, c in CORPUS.items():
        report = verify_short_z_exact(torsionfree_reflection(c), probes)
        if not report.ok:
            failures[name] = report.failures[:3]
    assert failures == {}
    detected = []
    for name, c in CORPUS.items():
        seq = torsionfree_reflection(c)
        for a, b in itertools.combinations(c.objects, 2):
            if seq.quotient.cls(a) != seq.quotient.cls(b):
                continue
            if not verify_short_z_exact(drop_identification(seq, a, b), probes).ok:
                detected.append((name, a, b))
    assert len({name for name, _, _ in detected}) >= 1


@pytest.mark.criterion(6, "PT1 on every corpus (groupoid, skeletal) pair; functors I -> 2")
def test_criterion_6_pt1():
    groupoids = [c for c in CORPUS.values() if classify(c).is_groupoid]
    skeletal = [c for c in CORPUS.values() if classify(c).is_skeletal]
    bad = [(t, f) for t in groupoids for f in skeletal if not pt1_check(t, f).ok]
    assert bad == []
    fs = list(enumerate_functors(CORPUS["I"], CORPUS["2"]))
    assert len(fs) == 2 and all(is_trivial_functor(f) for f in fs)


@pytest.mark.criterion(7, "Z-kernels of q and of identities; universal property on probe functors")
def test_criterion_7_z_kernel(probes):
    for name, c in CORPUS.items():
        seq = torsionfree_reflection(c)
        zk, _ = z_kernel(seq.quotient_functor)
        assert set(zk.arrows) == set(subgroupoid(c, "iso")[0].arrows), name
        zk_id, _ = z_kernel(identity_functor(c))
        assert set(zk_id.arrows) == set(subgroupoid(c, "aut")[0].arrows), name
    functors = [torsionfree_reflection(c).quotient_functor for c in CORPUS.values()]
    functors += [identity_functor(c) for c in CORPUS.values()]
    for _, a in probes:
        for _, b in probes:
            functors.extend(enumerate_functors(a, b))
    failures = [f for f in functors if not verify_z_kernel(f, probes).ok]
    assert failures == []


@pytest.mark.criterion(8, "presentations: u^n normal forms, identity Z-cokernels, groupoid consistency")
def test_criterion_8_presentations():
    p = z_cokernel_of_identity(CORPUS["2"]).presentation
    forms = bounded_normal_forms(p, 6)["A", "A"]
    expected = {(("u", 1),) * n for n in range(7)} | {(("u", -1),) * n for n in range(1, 7)}
    assert set(forms) == expected and len(forms) == 13
    for x, y in itertools.combinations(forms, 2):
        assert word_equal_bounded(p, x, y, at="A").distinct, (x, y)
    assert word_equal_bounded(p, (("u", 1), ("u", -1)), (), at="A").equal
    for name, c in CORPUS.items():
        assert identity_zcok_equivalence(c) == [], name
    for name, c in CORPUS.items():
        if classify(c).is_groupoid:
            assert groupoid_consistency(c, 4) == [], name


def _cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main([str(a) for a in argv])
    return code, buf.getvalue()


@pytest.mark.criterion(9, "CLI round trip, check-pretorsion on the corpus, deterministic reports")
def test_criterion_9_cli(tmp_path):
    for name in CORPUS:
        code, first = _cli("validate", corpus_path(name), "--canonical")
        assert code == 0
        path = tmp_path / f"{name}.json"
        path.write_text(first)
        code, second = _cli("validate", path, "--canonical")
        assert code == 0 and second == first
    files = [corpus_path(n) for n in CORPUS]
    outputs = []
    for run in range(2):
        report = tmp_path / f"report{run}.json"
        code, out = _cli("check-pretorsion", *files, "--report", report)
        assert code == 0
        data = json.loads(report.read_text())
        outputs.append((out, json.dumps(data["findings"]), data["outcome"]))
    assert outputs[0] == outputs[1]
    assert outputs[0][2] == "pass"


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
