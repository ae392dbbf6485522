import itertools
import random

import pytest

from skelcat.kernel import BACKEND, CompiledWordKernel, PythonWordKernel, WordKernel
from conftest import CORPUS

BACKENDS = [PythonWordKernel] + ([CompiledWordKernel] if CompiledWordKernel is not None else [])


def _coded(c, impl):
    names = list(c.arrows)
    index = {n: i for i, n in enumerate(names)}
    table = [[index[c.table[f, g]] if (f, g) in c.table else -1 for g in names] for f in names]
    return impl(table, [c.is_identity(n) for n in names]), names


def test_backend_selection():
    assert BACKEND == WordKernel.backend
    assert BACKEND in ("cython", "python")


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda k: k.backend)
def test_iso_pair_cancels(impl):
    k, names = _coded(CORPUS["I"], impl)
    f, g = names.index("f"), names.index("g")
    assert k.reduce([f, g]) == ()
    assert k.reduce([f, f, g]) == (f,)
    assert k.phi(f, [g, f]) == (f,)
    assert k.star([f], [g]) == ()
    assert k.is_reduced([f, f]) and not k.is_reduced([f, g])


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda k: k.backend)
def test_identity_letters_vanish(impl):
    k, names = _coded(CORPUS["I"], impl)
    idx = names.index("id:X")
    assert k.reduce([idx]) == ()
    assert k.reduce([idx, idx, names.index("f")]) == (names.index("f"),)
    assert not k.is_reduced([idx])


@pytest.mark.skipif(CompiledWordKernel is None, reason="extension not built")
@pytest.mark.parametrize("name", sorted(CORPUS))
def test_backends_agree(name):
    py, names = _coded(CORPUS[name], PythonWordKernel)
    cy, _ = _coded(CORPUS[name], CompiledWordKernel)
    rng = random.Random(7)
    n = len(names)
    words = [tuple(rng.randrange(n) for _ in range(rng.randrange(12))) for _ in range(400)]
    words += list(itertools.product(range(n), repeat=2))
    assert py.reduce_many(words) == cy.reduce_many(words)
    for w in words[:100]:
        assert py.phi(w[0] if w else 0, w[1:]) == cy.phi(w[0] if w else 0, w[1:])
        assert py.is_reduced(w) == cy.is_reduced(w)


@pytest.mark.skipif(CompiledWordKernel is None, reason="extension not built")
def test_compiled_handles_long_words():
    cy, names = _coded(CORPUS["I"], CompiledWordKernel)
    f, g = names.index("f"), names.index("g")
    w = [f] * 5000 + [g] * 4999
    assert cy.reduce(w) == (f,)


def test_env_forces_python_fallback():
    import os
    import subprocess
    import sys

    env = dict(os.environ, SKELCAT_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from skelcat import BACKEND, reduce; from skelcat.fileio import load_corpus;"
         "print(BACKEND, reduce(load_corpus()['I'], ('f', 'g')))"],
        capture_output=True, text=True, env=env, check=True,
    ).stdout
    assert out.split() == ["python", "()"]
