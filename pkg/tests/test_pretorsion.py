import pytest

from skelcat.errors import PreconditionError
from skelcat.fincat import enumerate_functors, identity_functor, make_functor, subgroupoid
from skelcat.pretorsion import (
    ProbeFamily,
    check_pretorsion,
    drop_identification,
    factor_through_coreflection,
    factor_through_reflection,
    is_trivial_functor,
    iso_pairs,
    pt1_check,
    torsionfree_reflection,
    verify_short_z_exact,
    verify_z_kernel,
    z_kernel,
)
from conftest import CORPUS


def test_trivial_functors_into_groups():
    i, z2 = CORPUS["I"], CORPUS["z2"]
    fs = list(enumerate_functors(i, z2))
    assert fs and all(is_trivial_functor(f) for f in fs)
    assert not is_trivial_functor(identity_functor(CORPUS["2"]))
    assert not is_trivial_functor(identity_functor(i))


def test_iso_pairs_include_identities():
    pairs = iso_pairs(CORPUS["I"])
    assert ("X", "X") in pairs and ("X", "Y") in pairs and ("Y", "X") in pairs


def test_reflection_of_I_is_Z():
    seq = torsionfree_reflection(CORPUS["I"])
    q = seq.quotient
    assert q.objects == ("X",)
    assert len(q.all_arrows(2)) == 5
    assert set(seq.kernel.arrows) == set(CORPUS["I"].arrows)


def test_reflection_of_skeletal_is_itself():
    for name in ("2", "chain3", "flip", "retract", "parallel"):
        c = CORPUS[name]
        seq = torsionfree_reflection(c)
        assert len(seq.quotient.objects) == len(c.objects)
        assert len(seq.quotient.all_arrows(5)) == len(c.arrows)


def test_factor_through_coreflection():
    seq = torsionfree_reflection(CORPUS["iso_arrow"])
    g = make_functor(CORPUS["I"], CORPUS["iso_arrow"], {"X": "X", "Y": "Y"}, {"f": "f", "g": "g"})
    lifted = factor_through_coreflection(g, seq)
    assert lifted.target == seq.kernel
    assert lifted.then(seq.inclusion) == g


def test_factor_through_coreflection_rejects_nontrivial():
    seq = torsionfree_reflection(CORPUS["2"])
    with pytest.raises(PreconditionError):
        factor_through_coreflection(identity_functor(CORPUS["2"]), seq)


def test_factor_through_reflection_into_z2():
    c, z2 = CORPUS["I"], CORPUS["z2"]
    seq = torsionfree_reflection(c)
    h = make_functor(c, z2, {"X": "X", "Y": "X"}, {"f": "e", "g": "e"})
    ind = factor_through_reflection(h, seq)
    q = seq.quotient
    ff = q.compose(seq.quotient_functor.on_arrow("f"), seq.quotient_functor.on_arrow("f"))
    assert ind.on_arrow(ff) == "id:X"
    for f in c.arrows:
        assert ind.on_arrow(seq.quotient_functor.on_arrow(f)) == h.on_arrow(f)


def test_factor_through_reflection_preconditions():
    seq = torsionfree_reflection(CORPUS["I"])
    with pytest.raises(PreconditionError):
        factor_through_reflection(identity_functor(CORPUS["I"]), seq)
    h = make_functor(CORPUS["I"], CORPUS["2"], {"X": "A", "Y": "A"}, {"f": "id:A", "g": "id:A"})
    assert factor_through_reflection(h, seq).on_object("X") == "A"


def test_z_kernel_of_reflection_and_identity():
    for c in CORPUS.values():
        seq = torsionfree_reflection(c)
        zk, _ = z_kernel(seq.quotient_functor)
        assert set(zk.arrows) == set(subgroupoid(c, "iso")[0].arrows)
        zk_id, _ = z_kernel(identity_functor(c))
        assert set(zk_id.arrows) == set(subgroupoid(c, "aut")[0].arrows)


def test_verify_z_kernel_on_identity(probes):
    assert verify_z_kernel(identity_functor(CORPUS["iso_idem"]), probes).ok


def test_short_z_exact_on_I(probes):
    seq = torsionfree_reflection(CORPUS["I"])
    report = verify_short_z_exact(seq, probes)
    assert report.ok and report.checks > 100


def test_mutation_is_detected(probes):
    seq = torsionfree_reflection(CORPUS["I"])
    broken = drop_identification(seq, "X", "Y")
    assert len(broken.quotient.objects) == 2
    report = verify_short_z_exact(broken, probes)
    assert not report.ok
    assert any("not trivial" in m or "factorizations" in m or "iso" in m for m in report.failures)


def test_pt1():
    assert pt1_check(CORPUS["I"], CORPUS["2"]).ok
    assert pt1_check(CORPUS["z3"], CORPUS["flip"]).ok
    with pytest.raises(PreconditionError):
        pt1_check(CORPUS["2"], CORPUS["2"])
    with pytest.raises(PreconditionError):
        pt1_check(CORPUS["I"], CORPUS["I"])


def test_pt1_frozen_example():
    fs = list(enumerate_functors(CORPUS["I"], CORPUS["2"]))
    assert len(fs) == 2
    assert all(is_trivial_functor(f) for f in fs)


def test_check_pretorsion_small_probe_family():
    probes = ProbeFamily({"1": CORPUS["1"], "I": CORPUS["I"], "2": CORPUS["2"]})
    for name in ("I", "iso_arrow", "retract"):
        assert check_pretorsion(CORPUS[name], probes).ok
