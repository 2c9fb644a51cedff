import json
import random

import pytest

from weilchar.action import make_instance
from weilchar.attack import usable_characters
from weilchar.ddh import PublicTriple, distinguish, run_experiment, sample_triple
from weilchar.quadforms import Character


def test_triple_invariants(oc52):
    rng = random.Random(11)
    tri = sample_triple(oc52, "dh", rng)
    assert tri.ground_truth == "dh"
    na, nb, nc = tri.hidden_norms
    assert nc == na * nb
    view = tri.public_view()
    assert isinstance(view, PublicTriple)
    assert not hasattr(view, "hidden_norms")
    assert sample_triple(oc52, "random", rng).ground_truth == "random"
    with pytest.raises(ValueError):
        sample_triple(oc52, "both", rng)


def test_dh_triples_never_rejected(oc52):
    # a genuine dh triple satisfies every usable character identity, so the
    # distinguisher must answer dh regardless of its own randomness
    chars = usable_characters(oc52)
    assert [c.label for c in chars] == ["delta"]
    for s in range(8):
        tri = sample_triple(oc52, "dh", random.Random(100 + s))
        assert distinguish(tri, chars, random.Random(s)) == "dh"


def test_trivial_class_group_refused():
    oc12 = make_instance(7, 4, random.Random(0))
    assert oc12.D == 12
    with pytest.raises(ValueError):
        sample_triple(oc12, "random", random.Random(1))


def test_experiment_report(oc52):
    chars = usable_characters(oc52)
    rep = run_experiment(oc52, 60, chars, seed=7)
    assert rep["false_negatives"] == 0, rep["confusion"]
    assert rep["oracle_mismatches"] == 0
    assert 0.25 < rep["advantage"] < 0.75, rep["advantage"]
    assert rep["ci_advantage"][0] <= rep["advantage"] <= rep["ci_advantage"][1]
    assert rep["p_guess_dh_given_dh"] == 1.0
    assert rep["confusion"]["dh"]["dh"] == 30
    assert abs(rep["success_rate"] - (0.5 + rep["advantage"] / 2)) < 1e-12


def test_report_determinism(oc52):
    chars = usable_characters(oc52)
    rep = run_experiment(oc52, 60, chars, seed=7)
    rep2 = run_experiment(oc52, 60, chars, seed=7)
    assert json.dumps(rep, sort_keys=True) == json.dumps(rep2, sort_keys=True)
    rep3 = run_experiment(oc52, 60, chars, seed=8)
    assert json.dumps(rep, sort_keys=True) != json.dumps(rep3, sort_keys=True)


def test_squares_only_collapse(oc52):
    # restricted to squares the characters are blind: all guesses are dh
    chars = usable_characters(oc52)
    rep = run_experiment(oc52, 20, chars, seed=3, squares_only=True)
    assert rep["advantage"] == 0.0
    assert rep["p_guess_dh_given_dh"] == 1.0
    assert rep["p_guess_dh_given_random"] == 1.0
    assert rep["ci_advantage"][0] <= 0.0 <= rep["ci_advantage"][1]
    assert rep["false_negatives"] == 0 and rep["oracle_mismatches"] == 0


def test_trivial_character_null_result():
    # chi_3 is assigned to D = 48 but kills no class, so it cannot separate
    oc48 = make_instance(13, 2, random.Random(2))
    assert oc48.D == 48
    chi3 = Character("chi", 3)
    assert chi3 not in usable_characters(oc48)
    rep = run_experiment(oc48, 16, [chi3], seed=5)
    assert rep["advantage"] == 0.0 and rep["false_negatives"] == 0
    assert rep["oracle_mismatches"] == 0
