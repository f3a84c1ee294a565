"""Level certificate tests.

The headline values here are the ones the whole package exists to
reproduce; each expected number comes with the route that produces it.
"""

import json

import pytest

from levelcert.rings import make_ring
from levelcert.modules import artin_free, artin_residue_field, \
    graded_residue_field
from levelcert.complexes import Complex, module_stalk
from levelcert.resolutions import koszul_complex
from levelcert.level import (LevelError, bass_check, ghost_lower_bound,
                             homology_dimension_bound, level_one_test,
                             level_report, module_in_class, normalize_class,
                             upper_certificate)


@pytest.fixture(scope="module")
def A():
    return make_ring("artin(F2; x | x^2)")


@pytest.fixture(scope="module")
def B():
    return make_ring("artin(F2; x, y | x^2, x*y, y^2)")


@pytest.fixture(scope="module")
def R3():
    return make_ring("poly(F101; x, y, z)")


def test_class_normalization():
    assert normalize_class("Projective") == "proj"
    assert normalize_class("GI") == "ginj"
    assert normalize_class("gorenstein-flat") == "gflat"
    with pytest.raises(LevelError):
        normalize_class("perverse")


def test_module_membership_matrix(A, B, R3):
    kA = artin_residue_field(A)
    kB = artin_residue_field(B)
    kR = graded_residue_field(R3)
    assert module_in_class(kA, "proj")[0] is False
    assert module_in_class(artin_free(A, 1), "proj")[0] is True
    # the base is self-injective, so free and injective agree
    assert module_in_class(kA, "inj")[0] is False
    assert module_in_class(artin_free(A, 1), "inj")[0] is True
    # over a self-injective base every module is in both g-classes
    assert module_in_class(kA, "gproj")[0] is True
    assert module_in_class(kA, "ginj")[0] is True
    # the square-zero base on two generators is not self-injective and
    # its residue field is obstructed at the first reflexivity step
    v, note = module_in_class(kB, "gproj")
    assert v is False and "ext_to_ring" in note
    assert module_in_class(kB, "ginj")[0] is False
    # regular base: both g-classes collapse to free
    assert module_in_class(kR, "gproj")[0] is False
    assert module_in_class(kR, "inj")[0] is False


def test_level_one_decisions(A, R3):
    kA = module_stalk(A, artin_residue_field(A))
    assert level_one_test(kA, "proj").verdict == "no"
    assert level_one_test(kA, "gproj").verdict == "yes"
    free = module_stalk(A, artin_free(A, 2))
    assert level_one_test(free, "proj").verdict == "yes"
    # koszul complex on the dual numbers: homology is k in two degrees,
    # outside the injectives, and the complex is not formal
    K = koszul_complex(A)
    r = level_one_test(K, "inj")
    assert r.verdict == "no" and r.exhaustive
    r = level_one_test(K, "ginj")
    assert r.verdict == "no" and r.exhaustive
    assert "quasi-isomorphism" in r.reason or "isomorphism" in r.reason


def test_level_one_formal_two_degrees(A):
    # zero differential, so the complex equals its homology stalks
    k = artin_residue_field(A)
    m = Complex(A, {0: k, 1: k}, {}, check=False)
    r = level_one_test(m, "ginj")
    assert r.verdict == "yes"
    assert r.exhaustive


def test_headline_injective_level(A):
    # two-term free complex with non-injective homology: the level with
    # respect to the injectives is exactly two, upper by peeling the two
    # free (= injective) terms, lower by the one-step failure
    K = koszul_complex(A)
    rep = level_report(K, "inj")
    assert rep.verdict == ("exact", 2)
    assert rep.upper.route == "stratification"
    assert rep.lower.route == "one-step-impossible"
    assert rep.verify()


def test_headline_gorenstein_injective_levels(A):
    K = koszul_complex(A)
    rep = level_report(K, "ginj")
    assert rep.verdict == ("exact", 2)
    assert rep.upper.route in ("cycle-boundary", "boundary-cokernel")
    assert rep.verify()
    # a module stalk is one layer whenever its module is in the class
    k = module_stalk(A, artin_residue_field(A))
    rep1 = level_report(k, "ginj")
    assert rep1.verdict == ("exact", 1)
    assert rep1.upper.route == "one-step"
    assert rep1.verify()


def test_headline_regular_ring_level(R3):
    k = module_stalk(R3, graded_residue_field(R3))
    rep = level_report(k, "proj", budget=4)
    assert rep.verdict == ("exact", 4)
    assert rep.upper.route == "cover-tower"
    assert rep.lower.route == "ghost-chain"
    assert rep.lower.data["chain_length"] == 3
    assert rep.verify()


def test_level_invariant_under_quasi_iso(R3):
    # the unit koszul complex resolves the residue field, so both carry
    # the same level
    rep = level_report(koszul_complex(R3), "proj", budget=4)
    assert rep.verdict == ("exact", 4)
    assert rep.verify()


def test_infinite_level_reports_honest_range(A):
    k = module_stalk(A, artin_residue_field(A))
    rep = level_report(k, "proj", budget=3)
    assert rep.upper is None
    # every ghost chain through the budget is nonzero
    assert rep.lower.value == 4
    assert rep.verdict == ("at_least", 4)
    assert rep.verify()


def test_ghost_budget_moves_the_bound(A):
    k = module_stalk(A, artin_residue_field(A))
    low = ghost_lower_bound(k, "proj", budget=2)
    assert low.value == 3
    assert low.route == "ghost-chain"
    assert low.verify()


def test_upper_stratification_counts_terms(A):
    K = koszul_complex(A)
    up = upper_certificate(K, "proj")
    assert up.value == 2
    assert up.route in ("stratification", "cycle-boundary",
                        "boundary-cokernel")
    assert up.verify()


def test_bass_criterion(A):
    # free stalks have injective homology over the self-injective base
    st = module_stalk(A, artin_free(A, 2))
    out = bass_check(st)
    assert out["applies"] and out["level_inj"] == 1
    assert out["witness_quasi_iso"]
    # the residue field does not qualify
    k = module_stalk(A, artin_residue_field(A))
    out = bass_check(k)
    assert not out["applies"]
    assert out["degrees"] == [0]


def test_dimension_bound_consistency(A, R3):
    K = koszul_complex(A)
    bound, per = homology_dimension_bound(K, "ginj")
    assert bound == 2
    rep = level_report(K, "ginj")
    assert rep.upper.value <= bound
    k = module_stalk(R3, graded_residue_field(R3))
    bound, per = homology_dimension_bound(k, "proj")
    assert bound == 4
    assert per[0].value == 3
    # infinite projective dimension gives no finite bound
    kA = module_stalk(A, artin_residue_field(A))
    assert homology_dimension_bound(kA, "proj")[0] is None


def test_out_of_scope_and_zero(A, R3):
    z = Complex(A, {}, {}, check=False)
    rep = level_report(z, "proj")
    assert rep.verdict == ("exact", 0)
    k = module_stalk(R3, graded_residue_field(R3))
    rep = level_report(k, "inj")
    assert rep.upper is None and rep.lower is None
    assert rep.verdict == ("unknown",)
    assert any("out of scope" in n for n in rep.notes)


def test_certificate_json_round_trip(A):
    K = koszul_complex(A)
    rep = level_report(K, "inj")
    blob = json.dumps(rep.to_dict(), sort_keys=True)
    back = json.loads(blob)
    assert back["verdict"] == ["exact", 2]
    assert back["upper"]["route"] == "stratification"
    assert back["lower"]["one_step"]["verdict"] == "no"
