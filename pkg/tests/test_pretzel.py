import json
from pathlib import Path

import pytest

from wittknot.pretzel import (
    PretzelParams,
    check_pretzel1,
    check_pretzel2,
    pretzel2_form,
    pretzel3_class,
    pretzel4_class,
    pretzel_class,
    signed_det,
    signed_det_3,
    signed_det_4,
    telescope_simplify,
    telescope_sum,
    u1_verdict,
    upward_stabilize,
)
from wittknot.seifert import SeifertMatrix, knot_determinant, rational_witt_class
from wittknot.witt import ZERO, DiagonalForm, is_equal

DATA = Path(__file__).parent / "data"
ORACLE = json.loads((DATA / "pretzel_oracle.json").read_text())
STABILIZED = json.loads((DATA / "stabilized_oracle.json").read_text())


def _id(entry):
    return "P(" + ",".join(map(str, entry["strands"])) + ")"


@pytest.mark.parametrize("entry", ORACLE, ids=_id)
def test_closed_form_matches_seifert_matrix(entry):
    inv = pretzel_class(entry["strands"])
    V = SeifertMatrix(entry["V"])
    assert is_equal(inv.form, rational_witt_class(V))
    assert inv.signature == entry["sigma"]
    assert inv.form.signature() == entry["sigma"]
    assert inv.det == entry["det"]


def test_oracle_covers_both_families():
    sizes = {len(e["strands"]) for e in ORACLE}
    assert sizes == {3, 4}
    assert sum(len(e["strands"]) == 4 for e in ORACLE) >= 30


@pytest.mark.parametrize("entry", STABILIZED, ids=_id)
def test_upward_stabilization_against_seifert(entry):
    base = PretzelParams(tuple(entry["base"]))
    new = upward_stabilize(base, entry["p"], *entry["pos"])
    assert list(new.strands) == entry["strands"]
    V = SeifertMatrix(entry["V"])
    assert is_equal(rational_witt_class(V), pretzel_class(base.strands).form)
    assert knot_determinant(V) == entry["p"] ** 2 * abs(signed_det(base.strands))


def test_signed_det_helpers():
    assert signed_det_3(7, -3, 14) == -21 + 98 - 42
    assert signed_det_4(3, 3, 3, -10) == -243
    assert signed_det((3, 3, 3, -10)) == -243
    with pytest.raises(ValueError):
        signed_det_3(2, 4, 3)


def test_params_validation():
    with pytest.raises(ValueError):
        PretzelParams((1, 2))
    with pytest.raises(ValueError):
        PretzelParams((3, 0, 5))
    with pytest.raises(ValueError):
        PretzelParams((3, 5, 7, 9))
    assert PretzelParams((2, 3, 5)).with_even_last() == (3, 5, 2)


@pytest.mark.parametrize("n", range(2, 51))
def test_telescope(n):
    for eps in (1, -1):
        assert is_equal(telescope_sum(n, eps), telescope_simplify(n, eps))


def test_cancelling_pair_gives_zero():
    inv = pretzel3_class(3, -3, 2)
    assert inv.form == ZERO and len(inv.form) == 0
    assert inv.signature == 0
    assert inv.det == 9


def test_pretzel_family_one_rewrite():
    # P(p1, 4 - p1, p3): the first two blocks collapse to <D> + 3<-1>
    for p1 in range(7, 60, 2):
        for p3 in (2, 4, 10, 14, 98):
            D = 4 * p3 - p1 * (p1 - 4)
            if D <= 0:
                continue
            inv = pretzel3_class(p1, 4 - p1, p3)
            assert inv.form == DiagonalForm.of(D, -1, -1, -1)
            assert inv.signature == -2
            longer = DiagonalForm.of(p1, 4 - p1, -p1 * (4 - p1), D, -1, -1, -1, -1)
            assert is_equal(inv.form, longer)


def test_check_pretzel1_agrees_with_u1_verdict():
    for p3 in (14, 28, 98, 686):
        inv = pretzel3_class(7, -3, p3)
        assert check_pretzel1(7, p3).obstructed == u1_verdict(inv).obstructed


def test_check_pretzel1_validation():
    with pytest.raises(ValueError):
        check_pretzel1(5, 14)
    with pytest.raises(ValueError):
        check_pretzel1(7, 15)


def test_pretzel2_form_matches_general_formula():
    for p in (21, 59, 97, 363):
        inv = pretzel4_class(p, p, p, -3 * p - 1)
        assert is_equal(inv.form, pretzel2_form(p))
        assert inv.signature == 2


def test_check_pretzel2_agrees_with_u1_verdict():
    for p in (21, 59, 97, 135, 363):
        inv = pretzel4_class(p, p, p, -3 * p - 1)
        assert check_pretzel2(p).obstructed == u1_verdict(inv).obstructed


def test_check_pretzel2_validation():
    with pytest.raises(ValueError):
        check_pretzel2(4)


def test_five_strands_not_supported():
    with pytest.raises(ValueError):
        pretzel_class((1, 3, 5, 7, 9))
