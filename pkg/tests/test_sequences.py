import pytest

from curvecomp.errors import Inadmissible, UnknownCase
from curvecomp.sequences import (
    REGISTRY,
    SequenceCandidate,
    TAGS,
    classify,
    compress,
    degree_bounds_check,
    diophantine_case,
    diophantine_solutions,
    enumerate_admissible,
    excluded_by_reduction,
    genus_and_squares_check,
    jump_obstruction,
    jump_witness,
    load_table1,
    parse_sequence,
    reduced_form_agrees,
    unicuspidal_embedding_classifier,
)


def test_parse_and_compress():
    assert list(parse_sequence("(3,2_(7))")) == [3] + [2] * 7
    assert list(parse_sequence("3_7")) == [3] * 7
    assert list(parse_sequence([4, 3])) == [4, 3]
    assert compress([4, 3, 3, 2, 2, 2]) == "(4,3_(2),2_(3))"


def test_admissibility_checks():
    c = SequenceCandidate(8, (3,) * 7)
    assert genus_and_squares_check(c) == (True, 2)  # d^2 + 1 - sum m^2
    assert degree_bounds_check(c)
    assert not degree_bounds_check(SequenceCandidate(5, (3, 3)))


def test_reduction_filter_kills_degree_seven_triple_points():
    c = SequenceCandidate(7, (3,) * 5)
    assert genus_and_squares_check(c)[0]
    trace = []
    assert excluded_by_reduction(c, trace=trace)
    assert trace


def test_reduction_also_removes_4_4_3_3_3():
    # five singular points on a conic would meet an octic 17 > 16 times
    assert excluded_by_reduction(SequenceCandidate(8, (4, 4, 3, 3, 3)))


@pytest.mark.parametrize("d", range(3, 8))
def test_enumeration_matches_table(d):
    assert [c.entries for c in enumerate_admissible(d)] == load_table1()[d]


def test_enumeration_degree_eight_differs_only_by_one_row():
    got = [c.entries for c in enumerate_admissible(8)]
    golden = load_table1()[8]
    assert set(golden) - set(got) == {(4, 4, 3, 3, 3)}
    assert set(got) <= set(golden)


def test_enumerate_rejects_large_degrees():
    with pytest.raises(ValueError):
        enumerate_admissible(9)
    assert enumerate_admissible(9, allow_large=True)


def test_jump_obstruction():
    assert not jump_obstruction((3,) * 7)
    assert jump_obstruction((4, 3, 3, 2, 2, 2))
    assert jump_witness((4, 3, 3, 2, 2, 2)) == {"r": 1, "s": 3}
    assert classify(7, (4, 3, 3, 2, 2, 2), branches=1).rule == "double-jump lemma"


def test_unicuspidal_cases():
    assert unicuspidal_embedding_classifier(8, (3,) * 7) == "NoEmbedding"
    assert unicuspidal_embedding_classifier(3, (2,)) in ("Case_i", "Case_ii", "Case_iii")


def test_classify_key_verdicts():
    v = classify(8, (3,) * 7, branches=1)
    assert v.tag == "NoNonExtendableEmbedding"
    assert v.witness["trace"] == "8^2 - 7*3^2 - 3 = -2"
    v = classify(8, "3_7", branches=2)
    assert v.tag == "SpecialPunctured" and not v.existence_unknown
    assert classify(7, "(5,2_(5))").tag == "ExtendsAlways"
    assert classify(3, (2,), branches=2).tag == "SpecialPunctured"
    assert classify(8, (3,) * 7).tag == "RequiresUnicuspidal"


def test_existence_open_flags():
    assert classify(13, (5,) * 6 + (4,), branches=2).existence_unknown
    assert classify(16, (6,) * 7, branches=2).existence_unknown


def test_classify_rejects_inadmissible():
    with pytest.raises(Inadmissible):
        classify(5, (3, 3))


def test_classify_notes_reduction_exclusion():
    assert "quadratic reduction" in classify(8, (4, 4, 3, 3, 3), branches=2).note


def test_sweep_has_no_unknown_and_valid_tags():
    for d, rows in load_table1().items():
        for seq in rows:
            for br in (1, 2, None):
                v = classify(d, seq, br)
                assert v.tag in TAGS and v.tag != "Unknown", (d, seq, br)


@pytest.mark.parametrize("case,expected", [
    ("constant-delta=-1", [(8, 3, 7), (16, 6, 7)]),
    ("constant-delta=0", []),
    ("A.1", [(3, 7)]),
    ("A.2", []),
    ("A.3", []),
    ("B.i.1", [(58, 22, 6)]),
    ("B.i.2", [(13, 5)]),
    ("B.i.3", []),
    ("B.ii.2", []),
])
def test_diophantine_cases_computed(case, expected):
    assert diophantine_case(case, 200) == expected


@pytest.mark.parametrize("case", sorted(REGISTRY))
def test_diophantine_stable_and_reduced(case):
    assert diophantine_case(case, 200) == diophantine_case(case, 2000)
    assert reduced_form_agrees(case, 2000)


def test_b_i_1_solution_satisfies_both_equations():
    (rec,) = diophantine_solutions("B.i.1", 200)
    d, m, k = rec["d"], rec["m"], rec["k"]
    # genus: d^2 - 3d + 2 = k m(m-1) + (m-1)(m-2); self-intersection with delta = -1
    assert d * d - 3 * d + 2 == k * m * (m - 1) + (m - 1) * (m - 2)
    assert d * d - 3 * d * m + m * m - m + 2 == 0


def test_unknown_case():
    with pytest.raises(UnknownCase):
        diophantine_case("nope")
