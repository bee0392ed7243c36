import json

import mpmath
import pytest

import sturmbeta

mpmath.mp.dps = 60
GOLDEN_SLOPE = "surd:(3-1*sqrt(5))/2"
ALPHA = (3 - mpmath.sqrt(5)) / 2


def fib_by_morphism(n):
    w = "0"
    while len(w) < n:
        w = "".join("01" if c == "0" else "0" for c in w)
    return w[:n]


def test_fibonacci_word_matches_the_morphism():
    assert sturmbeta.word("fibonacci", n=200) == fib_by_morphism(200)


@pytest.mark.parametrize("kind", ["lower", "upper"])
def test_mechanical_words_match_high_precision_floors(kind):
    rnd = mpmath.floor if kind == "lower" else mpmath.ceil
    expected = "".join(str(int(rnd(ALPHA * (n + 1)) - rnd(ALPHA * n))) for n in range(300))
    assert sturmbeta.word(kind, GOLDEN_SLOPE, n=300) == expected


def test_solve_golden_ratio():
    r = sturmbeta.solve("11")
    assert r["kind"] == "exact"
    assert abs(mpmath.mpf(r["beta"]["mid"]) - (1 + mpmath.sqrt(5)) / 2) < mpmath.mpf(10) ** -35


def test_sturmian_beta_is_a_root_of_its_own_digits():
    r = sturmbeta.sturmian_beta(GOLDEN_SLOPE, 1, 3)
    beta = mpmath.mpf(r["beta"]["mid"])
    digits = sturmbeta.word("upper", GOLDEN_SLOPE, n=120)
    total = sum((3 if c == "1" else 1) * beta ** -(k + 1) for k, c in enumerate(digits))
    assert abs(total - 1) < mpmath.mpf(10) ** -30
    assert r["floor"] == 3 and r["verified_digits"] > 0


def test_classify_and_orbit():
    assert sturmbeta.classify("surd:(1+1*sqrt(5))/2", 100)["verdict"] == "C1_detected"
    rows = sturmbeta.orbit_csv("int:2", 4).strip().splitlines()
    assert rows[0].startswith("n,digit,mid")
    assert len(rows) >= 2


def test_frequency_report_closed_forms():
    r = sturmbeta.frequency_report(GOLDEN_SLOPE, 0, 1)
    assert r["case"] == "a=0"
    assert r["defect_b_status"] == "Certified"
    assert abs(sturmbeta.ball_float(r["mu_b"]) + sturmbeta.ball_float(r["mu_a"]) - 1) < 1e-12


def test_birkhoff_runs_are_seeded():
    a = sturmbeta.frequency_report(GOLDEN_SLOPE, 1, 3, birkhoff_points=2, birkhoff_length=2000, seed=5)
    b = sturmbeta.frequency_report(GOLDEN_SLOPE, 1, 3, birkhoff_points=2, birkhoff_length=2000, seed=5)
    assert a["birkhoff"] == b["birkhoff"]


def test_identity_against_closed_form():
    r = sturmbeta.identity_check(GOLDEN_SLOPE, 1, 3)
    beta = mpmath.mpf(r["beta"]["mid"])
    rhs = (1 - 2 / beta - 1 / (beta - 1)) / 2
    assert abs(mpmath.mpf(r["rhs"]["mid"]) - rhs) < mpmath.mpf(10) ** -50
    assert r["max_gap"] < 1e-40


def test_mahler_at_a_rational_point():
    z = mpmath.mpf(1) / 3
    expected = sum(mpmath.floor(ALPHA * n) * z**n for n in range(1, 200))
    got = sturmbeta.mahler_f(GOLDEN_SLOPE, "1/3")
    assert abs(mpmath.mpf(got["mid"]) - expected) <= mpmath.mpf(got["rad"]) + mpmath.mpf(10) ** -55
    assert mpmath.mpf(got["rad"]) < mpmath.mpf(10) ** -35


def test_errors_carry_their_kind():
    with pytest.raises(sturmbeta.Error) as info:
        sturmbeta.solve("10")
    assert info.value.args[0] == "PreconditionError"
    with pytest.raises(sturmbeta.Error) as info:
        sturmbeta.word("lower", "nonsense", n=3)
    assert info.value.args[0] == "ParseError"
    with pytest.raises(sturmbeta.Error) as info:
        sturmbeta.mahler_f(GOLDEN_SLOPE, "3/2")
    assert info.value.args[0] == "DivergentInput"
