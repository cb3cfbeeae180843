import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import DATA
from naturegame import (
    GameMatrix,
    LossVector,
    ParseError,
    Scenario,
    ValidationError,
    certify_saddle,
    diagonal_matrix,
    lp_solve,
    solve_diagonal,
)
from naturegame.scenario import (
    build_matrix,
    build_report,
    detect_diagonal,
    dump_scenario,
    emit_report,
    format_number,
    parse_scenario,
    parse_solution,
)

F = Fraction
PUBLISHED = (30, 28, 26, 24, 22)


def _off_diag(t):
    n = len(t)
    return [[0 if i == j else t[i] for j in range(n)] for i in range(n)]


# -- build_matrix -----------------------------------------------------------------


def test_build_matrix_reproduces_diagonal_game():
    s = Scenario(None, [0] * 5, _off_diag(PUBLISHED))
    np.testing.assert_array_equal(build_matrix(s).entries, diagonal_matrix(LossVector(PUBLISHED)).entries)


def test_build_matrix_outcomes_only():
    s = Scenario(None, [1, 2], [[0, 0], [0, 0]])
    np.testing.assert_array_equal(build_matrix(s).entries, [[1, 2], [1, 2]])


def test_build_matrix_uniform_cross_losses():
    s = Scenario(None, [1, 1, 1], [[0, 2, 2], [2, 0, 2], [2, 2, 0]])
    np.testing.assert_array_equal(build_matrix(s).entries, [[1, 3, 3], [3, 1, 3], [3, 3, 1]])


def test_build_matrix_exact_diagonal_is_q():
    s = Scenario(None, [F(1, 3), F(2)], [[0, F(1, 7)], [5, 0]])
    H = build_matrix(s)
    assert H.exact
    assert H.entries[0, 0] == F(1, 3) and H.entries[1, 1] == 2
    assert H.entries[0, 1] == F(1, 7) + 2 and H.entries[1, 0] == 5 + F(1, 3)


# -- detect_diagonal ------------------------------------------------------------------


def test_detect_published_matrix():
    t = detect_diagonal(diagonal_matrix(LossVector(PUBLISHED)))
    assert t.t == tuple(float(v) for v in PUBLISHED)
    assert t.strictly_decreasing


def test_detect_two_by_two():
    assert detect_diagonal(GameMatrix([[0, 2], [1, 0]])).t == (2.0, 1.0)


def test_detect_rejects_nonzero_diagonal():
    assert detect_diagonal(GameMatrix([[1, 3, 3], [3, 1, 3], [3, 3, 1]])) is None


def test_detect_rejects_non_constant_rows_and_shapes():
    assert detect_diagonal(GameMatrix([[0, 2, 3], [1, 0, 1], [1, 1, 0]])) is None
    assert detect_diagonal(GameMatrix([[0, 2, 2]])) is None
    assert detect_diagonal(GameMatrix([[0, -1], [1, 0]])) is None
    assert detect_diagonal(GameMatrix([[0]])) is None


def test_detect_reports_ordering():
    t = detect_diagonal(GameMatrix(_off_diag([1, 3, 2])))
    assert t.relaxed and not t.non_increasing
    t = detect_diagonal(GameMatrix(_off_diag([3, 3, 2])))
    assert t.non_increasing and not t.strictly_decreasing


def test_detect_float_tolerance():
    A = np.asarray(_off_diag([3.0, 2.0, 1.0]), dtype=float)
    A[0, 1] *= 1 + 1e-14
    assert detect_diagonal(GameMatrix(A)) is not None
    A[0, 1] *= 1 + 1e-9
    assert detect_diagonal(GameMatrix(A)) is None


loss_lists = st.lists(st.integers(1, 10_000), min_size=2, max_size=8, unique=True)


@settings(max_examples=100, deadline=None)
@given(loss_lists, st.booleans())
def test_detect_round_trip(cents, exact):
    vals = sorted(cents, reverse=True)
    t = LossVector([F(c, 100) for c in vals]) if exact else LossVector([c / 100 for c in vals])
    assert detect_diagonal(diagonal_matrix(t)) == t


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 50), min_size=2, max_size=6), st.data())
def test_positive_outcome_defeats_detection(q, data):
    n = len(q)
    if not any(q):
        q[0] = 1
    r = [[0 if i == j else data.draw(st.integers(0, 50)) for j in range(n)] for i in range(n)]
    assert detect_diagonal(build_matrix(Scenario(None, q, r))) is None


# -- parsing --------------------------------------------------------------------------


def test_parse_minimal_json():
    doc = parse_scenario(b'{"programs":["A","B"],"t":[30,28]}')
    assert isinstance(doc, LossVector)
    assert doc.t == (30.0, 28.0) and doc.names == ("A", "B")


def test_parse_full_scenario_round_trips_through_build():
    text = json.dumps({"programs": ["a", "b", "c"], "q": [1, 1, 1], "r": [[0, 2, 2], [2, 0, 2], [2, 2, 0]]})
    doc = parse_scenario(text)
    assert isinstance(doc, Scenario)
    np.testing.assert_array_equal(build_matrix(doc).entries, [[1, 3, 3], [3, 1, 3], [3, 3, 1]])


def test_parse_csv_published_instance():
    text = (DATA / "published_full_support.csv").read_bytes()
    doc = parse_scenario(text, "csv")
    assert doc.t == tuple(float(v) for v in PUBLISHED)
    assert doc.names[0] == "maternal_capital" and doc.names[1] == "mortgage_for_young_families"
    assert parse_scenario(DATA.joinpath("published_full_support.json").read_bytes()).t == doc.t


def test_parse_fraction_strings():
    doc = parse_scenario(DATA.joinpath("published_truncated.json").read_bytes(), exact=True)
    assert doc.t == (F(1, 3), F(2, 7), F(1, 4), F(2, 9), F(1, 5))
    doc = parse_scenario('{"t": ["0.1", 0.05]}', exact=True)
    assert doc.t == (F(1, 10), F(1, 20))


def test_parse_matrix_shape():
    doc = parse_scenario('{"matrix": [[1, -2], [0, 3.5]]}')
    assert isinstance(doc, GameMatrix) and doc.shape == (2, 2)


def test_parse_errors_carry_location():
    with pytest.raises(ParseError) as exc:
        parse_scenario(b'{"t": [30,\n 28,, 1]}')
    assert exc.value.line == 2 and exc.value.column is not None
    with pytest.raises(ParseError) as exc:
        parse_scenario("name,t\na,3\nb,2,9\n", "csv")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        parse_scenario("program,loss\na,3\n", "csv")
    with pytest.raises(ParseError):
        parse_scenario('{"t": [NaN]}')


@pytest.mark.parametrize(
    "doc, field",
    [
        ('{"t": [30, -1]}', "t[1]"),
        ('{"t": [30, 31]}', "t[1]"),
        ('{"t": [30, "abc"]}', "t[1]"),
        ('{"q": [1, 1], "r": [[0, 1], [1, 2]]}', "r[1][1]"),
        ('{"q": [1, 1]}', "r"),
        ('{"r": [[0]]}', "q"),
        ('{"t": [2, 1], "q": [1, 1]}', "$"),
        ('{"t": [2, 1], "colour": 1}', "colour"),
        ('{"t": [2, 1], "programs": ["a"]}', "programs"),
        ('{"matrix": [[1, 2], [3]]}', "matrix"),
        ("[1, 2]", "$"),
    ],
)
def test_validation_errors_name_the_field(doc, field):
    with pytest.raises(ValidationError) as exc:
        parse_scenario(doc)
    assert exc.value.field == field


def test_relaxed_admits_non_decreasing():
    assert parse_scenario('{"t": [1, 2]}', relaxed=True).t == (1.0, 2.0)
    assert parse_scenario('{"t": [1, 2], "relaxed": true}').relaxed
    with pytest.raises(ValidationError):
        parse_scenario("name,t\na,1\nb,1\n", "csv")


@settings(max_examples=80, deadline=None)
@given(loss_lists, st.booleans(), st.booleans())
def test_dump_parse_round_trip_losses(cents, exact, named):
    vals = sorted(cents, reverse=True)
    names = [f"p{k}" for k in range(len(vals))] if named else None
    t = LossVector([F(c, 7) for c in vals] if exact else [c / 7 for c in vals], names, unit="u")
    assert parse_scenario(dump_scenario(t), exact=exact) == t


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 20), min_size=1, max_size=4), st.data(), st.booleans())
def test_dump_parse_round_trip_scenario(q, data, exact):
    n = len(q)
    r = [[0 if i == j else data.draw(st.integers(0, 20)) for j in range(n)] for i in range(n)]
    div = 3 if exact else 4
    s = Scenario(None, [F(v, div) if exact else v / div for v in q],
                 [[F(v, div) if exact else v / div for v in row] for row in r], exact=exact)
    assert parse_scenario(dump_scenario(s), exact=exact) == s


def test_parse_solution_accepts_report_keys():
    x, y, v = parse_solution('{"nature_mix": [0.5, 0.5], "allocation": [0.25, 0.75], "value": "1/3"}', exact=True)
    assert list(y.p) == [F(1, 4), F(3, 4)] and v == F(1, 3)
    with pytest.raises(ValidationError):
        parse_solution('{"x": [0.5, 0.6], "y": [1.0], "value": 1}')
    with pytest.raises(ValidationError):
        parse_solution('{"x": [1.0], "y": [1.0]}')


# -- reports -----------------------------------------------------------------------------


def _report(t, names=None, unit=""):
    sol = solve_diagonal(t)
    cert = certify_saddle(diagonal_matrix(t), sol.x, sol.y, sol.value)
    return json.loads(emit_report(sol, cert, names, unit))


def test_report_published(published):
    rep = _report(published, [f"p{k}" for k in range(5)], "thousand newborns")
    assert rep["value"] == pytest.approx(20.5517772, abs=1e-7)
    np.testing.assert_allclose(rep["allocation"], [0.315, 0.266, 0.21, 0.144, 0.066], atol=5e-4)
    assert rep["unit"] == "thousand newborns" and rep["support"] == 5
    assert rep["certificate"]["valid"]
    assert list(rep) == ["method", "exact", "unit", "value", "support", "programs", "allocation",
                         "states", "nature_mix", "certificate"]


def test_report_single_program():
    rep = _report(LossVector([10]))
    assert rep["allocation"] == [1.0] and rep["value"] == 0


def test_report_truncated_keeps_zeros(truncated):
    rep = _report(truncated)
    assert len(rep["allocation"]) == 5 and rep["allocation"][4] == 0
    assert rep["support"] == 4


def test_report_exact_uses_fraction_strings(truncated_exact):
    rep = _report(truncated_exact)
    assert rep["value"] == "1/5" and rep["allocation"] == ["2/5", "3/10", "1/5", "1/10", "0"]
    assert rep["exact"] is True


def test_report_is_byte_deterministic(published):
    sol = solve_diagonal(published)
    cert = certify_saddle(diagonal_matrix(published), sol.x, sol.y, sol.value)
    assert emit_report(sol, cert) == emit_report(sol, cert)


def test_report_lp_solution_on_general_matrix():
    H = GameMatrix([[1.0, 3.0, 0.0], [2.0, 0.0, 4.0]])
    sol = lp_solve(H)
    rep = build_report(sol, certify_saddle(H, sol.x, sol.y, sol.value))
    assert rep["states"] == ["state_1", "state_2"] and len(rep["programs"]) == 3


def test_format_number_precision():
    assert format_number(1 / 3) == 0.333333333333
    assert format_number(-0.0) == 0.0
    assert format_number(F(2, 6)) == "1/3"
    assert format_number(123456789.123456789) == 123456789.123
