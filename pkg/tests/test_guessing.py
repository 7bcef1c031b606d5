"""Recurrence-operator fitting: tables, operators, guessing, and the
leading-coefficient analysis."""

import json
import math
from fractions import Fraction

import pytest

from pfansatz.catalog import COFACTOR_OPS_MOTZKIN
from pfansatz.guessing import (
    DegenerateData,
    GuessSpec,
    RecurrenceOperator,
    Region,
    Table,
    UnderdeterminedData,
    apply_operator,
    guess_bivariate,
    guess_from_table,
    guess_univariate,
    integer_roots,
    leading_nonvanishing,
    table_from_json_dict,
    table_to_json_dict,
)
from pfansatz.poly import Polynomial, parse_poly
from pfansatz.sequences import motzkin


# ---------------------------------------------------------------------------
# tables


def test_table_construction_and_lookup():
    t = Table.from_sequence([5, 6, 7], start=2)
    assert t.get((3,)) == 6
    assert t.get((9,)) is None
    assert len(t) == 3 and (2,) in t
    assert t.points() == [(2,), (3,), (4,)]


def test_table_arity_mismatch():
    with pytest.raises(ValueError):
        Table(2, {(1,): Fraction(1)})
    with pytest.raises(AttributeError):
        Table(1, {}).values = {}


def test_table_json_round_trip():
    t = Table(2, {(1, 2): Fraction(22, 15), (0, -1): Fraction(-3)})
    data = table_to_json_dict(t)
    back = table_from_json_dict(data)
    assert back.values == t.values and back.arity == 2
    assert json.dumps(data)  # serializable as-is


def test_table_json_rejects_duplicates_and_shapes():
    with pytest.raises(ValueError):
        table_from_json_dict(
            {"arity": 1, "values": [{"point": [0], "value": "1"},
                                    {"point": [0], "value": "2"}]}
        )
    with pytest.raises(ValueError):
        table_from_json_dict({"values": []})


# ---------------------------------------------------------------------------
# operators


def test_operator_normalization_content_and_sign():
    op = RecurrenceOperator.make(("n",), {(1,): "2/3*n", (0,): "-4/3"})
    # scaled to integer content 1 with positive leading term: n*S_n - 2
    assert dict(op.terms)[(1,)] == parse_poly("n", ("n",))
    assert dict(op.terms)[(0,)] == parse_poly("-2", ("n",))


def test_operator_normalization_idempotent_and_sign_deterministic():
    op = RecurrenceOperator.make(("n",), {(1,): "4*n - 3", (0,): "-4*n - 1"})
    again = RecurrenceOperator.make(op.variables, dict(op.terms))
    assert again == op
    flipped = RecurrenceOperator.make(
        ("n",), {s: c * Fraction(-7, 5) for s, c in op.terms}
    )
    assert flipped == op


def test_operator_duplicate_shift_merging_and_zero_rejection():
    merged = RecurrenceOperator.make(("n",), [((0,), "n"), ((0,), "-n + 1")])
    assert merged.terms == ((( 0,), Polynomial.constant(1, ("n",))),)
    with pytest.raises(ValueError):
        RecurrenceOperator.make(("n",), [((0,), "n"), ((0,), "-n")])


def test_operator_json_round_trip_and_term_order():
    op = RecurrenceOperator.make(("n", "i"), {(0, 0): "n*i", (-1, 1): "3", (0, -1): "i"})
    data = op.to_json_dict()
    assert data["vars"] == ["n", "i"]
    shifts = [tuple(t["shift"]) for t in data["terms"]]
    assert shifts == sorted(shifts)
    assert RecurrenceOperator.from_json(op.to_json()) == op


def test_operator_structure_queries():
    op = RecurrenceOperator.make(("n", "i"), {(0, 0): "n^2", (-2, 1): "i"})
    assert op.order_span() == (2, 1)
    assert op.coefficient_degree() == 2
    assert op.leading_coefficient() == parse_poly("n^2", ("n", "i"))


def test_translated_shifts_residuals():
    t = Table.from_sequence([Fraction(k * k) for k in range(10)])
    op = RecurrenceOperator.make(("n",), {(1,): "1", (0,): "-1"})  # forward difference
    moved = op.translated((2,))
    res_op = apply_operator(op, t)
    res_moved = apply_operator(moved, t)
    for p, v in res_moved.items():
        assert v == res_op[(p[0] + 2,)]


def test_admissible_points():
    t = Table.from_sequence([1, 2, 3, 4])
    op = RecurrenceOperator.make(("n",), {(0,): "1", (2,): "1"})
    assert op.admissible_points(t) == [(0,), (1,)]


def test_apply_operator_examples():
    ones = Table.from_sequence([1] * 10)
    op = RecurrenceOperator.make(("n",), {(1,): "1", (0,): "-1"})
    assert set(apply_operator(op, ones).values()) == {0}

    powers = Table.from_sequence([Fraction(2) ** k for k in range(12)])
    op2 = RecurrenceOperator.make(("n",), {(1,): "1", (0,): "-2"})
    assert set(apply_operator(op2, powers).values()) == {0}


def test_apply_operator_coverage_error():
    t = Table.from_sequence([1, 2, 3])
    op = RecurrenceOperator.make(("n",), {(1,): "1", (0,): "-1"})
    with pytest.raises(ValueError):
        apply_operator(op, t, points=[(5,)])


# ---------------------------------------------------------------------------
# guessing: univariate


def test_guess_motzkin_second_order():
    data = [motzkin(n) for n in range(41)]
    spec = GuessSpec(degree=1, orders=(2,))
    result = guess_univariate(data, spec)
    assert len(result.operators) == 1
    op = result.operators[0]
    # the unique operator annihilates well past the guessing range
    extended = Table.from_sequence([motzkin(n) for n in range(61)])
    assert all(v == 0 for v in apply_operator(op, extended).values())
    # windows disjoint, validation at least 25% of data
    assert not (set(result.data_window) & set(result.validation_window))
    assert len(result.validation_window) * 4 >= len(result.data_window)


def test_guess_constant_sequence():
    result = guess_univariate([1] * 30, GuessSpec(degree=0, orders=(1,)))
    target = RecurrenceOperator.make(("n",), {(1,): "1", (0,): "-1"})
    assert target in tuple(result.operators)


def test_guess_factorial():
    data = [Fraction(math.factorial(n)) for n in range(25)]
    result = guess_univariate(data, GuessSpec(degree=1, orders=(1,)))
    target = RecurrenceOperator.make(("n",), {(1,): "1", (0,): "-n - 1"})
    assert target in tuple(result.operators)


def test_guess_underdetermined_is_distinct_from_no_fit():
    with pytest.raises(UnderdeterminedData) as info:
        guess_univariate([1, 2, 4], GuessSpec(degree=2, orders=(2,)))
    assert info.value.available < info.value.needed
    # same class, enough data, but genuinely no fit -> empty result, no error
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
              53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113]
    result = guess_univariate(primes, GuessSpec(degree=1, orders=(1,), margin=4))
    assert len(result.operators) == 0


def test_guess_stability_longer_window():
    short = Table.from_sequence([motzkin(n) for n in range(31)])
    long_result = guess_univariate(
        [motzkin(n) for n in range(41)], GuessSpec(degree=1, orders=(2,))
    )
    for op in long_result.operators:
        assert all(v == 0 for v in apply_operator(op, short).values())


def test_guess_rejects_bad_specs():
    with pytest.raises(ValueError):
        guess_univariate([1, 2, 3], GuessSpec(degree=1))  # neither support nor orders
    with pytest.raises(ValueError):
        guess_univariate(
            [1, 2, 3], GuessSpec(degree=1, orders=(1,), support=((0,), (1,)))
        )


# ---------------------------------------------------------------------------
# guessing: bivariate


def test_guess_linear_table_kernel():
    pts = {(n, i): Fraction(n + i) for n in range(8) for i in range(8)}
    spec = GuessSpec(degree=0, support=((0, 0), (1, 0), (0, 1)), margin=5)
    result = guess_bivariate(Table(2, pts), spec, ("n", "i"))
    # the kernel of this class on f = n + i is exactly the difference operator
    assert len(result.operators) == 1
    assert result.operators[0] == RecurrenceOperator.make(
        ("n", "i"), {(1, 0): "1", (0, 1): "-1"}
    )


def test_guess_all_zero_table_is_diagnostic_not_fit():
    pts = {(n, i): Fraction(0) for n in range(6) for i in range(6)}
    with pytest.raises((DegenerateData, UnderdeterminedData)):
        guess_bivariate(Table(2, pts), GuessSpec(degree=1, orders=(1, 1)), ("n", "i"))


def test_guess_empty_data_degenerate():
    with pytest.raises((DegenerateData, UnderdeterminedData)):
        guess_univariate([], GuessSpec(degree=1, orders=(1,)))


def test_guess_reduction_drops_consequences():
    # products of n and shifted copies: the difference operator annihilates,
    # and so do its shift/multiply consequences; reduction should leave one
    pts = {(n, i): Fraction(2) ** (n + i) for n in range(7) for i in range(7)}
    spec = GuessSpec(degree=1, orders=(1, 1), margin=5)
    result = guess_bivariate(Table(2, pts), spec, ("n", "i"))
    assert result.operators
    full = Table(2, pts)
    for op in result.operators:
        assert all(v == 0 for v in apply_operator(op, full).values())
    raw = guess_from_table(full, spec, ("n", "i"), reduce_consequences=False)
    assert len(raw.operators) >= len(result.operators)
    assert result.reduced_away == len(raw.operators) - len(result.operators)


# ---------------------------------------------------------------------------
# integer roots


def test_integer_roots_examples():
    assert integer_roots(parse_poly("4*n - 7", ("n",))) == []
    assert integer_roots(parse_poly("(n - 2)*(2*n - 5)", ("n",))) == [2]
    assert integer_roots(parse_poly("n^2 - 1", ("n",))) == [-1, 1]
    assert integer_roots(parse_poly("n^2 + n", ("n",))) == [-1, 0]
    assert integer_roots(parse_poly("5", ("n",))) == []
    with pytest.raises(ValueError):
        integer_roots(Polynomial.zero(("n",)))


def test_integer_roots_rational_coefficients():
    assert integer_roots(parse_poly("1/2*n - 3/2", ("n",))) == [3]


# ---------------------------------------------------------------------------
# regions and leading coefficients


def test_region_parse_and_satisfied():
    reg = Region.parse("n >= 2 and i - 2*n >= 0")
    assert reg.satisfied({"n": 2, "i": 4})
    assert not reg.satisfied({"n": 1, "i": 4})
    assert not reg.satisfied({"n": 3, "i": 5})
    with pytest.raises(ValueError):
        Region.parse("n ?? 3")


def test_leading_univariate_exact():
    op = RecurrenceOperator.make(("n",), {(1,): "1", (0,): "-1"})
    rep = leading_nonvanishing(op, "n >= 0")
    assert rep.mode == "exact" and rep.clear

    op2 = RecurrenceOperator.make(("n",), {(1,): "n - 2", (0,): "-1"})
    rep2 = leading_nonvanishing(op2, "n >= 1")
    assert rep2.mode == "exact"
    assert rep2.vanishing == ({"n": 2},)
    assert not rep2.clear
    # outside the region the root is filtered away
    assert leading_nonvanishing(op2, "n >= 3").clear


def test_leading_bivariate_window_verified():
    entry = next(e for e in COFACTOR_OPS_MOTZKIN if e.name == "c-mixed-order-1")
    rep = leading_nonvanishing(
        entry.operator,
        "n >= 2 and i - 2*n >= 0",
        window={"n": (2, 30), "i": (2, 80)},
    )
    assert rep.mode == "window"
    assert rep.clear
    assert rep.to_json_dict()["window"] == {"i": [2, 80], "n": [2, 30]}


def test_leading_bivariate_requires_window():
    op = RecurrenceOperator.make(("n", "i"), {(1, 0): "n*i - 1", (0, 0): "1"})
    with pytest.raises(ValueError):
        leading_nonvanishing(op, "n >= 0 and i >= 0")


def test_leading_bivariate_finds_vanishing_points():
    op = RecurrenceOperator.make(("n", "i"), {(1, 0): "n - i", (0, 0): "1"})
    rep = leading_nonvanishing(op, "n >= 1 and i >= 1", window={"n": (1, 5), "i": (1, 5)})
    assert {"n": 3, "i": 3} in rep.vanishing
    assert len(rep.vanishing) == 5
