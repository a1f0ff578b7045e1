import json
import random
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from loopcoh.dsl import (
    DegenerateLawError,
    LawError,
    LawIR,
    Move,
    NestTrace,
    NotOneNestedError,
    ParseError,
    TrivialLawError,
    WideLawWarning,
    enumerate_traces,
    ir_from_json,
    ir_to_json,
    parse,
    parse_law,
    render,
    substitute_neutral,
    to_ir,
)

L, R = Move.LEFT, Move.RIGHT
BOL = "(y*(x*(y*z))) = ((y*(x*y))*z)"


def test_parse_unrepeated_bol():
    ast = parse("(w*(x*(y*z))) = ((w*(x*y))*z)")
    assert ast.word() == ["w", "x", "y", "z"]
    assert ast.variables == ("w", "x", "y", "z")


def test_parse_equal_sides_is_trivial_law():
    ast = parse("(x*y) = (x*y)")
    assert len(ast.word()) == 2
    with pytest.raises(TrivialLawError):
        to_ir(ast)


def test_outer_parentheses_optional():
    assert parse("x*(y*z) = (x*y)*z") == parse("(x*(y*z)) = ((x*y)*z)")


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("(x*(y*z) = ((x*y)*z)", "unbalanced"),
        ("", "empty input"),
        ("   ", "empty input"),
        ("= (x*y)", "empty side"),
        ("(x*y) =", "empty side"),
        ("(x*y)) = (x*y)", "unbalanced"),
        ("(x+y) = (x*y)", "unexpected character"),
        ("(x*y) = (x*z)", "different words"),
    ],
)
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert fragment in str(err.value)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse("(x*(y*z) = ((x*y)*z)")
    assert err.value.position == 9


def test_permuted_words_suggest_commutativity():
    with pytest.raises(ParseError, match="commutativity"):
        parse("(x*y)=(y*x)")


def test_bol_ir():
    ir = parse_law(BOL)
    assert ir.n == 4
    assert ir.rho == (1, 2, 1, 3)
    assert ir.num_variables == 3
    assert ir.rhs.start == 2 and ir.rhs.moves == (L, R)
    assert ir.run_profile == ((L, 1), (R, 1))


def test_unrepeated_bol_is_bijective():
    ir = parse_law("(w*(x*(y*z))) = ((w*(x*y))*z)")
    assert ir.is_bijective()
    assert ir.rhs.start == 2 and ir.rhs.moves == (L, R)


def test_right_then_left_trace():
    ir = parse_law("(w*(x*(y*z))) = (w*((x*y)*z))")
    assert ir.rhs.start == 2 and ir.rhs.moves == (R, L)
    assert render(ir) == "(w*(x*(y*z))) = (w*((x*y)*z))"


def test_render_bol():
    assert render(parse_law(BOL)) == BOL


def test_lhs_must_be_canonical():
    with pytest.raises(LawError, match="canonical"):
        parse_law("((x*y)*z) = (x*(y*z))")


def test_rhs_must_be_one_nested():
    with pytest.raises(NotOneNestedError):
        parse_law("(w*(x*(y*z))) = ((w*x)*(y*z))")


def test_wide_law_warns():
    with pytest.warns(WideLawWarning):
        to_ir(parse("(w*(x*(y*z))) = ((w*(x*y))*z)"))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        to_ir(parse(BOL))


def test_cancellation_is_opt_in():
    text = "(u*(x*(y*z))) = (u*((x*y)*z))"
    assert parse_law(text).n == 4
    cancelled = parse_law(text, cancel=True)
    assert cancelled.n == 3 and cancelled.cancelled == 1
    assert render(cancelled) == "(x*(y*z)) = ((x*y)*z)"


def test_json_round_trip_and_key_order():
    ir = parse_law(BOL)
    text = ir_to_json(ir)
    assert list(json.loads(text)) == ["n", "rho", "start", "moves"]
    assert ir_from_json(text) == ir


def _random_ir(rng: random.Random, n: int, v: int) -> LawIR:
    traces = [tr for tr in enumerate_traces(n) if R in tr.moves]
    trace = rng.choice(traces)
    v = min(v, n)
    while True:
        word = [rng.randrange(v) for _ in range(n)]
        if len(set(word)) == v:
            break
    index = {}
    rho = tuple(index.setdefault(w, len(index) + 1) for w in word)
    return LawIR(n, rho, trace)


def test_round_trip_random_corpus():
    rng = random.Random(7)
    checked = 0
    for _ in range(150):
        n = rng.randint(3, 8)
        ir = _random_ir(rng, n, rng.randint(1, 3))
        assert parse_law(render(ir)) == ir
        checked += 1
    assert checked >= 100


@pytest.mark.parametrize("n", range(2, 8))
def test_enumerated_traces_are_valid_and_complete(n):
    traces = list(enumerate_traces(n))
    assert len(traces) == 2 ** (n - 2)  # one choice per move after the start
    assert len(set(traces)) == len(traces)


@settings(max_examples=300, deadline=None)
@given(
    n=st.integers(2, 9),
    start=st.integers(0, 10),
    moves=st.lists(st.sampled_from([L, R]), min_size=0, max_size=9),
)
def test_trace_rejection_matches_replay(n, start, moves):
    # a trace is valid iff the lengths fit and exactly start-1 LEFT moves occur
    valid = 1 <= start <= n - 1 and len(moves) == n - 2 and moves.count(L) == start - 1
    if valid:
        tr = NestTrace(n, start, tuple(moves))
        consumed = [p for c, _, _ in tr.spans() for p in c]
        assert sorted(consumed) == list(range(1, n + 1))
    else:
        with pytest.raises(NotOneNestedError):
            NestTrace(n, start, tuple(moves))


@settings(max_examples=200, deadline=None)
@given(seed=st.integers(0, 10**6), n=st.integers(3, 7))
def test_substitute_neutral_never_crashes(seed, n):
    rng = random.Random(seed)
    ir = _random_ir(rng, n, 3)
    for var in range(1, ir.num_variables + 1):
        try:
            out = substitute_neutral(ir, var)
        except DegenerateLawError:
            continue
        assert out.num_variables <= ir.num_variables - 1 or out.num_variables < 3
        assert parse_law(render(out)) == out


def test_substitute_neutral_in_bol():
    ir = parse_law(BOL)
    # z := e leaves y(xy) = y(xy), a trivial law
    with pytest.raises(DegenerateLawError):
        substitute_neutral(ir, 3)
    # x := e leaves y(yz) = (yy)z, left alternativity
    assert render(substitute_neutral(ir, 2)) == "(y*(y*z)) = ((y*y)*z)"
