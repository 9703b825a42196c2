import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wangforge.errors import InvalidRequest
from wangforge.machines import (
    EcaRule, Halted, Permutivity, TagHalted, TagState, TagSystem, TmConfig, TuringMachine,
    eca_rule_table, eca_run, eca_step, permutivity, tag_run, tag_step, tm_run, tm_step,
)

bits = st.text("01", min_size=1, max_size=24)


# ---------------------------------------------------------------- Turing machines

def test_halter_stops_after_one_step(immediate_halter):
    out = tm_step(immediate_halter, TmConfig.initial(immediate_halter, "1"))
    assert isinstance(out, Halted) and not out.stuck
    assert out.config.step == 1 and out.config.read(0) == "1" and out.config.state == "HALT"


def test_mover_never_halts(right_mover):
    c = TmConfig.initial(right_mover)
    for k in range(1, 30):
        c = tm_step(right_mover, c)
        assert isinstance(c, TmConfig) and c.head == k and c.state == "q0"
    assert not tm_run(right_mover, "", 30).halted


def test_busy_beaver_two(bb2):
    tr = tm_run(bb2, "", 100)
    assert tr.halted and not tr.stuck
    assert tr.steps == 6
    assert len(tr.configs) == 7
    assert tr.configs[-1].window(-5, 5).count("1") == 4


def test_busy_beaver_trace(bb2):
    tr = tm_run(bb2, "", 100)
    got = [(c.window(-2, 2), c.head, c.state) for c in tr.configs]
    assert got == [
        ("0000", 0, "A"),
        ("0010", 1, "B"),
        ("0011", 0, "A"),
        ("0011", -1, "B"),
        ("0111", -2, "A"),
        ("1111", -1, "B"),
        ("1111", 0, "HALT"),
    ]


def test_missing_rule_is_stuck(immediate_halter):
    tr = tm_run(immediate_halter, "B", 10)
    assert tr.halted and tr.stuck and tr.steps == 0


def test_runs_are_deterministic(bb2):
    assert tm_run(bb2, "", 50) == tm_run(bb2, "", 50)


@pytest.mark.parametrize("rules", [
    [("B", "q0", "B", "q0", "R"), ("B", "q0", "B", "HALT", "L")],
    [("B", "HALT", "B", "q0", "R")],
    [("B", "q0", "x", "q0", "R")],
    [("B", "q0", "B", "q0", "U")],
])
def test_bad_programs_rejected(rules):
    with pytest.raises(InvalidRequest):
        TuringMachine(("B",), "B", ("q0",), "q0", rules)


def test_machine_json_round_trip(bb2):
    assert TuringMachine.from_json(__import__("json").dumps(bb2.to_dict())) == bb2


# ---------------------------------------------------------------- elementary automata

def test_rule_30_table():
    assert list(eca_rule_table(30).items()) == [
        ("111", 0), ("110", 0), ("101", 0), ("100", 1), ("011", 1), ("010", 1), ("001", 1), ("000", 0)]


def test_rule_30_steps():
    assert eca_step(30, "00100") == "01110"
    assert eca_step(30, "01110") == "11001"
    assert eca_run(30, "00100", 3) == ["00100", "01110", "11001"]


@given(bits)
def test_rule_0_kills_everything(row):
    assert eca_step(0, row) == "0" * len(row)


@given(bits)
def test_rule_255_is_all_ones_after_one_step(row):
    assert all(r == "1" * len(row) for r in eca_run(255, row, 4)[1:])


def test_rule_90_is_pascal_mod_two():
    n = 15
    rows = eca_run(90, "0" * n + "1" + "0" * n, n)
    for r, row in enumerate(rows):
        for j, ch in enumerate(row):
            off = j - n
            k = (off + r) // 2
            expect = comb(r, k) % 2 if (off + r) % 2 == 0 and 0 <= k <= r else 0
            assert int(ch) == expect


def _naive_step(n, row, wrap):
    cells = [int(c) for c in row]
    out = []
    for i in range(len(cells)):
        left = cells[i - 1] if i > 0 else (cells[-1] if wrap else 0)
        right = cells[i + 1] if i + 1 < len(cells) else (cells[0] if wrap else 0)
        out.append(str(n >> (left * 4 + cells[i] * 2 + right) & 1))
    return "".join(out)


@given(st.integers(0, 255), bits, st.sampled_from(["zero", "wrap"]))
def test_step_matches_direct_lookup(n, row, boundary):
    assert eca_step(n, row, boundary) == _naive_step(n, row, boundary == "wrap")


@given(st.integers(0, 255), st.text("01", min_size=1, max_size=10), st.integers(2, 5))
def test_wrap_equals_zero_pad_away_from_the_ends(n, core, margin):
    row = "0" * margin + core + "0" * margin
    if n & 1:
        return  # rule bit 0 set lights up empty space, so margins never stay quiet
    if "1" in row[:2] or "1" in row[-2:]:
        return
    assert eca_step(n, row, "wrap") == eca_step(n, row, "zero")


def test_bad_rules_and_rows():
    for bad in (-1, 256):
        with pytest.raises(InvalidRequest):
            EcaRule(bad)
    with pytest.raises(InvalidRequest):
        eca_step(30, "012")
    with pytest.raises(InvalidRequest):
        eca_step(30, "")
    with pytest.raises(InvalidRequest):
        eca_step(30, "01", "mirror")


def _brute_permutivity(n):
    f = lambda a, b, c: (n >> (a * 4 + b * 2 + c)) & 1  # noqa: E731
    left = right = True
    for x in (0, 1):
        for y in (0, 1):
            if {f(0, x, y), f(1, x, y)} != {0, 1}:
                left = False
            if {f(x, y, 0), f(x, y, 1)} != {0, 1}:
                right = False
    return {(True, True): "Both", (True, False): "Leftmost", (False, True): "Rightmost", (False, False): "Neither"}[
        (left, right)]


def test_permutivity_agrees_with_brute_force_on_all_rules():
    for n in range(256):
        assert permutivity(n).value == _brute_permutivity(n), n


def test_permutivity_named_rules():
    assert permutivity(30) is Permutivity.LEFTMOST and permutivity(30).chaotic
    assert permutivity(90) is Permutivity.BOTH and permutivity(90).chaotic
    assert permutivity(110) is Permutivity.NEITHER and not permutivity(110).chaotic


# ---------------------------------------------------------------- cyclic tag systems

def test_tag_first_transition():
    assert tag_step(TagSystem(("101", "110", "10")), TagState(0, "11")) == TagState(1, "1101")


def test_tag_trace_with_the_productions_the_tabulated_rows_use():
    tr = tag_run(["101", "110", "11"], "11", 6)
    assert tr.data == ["11", "1101", "101110", "0111011", "111011", "11011110"]


def test_tag_trace_with_third_production_10():
    tr = tag_run(["101", "110", "10"], "11", 6)
    assert tr.data == ["11", "1101", "101110", "0111010", "111010", "11010110"]


def test_empty_data_halts():
    assert isinstance(tag_step(TagSystem(("1",)), TagState(0, "")), TagHalted)


def test_empty_production_shrinks_to_halt():
    tr = tag_run([""], "1", 10)
    assert tr.halted and tr.data == ["1", ""]


def _other_tag(prods, d, steps):
    out, i = [d], 0
    while len(out) < steps and d:
        d = d[1:] + (prods[i] if d[0] == "1" else "")
        i = (i + 1) % len(prods)
        out.append(d)
    return out


def test_tag_matches_a_second_implementation():
    rng = random.Random(5)
    for _ in range(200):
        prods = ["".join(rng.choice("01") for _ in range(rng.randint(0, 4))) for _ in range(rng.randint(1, 4))]
        d = "".join(rng.choice("01") for _ in range(rng.randint(0, 6)))
        if not d:
            continue
        assert tag_run(prods, d, 25).data == _other_tag(prods, d, 25)


def test_tag_rejects_bad_input():
    with pytest.raises(InvalidRequest):
        TagSystem(())
    with pytest.raises(InvalidRequest):
        tag_run(["12"], "1", 3)
    with pytest.raises(InvalidRequest):
        tag_run(["1"], "1", 0)
