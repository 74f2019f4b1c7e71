import pytest
from hypothesis import given, settings

from filesem import logic as L
from strategies import NAMES, any_boxes, any_formulas


def test_parse_hotel_formula():
    phi = L.parse_formula("Ex x3 [hotel(x3) & stayin(s, x3)] & Ud(x3)")
    assert phi == L.And(
        L.Exists("x3", L.And(L.Atom("hotel", ("x3",)), L.Atom("stayin", ("s", "x3")))),
        L.Ud("x3"),
    )


def test_unicode_aliases_match_ascii():
    assert L.parse_formula("∃y □[y = x]") == L.parse_formula("Ex y box [y = x]")
    assert L.parse_formula("∀y ◇[y ≠ x]") == L.parse_formula("all y dia [y != x]")
    assert L.parse_formula("¬∂[P(x)]") == L.Not(L.Partial(L.Atom("P", ("x",))))


def test_hyphenated_names():
    assert L.parse_formula("team-in-italy(x1)") == L.Atom("team-in-italy", ("x1",))


def test_parse_attitude_box():
    box = L.parse_discourse(
        "[p2 | p2 : content(x4) + [x5 | hollywood-agent(x5), sign-with(s, x5)], content(x4) ~= p2, Ud(x5, p2)]"
    )
    assert box.drefs == ("p2",)
    fd, approx, ud = box.conditions
    assert isinstance(fd, L.FileDef) and fd.base == L.Content("x4")
    assert fd.increment.drefs == ("x5",)
    assert approx == L.Approx(L.Content("x4"), L.FileRef("p2"))
    assert ud == L.UdCond("x5", "p2")
    assert box.file_drefs == ("p2",) and box.individual_drefs == ()


def test_presup_and_sort_conditions():
    box = L.parse_discourse("[| presup [plan(x2)], presup [sort(y) in {communication, plan}], presup [content(x2) ~= p2]]", bound=("p2",))
    a, b, c = box.conditions
    assert a == L.PartialCond(L.Pred(L.Atom("plan", ("x2",))))
    assert b == L.PartialCond(L.Pred(L.SortIn("y", ("communication", "plan"))))
    assert c == L.PartialCond(L.Approx(L.Content("x2"), L.FileRef("p2")))


def test_summation_condition():
    box = L.parse_discourse("[| sum X x [member(x) & paid-bribes(solange, x)], Id(X, p1)]", bound=("p1",))
    assert box.conditions[0] == L.SumCond("X", "x", L.parse_formula("member(x) & paid-bribes(solange, x)"))


def test_fused_target():
    c = L.parse_discourse("[| content(r) ~= content(r) + [x | P(x)] + [| Ud(x)]]").conditions[0]
    assert isinstance(c.target, L.FileSum) and len(c.target.increments) == 2


@pytest.mark.parametrize("text, line, col", [
    ("P(x", 1, 4),
    ("[| P(x),\n  Q(]", 2, 5),
    ("Ex [P(x)]", 1, 4),
    ("P(x) $", 1, 6),
])
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(L.LogicSyntaxError) as err:
        (L.parse_discourse if text.startswith("[|") else L.parse_formula)(text)
    assert (err.value.line, err.value.col) == (line, col)


def test_undeclared_file_dref_is_a_scope_error():
    with pytest.raises(L.ScopeError):
        L.parse_discourse("[| Ud(x, p9)]")


def test_box_domain_and_exports():
    box = L.parse_discourse("[x1 | P(x1), Ex y [R(x1, y)], p : content(r) + [z | P(z)]]")
    assert L.exported_drefs(L.parse_formula("Ex y [P(y)] & Ex z P(z)")) == ("y", "z")
    assert L.exported_drefs(L.parse_formula("not [Ex y P(y)]")) == ()
    assert set(L.box_domain(box)) == {"x1", "y"}


def test_pretty_examples():
    assert L.pretty(L.parse_formula("Ex y box [y = x]")) == "Ex y box [y = x]"
    assert L.pretty(L.DiscourseBox()) == "[|]"
    assert L.pretty(L.Pred(L.Id("x", "p"))) == "[Id(x, p)]"


@settings(max_examples=1000)
@given(any_formulas())
def test_formula_round_trip(phi):
    assert L.parse_formula(L.pretty(phi)) == phi


@settings(max_examples=1000)
@given(any_boxes())
def test_box_round_trip(box):
    assert L.parse_discourse(L.pretty(box), bound=NAMES) == box
