import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filesem import evaluate as E
from filesem import logic as L
from filesem import model as M
from filesem.state import from_proposition, is_identified, is_unidentified
from strategies import files_over, formulas, small_models


def memo(hotel, name):
    return from_proposition(M.content_of(hotel, name))


HOTEL_ID = "Ex x3 [hotel(x3) & stayin(s, x3)] & Id(x3)"
HOTEL_UD = "Ex x3 [hotel(x3) & stayin(s, x3)] & Ud(x3)"


@pytest.mark.parametrize("text, source, expected", [
    (HOTEL_UD, "m2", "true"),
    (HOTEL_UD, "m1", "false"),
    (HOTEL_ID, "m1", "true"),
    (HOTEL_ID, "m2", "false"),
])
def test_memo_formulas(hotel, text, source, expected):
    assert E.check_formula(L.parse_formula(text), memo(hotel, source), hotel).value == expected


def test_exists_unions_over_individuals(hotel):
    out = E.update(memo(hotel, "m2"), L.parse_formula("Ex x3 [hotel(x3) & stayin(s, x3)]"), hotel)
    assert isinstance(out, E.Proceed)
    assert {(i.value("x3"), i.world) for i in out.file} == {("colbert", "w1"), ("days", "w2")}


def test_expansions_on_memo_file(hotel):
    f = E.update(memo(hotel, "m2"), L.parse_formula("Ex x3 [hotel(x3) & stayin(s, x3)]"), hotel).file
    assert len(E.update(f, L.parse_formula("all y dia [y != x3]"), hotel).file) == 2
    assert E.update(f, L.parse_formula("Ex y box [y = x3]"), hotel).file.absurd


def test_reintroducing_a_dref_raises(hotel):
    f = E.update(memo(hotel, "m2"), L.parse_formula("Ex x [hotel(x)]"), hotel).file
    with pytest.raises(Exception, match="x"):
        E.update(f, L.parse_formula("Ex x [hotel(x)]"), hotel)


def test_partial_failure_is_undefined(hotel):
    out = E.update(memo(hotel, "m2"), L.parse_formula("presup [stayin(s, colbert)]"), hotel)
    assert isinstance(out, E.PresupFailure)
    assert "stayin(s, colbert)" in str(out)
    ok = E.update(memo(hotel, "m1"), L.parse_formula("presup [stayin(s, days)]"), hotel)
    assert isinstance(ok, E.Proceed) and len(ok.file) == 1


def test_sort_atoms_are_rigid(hotel):
    f = from_proposition(hotel.worlds)
    assert len(E.update(f, L.parse_formula("communication(m1)"), hotel).file) == 2
    assert E.update(f, L.parse_formula("plan(m1)"), hotel).file.absurd
    assert E.update(f, L.parse_formula("communication(colbert)"), hotel).file.absurd
    assert len(E.update(f, L.parse_formula("sort(m2) in {plan, communication}"), hotel).file) == 2


def test_unbound_term_is_scope_error(hotel):
    box = L.parse_discourse("[| hotel(x9)]")
    with pytest.raises(E.UnboundDref):
        E.run_discourse(box, model=hotel)


def test_file_dref_rebinding(hotel):
    box = L.parse_discourse("[p | p : content(m1) + [|], p : content(m2) + [|]]")
    with pytest.raises(E.RebindError):
        E.run_discourse(box, model=hotel)


def test_env_is_write_once(hotel):
    env = E.Env(hotel).bind("p", from_proposition({"w1"}))
    with pytest.raises(E.RebindError):
        env.bind("p", from_proposition({"w2"}))


def test_bound_file_from_env(hotel):
    env = E.Env(hotel).bind("q", from_proposition({"w2"}))
    box = L.parse_discourse("[| content(m1) ~= q]", bound=("q",))
    assert E.check_sentence(box, env).value == "true"


def test_attitude_box_verdicts(hotel):
    text = "[p | p : content({m}) + [x3 | hotel(x3), stayin(s, x3)], content({m}) ~= p, Ud(x3, p)]"
    assert E.check_sentence(L.parse_discourse(text.format(m="m2")), model=hotel).value == "true"
    v = E.check_sentence(L.parse_discourse(text.format(m="m1")), model=hotel)
    assert v.value == "false" and "Ud(x3, p)" in v.diagnostic


def test_identification_outside_domain_is_undefined(hotel):
    box = L.parse_discourse("[p | p : content(m2) + [x3 | hotel(x3)], Id(y, p)]")
    v = E.check_sentence(box, model=hotel)
    assert v.value == "presup-failure" and "dref-domain" in v.diagnostic


def test_identification_on_absurd_file_is_undefined():
    m = M.loads("worlds w; individuals r a; pred P/1: w {a}; source r : communication content {};")
    box = L.parse_discourse("[p | p : content(r) + [x | P(x)], Ud(x, p)]")
    v = E.check_sentence(box, model=m)
    assert v.value == "presup-failure" and "absurd" in v.diagnostic


def test_deferred_condition_reads_later_file(hotel):
    box = L.parse_discourse("[p | content(m2) ~= p, p : content(m2) + [x3 | hotel(x3), stayin(s, x3)]]")
    order = [type(c).__name__ for _, c in E.evaluation_order(box)]
    assert order == ["FileDef", "Approx"]
    assert E.check_sentence(box, model=hotel).value == "true"


def test_summation_binds_group(data_dir):
    m = M.load(data_dir / "congress.model")
    box = L.parse_discourse(
        "[p1 | p1 : content(times) + [| sum X x [member(x) & paid-bribes(solange, x)]], Id(X, p1)]"
    )
    out = E.run_discourse(box, model=m)
    p1 = out.bindings["p1"]
    assert {i.value("X") for i in p1} == {frozenset({"m1", "m2"})}


def test_verdict_strings():
    assert str(E.Verdict("true")) == "true"
    assert str(E.Verdict("presup-failure", "1: presup [P(a)]")) == "presup-failure: 1: presup [P(a)]"


# -- properties -------------------------------------------------------------------

@st.composite
def update_cases(draw, test_only=False):
    model = draw(small_models())
    f = draw(files_over(model))
    phi = draw(formulas(f.domain, depth=3))
    if test_only:
        phi = draw(st.sampled_from([L.Diamond(phi), L.Box(phi)] + (
            [L.Id(f.domain[0]), L.Ud(f.domain[0])] if f.domain else [])))
    return model, f, phi


@settings(max_examples=1000)
@given(update_cases())
def test_eliminativity(case):
    model, f, phi = case
    out = E.update(f, phi, model)
    assert isinstance(out, E.Proceed)
    dom = set(f.domain)
    for j in out.file.possibilities:
        restricted = (tuple((k, v) for k, v in j.assignment if k in dom), j.world)
        assert restricted in {(i.assignment, i.world) for i in f.possibilities}
    assert set(f.domain) <= set(out.file.domain)


@settings(max_examples=1000)
@given(update_cases(test_only=True))
def test_tests_are_idempotent(case):
    model, f, phi = case
    once = E.update(f, phi, model).file
    assert once == f or once.absurd
    assert E.update(once, phi, model).file == once


@settings(max_examples=1000)
@given(update_cases())
def test_id_ud_one_place_complementary(case):
    model, f, _ = case
    for x in f.domain:
        if f.absurd:
            continue
        id_ok = not E.update(f, L.Id(x), model).file.absurd
        ud_ok = not E.update(f, L.Ud(x), model).file.absurd
        assert id_ok != ud_ok
        assert id_ok == is_identified(f, x) and ud_ok == is_unidentified(f, x)
