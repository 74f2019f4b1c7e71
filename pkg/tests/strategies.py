"""Hypothesis strategies shared by the property suites."""
from itertools import product

from hypothesis import strategies as st

from filesem import logic as L
from filesem import model as M
from filesem.state import File, Possibility

WORLDS = ("w1", "w2", "w3")
INDIVIDUALS = ("a", "b", "c")
VARS = ("x", "y", "z", "v")
NAMES = ("x", "y", "z1", "x-2", "solange", "r", "p1", "q")
PREDS = ("P", "R", "team-in-italy", "stayin")


def _subset(draw, items, min_size=0):
    # one integer draw per subset keeps generation cheap
    items = list(items)
    lo = 1 if min_size and items else 0
    mask = draw(st.integers(lo, 2 ** len(items) - 1)) if items else 0
    return [x for n, x in enumerate(items) if mask >> n & 1]


@st.composite
def small_models(draw):
    worlds = _subset(draw, WORLDS, 1)
    inds = _subset(draw, INDIVIDUALS, 1)
    unary = {w: {(d,) for d in _subset(draw, inds)} for w in worlds}
    pairs = list(product(inds, inds))
    binary = {w: set(_subset(draw, pairs)) for w in worlds}
    return M.build(worlds, inds, predicates={"P": unary, "R": binary}, arities={"P": 1, "R": 2})


@st.composite
def files_over(draw, model, domain=None, min_size=0):
    if domain is None:
        domain = tuple(draw(st.lists(st.sampled_from(VARS[:2]), max_size=2, unique=True)))
    space = list(product(*([sorted(model.individuals)] * len(domain)), sorted(model.worlds)))
    rows = _subset(draw, space, min_size)
    return File(domain, (Possibility(tuple(zip(domain, r[:-1])), r[-1]) for r in rows))


@st.composite
def model_and_file(draw, min_size=0):
    model = draw(small_models())
    return model, draw(files_over(model, min_size=min_size))


@st.composite
def formulas(draw, bound, depth=3):
    """Well-scoped formulas over P/1 and R/2 whose Ex/all never rebind a dref."""
    bound = tuple(bound)
    fresh = [v for v in VARS if v not in bound]
    kinds = []
    if bound:
        kinds += ["P", "R", "eq", "neq", "Id", "Ud"]
    if depth > 0:
        kinds += ["not", "dia", "box", "and"] if bound else []
        kinds += ["ex", "all"] if fresh else []
    if not kinds:
        return L.Eq(fresh[0], fresh[0]) if not bound else L.Eq(bound[0], bound[0])
    kind = draw(st.sampled_from(kinds))
    term = lambda: draw(st.sampled_from(bound))
    if kind == "P":
        return L.Atom("P", (term(),))
    if kind == "R":
        return L.Atom("R", (term(), term()))
    if kind in ("eq", "neq"):
        return (L.Eq if kind == "eq" else L.Neq)(term(), term())
    if kind in ("Id", "Ud"):
        return (L.Id if kind == "Id" else L.Ud)(term())
    if kind in ("ex", "all"):
        v = fresh[0]
        body = draw(formulas(bound + (v,), depth - 1))
        return (L.Exists if kind == "ex" else L.Forall)(v, body)
    sub = draw(formulas(bound, depth - 1))
    if kind == "and":
        # the right conjunct may pick up drefs the left one exports
        return L.And(sub, draw(formulas(bound + L.exported_drefs(sub), depth - 1)))
    return {"not": L.Not, "dia": L.Diamond, "box": L.Box}[kind](sub)


# -- syntax-only strategies for round trips ------------------------------------

names = st.sampled_from(NAMES)
preds = st.sampled_from(PREDS)


def any_formulas():
    leaf = st.one_of(
        st.builds(L.Atom, preds, st.lists(names, min_size=1, max_size=3).map(tuple)),
        st.builds(L.Eq, names, names),
        st.builds(L.Neq, names, names),
        st.builds(L.Id, names, st.none() | names),
        st.builds(L.Ud, names, st.none() | names),
        st.builds(L.SortIn, names, st.lists(st.sampled_from(M.SORTS), min_size=1, max_size=3, unique=True).map(tuple)),
    )

    def extend(inner):
        return st.one_of(
            st.builds(L.And, inner, inner),
            st.builds(L.Exists, names, inner),
            st.builds(L.Forall, names, inner),
            st.builds(L.Diamond, inner),
            st.builds(L.Box, inner),
            st.builds(L.Not, inner),
            # presup only wraps formulas that export no dref
            inner.filter(lambda f: not L.exported_drefs(f)).map(L.Partial),
        )

    return st.recursive(leaf, extend, max_leaves=8)


def any_boxes():
    bases = st.one_of(st.builds(L.FileRef, names), st.builds(L.Content, names), st.builds(L.Belief, names))

    def cond(box):
        simple = st.one_of(
            st.builds(L.Pred, any_formulas()),
            st.builds(L.IdCond, names, names),
            st.builds(L.UdCond, names, names),
            st.builds(L.Approx, bases, bases),
            st.builds(L.Approx, bases, st.builds(L.FileSum, bases, st.lists(box, min_size=1, max_size=2).map(tuple))),
            st.builds(L.SumCond, names, names, any_formulas()),
            st.builds(L.FileDef, names, bases, box),
        )
        return st.one_of(simple, st.builds(L.PartialCond, simple))

    def make_box(inner):
        return st.builds(
            L.DiscourseBox,
            st.lists(names, max_size=3, unique=True).map(tuple),
            st.lists(cond(inner), max_size=3).map(tuple),
        )

    empty = st.builds(L.DiscourseBox, st.lists(names, max_size=2, unique=True).map(tuple), st.just(()))
    return st.recursive(empty, make_box, max_leaves=4)
