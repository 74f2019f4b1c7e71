"""Brute-force cross-checks that share no evaluation code with the engine.

Two kinds of oracle live here. The formula oracles re-evaluate the quantified
expansions of identification (``Ex y box [y = x]``) and unidentification
(``all y dia [y != x]``) with a tiny set-based evaluator and compare the
outcome with the direct definitions in :mod:`filesem.state`. The reading
oracle writes every candidate box as text from templates, over the raw
cross product of scopes, antecedents and landing sites, and keeps whatever
evaluates without undefinedness.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product

from . import model as M
from .state import File, Possibility, is_identified, is_unidentified

MAX_WORLDS, MAX_INDIVIDUALS, MAX_POSSIBILITIES = 4, 6, 64


class BoundsError(ValueError):
    pass


@dataclass(frozen=True)
class SmallInstance:
    model: M.Model
    file: File
    seed: int = 0

    def __post_init__(self):
        if len(self.model.worlds) > MAX_WORLDS or len(self.model.individuals) > MAX_INDIVIDUALS:
            raise BoundsError("model too large for an oracle instance")
        if len(self.file) > MAX_POSSIBILITIES:
            raise BoundsError(f"file has {len(self.file)} possibilities")


def random_instance(seed: int, drefs=("x", "z")) -> SmallInstance:
    rng = random.Random(seed)
    worlds = [f"w{n}" for n in range(1, rng.randint(1, MAX_WORLDS) + 1)]
    inds = [f"d{n}" for n in range(1, rng.randint(1, MAX_INDIVIDUALS) + 1)]
    model = M.build(worlds, inds)
    domain = drefs[: rng.randint(1, len(drefs))]
    space = list(product(*([inds] * len(domain)), worlds))
    k = rng.randint(1, min(len(space), MAX_POSSIBILITIES))
    rows = rng.sample(space, k)
    file = File(domain, (Possibility(tuple(zip(domain, r[:-1])), r[-1]) for r in rows))
    return SmallInstance(model, file, seed)


# -- mini evaluator ---------------------------------------------------------------
# States are frozensets of (frozenset of (var, value), world). Formulas are
# nested tuples: ("eq", a, b), ("neq", a, b), ("and", f, g), ("ex", v, f),
# ("all", v, f), ("not", f), ("dia", f), ("box", f).

def _state(file: File):
    return frozenset((frozenset(i.assignment), i.world) for i in file.possibilities)


def _descends(j, i):
    return j[1] == i[1] and i[0] <= j[0]


def _run(s, f, universe):
    op = f[0]
    if op in ("eq", "neq"):
        def val(i, t):
            return dict(i[0]).get(t, t)
        same = op == "eq"
        return frozenset(i for i in s if (val(i, f[1]) == val(i, f[2])) == same)
    if op == "and":
        return _run(_run(s, f[1], universe), f[2], universe)
    if op == "ex":
        out = set()
        for d in universe:
            out |= _run(frozenset((g | {(f[1], d)}, w) for g, w in s), f[2], universe)
        return frozenset(out)
    if op == "all":
        return _run(s, ("not", ("ex", f[1], ("not", f[2]))), universe)
    if op == "not":
        t = _run(s, f[1], universe)
        return frozenset(i for i in s if not any(_descends(j, i) for j in t))
    if op == "dia":
        return s if _run(s, f[1], universe) else frozenset()
    if op == "box":
        return _run(s, ("not", ("dia", ("not", f[1]))), universe)
    raise ValueError(f"unknown operator {op}")


def id_expansion(x, y="y"):
    return ("ex", y, ("box", ("eq", y, x)))


def ud_expansion(x, y="y"):
    return ("all", y, ("dia", ("neq", y, x)))


def expansion_holds(inst: SmallInstance, formula) -> bool:
    """A test succeeds when it leaves the (non-absurd) input state nonempty."""
    s = _state(inst.file)
    return bool(_run(s, formula, sorted(inst.model.individuals)))


def _engine_holds(inst, text):
    from .evaluate import check_formula
    from .logic import parse_formula

    return check_formula(parse_formula(text), inst.file, inst.model).value == "true"


def _fresh(inst, base="y"):
    name = base
    while name in inst.file.domain:
        name += "'"
    return name


def ud_formula_oracle(inst: SmallInstance, x) -> bool:
    """Agreement of is_unidentified with the universal expansion.

    The expansion is run twice, once by the mini evaluator and once by the
    engine, and all three answers must coincide.
    """
    if inst.file.absurd or x not in inst.file.domain:
        raise BoundsError("oracle needs a non-absurd file with x in its domain")
    y = _fresh(inst)
    direct = is_unidentified(inst.file, x)
    return direct == expansion_holds(inst, ud_expansion(x, y)) == _engine_holds(inst, f"all {y} dia [{y} != {x}]")


def id_formula_oracle(inst: SmallInstance, x) -> bool:
    if inst.file.absurd or x not in inst.file.domain:
        raise BoundsError("oracle needs a non-absurd file with x in its domain")
    y = _fresh(inst)
    direct = is_identified(inst.file, x)
    return direct == expansion_holds(inst, id_expansion(x, y)) == _engine_holds(inst, f"Ex {y} box [{y} = {x}]")


@dataclass
class Tally:
    cases: int = 0
    agree: int = 0
    failures: list = field(default_factory=list)

    def add(self, ok, tag):
        self.cases += 1
        self.agree += bool(ok)
        if not ok:
            self.failures.append(tag)

    @property
    def rate(self):
        return self.agree / self.cases if self.cases else 1.0


def formula_corpus(seed: int, n: int = 500):
    """(id tally, ud tally) over n seeded instances, one query per domain dref."""
    tid, tud = Tally(), Tally()
    rng = random.Random(seed)
    for _ in range(n):
        s = rng.randrange(2**32)
        inst = random_instance(s)
        for x in inst.file.domain:
            tid.add(id_formula_oracle(inst, x), (s, x))
            tud.add(ud_formula_oracle(inst, x), (s, x))
    return tid, tud


# -- reading oracle -----------------------------------------------------------------

def _atom_text(a):
    from .logic import pretty

    return pretty(a)


def _stored_text(entry, y, q, x):
    sorts = tuple(sorted(entry.sorts))
    out = []
    if len(sorts) == 1:
        out.append(f"presup [{sorts[0]}({y})]")
    elif sorts:
        out.append(f"presup [sort({y}) in {{{', '.join(sorts)}}}]")
    out.append(f"presup [content({y}) ~= {q}]")
    out.append(f"{entry.polarity}({x}, {q})")
    return out


def _stored_entry(sk, lex):
    det = lex.determiner(sk.indef.determiner)
    if sk.participle:
        return lex.participle(sk.participle)
    return _IdiomEntry(det.idiom_sorts)


@dataclass(frozen=True)
class _IdiomEntry:
    sorts: frozenset
    polarity: str = "Id"


def _fill(text, x):
    return text.replace("HOLE", x)


def _oracle_box(sk, lex, scope, y, q, landing):
    det = lex.determiner(sk.indef.determiner)
    x = sk.indef.dref
    restr = f"{sk.indef.restrictor}({x})"
    spine = " & ".join(_fill(_atom_text(a), x) for a in sk.spine)
    stored = _stored_text(_stored_entry(sk, lex), y, q, x)
    quant = not det.introduces_dref
    closed = f"not [not [Ex {x} [{restr} & {spine}]]]"
    top_extra, p1_extra = (stored, []) if landing == "top" else ([], stored)
    r = sk.source
    if sk.outer:
        z, who = sk.outer.dref, f"{sk.outer.restrictor}({sk.outer.dref})"
        if quant:
            inc1 = f"[| not [Ex {z} [{who} & {closed}]]"
        elif scope == "widest":
            inc1 = f"[{x} | {restr}, not [Ex {z} [{who} & {spine}]]"
        else:
            inc1 = f"[| not [Ex {z} [{who} & Ex {x} [{restr} & {spine}]]]"
    elif sk.embedded:
        x2 = sk.embedded.dref
        desc = ", ".join(_atom_text(a) for a in sk.embedded.description)
        if quant:
            inc2 = f"[| {closed}]"
        elif scope == "narrow":
            inc2 = f"[{x} | {spine}, {restr}]"
        else:
            inc2 = f"[| {spine}]"
        head = f"[{x}, {x2}, p2 | {restr}, " if scope == "wide" and not quant else f"[{x2}, p2 | "
        inc1 = head + f"{desc}, content({x2}) ~= p2, p2 : content({x2}) + {inc2}"
    else:
        inc1 = f"[| {closed}" if quant else f"[{x} | {restr}, {spine}"
    inc1 = ", ".join([inc1] + p1_extra) + "]"
    return ", ".join([f"[p1 | content({r}) ~= p1, p1 : content({r}) + {inc1}"] + top_extra) + "]"


def oracle_boxes(sk, lex):
    """Every (scope, y, q, landing) combination with its box text."""
    scopes = ("widest", "narrow") if sk.outer else ("wide", "narrow") if sk.embedded else ("wide",)
    ys = [sk.source] + ([sk.embedded.dref] if sk.embedded else [])
    qs = ["p1"] + (["p2"] if sk.embedded else [])
    for scope, y, q, landing in product(scopes, ys, qs, ("top", "p1")):
        yield (scope, y, q, landing), _oracle_box(sk, lex, scope, y, q, landing)


def exhaustive_reading_oracle(sk, model: M.Model, lex) -> set:
    """Surviving (scope, y, q) triples, re-derived from scratch."""
    from .evaluate import EvalError, check_sentence
    from .logic import ScopeError, parse_discourse

    quant = not lex.determiner(sk.indef.determiner).introduces_dref

    def holds_x(scope, q):
        # where the templates put the NP's dref
        if quant:
            return False
        if q == "p1":
            return scope in ("wide", "widest")
        return scope == "narrow" and sk.embedded is not None

    out = set()
    for (scope, y, q, _landing), text in oracle_boxes(sk, lex):
        if not holds_x(scope, q):
            continue
        try:
            verdict = check_sentence(parse_discourse(text), model=model)
        except (ScopeError, EvalError):
            continue
        if verdict.value != "presup-failure":
            out.add((scope, y, q))
    return out


def random_skeleton(seed: int):
    """A seeded (skeleton, model) pair with TEAM-like shape and relabelled sorts."""
    from .readings import Embedded, Indefinite, Outer, Skeleton
    from .logic import Atom

    rng = random.Random(seed)
    sorts = M.SORTS
    dets = ["a", "two", "bare-plural", "most", "almost-every", "a_certain"]
    parts = ["undisclosed", "undetermined", "unspecified", "specified", "unidentified", "identified", "unknown"]
    det = rng.choice(dets)
    part = None if det == "a_certain" else rng.choice(parts)
    shape = rng.choice(["plain", "embedded", "outer"])
    pick = lambda pool: set(rng.sample(pool, rng.randint(1, len(pool))))
    preds: dict = {"restr": {}, "spine": {}}
    sources = {}
    if shape == "embedded":
        worlds = ["w1", "w2", "a1", "a2"]
        inds = ["solange", "r", "g1", "g2", "t1", "t2"]
        agree = {"w1": {("g1",)}, "w2": {(rng.choice(["g1", "g2"]),)}}
        preds["agreement"] = agree
        sources["r"] = M.AttitudeSource(rng.choice(sorts), {"w1", "w2"})
        sources["g1"] = M.AttitudeSource(rng.choice(sorts), {"a1"})
        sources["g2"] = M.AttitudeSource(rng.choice(sorts), {rng.choice(["a1", "a2"])})
        for w in worlds:
            preds["restr"][w] = {(t,) for t in pick(["t1", "t2"])}
        for w in ("a1", "a2"):
            preds["spine"][w] = {("solange", t) for t in pick(["t1", "t2"])}
        embedded = Embedded("x2", (Atom("agreement", ("x2",)),))
        outer = None
        spine = (Atom("spine", ("solange", "HOLE")),)
    else:
        worlds = ["w1", "w2", "w3"][: rng.randint(1, 3)]
        inds = ["r", "t1", "t2", "t3"] + (["z1", "z2"] if shape == "outer" else [])
        sources["r"] = M.AttitudeSource(rng.choice(sorts), pick(worlds))
        for w in worlds:
            preds["restr"][w] = {(t,) for t in pick(["t1", "t2", "t3"])}
        embedded = None
        if shape == "outer":
            preds["person"] = {w: {("z1",), ("z2",)} for w in worlds}
            for w in worlds:
                preds["spine"][w] = {(z, t) for z in ("z1", "z2") for t in ("t1", "t2", "t3") if rng.random() < 0.3}
            outer = Outer("nobody", "person", "z")
            spine = (Atom("spine", ("z", "HOLE")),)
        else:
            outer = None
            for w in worlds:
                preds["spine"][w] = {("r", t) for t in pick(["t1", "t2", "t3"])}
            spine = (Atom("spine", ("r", "HOLE")),)
    arities = {"restr": 1, "spine": 2, "agreement": 1, "person": 1}
    model = M.build(worlds, inds, predicates=preds,
                    arities={k: v for k, v in arities.items() if k in preds}, sources=sources)
    sk = Skeleton("r", spine, Indefinite(det, "restr", "x1"), part, embedded, outer)
    return sk, model


def reading_corpus(seed: int, n: int = 20, lex=None) -> Tally:
    """Compare the readings engine with the oracle on n random skeletons."""
    from .lexicon import load
    from .readings import readings

    lex = lex or load()
    tally = Tally()
    rng = random.Random(seed)
    for _ in range(n):
        s = rng.randrange(2**32)
        sk, model = random_skeleton(s)
        mine = {(c.scope, c.y, c.q) for c in readings(sk, model, lex).survivors}
        tally.add(mine == exhaustive_reading_oracle(sk, model, lex), s)
    return tally


def stats_table(seed: int, instances: int = 500, skeletons: int = 20) -> tuple[str, dict]:
    tid, tud = formula_corpus(seed, instances)
    trd = reading_corpus(seed, skeletons)
    rows = [("id-expansion", tid), ("ud-expansion", tud), ("readings", trd)]
    lines = [f"{'check':<14} {'cases':>6} {'agree':>6} {'rate':>8}"]
    for name, t in rows:
        lines.append(f"{name:<14} {t.cases:>6} {t.agree:>6} {t.rate:>8.2%}")
    data = {name: {"cases": t.cases, "agree": t.agree, "rate": t.rate, "failures": t.failures}
            for name, t in rows}
    return "\n".join(lines), data
