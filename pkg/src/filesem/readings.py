"""Reading enumeration for sentences with an epistemic NP modifier.

A skeleton describes a sentence reporting the content of a top source
(optionally embedding a second attitude, such as an agreement made according
to a press release) with an NP whose determiner/participle contributes a
stored formula. Candidates combine a scope for the NP's dref with an
antecedent pair ``(y, q)`` for the stored formula; each candidate is turned
into a discourse box and kept iff

* its file antecedent ``q`` has the NP's dref in its domain, and
* evaluating the box raises no presupposition failure.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from . import logic as L
from .evaluate import check_sentence
from .lexicon import DeterminerEntry, Lexicon, ParticipleEntry, instantiate
from .model import Model, UnknownSource
from .state import EmptyGroup, File, bind_group, from_proposition

HOLE = "HOLE"
TOP_FILE, EMBEDDED_FILE = "p1", "p2"
SCOPE_ORDER = {"widest": 0, "wide": 1, "narrow": 2}


class InvalidSkeleton(ValueError):
    pass


@dataclass(frozen=True)
class Indefinite:
    determiner: str
    restrictor: str
    dref: str


@dataclass(frozen=True)
class Embedded:
    dref: str
    description: tuple  # atoms over dref


@dataclass(frozen=True)
class Outer:
    quantifier: str
    restrictor: str
    dref: str


@dataclass(frozen=True)
class Skeleton:
    source: str
    spine: tuple
    indef: Indefinite
    participle: Optional[str] = None
    embedded: Optional[Embedded] = None
    outer: Optional[Outer] = None

    @property
    def scopes(self) -> tuple:
        if self.outer:
            return ("widest", "narrow")
        if self.embedded:
            return ("wide", "narrow")
        return ("wide",)


@dataclass(frozen=True)
class ReadingCandidate:
    scope: str
    landing: str
    y: str
    q: str

    @property
    def label(self):
        return f"{self.scope}/{self.landing}/{self.y},{self.q}"

    def sort_key(self):
        return SCOPE_ORDER[self.scope], self.y, self.q


@dataclass(frozen=True)
class Row:
    candidate: ReadingCandidate
    survives: bool
    condition: str = ""

    def line(self):
        status = "SURVIVES" if self.survives else f"FILTERED({self.condition})"
        return f"{self.candidate.label} => {status}"

    def as_dict(self):
        c = self.candidate
        return {"scope": c.scope, "landing": c.landing, "y": c.y, "q": c.q,
                "status": "SURVIVES" if self.survives else "FILTERED", "condition": self.condition}


@dataclass(frozen=True)
class ReadingReport:
    rows: tuple = ()

    @property
    def survivors(self) -> tuple:
        return tuple(r.candidate for r in self.rows if r.survives)

    @property
    def scopes(self) -> frozenset:
        return frozenset(c.scope for c in self.survivors)

    def text(self) -> str:
        return "\n".join(r.line() for r in self.rows)


# -- skeleton format -------------------------------------------------------------

def _atoms(text):
    phi = L.parse_formula(text)
    out = []

    def walk(f):
        if isinstance(f, L.And):
            walk(f.left)
            walk(f.right)
        else:
            out.append(f)

    walk(phi)
    return tuple(out)


def loads_skeleton(text: str) -> Skeleton:
    """Parse ``skeleton { source r; embedded x2 <atoms>; spine <atoms>;
    indef <det> <restrictor> <dref>; participle <name>; outer <quant> <restrictor> <dref>; }``.
    Atom lists are joined with ``&``."""
    text = re.sub(r"#[^\n]*", "", text)
    m = re.fullmatch(r"\s*skeleton\s*\{(.*)\}\s*", text, re.S)
    if not m:
        raise InvalidSkeleton("expected 'skeleton { ... }'")
    fields: dict = {}
    for stmt in m.group(1).split(";"):
        stmt = stmt.strip()
        if not stmt:
            continue
        key, _, rest = stmt.partition(" ")
        if key in fields:
            raise InvalidSkeleton(f"duplicate field {key}")
        fields[key] = rest.strip()
    unknown = set(fields) - {"source", "embedded", "spine", "indef", "participle", "outer"}
    if unknown:
        raise InvalidSkeleton(f"unknown fields {sorted(unknown)}")
    for need in ("source", "spine", "indef"):
        if need not in fields:
            raise InvalidSkeleton(f"missing field {need}")
    try:
        indef = Indefinite(*fields["indef"].split())
        embedded = None
        if "embedded" in fields:
            dref, _, atoms = fields["embedded"].partition(" ")
            embedded = Embedded(dref, _atoms(atoms))
        outer = Outer(*fields["outer"].split()) if "outer" in fields else None
        return Skeleton(
            source=fields["source"],
            spine=_atoms(fields["spine"]),
            indef=indef,
            participle=fields.get("participle"),
            embedded=embedded,
            outer=outer,
        )
    except (TypeError, SyntaxError) as e:
        raise InvalidSkeleton(str(e)) from None


def load_skeleton(path) -> Skeleton:
    with open(path, encoding="utf-8") as fh:
        return loads_skeleton(fh.read())


def dumps_skeleton(sk: Skeleton) -> str:
    j = lambda atoms: " & ".join(L.pretty(a) for a in atoms)
    lines = [f"  source {sk.source};"]
    if sk.embedded:
        lines.append(f"  embedded {sk.embedded.dref} {j(sk.embedded.description)};")
    lines.append(f"  spine {j(sk.spine)};")
    lines.append(f"  indef {sk.indef.determiner} {sk.indef.restrictor} {sk.indef.dref};")
    if sk.participle:
        lines.append(f"  participle {sk.participle};")
    if sk.outer:
        lines.append(f"  outer {sk.outer.quantifier} {sk.outer.restrictor} {sk.outer.dref};")
    return "skeleton {\n" + "\n".join(lines) + "\n}\n"


# -- validation and enumeration -----------------------------------------------------

def stored_provider(sk: Skeleton, lex: Lexicon):
    det = lex.determiner(sk.indef.determiner)
    if sk.participle:
        if det.idiom_sorts is not None:
            raise InvalidSkeleton(f"{det.name} already carries an attitude idiom; drop the participle")
        return lex.participle(sk.participle)
    if det.idiom_sorts is None:
        raise InvalidSkeleton("skeleton has neither a participle nor an idiom determiner")
    return det


def validate(sk: Skeleton, model: Model, lex: Lexicon):
    try:
        stored_provider(sk, lex)
        if sk.source not in model.sources and model.resolve_constant(sk.source) not in model.sources:
            raise InvalidSkeleton(f"top source {sk.source} has no attitude source")
        if sk.outer:
            if sk.embedded:
                raise InvalidSkeleton("outer quantifier and embedded source cannot be combined")
            q = lex.determiner(sk.outer.quantifier)
            if q.introduces_dref or q.name != "nobody":
                raise InvalidSkeleton(f"unsupported outer quantifier {q.name}")
        if sk.embedded:
            _check_embedded(sk, model)
    except (KeyError, UnknownSource) as e:
        raise InvalidSkeleton(f"unknown name {e}") from None
    names = [sk.indef.dref, TOP_FILE, EMBEDDED_FILE]
    if sk.embedded:
        names.append(sk.embedded.dref)
    if sk.outer:
        names.append(sk.outer.dref)
    if len(set(names)) != len(names):
        raise InvalidSkeleton(f"dref names clash: {names}")


def _check_embedded(sk, model):
    from .evaluate import update

    src = model.resolve_constant(sk.source) or sk.source
    x = sk.embedded.dref
    phi = L.Exists(x, L.conj(*sk.embedded.description))
    out = update(from_proposition(model.sources[src].content), phi, model)
    values = {i.value(x) for i in out.file.possibilities}
    if not values:
        raise InvalidSkeleton(f"embedded source {x} has no witness in the content of {sk.source}")
    missing = sorted(v for v in values if v not in model.sources)
    if missing:
        raise InvalidSkeleton(f"embedded source candidates {missing} have no attitude source")


def antecedent_levels(sk: Skeleton):
    """(y, q, landing) triples; y and q come from the same attitude level."""
    out = [(sk.source, TOP_FILE, "top")]
    if sk.embedded:
        out.append((sk.embedded.dref, EMBEDDED_FILE, TOP_FILE))
    return out


def enumerate_candidates(sk: Skeleton, lex: Lexicon, model: Model = None) -> list:
    if model is not None:
        validate(sk, model, lex)
    else:
        stored_provider(sk, lex)
    cands = [ReadingCandidate(scope, landing, y, q)
             for scope in sk.scopes for y, q, landing in antecedent_levels(sk)]
    return sorted(cands, key=ReadingCandidate.sort_key)


# -- box construction ----------------------------------------------------------------

def _fill(atom, x):
    if isinstance(atom, L.Atom):
        return L.Atom(atom.pred, tuple(x if t == HOLE else t for t in atom.terms))
    if isinstance(atom, L.Eq):
        return L.Eq(*(x if t == HOLE else t for t in (atom.left, atom.right)))
    if isinstance(atom, L.Neq):
        return L.Neq(*(x if t == HOLE else t for t in (atom.left, atom.right)))
    return atom


def _quantified(sk, body_atoms):
    # no dref export from a genuine quantifier: the NP is a closed test
    x = sk.indef.dref
    return L.Not(L.Not(L.Exists(x, L.conj(L.Atom(sk.indef.restrictor, (x,)), *body_atoms))))


def build_representation(sk: Skeleton, cand: ReadingCandidate, lex: Lexicon) -> L.DiscourseBox:
    det = lex.determiner(sk.indef.determiner)
    x = sk.indef.dref
    restr = L.Atom(sk.indef.restrictor, (x,))
    spine = tuple(_fill(a, x) for a in sk.spine)
    stored = instantiate(stored_provider(sk, lex), x).resolve(cand.y, cand.q)
    wide = cand.scope in ("wide", "widest") and det.introduces_dref

    if sk.outer:
        z = sk.outer.dref
        who = L.Atom(sk.outer.restrictor, (z,))
        if wide:
            inc1 = L.DiscourseBox((x,), (L.Pred(restr), L.Pred(L.Not(L.Exists(z, L.conj(who, *spine))))))
        else:
            inner = L.Exists(x, L.conj(restr, *spine)) if det.introduces_dref else _quantified(sk, spine)
            inc1 = L.DiscourseBox((), (L.Pred(L.Not(L.Exists(z, L.And(who, inner)))),))
    elif sk.embedded:
        x2 = sk.embedded.dref
        if det.introduces_dref and not wide:
            inc2 = L.DiscourseBox((x,), tuple(map(L.Pred, spine + (restr,))))
        elif det.introduces_dref:
            inc2 = L.DiscourseBox((), tuple(map(L.Pred, spine)))
        else:
            inc2 = L.DiscourseBox((), (L.Pred(_quantified(sk, spine)),))
        drefs = (EMBEDDED_FILE, x, x2) if wide else (EMBEDDED_FILE, x2)
        conds = ((L.Pred(restr),) if wide else ()) + tuple(map(L.Pred, sk.embedded.description)) + (
            L.Approx(L.Content(x2), L.FileRef(EMBEDDED_FILE)),
            L.FileDef(EMBEDDED_FILE, L.Content(x2), inc2),
        )
        if cand.landing == TOP_FILE:
            conds += stored
        inc1 = L.DiscourseBox(drefs, conds)
    else:
        if det.introduces_dref:
            inc1 = L.DiscourseBox((x,), tuple(map(L.Pred, (restr,) + spine)))
        else:
            inc1 = L.DiscourseBox((), (L.Pred(_quantified(sk, spine)),))

    top = (
        L.Approx(L.Content(sk.source), L.FileRef(TOP_FILE)),
        L.FileDef(TOP_FILE, L.Content(sk.source), inc1),
    )
    if cand.landing == "top":
        top += stored
    return L.DiscourseBox((TOP_FILE,), top)


def file_domain(box: L.DiscourseBox, q: str) -> Optional[frozenset]:
    """Static domain of file dref q as defined somewhere in box."""
    for c in box.conditions:
        if isinstance(c, L.FileDef):
            if c.name == q:
                base = frozenset()
                if isinstance(c.base, L.FileRef):
                    base = file_domain(box, c.base.name) or frozenset()
                return base | frozenset(L.box_domain(c.increment))
            inner = file_domain(c.increment, q)
            if inner is not None:
                return inner
    return None


def filter_candidates(sk: Skeleton, cands, model: Model, lex: Lexicon) -> ReadingReport:
    rows = []
    for cand in cands:
        box = build_representation(sk, cand, lex)
        dom = file_domain(box, cand.q) or frozenset()
        if sk.indef.dref not in dom:
            rows.append(Row(cand, False, f"dref-domain: {sk.indef.dref} not in domain of {cand.q}"))
            continue
        verdict = check_sentence(box, model=model)
        if verdict.value == "presup-failure":
            rows.append(Row(cand, False, verdict.diagnostic.split(": ", 1)[-1]))
        else:
            rows.append(Row(cand, True))
    return ReadingReport(tuple(rows))


def readings(sk: Skeleton, model: Model, lex: Lexicon) -> ReadingReport:
    return filter_candidates(sk, enumerate_candidates(sk, lex, model), model, lex)


# -- group drefs -------------------------------------------------------------------

def summation(file: File, witnesses, dref: str = None):
    """Bind a fresh group dref to the witnesses of a quantified sentence.

    ``witnesses`` is a set of individuals, or a mapping world -> set when the
    witness group differs across the file's worlds. Returns ``(dref, file)``.
    """
    if not witnesses:
        raise EmptyGroup("summation needs at least one witness")
    if dref is None:
        n = 1
        while f"X{n}" in file.domain:
            n += 1
        dref = f"X{n}"
    if isinstance(witnesses, dict):
        pick = lambda i: witnesses.get(i.world, ())
    else:
        pick = frozenset(witnesses)
    return dref, bind_group(file, dref, pick)


# -- content inspection ----------------------------------------------------------------

def embedded_files(sk: Skeleton, cand: ReadingCandidate, model: Model, lex: Lexicon):
    """(outer possibility, embedded file) pairs computed while evaluating the box."""
    from .evaluate import Proceed, run_discourse

    out = run_discourse(build_representation(sk, cand, lex), model=model)
    if not isinstance(out, Proceed):
        raise InvalidSkeleton(f"{cand.label} is undefined: {out}")
    p1 = out.bindings.get(TOP_FILE)
    pairs = []
    for i in sorted(p1 or (), key=lambda i: (i.assignment, i.world)):
        p2 = i.file(EMBEDDED_FILE)
        if p2 is not None:
            pairs.append((i, p2))
    return pairs


def embedded_entails(sk: Skeleton, cand: ReadingCandidate, model: Model, lex: Lexicon, pred: str) -> bool:
    """Does every embedded content file support pred(x) for the NP's dref x?

    The dref is read from the embedded possibility when it is in that file's
    domain (narrow scope) and from the outer possibility otherwise.
    """
    from .model import extension

    x = sk.indef.dref
    pairs = embedded_files(sk, cand, model, lex)
    if not pairs:
        raise InvalidSkeleton(f"{cand.label} leaves no embedded content to inspect")
    for i, p2 in pairs:
        for j in p2.possibilities:
            d = j.value(x) if x in p2.domain else i.value(x)
            if (d,) not in extension(model, pred, j.world):
                return False
    return True
