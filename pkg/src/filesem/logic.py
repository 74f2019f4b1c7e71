"""Dynamic modal logic formulas and linear discourse boxes.

Concrete syntax (ASCII, Unicode aliases in parentheses)::

    formula := unary {"&" unary}
    unary   := "Ex" NAME unary | "all" NAME unary
             | "dia" block | "box" block | "not" block | "presup" block
             | block | atom
    block   := "[" formula "]"
    atom    := NAME "(" terms ")" | term ("=" | "!=") term
             | ("Id" | "Ud") "(" NAME ["," NAME] ")"
             | "sort" "(" term ")" "in" "{" NAME {"," NAME} "}"

    box     := "[" [NAME {"," NAME}] "|" [cond {"," cond}] "]"
    cond    := NAME ":" base "+" box              file definition
             | base "~=" filexpr                  world-preserving update
             | "presup" "[" cond "]"
             | ("Id" | "Ud") "(" NAME "," NAME ")"
             | "sum" NAME NAME block              group dref by summation
             | formula
    base    := NAME | "content" "(" term ")" | "belief" "(" term ")"
    filexpr := base {"+" box}

Bracketing choice for nested increments: a condition following a file
definition belongs to the enclosing box unless it is written inside the
increment's brackets.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union


class LogicSyntaxError(SyntaxError):
    def __init__(self, msg, line=0, col=0):
        super().__init__(f"{msg} (line {line}, column {col})")
        self.line, self.col = line, col


class ScopeError(Exception):
    pass


# -- formulas ----------------------------------------------------------------

@dataclass(frozen=True)
class Atom:
    pred: str
    terms: tuple


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class Neq:
    left: str
    right: str


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Diamond:
    body: "Formula"


@dataclass(frozen=True)
class Box:
    body: "Formula"


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Partial:
    body: "Formula"


@dataclass(frozen=True)
class Id:
    var: str
    file: Optional[str] = None


@dataclass(frozen=True)
class Ud:
    var: str
    file: Optional[str] = None


@dataclass(frozen=True)
class SortIn:
    term: str
    sorts: tuple


Formula = Union[Atom, Eq, Neq, And, Exists, Forall, Diamond, Box, Not, Partial, Id, Ud, SortIn]


def conj(*parts: Formula) -> Formula:
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


# -- discourse boxes ---------------------------------------------------------

@dataclass(frozen=True)
class FileRef:
    name: str


@dataclass(frozen=True)
class Content:
    term: str


@dataclass(frozen=True)
class Belief:
    term: str


Base = Union[FileRef, Content, Belief]


@dataclass(frozen=True)
class FileSum:
    base: Base
    increments: tuple


@dataclass(frozen=True)
class DiscourseBox:
    drefs: tuple = ()
    conditions: tuple = ()

    @property
    def file_drefs(self) -> tuple:
        files = files_defined(self) | files_used(self)
        return tuple(d for d in self.drefs if d in files)

    @property
    def individual_drefs(self) -> tuple:
        files = files_defined(self) | files_used(self)
        return tuple(d for d in self.drefs if d not in files)


@dataclass(frozen=True)
class FileDef:
    name: str
    base: Base
    increment: DiscourseBox


@dataclass(frozen=True)
class Approx:
    base: Base
    target: Union[Base, FileSum]


@dataclass(frozen=True)
class Pred:
    formula: Formula


@dataclass(frozen=True)
class IdCond:
    var: str
    file: str


@dataclass(frozen=True)
class UdCond:
    var: str
    file: str


@dataclass(frozen=True)
class PartialCond:
    body: "Condition"


@dataclass(frozen=True)
class SumCond:
    group: str
    var: str
    body: Formula


Condition = Union[FileDef, Approx, Pred, IdCond, UdCond, PartialCond, SumCond]


# -- static analysis -----------------------------------------------------------

def exported_drefs(phi) -> tuple:
    """Drefs a formula adds to the domain of its output file, in order."""
    if isinstance(phi, Exists):
        return (phi.var,) + tuple(x for x in exported_drefs(phi.body) if x != phi.var)
    if isinstance(phi, And):
        left = exported_drefs(phi.left)
        return left + tuple(x for x in exported_drefs(phi.right) if x not in left)
    return ()


def condition_exports(c) -> tuple:
    if isinstance(c, Pred):
        return exported_drefs(c.formula)
    if isinstance(c, SumCond):
        return (c.group,)
    return ()


def box_domain(box: DiscourseBox) -> tuple:
    """Individual drefs a box increment adds to the file it updates."""
    out = list(box.individual_drefs)
    for c in box.conditions:
        out += [x for x in condition_exports(c) if x not in out]
    return tuple(out)


def _base_files(b):
    if isinstance(b, FileRef):
        return {b.name}
    if isinstance(b, FileSum):
        s = _base_files(b.base)
        for k in b.increments:
            s |= files_used(k)
        return s
    return set()


def _formula_files(phi) -> set:
    if isinstance(phi, (Id, Ud)):
        return {phi.file} if phi.file else set()
    out = set()
    for attr in ("body", "left", "right"):
        sub = getattr(phi, attr, None)
        if sub is not None:
            out |= _formula_files(sub)
    return out


def _condition_files(c) -> set:
    if isinstance(c, FileDef):
        return _base_files(c.base) | files_used(c.increment)
    if isinstance(c, Approx):
        return _base_files(c.base) | _base_files(c.target)
    if isinstance(c, (IdCond, UdCond)):
        return {c.file}
    if isinstance(c, PartialCond):
        return _condition_files(c.body)
    if isinstance(c, Pred):
        return _formula_files(c.formula)
    if isinstance(c, SumCond):
        return _formula_files(c.body)
    return set()


def files_used(box: DiscourseBox) -> set:
    out = set()
    for c in box.conditions:
        out |= _condition_files(c)
    return out


def files_defined(box: DiscourseBox) -> set:
    return {c.name for c in box.conditions if isinstance(c, FileDef)}


def condition_local_files(c) -> set:
    """File drefs a condition reads at its own level (not inside increments)."""
    if isinstance(c, FileDef):
        return _base_files(c.base)
    if isinstance(c, Approx):
        target = c.target.base if isinstance(c.target, FileSum) else c.target
        return _base_files(c.base) | _base_files(target)
    return _condition_files(c)


def check_box_scope(box: DiscourseBox, outer: frozenset = frozenset()):
    """File drefs must be declared in an enclosing box, bound externally, or
    defined by a file definition of this box. Raises ScopeError."""
    visible = set(outer) | set(box.drefs) | files_defined(box)
    for c in box.conditions:
        used = condition_local_files(c)
        missing = used - visible
        if missing:
            raise ScopeError(f"undefined file dref(s) {sorted(missing)} in {pretty(c)}")
        _check_nested(c, frozenset(visible))


def _check_nested(c, visible):
    if isinstance(c, FileDef):
        check_box_scope(c.increment, visible)
    elif isinstance(c, Approx) and isinstance(c.target, FileSum):
        for k in c.target.increments:
            check_box_scope(k, visible)
    elif isinstance(c, PartialCond):
        _check_nested(c.body, visible)


def check_partial(phi):
    """The presupposition operator may only wrap eliminative formulas."""
    if isinstance(phi, Partial) and exported_drefs(phi.body):
        raise ScopeError(f"presup wraps a dref-introducing formula: {pretty(phi)}")
    for attr in ("body", "left", "right"):
        sub = getattr(phi, attr, None)
        if sub is not None and not isinstance(sub, str):
            check_partial(sub)


# -- lexer -------------------------------------------------------------------

_ALIASES = {"∃": "Ex", "∀": "all", "◇": "dia", "◊": "dia", "□": "box", "¬": "not",
            "∂": "presup", "≈": "~=", "≠": "!=", "∧": "&"}
_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<op>~=|!=|[\[\](){},|:+=&])
  | (?P<name>[A-Za-z_][A-Za-z0-9_'\-]*)
  | (?P<uni>[∃∀◇◊□¬∂≈≠∧])
""", re.X)
KEYWORDS = {"Ex", "all", "dia", "box", "not", "presup", "Id", "Ud", "content", "belief", "sort", "sum", "in"}


@dataclass(frozen=True)
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Tok]:
    out, pos, line, lstart = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise LogicSyntaxError(f"unexpected character {text[pos]!r}", line, pos - lstart + 1)
        kind, s = m.lastgroup, m.group()
        col = pos - lstart + 1
        if kind == "ws":
            nl = s.count("\n")
            if nl:
                line += nl
                lstart = pos + s.rfind("\n") + 1
        elif kind == "uni":
            out.append(Tok("name" if _ALIASES[s].isalpha() else "op", _ALIASES[s], line, col))
        else:
            out.append(Tok(kind, s, line, col))
        pos = m.end()
    out.append(Tok("eof", "", line, pos - lstart + 1))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, k=1):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def fail(self, msg, tok=None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        raise LogicSyntaxError(f"{msg}, found {found!r}", tok.line, tok.col)

    def at(self, text):
        return self.tok.text == text and self.tok.kind in ("op", "name")

    def eat(self, text):
        if not self.at(text):
            self.fail(f"expected {text!r}")
        self.i += 1

    def name(self, what="name"):
        t = self.tok
        if t.kind != "name" or t.text in KEYWORDS:
            self.fail(f"expected {what}")
        self.i += 1
        return t.text

    def done(self):
        if self.tok.kind != "eof":
            self.fail("unexpected trailing input")

    # formulas
    def formula(self):
        phi = self.unary()
        while self.at("&"):
            self.i += 1
            phi = And(phi, self.unary())
        return phi

    def block(self):
        self.eat("[")
        phi = self.formula()
        self.eat("]")
        return phi

    def unary(self):
        t = self.tok
        if t.kind == "name":
            if t.text in ("Ex", "all"):
                self.i += 1
                var = self.name("variable")
                body = self.unary()
                return Exists(var, body) if t.text == "Ex" else Forall(var, body)
            wrap = {"dia": Diamond, "box": Box, "not": Not, "presup": Partial}.get(t.text)
            if wrap:
                self.i += 1
                return wrap(self.unary())
        if self.at("["):
            return self.block()
        return self.atom()

    def term(self):
        return self.name("term")

    def atom(self):
        t = self.tok
        if t.text in ("Id", "Ud") and t.kind == "name":
            self.i += 1
            self.eat("(")
            var = self.name("dref")
            file = None
            if self.at(","):
                self.i += 1
                file = self.name("file dref")
            self.eat(")")
            return (Id if t.text == "Id" else Ud)(var, file)
        if t.text == "sort" and t.kind == "name":
            self.i += 1
            self.eat("(")
            term = self.term()
            self.eat(")")
            self.eat("in")
            self.eat("{")
            sorts = [self.name("sort")]
            while self.at(","):
                self.i += 1
                sorts.append(self.name("sort"))
            self.eat("}")
            return SortIn(term, tuple(sorts))
        left = self.name("atom")
        if self.at("("):
            self.i += 1
            terms = []
            if not self.at(")"):
                terms.append(self.term())
                while self.at(","):
                    self.i += 1
                    terms.append(self.term())
            self.eat(")")
            return Atom(left, tuple(terms))
        if self.at("="):
            self.i += 1
            return Eq(left, self.term())
        if self.at("!="):
            self.i += 1
            return Neq(left, self.term())
        self.fail("expected '(' , '=' or '!=' after term")

    # boxes
    def box(self):
        self.eat("[")
        drefs = []
        if not self.at("|"):
            drefs.append(self.name("dref"))
            while self.at(","):
                self.i += 1
                drefs.append(self.name("dref"))
        self.eat("|")
        conds = []
        if not self.at("]"):
            conds.append(self.condition())
            while self.at(","):
                self.i += 1
                conds.append(self.condition())
        self.eat("]")
        return DiscourseBox(tuple(drefs), tuple(conds))

    def base(self):
        t = self.tok
        if t.kind == "name" and t.text in ("content", "belief"):
            self.i += 1
            self.eat("(")
            term = self.term()
            self.eat(")")
            return Content(term) if t.text == "content" else Belief(term)
        return FileRef(self.name("file dref"))

    def condition(self):
        t = self.tok
        if t.kind == "name" and t.text not in KEYWORDS and self.peek().text == ":":
            name = self.name()
            self.eat(":")
            base = self.base()
            self.eat("+")
            return FileDef(name, base, self.box())
        if t.kind == "name" and (
            (t.text in ("content", "belief") and self.peek().text == "(")
            or (t.text not in KEYWORDS and self.peek().text == "~=")
        ):
            base = self.base()
            self.eat("~=")
            target = self.base()
            incs = []
            while self.at("+"):
                self.i += 1
                incs.append(self.box())
            return Approx(base, FileSum(target, tuple(incs)) if incs else target)
        if t.text == "presup" and self.peek().text == "[":
            self.i += 2
            body = self.condition()
            self.eat("]")
            if self.at("&"):
                self.fail("write a conjunction under presup inside brackets")
            return PartialCond(body)
        if t.text == "sum" and t.kind == "name":
            self.i += 1
            group = self.name("group dref")
            var = self.name("variable")
            return SumCond(group, var, self.block())
        bracketed = self.at("[")
        phi = self.formula()
        if bracketed:
            return Pred(phi)
        if isinstance(phi, Id) and phi.file:
            return IdCond(phi.var, phi.file)
        if isinstance(phi, Ud) and phi.file:
            return UdCond(phi.var, phi.file)
        return Pred(phi)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    phi = p.formula()
    p.done()
    try:
        check_partial(phi)
    except ScopeError as e:
        raise LogicSyntaxError(str(e), 1, 1) from None
    return phi


def parse_discourse(text: str, bound=()) -> DiscourseBox:
    """Parse a discourse box. ``bound`` names file drefs supplied by the caller."""
    p = _Parser(text)
    box = p.box()
    p.done()
    check_box_scope(box, frozenset(bound))
    for phi in _box_formulas(box):
        check_partial(phi)
    return box


def _box_formulas(box):
    for c in box.conditions:
        yield from _cond_formulas(c)


def _cond_formulas(c):
    if isinstance(c, Pred):
        yield c.formula
    elif isinstance(c, SumCond):
        yield c.body
    elif isinstance(c, PartialCond):
        yield from _cond_formulas(c.body)
    elif isinstance(c, FileDef):
        yield from _box_formulas(c.increment)
    elif isinstance(c, Approx) and isinstance(c.target, FileSum):
        for k in c.target.increments:
            yield from _box_formulas(k)


# -- pretty printing -----------------------------------------------------------

def _pf(phi, top=True) -> str:
    if isinstance(phi, Atom):
        return f"{phi.pred}({', '.join(phi.terms)})"
    if isinstance(phi, Eq):
        return f"{phi.left} = {phi.right}"
    if isinstance(phi, Neq):
        return f"{phi.left} != {phi.right}"
    if isinstance(phi, And):
        right = _pf(phi.right, False)
        if isinstance(phi.right, And):
            right = f"[{right}]"
        return f"{_pf(phi.left, False)} & {right}"
    if isinstance(phi, (Exists, Forall)):
        kw = "Ex" if isinstance(phi, Exists) else "all"
        return f"{kw} {phi.var} {_unary(phi.body)}"
    if isinstance(phi, (Diamond, Box, Not, Partial)):
        kw = {Diamond: "dia", Box: "box", Not: "not", Partial: "presup"}[type(phi)]
        return f"{kw} [{_pf(phi.body)}]"
    if isinstance(phi, (Id, Ud)):
        kw = type(phi).__name__
        return f"{kw}({phi.var}, {phi.file})" if phi.file else f"{kw}({phi.var})"
    if isinstance(phi, SortIn):
        return f"sort({phi.term}) in {{{', '.join(phi.sorts)}}}"
    raise TypeError(f"not a formula: {phi!r}")


def _unary(phi):
    s = _pf(phi, False)
    return f"[{s}]" if isinstance(phi, And) else s


def _pbase(b):
    if isinstance(b, FileRef):
        return b.name
    if isinstance(b, Content):
        return f"content({b.term})"
    if isinstance(b, Belief):
        return f"belief({b.term})"
    if isinstance(b, FileSum):
        return " + ".join([_pbase(b.base)] + [_pbox(k) for k in b.increments])
    raise TypeError(b)


def _pcond(c) -> str:
    if isinstance(c, FileDef):
        return f"{c.name} : {_pbase(c.base)} + {_pbox(c.increment)}"
    if isinstance(c, Approx):
        return f"{_pbase(c.base)} ~= {_pbase(c.target)}"
    if isinstance(c, IdCond):
        return f"Id({c.var}, {c.file})"
    if isinstance(c, UdCond):
        return f"Ud({c.var}, {c.file})"
    if isinstance(c, PartialCond):
        return f"presup [{_pcond(c.body)}]"
    if isinstance(c, SumCond):
        return f"sum {c.group} {c.var} [{_pf(c.body)}]"
    if isinstance(c, Pred):
        s = _pf(c.formula)
        # keep the condition-level readings of presup/Id/Ud unambiguous
        first = c.formula
        while isinstance(first, And):
            first = first.left
        if isinstance(first, Partial) or (isinstance(c.formula, (Id, Ud)) and c.formula.file):
            return f"[{s}]"
        return s
    raise TypeError(f"not a condition: {c!r}")


def _pbox(box: DiscourseBox) -> str:
    drefs = ", ".join(box.drefs)
    conds = ", ".join(_pcond(c) for c in box.conditions)
    return f"[{drefs + ' ' if drefs else ''}| {conds}]" if conds else f"[{drefs + ' ' if drefs else ''}|]"


def pretty(ast) -> str:
    if isinstance(ast, DiscourseBox):
        return _pbox(ast)
    if isinstance(ast, (FileDef, Approx, Pred, IdCond, UdCond, PartialCond, SumCond)):
        return _pcond(ast)
    if isinstance(ast, (FileRef, Content, Belief, FileSum)):
        return _pbase(ast)
    return _pf(ast)
